"""Dataset loading, validation, and persistence.

One problem per JSONL line:

    {"id": str, "text": str,
     "spans": [{"start": int, "end": int, "label": str}],
     "order_mapping": {str: int},
     "gold": [{"type": "objvar"|"linear", ...}]}   # optional

Character offsets count Unicode scalar values, not bytes. Validation is
total: bad data is reported with line numbers and field paths, never
silently repaired.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import ir
from .errors import MappingError, UnsupportedDeclarationError, ValidationError
from .numbers import format_number

logger = logging.getLogger(__name__)

LABELS = ("CONST_DIR", "LIMIT", "OBJ_DIR", "OBJ_NAME", "PARAM", "VAR")


def normalize_name(name: str) -> str:
    """Collapse whitespace runs and fold case for variable-name matching."""
    return " ".join(name.split()).casefold()


@dataclass(frozen=True)
class EntitySpan:
    start: int
    end: int
    label: str


@dataclass(frozen=True)
class OrderMapping:
    """Assignment of variable surface names to canonical column indices."""

    entries: dict

    def __post_init__(self):
        indices = sorted(self.entries.values())
        if indices != list(range(len(indices))):
            raise ValidationError(
                f"order mapping indices {indices} are not a bijection onto "
                f"0..{len(indices) - 1}",
                field="order_mapping",
            )

    @property
    def n_vars(self) -> int:
        return len(self.entries)

    def resolve(self, name: str) -> int:
        """Map a (possibly sloppily spaced) variable name to its column."""
        wanted = normalize_name(name)
        for key, index in self.entries.items():
            if normalize_name(key) == wanted:
                return index
        known = ", ".join(sorted(self.entries))
        raise MappingError(f"unknown variable {name!r} (known: {known})")

    def column_names(self) -> list:
        by_index = {i: k for k, i in self.entries.items()}
        return [by_index[i] for i in range(len(by_index))]


@dataclass
class Problem:
    id: str
    text: str
    spans: list  # EntitySpan, sorted by start
    order_mapping: OrderMapping
    gold: Optional[list] = None  # list of ir.Declaration

    def __post_init__(self):
        self.spans = sorted(self.spans, key=lambda s: (s.start, s.end))
        self.validate()

    def validate(self):
        for span in self.spans:
            if span.label not in LABELS:
                raise ValidationError(
                    f"unknown span label {span.label!r}", field="spans"
                )
            if not (0 <= span.start < span.end <= len(self.text)):
                raise ValidationError(
                    f"span ({span.start}, {span.end}) out of bounds for text "
                    f"of length {len(self.text)}",
                    field="spans",
                )
        for a, b in zip(self.spans, self.spans[1:]):
            if b.start < a.end:
                raise ValidationError(
                    f"overlapping spans ({a.start}, {a.end}, {a.label}) and "
                    f"({b.start}, {b.end}, {b.label})",
                    field="spans",
                )
        for span in self.spans:
            if span.label != "VAR":
                continue
            name = self.text[span.start:span.end]
            try:
                self.order_mapping.resolve(name)
            except MappingError:
                # Noisy datasets legitimately contain VAR spans that no
                # longer name a variable (e.g. after mislabeling), so this
                # is reported but not fatal.
                logger.warning(
                    "problem %s: VAR span %r does not resolve in the order "
                    "mapping", self.id, name,
                )
        if self.gold is not None:
            for decl in self.gold:
                for var in decl.terms:
                    self.order_mapping.resolve(var)


def gold_to_declarations(records) -> list:
    """Convert raw objective/constraint records into declarations."""
    decls = []
    for i, rec in enumerate(records):
        try:
            rtype = rec["type"]
        except (KeyError, TypeError):
            raise ValidationError("record has no 'type'", field=f"gold[{i}]")
        try:
            if rtype == "objvar":
                decls.append(ir.objective(
                    rec["direction"], rec["name"],
                    {v: Fraction(1) for v in rec["vars"]},
                ))
            elif rtype == "linear":
                decls.append(ir.constraint(
                    rec["direction"], rec["operator"], str(rec["limit"]),
                    {v: Fraction(str(c)) for v, c in rec["terms"].items()},
                ))
            else:
                raise UnsupportedDeclarationError(rtype, field=f"gold[{i}]")
        except KeyError as missing:
            raise ValidationError(
                f"missing required field {missing}", field=f"gold[{i}].type={rtype}"
            )
        except ValueError as bad:
            raise ValidationError(str(bad), field=f"gold[{i}]")
    return decls


def declarations_to_gold(decls) -> list:
    """Inverse of :func:`gold_to_declarations`, used when saving."""
    records = []
    for decl in decls:
        if decl.kind == ir.OBJECTIVE:
            if any(c != 1 for c in decl.terms.values()):
                raise ValidationError(
                    "objvar records cannot carry non-unit coefficients"
                )
            records.append({
                "type": "objvar",
                "direction": decl.direction_text,
                "name": decl.name,
                "vars": list(decl.terms),
            })
        else:
            records.append({
                "type": "linear",
                "direction": decl.direction_text,
                "limit": format_number(decl.limit),
                "terms": {v: format_number(c) for v, c in decl.terms.items()},
                "operator": decl.operator,
            })
    return records


def problem_from_record(record, line=None) -> Problem:
    try:
        spans = [
            EntitySpan(s["start"], s["end"], s["label"])
            for s in record["spans"]
        ]
        mapping = OrderMapping(dict(record["order_mapping"]))
        gold = record.get("gold")
        return Problem(
            id=record["id"],
            text=record["text"],
            spans=spans,
            order_mapping=mapping,
            gold=gold_to_declarations(gold) if gold is not None else None,
        )
    except KeyError as missing:
        raise ValidationError(f"missing required field {missing}", line=line)
    except ValidationError as err:
        raise ValidationError(str(err), line=line)


def problem_to_record(problem: Problem) -> dict:
    record = {
        "id": problem.id,
        "text": problem.text,
        "spans": [
            {"start": s.start, "end": s.end, "label": s.label}
            for s in problem.spans
        ],
        "order_mapping": dict(problem.order_mapping.entries),
    }
    if problem.gold is not None:
        record["gold"] = declarations_to_gold(problem.gold)
    return record


def load_dataset(path, format="jsonl") -> list:
    """Load and validate a dataset; any invariant violation is fatal."""
    if format != "jsonl":
        raise ValueError(f"unsupported format: {format!r}")
    problems = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as err:
                raise ValidationError(f"malformed JSON: {err}", line=line_no)
            problem = problem_from_record(record, line=line_no)
            if any(p.id == problem.id for p in problems):
                raise ValidationError(
                    f"duplicate problem id {problem.id!r}", line=line_no
                )
            problems.append(problem)
    return problems


def save_dataset(problems, path) -> None:
    """Write problems as JSONL; round-trips exactly through load_dataset."""
    with open(path, "w", encoding="utf-8") as fh:
        for problem in problems:
            fh.write(json.dumps(problem_to_record(problem), ensure_ascii=False))
            fh.write("\n")
