"""Declarations and their XML-style intermediate representation.

A declaration is either the objective or a single constraint of a linear
program. ``serialize_declarations`` emits the bit-exact IR grammar used as
seq2seq training targets; ``parse_declarations`` accepts arbitrary model
output and recovers whatever declarations it can.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import IrParseError
from .numbers import format_number, parse_number

LESS_OR_EQUAL = "LESS_OR_EQUAL"
GREATER_OR_EQUAL = "GREATER_OR_EQUAL"
OPERATORS = (LESS_OR_EQUAL, GREATER_OR_EQUAL)

OBJECTIVE = "objective"
CONSTRAINT = "constraint"


@dataclass(frozen=True)
class Declaration:
    """One objective or constraint, with exact rational coefficients."""

    kind: str
    direction_text: str
    terms: dict  # variable surface name -> Fraction
    name: Optional[str] = None
    operator: Optional[str] = None
    limit: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in (OBJECTIVE, CONSTRAINT):
            raise ValueError(f"unknown declaration kind: {self.kind!r}")
        if not self.terms:
            raise ValueError("declaration has no terms")
        if self.kind == OBJECTIVE:
            if self.operator is not None or self.limit is not None:
                raise ValueError("objective must not carry operator/limit")
            if self.name is None:
                raise ValueError("objective requires a name")
        else:
            if self.operator not in OPERATORS:
                raise ValueError(f"constraint operator must be one of {OPERATORS}")
            if self.limit is None:
                raise ValueError("constraint requires a limit")
            if self.name is not None:
                raise ValueError("constraint must not carry a name")


def objective(direction_text: str, name: str, terms) -> Declaration:
    return Declaration(OBJECTIVE, direction_text, dict(terms), name=name)


def constraint(direction_text: str, operator: str, limit, terms) -> Declaration:
    return Declaration(
        CONSTRAINT,
        direction_text,
        dict(terms),
        operator=operator,
        limit=Fraction(limit),
    )


def declaration_to_json_dict(decl: Declaration) -> dict:
    out = {
        "kind": decl.kind,
        "direction": decl.direction_text,
        "terms": {v: format_number(c) for v, c in decl.terms.items()},
    }
    if decl.kind == OBJECTIVE:
        out["name"] = decl.name
    else:
        out["operator"] = decl.operator
        out["limit"] = format_number(decl.limit)
    return out


def _format_coefficient(value: Fraction) -> str:
    return "ONE" if value == 1 else format_number(value)


def _serialize_terms(terms) -> str:
    return "".join(
        f"<VAR> {var} </VAR> [TIMES] <PARAM> {_format_coefficient(coeff)} </PARAM>"
        for var, coeff in terms.items()
    )


def serialize_declarations(decls) -> str:
    """Emit declarations in the exact IR surface form, concatenated in order."""
    out = []
    for d in decls:
        if d.kind == OBJECTIVE:
            body = (
                f"<OBJ_DIR> {d.direction_text} </OBJ_DIR>"
                f"<OBJ_NAME> {d.name} </OBJ_NAME>"
                f" [is] {_serialize_terms(d.terms)}"
            )
        else:
            body = (
                f"<CONST_DIR> {d.direction_text} </CONST_DIR>"
                f"<OPERATOR> {d.operator} </OPERATOR>"
                f"<LIMIT> {format_number(d.limit)} </LIMIT>"
                f" [is] {_serialize_terms(d.terms)}"
            )
        out.append(f"<DECLARATION>{body}</DECLARATION>")
    return "".join(out)


_IR_TAGS = ("DECLARATION", "OBJ_DIR", "OBJ_NAME", "CONST_DIR", "OPERATOR",
            "LIMIT", "VAR", "PARAM")
_TOKEN_RE = re.compile(
    r"</?(?:%s)>|\[is\]|\[TIMES\]" % "|".join(_IR_TAGS)
)


class _ParseFailure(Exception):
    def __init__(self, message, position):
        self.message = message
        self.position = position
        super().__init__(message)


@dataclass
class _TokenStream:
    text: str
    tokens: list  # (token string, start, end)
    pos: int = 0
    diagnostics: list = field(default_factory=list)

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def here(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return len(self.text)

    def expect(self, token):
        if self.peek() != token:
            got = self.peek() or "end of input"
            raise _ParseFailure(f"expected {token!r}, got {got!r}", self.here())
        self._require_no_text_before()
        self.pos += 1

    def _require_no_text_before(self):
        start = self.tokens[self.pos - 1][2] if self.pos > 0 else 0
        end = self.tokens[self.pos][1]
        between = self.text[start:end]
        if between.strip():
            raise _ParseFailure(f"unexpected text {between.strip()!r}", start)

    def content(self, tag):
        """Consume ``<tag> text </tag>`` and return the stripped text."""
        self.expect(f"<{tag}>")
        if self.pos >= len(self.tokens):
            raise _ParseFailure(f"unterminated <{tag}>", self.here())
        start = self.tokens[self.pos - 1][2]
        end = self.tokens[self.pos][1]
        value = self.text[start:end].strip()
        if self.peek() != f"</{tag}>":
            raise _ParseFailure(f"expected </{tag}>", self.here())
        self.pos += 1
        if not value:
            raise _ParseFailure(f"empty <{tag}> content", start)
        return value


def _parse_coefficient(token, position):
    if token == "ONE":
        return Fraction(1)
    try:
        return parse_number(token)
    except ValueError:
        raise _ParseFailure(f"bad numeric value {token!r}", position)


def _parse_terms(stream):
    terms = {}
    duplicates = []
    while stream.peek() == "<VAR>":
        pos = stream.here()
        var = stream.content("VAR")
        stream.expect("[TIMES]")
        coeff = _parse_coefficient(stream.content("PARAM"), stream.here())
        if var in terms:
            duplicates.append((var, pos))
            terms[var] += coeff
        else:
            terms[var] = coeff
    if not terms:
        raise _ParseFailure("declaration has no terms", stream.here())
    return terms, duplicates


def _parse_one_declaration(stream):
    start = stream.here()
    stream.expect("<DECLARATION>")
    head = stream.peek()
    if head == "<OBJ_DIR>":
        direction = stream.content("OBJ_DIR")
        name = stream.content("OBJ_NAME")
        stream.expect("[is]")
        terms, duplicates = _parse_terms(stream)
        decl = Declaration(OBJECTIVE, direction, terms, name=name)
    elif head == "<CONST_DIR>":
        direction = stream.content("CONST_DIR")
        op = stream.content("OPERATOR")
        if op not in OPERATORS:
            raise _ParseFailure(f"unknown operator {op!r}", stream.here())
        limit_pos = stream.here()
        limit = stream.content("LIMIT")
        if limit == "ONE":
            raise _ParseFailure("ONE is only valid as a coefficient", limit_pos)
        limit = _parse_coefficient(limit, limit_pos)
        stream.expect("[is]")
        terms, duplicates = _parse_terms(stream)
        decl = Declaration(CONSTRAINT, direction, terms, operator=op, limit=limit)
    else:
        got = head or "end of input"
        raise _ParseFailure(
            f"expected <OBJ_DIR> or <CONST_DIR>, got {got!r}", stream.here()
        )
    stream.expect("</DECLARATION>")
    for var, pos in duplicates:
        stream.diagnostics.append(
            f"char {pos}: duplicate variable {var!r}, coefficients summed"
        )
    return decl, start


def _resync(stream):
    """Skip past the current declaration after a lenient-mode failure."""
    depth_start = stream.pos
    while stream.pos < len(stream.tokens):
        token = stream.tokens[stream.pos][0]
        if token == "</DECLARATION>":
            stream.pos += 1
            return
        if token == "<DECLARATION>" and stream.pos != depth_start:
            return
        stream.pos += 1


def parse_declarations(ir: str, mode: str = "strict"):
    """Parse an IR string into ``(declarations, diagnostics)``.

    Strict mode raises :class:`IrParseError` on the first grammar violation.
    Lenient mode never raises: unparseable declarations are skipped and
    reported as diagnostics, so raw model output cannot crash evaluation.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"unknown parse mode: {mode!r}")
    tokens = [(m.group(0), m.start(), m.end()) for m in _TOKEN_RE.finditer(ir)]
    stream = _TokenStream(ir, tokens)
    decls = []
    while True:
        # Skip to the next declaration, flagging stray text/tokens on the way.
        while stream.peek() is not None and stream.peek() != "<DECLARATION>":
            msg = f"char {stream.here()}: stray token {stream.peek()!r}"
            if mode == "strict":
                raise IrParseError(f"stray token {stream.peek()!r}", stream.here())
            stream.diagnostics.append(msg)
            stream.pos += 1
        if stream.peek() is None:
            tail_start = stream.tokens[-1][2] if stream.tokens else 0
            tail = ir[tail_start:]
            if tail.strip():
                if mode == "strict":
                    raise IrParseError(
                        f"stray text {tail.strip()!r}", tail_start
                    )
                stream.diagnostics.append(
                    f"char {tail_start}: stray text {tail.strip()!r}"
                )
            break
        try:
            decl, _ = _parse_one_declaration(stream)
            decls.append(decl)
        except _ParseFailure as failure:
            message = failure.message
            if stream.peek() is None:
                message = f"unterminated declaration ({message})"
            if mode == "strict":
                raise IrParseError(message, failure.position)
            stream.diagnostics.append(f"char {failure.position}: {message}")
            _resync(stream)
    return decls, stream.diagnostics
