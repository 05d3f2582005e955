"""Canonical minimize / upper-bound form of a set of declarations.

The canonical program is: minimize c'x subject to Ax <= b, x >= 0.
Maximization objectives and >= constraints are brought into this form by
inverting the signs of their multipliers (and limit). All arithmetic is
exact; tolerances only matter for user-supplied floats.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import ir
from .errors import StructureError
from .ingest import OrderMapping, normalize_name
from .numbers import format_number

DEFAULT_TOLERANCE = Fraction(1, 10**9)

_MIN_WORDS = {"min", "minimize", "minimise", "minimization", "minimisation"}
_MAX_WORDS = {"max", "maximize", "maximise", "maximization", "maximisation"}


@dataclass
class CanonicalFormulation:
    n_vars: int
    objective: list  # c, length n, Fractions
    constraints: list  # A, m rows of length n
    limits: list  # b, length m

    def as_json_dict(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "objective": [format_number(v) for v in self.objective],
            "constraints": [
                [format_number(v) for v in row] for row in self.constraints
            ],
            "limits": [format_number(v) for v in self.limits],
        }


def _objective_sign(direction_text: str) -> int:
    word = normalize_name(direction_text)
    if word in _MIN_WORDS:
        return 1
    if word in _MAX_WORDS:
        return -1
    raise StructureError(
        f"objective direction {direction_text!r} is neither minimize nor "
        f"maximize"
    )


def _terms_to_vector(terms, mapping: OrderMapping) -> list:
    vector = [Fraction(0)] * mapping.n_vars
    for var, coeff in terms.items():
        vector[mapping.resolve(var)] += Fraction(coeff)
    return vector


def canonicalize_declaration(decl, mapping: OrderMapping):
    """Canonicalize a single declaration.

    Returns ``("objective", c)`` or ``("constraint", (row, limit))``.
    """
    vector = _terms_to_vector(decl.terms, mapping)
    if decl.kind == ir.OBJECTIVE:
        sign = _objective_sign(decl.direction_text)
        return ir.OBJECTIVE, [sign * v for v in vector]
    if all(v == 0 for v in vector):
        raise StructureError("constraint row has no nonzero entry")
    if decl.operator == ir.GREATER_OR_EQUAL:
        return ir.CONSTRAINT, ([-v for v in vector], -decl.limit)
    return ir.CONSTRAINT, (vector, Fraction(decl.limit))


def canonicalize(decls, mapping: OrderMapping) -> CanonicalFormulation:
    """Build the canonical matrices from declarations plus an order mapping."""
    objectives = [d for d in decls if d.kind == ir.OBJECTIVE]
    if len(objectives) != 1:
        raise StructureError(
            f"expected exactly one objective, found {len(objectives)}"
        )
    objective_vec = None
    rows = []
    limits = []
    for decl in decls:
        kind, payload = canonicalize_declaration(decl, mapping)
        if kind == ir.OBJECTIVE:
            objective_vec = payload
        else:
            row, limit = payload
            rows.append(row)
            limits.append(limit)
    return CanonicalFormulation(
        n_vars=mapping.n_vars,
        objective=objective_vec,
        constraints=rows,
        limits=limits,
    )


def declarations_equal(a, b, mapping: OrderMapping, tol=DEFAULT_TOLERANCE) -> bool:
    """Canonical equality: entry-wise within ``tol``, kinds matching.

    Objective name and direction wording do not participate.
    """
    if a.kind != b.kind:
        return False
    tol = Fraction(tol)
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    kind_a, pa = canonicalize_declaration(a, mapping)
    _, pb = canonicalize_declaration(b, mapping)
    if kind_a == ir.OBJECTIVE:
        va, vb = pa, pb
    else:
        va = pa[0] + [pa[1]]
        vb = pb[0] + [pb[1]]
    return all(abs(x - y) <= tol for x, y in zip(va, vb))


def render_algebraic(decls, mapping: OrderMapping) -> str:
    """Plain-text algebraic rendering (pre-canonical signs and operators)."""
    names = mapping.column_names()

    def linear_expr(terms):
        vector = _terms_to_vector(terms, mapping)
        pieces = []
        for name, coeff in zip(names, vector):
            if coeff == 0:
                continue
            prefix = "" if coeff == 1 else f"{format_number(coeff)} "
            pieces.append(f"{prefix}{name}")
        return " + ".join(pieces) if pieces else "0"

    lines = []
    for decl in decls:
        if decl.kind == ir.OBJECTIVE:
            word = "min" if _objective_sign(decl.direction_text) == 1 else "max"
            lines.append(f"{word} {linear_expr(decl.terms)}")
        else:
            op = "<=" if decl.operator == ir.LESS_OR_EQUAL else ">="
            lines.append(
                f"{linear_expr(decl.terms)} {op} {format_number(decl.limit)}"
            )
    return "\n".join(lines)
