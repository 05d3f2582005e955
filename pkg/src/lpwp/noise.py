"""Seeded corruption of entity spans, simulating an imperfect NER system.

A fraction ``p`` of all spans in the corpus is selected and hit with an
equal mix of three error kinds: drop, mislabel, and boundary shift. The
result never contains overlapping spans, and identical inputs plus config
always produce identical outputs.
"""

import logging
import random
from dataclasses import dataclass, replace

from .ingest import LABELS, EntitySpan, Problem
from .metrics import F1Report, micro_f1

logger = logging.getLogger(__name__)

SHIFT_RETRIES = 64


@dataclass(frozen=True)
class NoiseConfig:
    p: float
    seed: int
    shift_max: int = 3

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("corruption fraction p must be in [0, 1]")
        if self.shift_max < 1:
            raise ValueError("shift_max must be positive")


def _overlaps(a: EntitySpan, b: EntitySpan) -> bool:
    return a.start < b.end and b.start < a.end


def _try_shift(span, others, text_len, rng, shift_max):
    """Draw boundary shifts until one is legal; None if the budget runs out."""
    for _ in range(SHIFT_RETRIES):
        ds = rng.randint(-shift_max, shift_max)
        de = rng.randint(-shift_max, shift_max)
        start, end = span.start + ds, span.end + de
        if (start, end) == (span.start, span.end):
            continue
        if not (0 <= start < end <= text_len):
            continue
        moved = EntitySpan(start, end, span.label)
        if any(_overlaps(moved, o) for o in others):
            continue
        return moved
    return None


def corrupt_spans(problems, cfg: NoiseConfig):
    """Corrupt round(p * total_spans) spans; returns (noisy problems, F1Report).

    Selected spans are split into near-equal drop / mislabel / shift groups
    (remainder assigned in that fixed order). A shift that cannot be placed
    legally falls back to dropping the span.
    """
    rng = random.Random(cfg.seed)
    all_refs = [
        (pi, si)
        for pi, problem in enumerate(problems)
        for si in range(len(problem.spans))
    ]
    n_selected = int(cfg.p * len(all_refs) + 0.5)  # round half-up
    selected = rng.sample(all_refs, n_selected)
    base, rem = divmod(n_selected, 3)
    n_drop = base + (1 if rem >= 1 else 0)
    n_mislabel = base + (1 if rem >= 2 else 0)
    drops = set(selected[:n_drop])
    mislabels = selected[n_drop:n_drop + n_mislabel]
    shifts = selected[n_drop + n_mislabel:]

    # Working copy: per problem, span index -> current span (dropped = absent).
    current = [
        {si: span for si, span in enumerate(problem.spans)}
        for problem in problems
    ]
    for pi, si in drops:
        del current[pi][si]
    for pi, si in mislabels:
        span = current[pi][si]
        other_labels = [l for l in LABELS if l != span.label]
        current[pi][si] = replace(span, label=rng.choice(other_labels))
    for pi, si in shifts:
        span = current[pi][si]
        others = [s for i, s in current[pi].items() if i != si]
        moved = _try_shift(
            span, others, len(problems[pi].text), rng, cfg.shift_max
        )
        if moved is None:
            logger.warning(
                "problem %s: no legal boundary shift for span (%d, %d, %s); "
                "dropping it instead",
                problems[pi].id, span.start, span.end, span.label,
            )
            del current[pi][si]
        else:
            current[pi][si] = moved

    noisy = [
        Problem(
            id=problem.id,
            text=problem.text,
            spans=sorted(spans.values(), key=lambda s: (s.start, s.end)),
            order_mapping=problem.order_mapping,
            gold=problem.gold,
        )
        for problem, spans in zip(problems, current)
    ]
    report = micro_f1(
        {p.id: p.spans for p in problems},
        {p.id: p.spans for p in noisy},
    )
    return noisy, report
