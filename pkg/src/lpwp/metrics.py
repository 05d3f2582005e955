"""Declaration-level accuracy and span micro-F1.

Accuracy over a corpus of N examples:

    accuracy = 1 - (sum_i FP_i + FN_i) / (sum_i D_i)

where D_i counts ground-truth declarations, FP_i non-matched predictions and
FN_i unmatched ground-truth declarations. Matching is one-to-one under
canonical equality; since that equality is an equivalence relation, greedy
multiset intersection realizes the maximum matching.
"""

from collections import Counter
from dataclasses import dataclass

from .canonical import DEFAULT_TOLERANCE, declarations_equal
from .errors import ValidationError


@dataclass
class ExampleScore:
    id: str
    d: int   # ground-truth declaration count
    fp: int  # non-matched predicted declarations
    fn: int  # unmatched ground-truth declarations


@dataclass
class ScoreReport:
    per_example: list  # ExampleScore
    n_examples: int
    accuracy: float

    def as_json_dict(self) -> dict:
        return {
            "per_example": [
                {"id": e.id, "D": e.d, "FP": e.fp, "FN": e.fn}
                for e in self.per_example
            ],
            "n_examples": self.n_examples,
            "accuracy": self.accuracy,
        }


@dataclass
class F1Report:
    true_positives: int
    false_positives: int
    false_negatives: int
    precision: float
    recall: float
    f1: float

    def as_json_dict(self) -> dict:
        return {
            "true_positives": self.true_positives,
            "false_positives": self.false_positives,
            "false_negatives": self.false_negatives,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


def _match_count(pred, gold, mapping, tol) -> int:
    """Size of a maximum one-to-one matching under canonical equality."""
    unmatched = list(gold)
    matched = 0
    for p in pred:
        for i, g in enumerate(unmatched):
            if declarations_equal(p, g, mapping, tol):
                del unmatched[i]
                matched += 1
                break
    return matched


def score_accuracy(gold, pred, mappings, tol=DEFAULT_TOLERANCE) -> ScoreReport:
    """Score per-example predicted declarations against gold.

    ``gold``, ``pred`` and ``mappings`` are keyed by example id; an id
    missing from ``pred`` counts as zero predicted declarations.
    """
    unknown = set(pred) - set(gold)
    if unknown:
        raise ValidationError(
            f"prediction ids not present in gold: {sorted(unknown)}"
        )
    per_example = []
    total_d = total_errors = 0
    for example_id, gold_decls in gold.items():
        pred_decls = pred.get(example_id, [])
        matched = _match_count(
            pred_decls, gold_decls, mappings[example_id], tol
        )
        score = ExampleScore(
            id=example_id,
            d=len(gold_decls),
            fp=len(pred_decls) - matched,
            fn=len(gold_decls) - matched,
        )
        per_example.append(score)
        total_d += score.d
        total_errors += score.fp + score.fn
    if total_d == 0:
        if total_errors:
            raise ValidationError(
                "accuracy undefined: corpus has no gold declarations but "
                "predictions are non-empty"
            )
        accuracy = 1.0
    else:
        accuracy = 1.0 - total_errors / total_d
    return ScoreReport(per_example, len(per_example), accuracy)


def micro_f1(reference, hypothesis) -> F1Report:
    """Micro-averaged span F1 with exact (start, end, label) matching.

    Both arguments map example ids to span lists; duplicated spans match
    with multiplicity.
    """
    if set(reference) != set(hypothesis):
        raise ValidationError(
            "reference and hypothesis example ids differ: "
            f"{sorted(set(reference) ^ set(hypothesis))}"
        )
    tp = fp = fn = 0
    for example_id, ref_spans in reference.items():
        ref_counts = Counter((s.start, s.end, s.label) for s in ref_spans)
        hyp_counts = Counter(
            (s.start, s.end, s.label) for s in hypothesis[example_id]
        )
        common = sum((ref_counts & hyp_counts).values())
        tp += common
        fp += sum(hyp_counts.values()) - common
        fn += sum(ref_counts.values()) - common
    precision = tp / (tp + fp) if tp + fp else (1.0 if fn == 0 else 0.0)
    recall = tp / (tp + fn) if tp + fn else (1.0 if fp == 0 else 0.0)
    f1 = 2 * tp / (2 * tp + fp + fn) if tp + fp + fn else 1.0
    return F1Report(tp, fp, fn, precision, recall, f1)
