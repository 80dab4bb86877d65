"""ROUGE-N, ROUGE-L and add-one smoothed BLEU over single-reference pairs.

SPICE, EA and VES need scene-graph parsing or SQL execution; they are only
ever ingested as precomputed scores through :func:`ingest_external_score`.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple, TextIO

from .errors import OutOfRange, StreamDecodeError, UnsupportedMetric

COMPUTED_METRICS = ("rouge1", "rouge2", "rougeL", "bleu")
EXTERNAL_METRICS = ("spice", "ea", "ves")
ALL_METRICS = COMPUTED_METRICS + EXTERNAL_METRICS

_SPLIT_RE = re.compile(r"[\W_]+")

Text = str | Sequence[str]


class PRF(NamedTuple):
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class MetricScore:
    metric: str
    value: float
    external: bool = False

    def __post_init__(self):
        if self.metric not in ALL_METRICS:
            raise UnsupportedMetric(f"unknown metric {self.metric!r}")
        if not 0.0 <= self.value <= 1.0:
            raise OutOfRange(f"{self.metric} score {self.value!r} outside [0, 1]")


def tokenize(text: str) -> list[str]:
    """Lowercase and split on runs of non-alphanumeric characters."""
    return [tok for tok in _SPLIT_RE.split(text.lower()) if tok]


def _tokens(text: Text) -> list[str]:
    return tokenize(text) if isinstance(text, str) else list(text)


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def _prf(overlap: float, hyp_total: float, ref_total: float) -> PRF:
    p = _ratio(overlap, hyp_total)
    r = _ratio(overlap, ref_total)
    return PRF(p, r, _ratio(2 * p * r, p + r))


def rouge_n(reference: Text, hypothesis: Text, n: int) -> PRF:
    if n < 1:
        raise ValueError("n must be >= 1")
    ref = _ngrams(_tokens(reference), n)
    hyp = _ngrams(_tokens(hypothesis), n)
    overlap = sum((ref & hyp).values())
    return _prf(overlap, sum(hyp.values()), sum(ref.values()))


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if len(a) < len(b):
        a, b = b, a
    row = [0] * (len(b) + 1)
    for x in a:
        diag = 0
        for j, y in enumerate(b, 1):
            above = row[j]
            row[j] = diag + 1 if x == y else max(above, row[j - 1])
            diag = above
    return row[-1]


def rouge_l(reference: Text, hypothesis: Text) -> PRF:
    ref = _tokens(reference)
    hyp = _tokens(hypothesis)
    return _prf(lcs_length(ref, hyp), len(hyp), len(ref))


def smoothed_bleu(reference: Text, hypothesis: Text, max_n: int = 4) -> float:
    """Sentence BLEU with add-one smoothing on zero-match orders.

    Every order whose clipped match count is zero contributes
    ``(0 + 1) / (total + 1)`` instead of zero.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    ref = _tokens(reference)
    hyp = _tokens(hypothesis)
    if not hyp:
        return 0.0
    log_sum = 0.0
    for n in range(1, max_n + 1):
        hyp_counts = _ngrams(hyp, n)
        matched = sum((hyp_counts & _ngrams(ref, n)).values())
        total = sum(hyp_counts.values())
        if matched == 0:
            matched, total = 1, total + 1
        log_sum += math.log(matched / total)
    brevity = math.exp(1 - len(ref) / len(hyp)) if len(hyp) < len(ref) else 1.0
    return brevity * math.exp(log_sum / max_n)


def ingest_external_score(metric: str, value: float) -> MetricScore:
    if metric not in EXTERNAL_METRICS:
        raise UnsupportedMetric(f"{metric!r} is not an externally computed metric")
    return MetricScore(metric, float(value), external=True)


def score_pair(metric: str, reference: str, hypothesis: str) -> MetricScore:
    if metric in EXTERNAL_METRICS:
        raise UnsupportedMetric(f"{metric} is an external-only metric and cannot be computed")
    if metric == "rouge1":
        value = rouge_n(reference, hypothesis, 1).f1
    elif metric == "rouge2":
        value = rouge_n(reference, hypothesis, 2).f1
    elif metric == "rougeL":
        value = rouge_l(reference, hypothesis).f1
    elif metric == "bleu":
        value = smoothed_bleu(reference, hypothesis)
    else:
        raise UnsupportedMetric(f"unknown metric {metric!r}")
    return MetricScore(metric, value)


def read_pairs(stream: TextIO) -> list[tuple[str, str]]:
    """Parse ``reference<TAB>hypothesis`` lines."""
    pairs = []
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise StreamDecodeError(lineno, f"expected 2 tab-separated fields, got {len(fields)}")
        pairs.append((fields[0], fields[1]))
    return pairs


def score_corpus(metric: str, pairs: Sequence[tuple[str, str]]) -> dict:
    scores = [score_pair(metric, ref, hyp) for ref, hyp in pairs]
    mean = math.fsum(s.value for s in scores) / len(scores) if scores else 0.0
    return {
        "metric": metric,
        "pairs": [{"index": i, "metric": s.metric, "value": s.value} for i, s in enumerate(scores)],
        "mean": mean,
    }
