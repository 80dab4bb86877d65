"""Gains, emission per unit gain, and the Carbon Efficient Gain Index.

For one model and metric, over the (quantization, rank) configurations present:

    G      = 100 * (fine_tuned - base) / base              per configuration
    G_mean = mean(G)
    g_o    = sum(C_E) / sum(G)           (== mean(C_E) / G_mean)
    CEGI   = g_o * |L_r| / sum_{L_r}(T_p) (== g_o / mean(T_p))

Lower CEGI is better. Sums use :func:`math.fsum`, which is exactly rounded,
so results do not depend on record order.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Literal

from .errors import (
    CegiError,
    EmptySelection,
    NonPositiveBase,
    NonPositiveCandidate,
    NonPositiveReference,
    NonPositiveTotalGain,
    RecordInvalid,
)
from .lora import ParamTable, mean_trainable_params, model_size_b
from .metrics import ALL_METRICS

TASKS = ("image_captioning", "visual_qa", "summarization", "text_to_sql")

# metric each task is ranked on; the others are carried for reporting only
PRIMARY_METRIC = {
    "image_captioning": "spice",
    "visual_qa": "bleu",
    "summarization": "rouge1",
    "text_to_sql": "ea",
}


@dataclass(frozen=True)
class RunRecord:
    """One fine-tuning configuration, averaged over ``runs`` repetitions."""

    model_id: str
    task: str
    quant_bits: int
    lora_rank: int
    metric: str
    base_score: float
    ft_score: float
    emissions_g: float
    trainable_params_m: float
    gpt4o_score: float | None = None
    runs: int = 5

    def __post_init__(self):
        problem = self.validate()
        if problem is not None:
            raise RecordInvalid(*problem)

    def validate(self) -> tuple[str, str] | None:
        """Return ``(field, reason)`` for the first broken invariant, if any."""
        if not isinstance(self.model_id, str) or not self.model_id:
            return "model_id", "must be a non-empty string"
        if self.task not in TASKS:
            return "task", f"must be one of {', '.join(TASKS)}"
        if self.quant_bits not in (4, 8) or isinstance(self.quant_bits, bool):
            return "quant_bits", "must be 4 or 8"
        if not isinstance(self.lora_rank, int) or isinstance(self.lora_rank, bool) or self.lora_rank < 1:
            return "lora_rank", "must be a positive integer"
        if self.metric not in ALL_METRICS:
            return "metric", f"must be one of {', '.join(ALL_METRICS)}"
        for name in ("base_score", "ft_score", "gpt4o_score"):
            value = getattr(self, name)
            if value is None and name == "gpt4o_score":
                continue
            if not _is_real(value) or not 0.0 <= value <= 1.0:
                return name, "must be a number in [0, 1]"
        if not _is_real(self.emissions_g) or self.emissions_g < 0:
            return "emissions_g", "must be a number >= 0"
        if not _is_real(self.trainable_params_m) or self.trainable_params_m <= 0:
            return "trainable_params_m", "must be a number > 0"
        if not isinstance(self.runs, int) or isinstance(self.runs, bool) or self.runs < 1:
            return "runs", "must be a positive integer"
        return None

    @property
    def key(self) -> tuple[str, str, str, int, int]:
        return (self.model_id, self.task, self.metric, self.quant_bits, self.lora_rank)

    @property
    def sort_key(self) -> tuple:
        return (self.task, self.model_id, self.quant_bits, self.lora_rank, self.metric)


def _is_real(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


@dataclass(frozen=True)
class GainResult:
    gain_pct: float
    target_ref: Literal["base", "gpt4o"] = "base"


@dataclass(frozen=True)
class AggregateGain:
    mean_gain_pct: float
    config_count: int
    mean_emissions_g: float


@dataclass(frozen=True)
class CegiResult:
    model_id: str
    g_o: float
    mean_tp_m: float
    cegi: float
    sum_emissions_g: float
    sum_gain_pct: float
    rank_count: int
    sum_tp_m: float
    mean_emissions_g: float
    mean_gain_pct: float
    config_count: int


@dataclass(frozen=True)
class RankingReport:
    task: str
    metric: str
    entries: tuple[CegiResult, ...]

    @property
    def ordered(self) -> list[tuple[str, float]]:
        return [(e.model_id, e.cegi) for e in self.entries]

    @property
    def sweet_spot(self) -> str:
        return self.entries[0].model_id


def gain_pct(target_score: float, reference_score: float, target_ref: str = "base") -> GainResult:
    if not reference_score > 0:
        raise NonPositiveReference(f"reference score must be > 0, got {reference_score!r}")
    return GainResult(100.0 * (target_score - reference_score) / reference_score, target_ref)


def _check_group(records: Sequence[RunRecord]) -> None:
    if not records:
        raise EmptySelection("no records selected")
    groups = {(r.model_id, r.task, r.metric) for r in records}
    if len(groups) > 1:
        raise CegiError(f"records span several (model, task, metric) groups: {sorted(groups)}")


def _gains(records: Iterable[RunRecord]) -> list[float]:
    return [gain_pct(r.ft_score, r.base_score).gain_pct for r in records]


def avg_gain(records: Sequence[RunRecord]) -> AggregateGain:
    records = list(records)
    _check_group(records)
    n = len(records)
    return AggregateGain(
        mean_gain_pct=math.fsum(_gains(records)) / n,
        config_count=n,
        mean_emissions_g=math.fsum(r.emissions_g for r in records) / n,
    )


def emission_per_unit_gain(records: Sequence[RunRecord]) -> float:
    """Grams of CO2 per percentage point of gain over base."""
    records = list(records)
    _check_group(records)
    total_gain = math.fsum(_gains(records))
    if not total_gain > 0:
        raise NonPositiveTotalGain(f"total gain must be > 0, got {total_gain!r}")
    return math.fsum(r.emissions_g for r in records) / total_gain


def cegi(records: Sequence[RunRecord], param_table: ParamTable) -> CegiResult:
    records = list(records)
    g_o = emission_per_unit_gain(records)
    agg = avg_gain(records)
    model_id = records[0].model_id
    ranks = sorted({r.lora_rank for r in records})
    mean_tp = mean_trainable_params(model_id, ranks, param_table)
    if not mean_tp > 0:
        raise CegiError(f"mean trainable parameters must be > 0 for {model_id}")
    return CegiResult(
        model_id=model_id,
        g_o=g_o,
        mean_tp_m=mean_tp,
        cegi=g_o / mean_tp,
        sum_emissions_g=math.fsum(r.emissions_g for r in records),
        sum_gain_pct=math.fsum(_gains(records)),
        rank_count=len(ranks),
        sum_tp_m=mean_tp * len(ranks),
        mean_emissions_g=agg.mean_emissions_g,
        mean_gain_pct=agg.mean_gain_pct,
        config_count=agg.config_count,
    )


def select(records: Iterable[RunRecord], task: str, metric: str | None = None) -> list[RunRecord]:
    metric = metric or PRIMARY_METRIC.get(task)
    chosen = [r for r in records if r.task == task and r.metric == metric]
    return sorted(chosen, key=lambda r: r.sort_key)


def group_by_model(records: Iterable[RunRecord]) -> dict[str, list[RunRecord]]:
    groups: dict[str, list[RunRecord]] = {}
    for r in sorted(records, key=lambda r: r.sort_key):
        groups.setdefault(r.model_id, []).append(r)
    return groups


def rank_by_cegi(
    task: str, corpus: Iterable[RunRecord], param_table: ParamTable, metric: str | None = None
) -> RankingReport:
    """Order the task's models by ascending CEGI.

    Ties go to lower mean emissions, then to the lexicographically smaller id.
    """
    if task not in TASKS:
        raise CegiError(f"unknown task {task!r}")
    metric = metric or PRIMARY_METRIC[task]
    groups = group_by_model(select(corpus, task, metric))
    if not groups:
        raise EmptySelection(f"no {metric} records for task {task!r}")
    results = [cegi(recs, param_table) for recs in groups.values()]
    results.sort(key=lambda c: (c.cegi, c.mean_emissions_g, c.model_id))
    return RankingReport(task, metric, tuple(results))


def greener_factor(candidate_emissions_g: float, reference_emissions_g: float) -> float:
    if not candidate_emissions_g > 0:
        raise NonPositiveCandidate(f"candidate emissions must be > 0, got {candidate_emissions_g!r}")
    return reference_emissions_g / candidate_emissions_g


@dataclass(frozen=True)
class GreenerResult:
    task: str
    candidate: str
    candidate_emissions_g: float
    reference: str
    reference_emissions_g: float
    factor: float


def task_greener_factor(task: str, corpus: Iterable[RunRecord]) -> GreenerResult:
    """Lowest- versus highest-emitting model of a task, by mean emissions."""
    groups = group_by_model(select(corpus, task))
    if not groups:
        raise EmptySelection(f"no records for task {task!r}")
    means = sorted(
        ((math.fsum(r.emissions_g for r in recs) / len(recs), model) for model, recs in groups.items())
    )
    (low, low_id), (high, high_id) = means[0], means[-1]
    return GreenerResult(task, low_id, low, high_id, high, greener_factor(low, high))


def pct_increase_from_base(emissions_g: float, base_emissions_g: float) -> float:
    if not base_emissions_g > 0:
        raise NonPositiveBase(f"base emissions must be > 0, got {base_emissions_g!r}")
    return 100.0 * (emissions_g - base_emissions_g) / base_emissions_g


def params_from_records(records: Iterable[RunRecord]) -> ParamTable:
    """Parameter table keyed by model size and rank, read off the records.

    Records of the same size and rank must agree on ``trainable_params_m``.
    """
    entries: dict[tuple[float, int], float] = {}
    for r in records:
        key = (model_size_b(r.model_id), r.lora_rank)
        if key in entries and entries[key] != r.trainable_params_m:
            raise CegiError(
                f"conflicting trainable_params_m for {r.model_id} rank {r.lora_rank}: "
                f"{entries[key]} vs {r.trainable_params_m}"
            )
        entries[key] = r.trainable_params_m
    return ParamTable(entries)
