"""Tables and plot series for gain, CEGI and emission results.

Tables render to GitHub-pipe Markdown or RFC-4180 CSV. Plot series render to
JSON only; drawing is left to external tools. Numbers are rounded half-up on
their shortest decimal representation, so 0.125 prints as 0.13 rather than
the binary-rounding 0.12.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Literal

from .analytics import (
    PRIMARY_METRIC,
    GreenerResult,
    RankingReport,
    RunRecord,
    gain_pct,
    group_by_model,
    pct_increase_from_base,
    rank_by_cegi,
    select,
)
from .errors import CegiError, EmptySelection
from .lora import ParamTable

MINUS = "−"
GAIN_PLACES = 2
CEGI_PLACES = 3
EMISSION_PLACES = 2
SCORE_PLACES = 4
ANNOTATION_PLACES = 1
SWEET_SPOT_MARK = "★"

Reference = Literal["base", "gpt4o"]
Layout = Literal["config", "model"]


def round_half_up(value: float, places: int) -> Decimal:
    if not math.isfinite(value):
        raise CegiError(f"cannot format non-finite value {value!r}")
    return Decimal(repr(value)).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


def fmt_fixed(value: float, places: int) -> str:
    return format(round_half_up(value, places), ",f").replace("-", MINUS)


def fmt_signed_pct(value: float, places: int = GAIN_PLACES) -> str:
    """``+118.75%`` / ``−9.67%``; a value that rounds to zero prints unsigned."""
    d = round_half_up(value, places)
    body = format(abs(d), ",f")
    if d > 0:
        return f"+{body}%"
    if d < 0:
        return f"{MINUS}{body}%"
    return f"{body}%"


@dataclass(frozen=True)
class ReportTable:
    title: str
    headers: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    footnotes: tuple[str, ...] = ()

    def __post_init__(self):
        width = len(self.headers)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise CegiError(f"row {i} has {len(row)} cells, expected {width}")

    def column(self, header: str) -> list[str]:
        idx = self.headers.index(header)
        return [row[idx] for row in self.rows]

    def to_markdown(self) -> str:
        def line(cells: Sequence[str]) -> str:
            return "| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |"

        out = [f"### {self.title}", "", line(self.headers), line(["---"] * len(self.headers))]
        out.extend(line(row) for row in self.rows)
        if self.footnotes:
            out.append("")
            out.extend(self.footnotes)
        return "\n".join(out) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(self.headers)
        writer.writerows(self.rows)
        return buf.getvalue()


# gains


@dataclass(frozen=True)
class GainLine:
    model_id: str
    quant_bits: int | None
    lora_rank: int | None
    reference_score: float
    ft_score: float
    gain_pct: float


def _avg(values: Iterable[float], decimals: int | None) -> float:
    values = list(values)
    if decimals is None:
        return math.fsum(values) / len(values)
    # Exact decimal mean, so a mean of 0.495 rounds to 0.50 and not 0.49.
    mean = sum(Decimal(repr(v)) for v in values) / len(values)
    return float(mean.quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_HALF_UP))


def gain_lines(
    task: str,
    corpus: Iterable[RunRecord],
    reference: Reference = "base",
    *,
    metric: str | None = None,
    gpt4o_baseline: float | None = None,
    layout: Layout = "config",
    avg_decimals: int | None = None,
) -> list[GainLine]:
    """Numeric content of a gain table.

    ``layout="config"`` yields one line per (model, quant bits, rank).
    ``layout="model"`` averages base and fine-tuned scores per model (rounded
    to ``avg_decimals`` when given) and takes the gain of those averages.
    ``gpt4o_baseline`` replaces the records' GPT-4o score as the reference.
    """
    if reference not in ("base", "gpt4o"):
        raise CegiError(f"reference must be 'base' or 'gpt4o', got {reference!r}")
    if layout not in ("config", "model"):
        raise CegiError(f"layout must be 'config' or 'model', got {layout!r}")
    records = select(corpus, task, metric)
    if not records:
        raise EmptySelection(f"no records for task {task!r}")

    def ref_of(base: float, record: RunRecord) -> float:
        if reference == "base":
            return base
        ref = gpt4o_baseline if gpt4o_baseline is not None else record.gpt4o_score
        if ref is None:
            raise CegiError(f"{record.model_id}: no GPT-4o score to compare against")
        return ref

    lines: list[GainLine] = []
    if layout == "config":
        for r in records:
            ref = ref_of(r.base_score, r)
            lines.append(
                GainLine(r.model_id, r.quant_bits, r.lora_rank, ref, r.ft_score, gain_pct(r.ft_score, ref).gain_pct)
            )
        return lines
    for model, recs in group_by_model(records).items():
        ft = _avg((r.ft_score for r in recs), avg_decimals)
        ref = ref_of(_avg((r.base_score for r in recs), avg_decimals), recs[0])
        lines.append(GainLine(model, None, None, ref, ft, gain_pct(ft, ref).gain_pct))
    return lines


def render_gain_table(
    task: str,
    corpus: Iterable[RunRecord],
    reference: Reference = "base",
    *,
    metric: str | None = None,
    gpt4o_baseline: float | None = None,
    layout: Layout = "config",
    avg_decimals: int | None = None,
) -> ReportTable:
    lines = gain_lines(
        task,
        corpus,
        reference,
        metric=metric,
        gpt4o_baseline=gpt4o_baseline,
        layout=layout,
        avg_decimals=avg_decimals,
    )
    metric = metric or PRIMARY_METRIC[task]
    ref_header = "Base" if reference == "base" else "GPT-4o"
    if layout == "config":
        headers = ("Model", "Q_b", "Rank", ref_header, "Fine-tuned", "Gain", "Note")
    else:
        headers = ("Model", ref_header, "Fine-tuned", "Gain", "Note")
    rows = []
    for ln in lines:
        note = "negative" if round_half_up(ln.gain_pct, GAIN_PLACES) < 0 else ""
        cells = [
            fmt_fixed(ln.reference_score, SCORE_PLACES),
            fmt_fixed(ln.ft_score, SCORE_PLACES),
            fmt_signed_pct(ln.gain_pct),
            note,
        ]
        head = [ln.model_id] + ([str(ln.quant_bits), str(ln.lora_rank)] if layout == "config" else [])
        rows.append(tuple(head + cells))
    title = f"{task} {metric} gain vs {'base model' if reference == 'base' else 'GPT-4o'}"
    notes = ["Gain = 100 * (fine-tuned - reference) / reference."]
    if layout == "model":
        notes.append("Scores are per-model averages over every configuration.")
    return ReportTable(title, headers, tuple(rows), tuple(notes))


# CEGI


CEGI_FOOTNOTES = (
    "CEGI = (sum of emissions / sum of gains) / mean trainable parameters (M); lower is better.",
    "Values are computed from the listed columns. Previously published CEGI magnitudes "
    "cannot be re-derived from their own inputs and are not reproduced here; only the "
    "minimum-CEGI model is expected to agree.",
)


def render_cegi_table(
    task: str,
    corpus: Iterable[RunRecord],
    param_table: ParamTable,
    *,
    metric: str | None = None,
    published: dict[str, float] | None = None,
) -> ReportTable:
    """Per-model CEGI table in ascending CEGI order with the minimum row marked.

    ``published`` optionally adds a column of externally reported CEGI values.
    """
    report = rank_by_cegi(task, corpus, param_table, metric)
    headers = ["Model", "Ranks", "Sum T_p (M)", "Mean T_p (M)", "Mean C_E (g)", "Mean G (%)", "CEGI"]
    if published is not None:
        headers.append("Published CEGI")
    headers.append("Sweet spot")
    rows = []
    for i, e in enumerate(report.entries):
        cells = [
            e.model_id,
            str(e.rank_count),
            fmt_fixed(e.sum_tp_m, 2),
            fmt_fixed(e.mean_tp_m, 2),
            fmt_fixed(e.mean_emissions_g, EMISSION_PLACES),
            fmt_fixed(e.mean_gain_pct, GAIN_PLACES),
            fmt_fixed(e.cegi, CEGI_PLACES),
        ]
        if published is not None:
            value = published.get(e.model_id)
            cells.append("" if value is None else fmt_fixed(value, 2))
        cells.append(SWEET_SPOT_MARK if i == 0 else "")
        rows.append(tuple(cells))
    return ReportTable(f"{task} CEGI ({report.metric})", tuple(headers), tuple(rows), CEGI_FOOTNOTES)


def cegi_payload(report: RankingReport) -> dict:
    return {
        "task": report.task,
        "metric": report.metric,
        "sweet_spot": report.sweet_spot,
        "rows": [asdict(e) for e in report.entries],
    }


def rank_payload(report: RankingReport) -> dict:
    return {
        "task": report.task,
        "metric": report.metric,
        "sweet_spot": report.sweet_spot,
        "ranking": [{"model_id": m, "cegi": c} for m, c in report.ordered],
    }


def render_rank_table(report: RankingReport) -> ReportTable:
    rows = tuple(
        (str(i), e.model_id, fmt_fixed(e.cegi, CEGI_PLACES), SWEET_SPOT_MARK if i == 1 else "")
        for i, e in enumerate(report.entries, 1)
    )
    return ReportTable(
        f"{report.task} ranking by CEGI ({report.metric})",
        ("Position", "Model", "CEGI", "Sweet spot"),
        rows,
        (f"sweet spot: {report.sweet_spot}",),
    )


def render_greener_table(result: GreenerResult) -> ReportTable:
    return ReportTable(
        f"{result.task} greener factor",
        ("Candidate", "Candidate C_E (g)", "Reference", "Reference C_E (g)", "Factor"),
        (
            (
                result.candidate,
                fmt_fixed(result.candidate_emissions_g, EMISSION_PLACES),
                result.reference,
                fmt_fixed(result.reference_emissions_g, EMISSION_PLACES),
                f"{fmt_fixed(result.factor, 2)}x",
            ),
        ),
        ("Factor = mean emissions of the highest-emitting model / those of the lowest.",),
    )


# emission annotations


@dataclass(frozen=True)
class Annotation:
    model_id: str
    quant_bits: int
    lora_rank: int
    emissions_g: float
    pct: float | None  # None for the base configuration

    @property
    def label(self) -> str:
        if self.pct is None:
            return "base"
        return fmt_signed_pct(self.pct, ANNOTATION_PLACES)


def emission_annotations(
    task: str, corpus: Iterable[RunRecord], *, quant_bits: int | None = None
) -> list[Annotation]:
    """Each configuration's emissions relative to the task's lowest emitter.

    Ties for the lowest value go to the first configuration in canonical
    order; the others tie at +0.0%.
    """
    records = [r for r in select(corpus, task) if quant_bits is None or r.quant_bits == quant_bits]
    if not records:
        raise EmptySelection(f"no records for task {task!r}")
    base = min(records, key=lambda r: r.emissions_g)
    return [
        Annotation(
            r.model_id,
            r.quant_bits,
            r.lora_rank,
            r.emissions_g,
            None if r is base else pct_increase_from_base(r.emissions_g, base.emissions_g),
        )
        for r in records
    ]


def render_emission_annotations(
    task: str, corpus: Iterable[RunRecord], *, quant_bits: int | None = None
) -> ReportTable:
    notes = emission_annotations(task, corpus, quant_bits=quant_bits)
    rows = tuple(
        (a.model_id, str(a.quant_bits), str(a.lora_rank), fmt_fixed(a.emissions_g, EMISSION_PLACES), a.label)
        for a in notes
    )
    scope = f" ({quant_bits}-bit)" if quant_bits else ""
    return ReportTable(
        f"{task} emissions{scope}",
        ("Model", "Q_b", "Rank", "C_E (g)", "vs base"),
        rows,
        ("Percentages are increases over the lowest-emission configuration, labeled base.",),
    )


# plot data


@dataclass(frozen=True)
class PlotPoint:
    model_id: str
    quant_bits: int
    lora_rank: int
    emissions_g: float
    score: float


@dataclass(frozen=True)
class PlotSeries:
    task: str
    points: tuple[PlotPoint, ...]
    sweet_spot: str

    def to_dict(self) -> dict:
        return {"task": self.task, "points": [asdict(p) for p in self.points], "sweet_spot": self.sweet_spot}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def render_plot_data(
    task: str, corpus: Iterable[RunRecord], param_table: ParamTable, *, metric: str | None = None
) -> PlotSeries:
    records = select(corpus, task, metric)
    if not records:
        raise EmptySelection(f"no records for task {task!r}")
    report = rank_by_cegi(task, records, param_table, metric)
    points = tuple(PlotPoint(r.model_id, r.quant_bits, r.lora_rank, r.emissions_g, r.ft_score) for r in records)
    return PlotSeries(task, points, report.sweet_spot)


def greener_payload(result: GreenerResult) -> dict:
    return asdict(result)
