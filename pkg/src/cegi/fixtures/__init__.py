"""Shipped transcription of the published experiment tables.

:func:`load_paper_fixtures` verifies every data file against its recorded
SHA-256 before parsing and caches the immutable result.
"""

from __future__ import annotations

import functools
import hashlib
import io
import json
from dataclasses import dataclass
from importlib import resources
from types import MappingProxyType
from typing import Mapping

from ..errors import ChecksumMismatch
from ..lora import ParamTable, read_param_table
from ..store import Corpus, parse_runs

RUNS_FILE = "runs.jsonl"
PARAMS_FILE = "trainable_params.csv"
PUBLISHED_FILE = "published.json"
CHECKSUM_FILE = "checksums.json"


@dataclass(frozen=True)
class GainRow:
    model_id: str
    lora_rank: int | None
    base_score: float
    ft_score: float
    gain_vs_base_pct: float
    gain_vs_gpt4o_pct: float


@dataclass(frozen=True)
class GainConvention:
    layout: str
    gpt4o_baseline: float
    avg_decimals: int | None


@dataclass(frozen=True)
class AnnotationRow:
    model_id: str
    lora_rank: int
    quant_bits: int
    emissions_g: float
    annotation_pct: float | None  # None marks the printed "base" row


@dataclass(frozen=True)
class CegiRow:
    model_id: str
    mean_tp_m: float
    mean_emissions_g: float
    mean_gain_pct: float
    cegi: float
    highlighted: bool


@dataclass(frozen=True)
class GreenerQuote:
    candidate: str
    reference: str
    factor: float


@dataclass(frozen=True)
class FixtureSet:
    corpus: Corpus
    params: ParamTable
    gain_tables: Mapping[str, tuple[GainRow, ...]]
    gain_conventions: Mapping[str, GainConvention]
    annotations: Mapping[str, tuple[AnnotationRow, ...]]
    cegi_tables: Mapping[str, tuple[CegiRow, ...]]
    greener_quoted: Mapping[str, GreenerQuote]

    def highlighted(self, task: str) -> str:
        return next(r.model_id for r in self.cegi_tables[task] if r.highlighted)

    def published_cegi(self, task: str) -> dict[str, float]:
        return {r.model_id: r.cegi for r in self.cegi_tables[task]}


def read_data(name: str) -> bytes:
    return resources.files(__package__).joinpath("data", name).read_bytes()


def verify_checksums(read=read_data) -> None:
    expected = json.loads(read(CHECKSUM_FILE))
    for name, digest in expected.items():
        actual = hashlib.sha256(read(name)).hexdigest()
        if actual != digest:
            raise ChecksumMismatch(f"fixture file {name} is corrupted (sha256 {actual[:12]}...)")


def _by_task(raw: dict, cls) -> Mapping[str, tuple]:
    return MappingProxyType({task: tuple(cls(**row) for row in rows) for task, rows in raw.items()})


def build_fixture_set(read=read_data) -> FixtureSet:
    verify_checksums(read)
    corpus, _ = parse_runs(io.StringIO(read(RUNS_FILE).decode("utf-8")), RUNS_FILE)
    published = json.loads(read(PUBLISHED_FILE))
    table = read_param_table(io.StringIO(read(PARAMS_FILE).decode("utf-8")))
    params = ParamTable(table.entries, dict(published["mean_tp_overrides"]))
    return FixtureSet(
        corpus=corpus,
        params=params,
        gain_tables=_by_task(published["gain_tables"], GainRow),
        gain_conventions=MappingProxyType(
            {t: GainConvention(**c) for t, c in published["gain_conventions"].items()}
        ),
        annotations=_by_task(published["annotations"], AnnotationRow),
        cegi_tables=_by_task(published["cegi_tables"], CegiRow),
        greener_quoted=MappingProxyType(
            {t: GreenerQuote(**q) for t, q in published["greener_quoted"].items()}
        ),
    )


@functools.lru_cache(maxsize=1)
def load_paper_fixtures() -> FixtureSet:
    return build_fixture_set()
