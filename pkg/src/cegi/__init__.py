"""Carbon-efficiency accounting for LoRA fine-tuning runs.

Models are ranked by the grams of CO2 spent per percentage point of
performance gain, normalized by the number of trainable adapter parameters.
"""

from __future__ import annotations

from .analytics import (
    PRIMARY_METRIC,
    TASKS,
    CegiResult,
    RunRecord,
    avg_gain,
    cegi,
    emission_per_unit_gain,
    gain_pct,
    greener_factor,
    rank_by_cegi,
    task_greener_factor,
)
from .emissions import (
    EmissionProfile,
    EnergyLedger,
    PowerSample,
    carbon_footprint,
    integrate_energy,
    track_replay,
)
from .errors import CegiError
from .lora import ArchSpec, LoraConfig, ModuleShape, ParamTable, total_trainable_params
from .metrics import rouge_l, rouge_n, score_pair, smoothed_bleu
from .store import Corpus, export_runs, ingest_runs, query

__all__ = [
    "PRIMARY_METRIC",
    "TASKS",
    "ArchSpec",
    "CegiError",
    "CegiResult",
    "Corpus",
    "EmissionProfile",
    "EnergyLedger",
    "LoraConfig",
    "ModuleShape",
    "ParamTable",
    "PowerSample",
    "RunRecord",
    "avg_gain",
    "carbon_footprint",
    "cegi",
    "emission_per_unit_gain",
    "export_runs",
    "gain_pct",
    "greener_factor",
    "ingest_runs",
    "integrate_energy",
    "query",
    "rank_by_cegi",
    "rouge_l",
    "rouge_n",
    "score_pair",
    "smoothed_bleu",
    "task_greener_factor",
    "total_trainable_params",
    "track_replay",
]
