"""LoRA trainable-parameter accounting.

A rank-r adapter on a frozen ``d_out x d_in`` weight adds ``B`` (d_out x r)
and ``A`` (r x d_in), i.e. ``r * (d_out + d_in)`` trainable entries. Nothing
here materializes either matrix.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from .errors import CegiError, MissingParamEntry, RankExceedsDim, StreamDecodeError

PARAM_CSV_HEADER = ("model_size", "rank", "trainable_params_m")

_SIZE_RE = re.compile(r"(\d+(?:\.\d+)?)\s*[Bb]\b")


@dataclass(frozen=True)
class ModuleShape:
    name: str
    d_out: int
    d_in: int

    def __post_init__(self):
        if self.d_out < 1 or self.d_in < 1:
            raise CegiError(f"module {self.name!r}: dimensions must be >= 1")


@dataclass(frozen=True)
class ArchSpec:
    model_id: str
    num_layers: int
    per_layer_modules: tuple[ModuleShape, ...]

    def __post_init__(self):
        if self.num_layers < 1:
            raise CegiError(f"{self.model_id}: num_layers must be >= 1")
        names = [m.name for m in self.per_layer_modules]
        if len(set(names)) != len(names):
            raise CegiError(f"{self.model_id}: module names must be unique within a layer")


@dataclass(frozen=True)
class LoraConfig:
    """Adapter hyper-parameters. ``alpha``, ``dropout`` and ``quant_bits`` are
    carried as metadata; only ``rank`` affects counting."""

    rank: int
    alpha: float = 16
    dropout: float = 0.05
    quant_bits: int = 4

    def __post_init__(self):
        if self.rank < 1:
            raise CegiError("rank must be >= 1")
        if self.quant_bits not in (4, 8):
            raise CegiError(f"quant_bits must be 4 or 8, got {self.quant_bits!r}")
        if not 0 <= self.dropout < 1:
            raise CegiError("dropout must be in [0, 1)")

    def validate_for(self, arch: ArchSpec) -> None:
        for m in arch.per_layer_modules:
            if self.rank > min(m.d_out, m.d_in):
                raise RankExceedsDim(m.name, self.rank, m.d_out, m.d_in)


@dataclass(frozen=True)
class TrainableParamCount:
    params: int

    @property
    def millions(self) -> float:
        return self.params / 1e6


def decomposed_params(shape: ModuleShape, rank: int) -> int:
    if rank < 1 or rank > min(shape.d_out, shape.d_in):
        raise RankExceedsDim(shape.name, rank, shape.d_out, shape.d_in)
    return rank * (shape.d_out + shape.d_in)


def total_trainable_params(arch: ArchSpec, rank: int) -> TrainableParamCount:
    per_layer = sum(decomposed_params(m, rank) for m in arch.per_layer_modules)
    return TrainableParamCount(arch.num_layers * per_layer)


def load_arch_spec(path: str | Path) -> ArchSpec:
    """Read ``{model_id, num_layers, modules: [{name, d_out, d_in}]}``."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        modules = tuple(
            ModuleShape(str(m["name"]), int(m["d_out"]), int(m["d_in"])) for m in data["modules"]
        )
        return ArchSpec(str(data["model_id"]), int(data["num_layers"]), modules)
    except (KeyError, TypeError) as exc:
        raise CegiError(f"{path}: malformed architecture spec ({exc})") from None


def model_size_b(model_id: str) -> float:
    """Parameter scale in billions parsed from an identifier like ``Qwen2.5-0.5B``."""
    matches = _SIZE_RE.findall(model_id)
    if not matches:
        raise CegiError(f"cannot infer model size from {model_id!r}")
    return float(matches[-1])


@dataclass
class ParamTable:
    """Trainable parameters in millions keyed by (model size in billions, rank).

    ``mean_overrides`` pins the mean for specific model ids when a published
    per-model figure disagrees with the per-rank entries.
    """

    entries: dict[tuple[float, int], float]
    mean_overrides: dict[str, float] = field(default_factory=dict)

    def lookup(self, model_id: str, rank: int) -> float:
        try:
            return self.entries[(model_size_b(model_id), rank)]
        except (KeyError, CegiError):
            raise MissingParamEntry(model_id, rank) from None

    def rows(self) -> list[tuple[float, int, float]]:
        return sorted((size, rank, m) for (size, rank), m in self.entries.items())


def mean_trainable_params(model_id: str, ranks, param_table: ParamTable) -> float:
    """Mean T_p (millions) over the given LoRA ranks."""
    ranks = sorted(set(ranks))
    if not ranks:
        raise CegiError("at least one rank is required")
    values = [param_table.lookup(model_id, r) for r in ranks]
    if model_id in param_table.mean_overrides:
        return param_table.mean_overrides[model_id]
    return sum(values) / len(values)


def read_param_table(stream: TextIO) -> ParamTable:
    """Parse a ``model_size,rank,trainable_params_m`` CSV stream."""
    entries: dict[tuple[float, int], float] = {}
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != PARAM_CSV_HEADER:
        raise StreamDecodeError(1, f"expected header {','.join(PARAM_CSV_HEADER)!r}")
    for row in reader:
        if not row:
            continue
        try:
            size_text = row[0].strip()
            size = model_size_b(size_text) if size_text[-1:] in ("b", "B") else float(size_text)
            entries[(size, int(row[1]))] = float(row[2])
        except (IndexError, ValueError) as exc:
            raise StreamDecodeError(reader.line_num, str(exc)) from None
    return ParamTable(entries)


def load_param_table(path: str | Path) -> ParamTable:
    with open(path, newline="", encoding="utf-8") as fh:
        return read_param_table(fh)


def format_size(size_b: float) -> str:
    return f"{size_b:.1f}B"


def write_param_table(table: ParamTable, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(PARAM_CSV_HEADER)
    for size, rank, m in table.rows():
        writer.writerow([format_size(size), rank, f"{m:g}"])
