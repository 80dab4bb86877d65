"""Energy integration of power telemetry and carbon-footprint accounting.

Power samples are integrated per channel with the trapezoidal rule and
converted from watt-seconds to MWh. The footprint is::

    CF [kg] = gamma [kg/MWh] * PUE * (E_cpu + E_gpu + E_ram) [MWh]
"""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from .errors import (
    CegiError,
    NegativePower,
    NonMonotonicTimestamps,
    StreamDecodeError,
    UnknownRegion,
)

WATT_SECONDS_PER_MWH = 3.6e9
POWER_CSV_HEADER = ("t_s", "cpu_w", "gpu_w", "ram_w")
INTENSITY_CSV_HEADER = ("region_code", "gamma_kg_per_mwh")
CHANNELS = ("cpu_w", "gpu_w", "ram_w")


@dataclass(frozen=True)
class PowerSample:
    """One telemetry reading: time in seconds, per-channel draw in watts."""

    t: float
    cpu_w: float
    gpu_w: float
    ram_w: float


@dataclass(frozen=True)
class EnergyLedger:
    """Integrated energy per channel, in MWh."""

    e_cpu: float = 0.0
    e_gpu: float = 0.0
    e_ram: float = 0.0

    def __post_init__(self):
        for name in ("e_cpu", "e_gpu", "e_ram"):
            value = getattr(self, name)
            if not value >= 0:
                raise CegiError(f"{name} must be >= 0, got {value!r}")

    def total(self) -> float:
        return self.e_cpu + self.e_gpu + self.e_ram

    def __add__(self, other: EnergyLedger) -> EnergyLedger:
        return EnergyLedger(
            self.e_cpu + other.e_cpu, self.e_gpu + other.e_gpu, self.e_ram + other.e_ram
        )


@dataclass(frozen=True)
class EmissionProfile:
    gamma: float
    pue: float = 1.0
    region_code: str = ""

    def __post_init__(self):
        if not (self.gamma >= 0 and math.isfinite(self.gamma)):
            raise CegiError(f"gamma must be a finite value >= 0, got {self.gamma!r}")
        if not (self.pue >= 1.0 and math.isfinite(self.pue)):
            raise CegiError(f"PUE must be >= 1.0, got {self.pue!r}")


@dataclass(frozen=True)
class EmissionReading:
    cf_kg: float
    cf_g: float
    ledger: EnergyLedger
    profile: EmissionProfile


class EnergyAccumulator:
    """Streaming trapezoidal integrator.

    Holds only the previous sample, so arbitrarily long traces can be
    consumed one sample at a time.
    """

    def __init__(self):
        self._prev: PowerSample | None = None
        self._count = 0
        # watt-seconds per channel
        self._ws = [0.0, 0.0, 0.0]

    @property
    def sample_count(self) -> int:
        return self._count

    def add(self, sample: PowerSample) -> None:
        index = self._count
        if not math.isfinite(sample.t):
            raise CegiError(f"sample {index}: timestamp must be finite, got {sample.t!r}")
        watts = (sample.cpu_w, sample.gpu_w, sample.ram_w)
        for channel, w in zip(CHANNELS, watts):
            if not w >= 0:
                raise NegativePower(index, channel, w)
        prev = self._prev
        if prev is not None:
            if not sample.t > prev.t:
                raise NonMonotonicTimestamps(index, prev.t, sample.t)
            dt = sample.t - prev.t
            prev_watts = (prev.cpu_w, prev.gpu_w, prev.ram_w)
            for i in range(3):
                self._ws[i] += 0.5 * (prev_watts[i] + watts[i]) * dt
        self._prev = sample
        self._count += 1

    def ledger(self) -> EnergyLedger:
        cpu, gpu, ram = (ws / WATT_SECONDS_PER_MWH for ws in self._ws)
        return EnergyLedger(cpu, gpu, ram)


def integrate_energy(samples: Iterable[PowerSample]) -> EnergyLedger:
    """Integrate an ordered sample stream into per-channel MWh.

    Empty and single-sample streams have no interval and yield a zero ledger.
    Raises NonMonotonicTimestamps on any t[i+1] <= t[i] and NegativePower on
    any negative reading.
    """
    acc = EnergyAccumulator()
    for sample in samples:
        acc.add(sample)
    return acc.ledger()


def carbon_footprint(profile: EmissionProfile, ledger: EnergyLedger) -> EmissionReading:
    cf_kg = profile.gamma * profile.pue * ledger.total()
    return EmissionReading(cf_kg=cf_kg, cf_g=cf_kg * 1000.0, ledger=ledger, profile=profile)


def lookup_gamma(
    region_code: str, intensity_table: dict[str, float], default: float | None = None
) -> float:
    if region_code in intensity_table:
        return intensity_table[region_code]
    if default is not None:
        return default
    raise UnknownRegion(region_code)


def _parse_float(text: str, line: int, column: str) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise StreamDecodeError(line, f"column {column!r}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise StreamDecodeError(line, f"column {column!r}: not finite: {text!r}")
    return value


def read_power_csv(stream: TextIO) -> Iterator[PowerSample]:
    """Lazily decode a ``t_s,cpu_w,gpu_w,ram_w`` CSV stream.

    Line numbers in errors are 1-based physical lines, header included.
    """
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        return
    if tuple(h.strip() for h in header) != POWER_CSV_HEADER:
        raise StreamDecodeError(1, f"expected header {','.join(POWER_CSV_HEADER)!r}")
    for row in reader:
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(POWER_CSV_HEADER):
            raise StreamDecodeError(line, f"expected 4 fields, got {len(row)}")
        t, cpu, gpu, ram = (
            _parse_float(cell, line, col) for cell, col in zip(row, POWER_CSV_HEADER)
        )
        yield PowerSample(t, cpu, gpu, ram)


def track_replay(
    sample_stream: Iterable[PowerSample] | TextIO, profile: EmissionProfile
) -> EmissionReading:
    """Replay a recorded trace and return its footprint.

    ``sample_stream`` is either an iterable of samples or a text stream in the
    power-sample CSV format. Samples are consumed one at a time.
    """
    if hasattr(sample_stream, "readline"):
        sample_stream = read_power_csv(sample_stream)  # type: ignore[arg-type]
    acc = EnergyAccumulator()
    for sample in sample_stream:
        acc.add(sample)
    return carbon_footprint(profile, acc.ledger())


def write_power_csv(samples: Iterable[PowerSample], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(POWER_CSV_HEADER)
    for s in samples:
        writer.writerow([repr(s.t), repr(s.cpu_w), repr(s.gpu_w), repr(s.ram_w)])


def load_intensity_table(path: str | Path) -> dict[str, float]:
    """Read a ``region_code,gamma_kg_per_mwh`` CSV into a dict."""
    table: dict[str, float] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != INTENSITY_CSV_HEADER:
            raise StreamDecodeError(1, f"expected header {','.join(INTENSITY_CSV_HEADER)!r}")
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            if len(row) != 2:
                raise StreamDecodeError(line, f"expected 2 fields, got {len(row)}")
            code = row[0].strip()
            gamma = _parse_float(row[1], line, "gamma_kg_per_mwh")
            if gamma < 0:
                raise StreamDecodeError(line, f"negative intensity for {code!r}")
            table[code] = gamma
    return table
