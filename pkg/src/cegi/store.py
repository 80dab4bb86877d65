"""Run-log ingestion, canonical export and querying.

A run log is JSONL: one object per line with exactly the :class:`RunRecord`
keys. Ingestion is all-or-nothing per file. The canonical export sorts keys,
writes numbers with 6 significant digits, and orders records by task,
model, quantization, rank and metric.
"""

from __future__ import annotations

import json
import os
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, fields
from pathlib import Path

from .analytics import RunRecord
from .errors import (
    DecodeError,
    DuplicateKey,
    IngestError,
    InvariantViolation,
    LineError,
    RecordInvalid,
)

RECORD_FIELDS = tuple(f.name for f in fields(RunRecord))
REQUIRED_FIELDS = tuple(f for f in RECORD_FIELDS if f not in ("gpt4o_score", "runs"))
STORE_FILE = "runs.jsonl"
STORE_ENV = "CEGI_STORE"


class Corpus(Sequence[RunRecord]):
    """Immutable, canonically ordered collection of run records."""

    def __init__(self, records: Iterable[RunRecord] = ()):
        ordered = sorted(records, key=lambda r: r.sort_key)
        seen: set = set()
        for r in ordered:
            if r.key in seen:
                raise DuplicateKey(0, r.key)
            seen.add(r.key)
        self._records = tuple(ordered)

    def __getitem__(self, index):
        return self._records[index]

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[RunRecord]:
        return iter(self._records)

    def __eq__(self, other) -> bool:
        return isinstance(other, Corpus) and self._records == other._records

    def __hash__(self) -> int:
        return hash(self._records)

    def __repr__(self) -> str:
        return f"Corpus({len(self)} records)"

    def tasks(self) -> list[str]:
        return sorted({r.task for r in self._records})

    def merged(self, other: Iterable[RunRecord]) -> Corpus:
        return Corpus([*self._records, *other])


@dataclass(frozen=True)
class IngestReport:
    path: str
    records: int
    failures: tuple[LineError, ...] = ()

    def summary(self) -> str:
        if self.failures:
            return f"rejected {self.path}: {len(self.failures)} invalid line(s)"
        return f"ingested {self.records} records"


def _decode_line(text: str, lineno: int) -> RunRecord:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DecodeError(lineno, f"invalid JSON ({exc.msg})") from None
    if not isinstance(obj, dict):
        raise DecodeError(lineno, "expected a JSON object")
    unknown = sorted(set(obj) - set(RECORD_FIELDS))
    if unknown:
        raise InvariantViolation(lineno, unknown[0], "unknown key")
    missing = [k for k in REQUIRED_FIELDS if k not in obj]
    if missing:
        raise InvariantViolation(lineno, missing[0], "missing")
    try:
        return RunRecord(**obj)
    except RecordInvalid as exc:
        raise InvariantViolation(lineno, exc.field, exc.reason) from None


def parse_runs(lines: Iterable[str], path: str = "<stream>") -> tuple[Corpus, IngestReport]:
    records: list[RunRecord] = []
    failures: list[LineError] = []
    seen: dict[tuple, int] = {}
    for lineno, raw in enumerate(lines, 1):
        if not raw.strip():
            continue
        try:
            record = _decode_line(raw, lineno)
        except LineError as exc:
            failures.append(exc)
            continue
        if record.key in seen:
            failures.append(DuplicateKey(lineno, record.key))
            continue
        seen[record.key] = lineno
        records.append(record)
    if failures:
        raise IngestError(path, failures)
    return Corpus(records), IngestReport(path, len(records))


def ingest_runs(path: str | Path) -> tuple[Corpus, IngestReport]:
    """Load a JSONL run log; any bad line rejects the whole file.

    Raises IngestError listing every DecodeError, DuplicateKey and
    InvariantViolation by line number. OSError propagates unchanged.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_runs(fh, str(path))
    except UnicodeDecodeError as exc:
        raise IngestError(str(path), [DecodeError(0, f"not UTF-8 ({exc.reason})")]) from None


def _format_number(value) -> str:
    if isinstance(value, int):
        return str(value)
    return format(value, ".6g")


def record_to_line(record: RunRecord) -> str:
    parts = []
    for key in sorted(RECORD_FIELDS):
        value = getattr(record, key)
        if value is None:
            rendered = "null"
        elif isinstance(value, str):
            rendered = json.dumps(value, ensure_ascii=False)
        else:
            rendered = _format_number(value)
        parts.append(f"{json.dumps(key)}: {rendered}")
    return "{" + ", ".join(parts) + "}"


def export_runs(records: Iterable[RunRecord]) -> str:
    ordered = sorted(records, key=lambda r: r.sort_key)
    return "".join(record_to_line(r) + "\n" for r in ordered)


def query(
    corpus: Iterable[RunRecord],
    *,
    task: str | None = None,
    model: str | None = None,
    metric: str | None = None,
    quant_bits: int | None = None,
    rank: int | None = None,
) -> list[RunRecord]:
    """Filter records; result ordered by task, model, quant bits, rank (then metric)."""
    out = [
        r
        for r in corpus
        if (task is None or r.task == task)
        and (model is None or r.model_id == model)
        and (metric is None or r.metric == metric)
        and (quant_bits is None or r.quant_bits == quant_bits)
        and (rank is None or r.lora_rank == rank)
    ]
    return sorted(out, key=lambda r: r.sort_key)


def store_dir(explicit: str | Path | None = None) -> Path | None:
    if explicit:
        return Path(explicit)
    env = os.environ.get(STORE_ENV)
    return Path(env) if env else None


def load_store(directory: str | Path) -> Corpus:
    path = Path(directory) / STORE_FILE
    if not path.exists():
        return Corpus()
    corpus, _ = ingest_runs(path)
    return corpus


def save_store(directory: str | Path, corpus: Iterable[RunRecord]) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / STORE_FILE
    tmp = path.with_suffix(".jsonl.tmp")
    tmp.write_text(export_runs(corpus), encoding="utf-8")
    os.replace(tmp, path)
    return path


def ingest_into_store(runs_path: str | Path, directory: str | Path) -> IngestReport:
    """Validate ``runs_path`` and merge it into the store at ``directory``.

    Keys already present in the store are reported as DuplicateKey on the
    offending line of the new file; the store is left untouched on failure.
    """
    incoming, report = ingest_runs(runs_path)
    existing = load_store(directory)
    clash = {r.key for r in existing} & {r.key for r in incoming}
    if clash:
        lines = _lines_for_keys(runs_path, clash)
        raise IngestError(str(runs_path), [DuplicateKey(n, k) for k, n in sorted(lines.items(), key=lambda kv: kv[1])])
    save_store(directory, existing.merged(incoming))
    return report


def _lines_for_keys(path: str | Path, keys: set) -> dict[tuple, int]:
    found: dict[tuple, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            if raw.strip():
                key = _decode_line(raw, lineno).key
                if key in keys:
                    found[key] = lineno
    return found
