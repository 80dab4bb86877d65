"""Exception hierarchy.

Every domain error derives from :class:`CegiError` (a ``ValueError``) so the
CLI can map it to exit code 1. Decoding and I/O problems derive from
:class:`InputDecodeError` and map to exit code 2.
"""

from __future__ import annotations


class CegiError(ValueError):
    """Base class for validation and domain errors."""


class InputDecodeError(CegiError):
    """A file or stream could not be decoded."""


# emissions


class NonMonotonicTimestamps(CegiError):
    def __init__(self, index: int, previous: float, current: float):
        self.index = index
        super().__init__(
            f"timestamps must be strictly increasing: sample {index} has t={current!r} "
            f"after t={previous!r}"
        )


class NegativePower(CegiError):
    def __init__(self, index: int, channel: str, watts: float):
        self.index = index
        self.channel = channel
        super().__init__(f"sample {index}: negative {channel} reading {watts!r} W")


class UnknownRegion(CegiError):
    def __init__(self, region_code: str):
        self.region_code = region_code
        super().__init__(f"no emission intensity for region {region_code!r}")


class StreamDecodeError(InputDecodeError):
    def __init__(self, line: int, reason: str):
        self.line = line
        super().__init__(f"line {line}: {reason}")


# lora


class RankExceedsDim(CegiError):
    def __init__(self, module: str, rank: int, d_out: int, d_in: int):
        self.module = module
        super().__init__(
            f"rank {rank} exceeds min(d_out, d_in) = {min(d_out, d_in)} for module {module!r}"
        )


class MissingParamEntry(CegiError):
    def __init__(self, model_id: str, rank: int):
        self.model_id = model_id
        self.rank = rank
        super().__init__(f"no trainable-parameter entry for {model_id!r} at rank {rank}")


# metrics


class OutOfRange(CegiError):
    pass


class UnsupportedMetric(CegiError):
    pass


# analytics


class NonPositiveReference(CegiError):
    pass


class NonPositiveTotalGain(CegiError):
    pass


class NonPositiveCandidate(CegiError):
    pass


class NonPositiveBase(CegiError):
    pass


class EmptySelection(CegiError):
    pass


# corpus store


class RecordInvalid(CegiError):
    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


class LineError(CegiError):
    """A single bad line of a run log."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DecodeError(LineError):
    pass


class DuplicateKey(LineError):
    def __init__(self, line: int, key: tuple):
        self.key = key
        super().__init__(line, f"duplicate record key {key}")


class InvariantViolation(LineError):
    def __init__(self, line: int, field: str, reason: str):
        self.field = field
        super().__init__(line, f"field {field!r}: {reason}")


class IngestError(CegiError):
    """Raised when any line of a run log fails; nothing from the file is loaded."""

    def __init__(self, path: str, failures: list[LineError]):
        self.path = path
        self.failures = failures
        lines = ", ".join(str(f.line) for f in failures)
        super().__init__(f"{path}: {len(failures)} invalid line(s): {lines}")

    @property
    def has_decode_errors(self) -> bool:
        return any(isinstance(f, DecodeError) for f in self.failures)


class ChecksumMismatch(CegiError):
    pass
