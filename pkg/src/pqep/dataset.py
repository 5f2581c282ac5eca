"""Measurement data model, CSV/JSON (de)serialization and consistency checks.

All values are held in SI units (cycles as absolute counts, watts, joules,
hertz). Unit conversion to the tabular presentation (millions of cycles,
milliwatts) happens only in :func:`parse_dataset` / :func:`serialize_dataset`,
and goes through :class:`decimal.Decimal` so that a round trip is bit-exact.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from enum import Enum, IntEnum
from importlib import resources
from typing import Iterable, Optional

__all__ = [
    "SecurityLevel",
    "Kind",
    "Severity",
    "Measurement",
    "AlgorithmRecord",
    "Platform",
    "ValidationFinding",
    "DatasetError",
    "ParseError",
    "FieldError",
    "DatasetValueError",
    "CSV_COLUMNS",
    "REFERENCE_PLATFORM",
    "parse_dataset",
    "load_dataset",
    "serialize_dataset",
    "validate_record",
    "validate_dataset",
    "builtin_reference_dataset",
    "filter_records",
]


class SecurityLevel(IntEnum):
    """NIST post-quantum security category; ``NONE`` for classical schemes."""

    NONE = 0
    L1 = 1
    L2 = 2
    L3 = 3
    L4 = 4
    L5 = 5

    @classmethod
    def parse(cls, text: str) -> "SecurityLevel":
        t = text.strip().strip("[]").upper()
        if t in ("", "NONE", "-"):
            return cls.NONE
        try:
            return cls[t]
        except KeyError:
            raise ValueError(f"unknown security level {text!r}") from None

    def __str__(self) -> str:
        return "none" if self is SecurityLevel.NONE else self.name


class Kind(str, Enum):
    KEM = "KEM"
    SIG = "SIG"

    @classmethod
    def parse(cls, text: str) -> "Kind":
        t = text.strip().upper()
        if t in ("KEX", "KEM"):
            return cls.KEM
        if t in ("SIG", "SIGN", "SIGNATURE"):
            return cls.SIG
        raise ValueError(f"unknown algorithm kind {text!r}")


class Severity(str, Enum):
    ERROR = "Error"
    WARNING = "Warning"


OP_NAMES = {
    Kind.KEM: ("keygen", "encaps", "decaps"),
    Kind.SIG: ("keygen", "sign", "verify"),
}


@dataclass(frozen=True)
class Measurement:
    """One primitive operation: clock cycles, average power [W], energy [J].

    Construction does not reject non-positive values so that
    :func:`validate_record` can report them; the parsers do reject them.
    """

    cycles: float
    avg_power: float
    energy: float


@dataclass(frozen=True)
class AlgorithmRecord:
    name: str
    kind: Kind
    family: Optional[str]
    pq_level: SecurityLevel
    pubkey_bytes: int
    payload_bytes: int
    op1: Measurement
    op2: Measurement
    op3: Measurement
    flags: frozenset[str] = frozenset()

    @property
    def ops(self) -> tuple[Measurement, Measurement, Measurement]:
        return (self.op1, self.op2, self.op3)

    @property
    def op_names(self) -> tuple[str, str, str]:
        return OP_NAMES[self.kind]

    @property
    def extrapolated(self) -> bool:
        return "extrapolated" in self.flags


@dataclass(frozen=True)
class Platform:
    """A CPU target. ``current_per_mhz`` is in amperes per MHz."""

    name: str
    freq: float
    voltage: float
    energy_per_cycle: Optional[float] = None
    current_per_mhz: Optional[float] = None

    def __post_init__(self):
        if not self.freq > 0:
            raise ValueError(f"platform {self.name}: freq must be > 0")
        if not self.voltage > 0:
            raise ValueError(f"platform {self.name}: voltage must be > 0")
        for attr in ("energy_per_cycle", "current_per_mhz"):
            v = getattr(self, attr)
            if v is not None and not v > 0:
                raise ValueError(f"platform {self.name}: {attr} must be > 0")
        derived = self.derived_energy_per_cycle
        if self.energy_per_cycle is not None and derived is not None:
            if abs(self.energy_per_cycle - derived) > 0.05 * derived:
                raise ValueError(
                    f"platform {self.name}: energy_per_cycle {self.energy_per_cycle:.4g} J "
                    f"disagrees with voltage*current_per_mhz ({derived:.4g} J) by more than 5%"
                )

    @property
    def derived_energy_per_cycle(self) -> Optional[float]:
        # V * (A/MHz) / (1e6 Hz/MHz) -> J/cycle, independent of clock frequency
        if self.current_per_mhz is None:
            return None
        return self.voltage * self.current_per_mhz / 1e6

    @property
    def scaling_energy_per_cycle(self) -> Optional[float]:
        if self.energy_per_cycle is not None:
            return self.energy_per_cycle
        return self.derived_energy_per_cycle


@dataclass(frozen=True)
class ValidationFinding:
    record_name: str
    field_path: str
    severity: Severity
    message: str
    observed: float
    expected: float


REFERENCE_PLATFORM = Platform(name="STM32F411RE-Cortex-M4", freq=96e6, voltage=3.00)


class DatasetError(ValueError):
    pass


class ParseError(DatasetError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class FieldError(DatasetError):
    pass


class DatasetValueError(DatasetError):
    pass


CSV_COLUMNS = (
    "name", "kind", "family", "level", "pubkey_bytes", "payload_bytes",
    "op1_mcycles", "op1_mw", "op1_joules",
    "op2_mcycles", "op2_mw", "op2_joules",
    "op3_mcycles", "op3_mw", "op3_joules",
    "flags",
)  # fmt: skip
_REQUIRED = tuple(c for c in CSV_COLUMNS if c not in ("family", "flags"))


# -- unit boundary -------------------------------------------------------


def _decimal(text: str, where: str) -> Decimal:
    try:
        d = Decimal(text.strip())
    except InvalidOperation:
        raise DatasetValueError(f"{where}: not a number: {text!r}") from None
    if not d.is_finite():
        raise DatasetValueError(f"{where}: not finite: {text!r}")
    return d


def _positive(x: float, where: str) -> float:
    if not x > 0:
        raise DatasetValueError(f"{where}: must be > 0, got {x!r}")
    return x


def _to_si(text: str, exponent: int, where: str) -> float:
    return _positive(float(_decimal(text, where).scaleb(exponent)), where)


def _from_si(value: float, exponent: int) -> str:
    # repr gives the shortest string that round-trips; shifting it in decimal is exact
    return format(Decimal(repr(float(value))).scaleb(-exponent).normalize(), "f")


def _int_field(text: str, where: str) -> int:
    d = _decimal(text, where)
    if d != d.to_integral_value():
        raise DatasetValueError(f"{where}: must be an integer, got {text!r}")
    n = int(d)
    if n <= 0:
        raise DatasetValueError(f"{where}: must be > 0, got {n}")
    return n


def _parse_flags(text: str) -> frozenset[str]:
    return frozenset(f.strip() for f in text.split(";") if f.strip())


# -- parsing -------------------------------------------------------------


def _record_from_csv_row(row: dict, line: int) -> AlgorithmRecord:
    missing = [c for c in _REQUIRED if not (row.get(c) or "").strip()]
    if missing:
        raise FieldError(f"line {line}: missing required field(s): {', '.join(missing)}")
    name = row["name"].strip()
    where = f"line {line} ({name})"
    try:
        kind = Kind.parse(row["kind"])
        level = SecurityLevel.parse(row["level"])
    except ValueError as exc:
        raise DatasetValueError(f"{where}: {exc}") from None
    ops = []
    for i in (1, 2, 3):
        ops.append(
            Measurement(
                cycles=_to_si(row[f"op{i}_mcycles"], 6, f"{where} op{i}_mcycles"),
                avg_power=_to_si(row[f"op{i}_mw"], -3, f"{where} op{i}_mw"),
                energy=_to_si(row[f"op{i}_joules"], 0, f"{where} op{i}_joules"),
            )
        )
    return AlgorithmRecord(
        name=name,
        kind=kind,
        family=(row.get("family") or "").strip() or None,
        pq_level=level,
        pubkey_bytes=_int_field(row["pubkey_bytes"], f"{where} pubkey_bytes"),
        payload_bytes=_int_field(row["payload_bytes"], f"{where} payload_bytes"),
        op1=ops[0],
        op2=ops[1],
        op3=ops[2],
        flags=_parse_flags(row.get("flags") or ""),
    )


def _parse_csv(text: str) -> list[AlgorithmRecord]:
    lines = [ln for ln in text.splitlines()]
    # skip leading blank lines and '#' comments, but keep line numbering
    start = 0
    while start < len(lines) and (not lines[start].strip() or lines[start].lstrip().startswith("#")):
        start += 1
    if start == len(lines):
        return []
    reader = csv.reader(lines[start:])
    try:
        header = [h.strip() for h in next(reader)]
    except csv.Error as exc:
        raise ParseError(str(exc), start + 1) from None
    absent = [c for c in _REQUIRED if c not in header]
    if absent:
        raise FieldError(f"line {start + 1}: header lacks column(s): {', '.join(absent)}")
    records = []
    try:
        for row in reader:
            line = start + reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if row[0].lstrip().startswith("#"):
                continue
            if len(row) > len(header):
                raise ParseError(f"expected {len(header)} fields, got {len(row)}", line)
            records.append(_record_from_csv_row(dict(zip(header, row)), line))
    except csv.Error as exc:
        raise ParseError(str(exc), start + reader.line_num) from None
    return records


def _measurement_from_json(obj, where: str) -> Measurement:
    if not isinstance(obj, dict):
        raise FieldError(f"{where}: expected an object")
    vals = {}
    for key in ("cycles", "avg_power", "energy"):
        if key not in obj:
            raise FieldError(f"{where}: missing field {key!r}")
        vals[key] = _positive(float(obj[key]), f"{where}.{key}")
    return Measurement(**vals)


def _record_from_json(obj, index: int) -> AlgorithmRecord:
    where = f"records[{index}]"
    if not isinstance(obj, dict):
        raise FieldError(f"{where}: expected an object")
    for key in ("name", "kind", "pq_level", "pubkey_bytes", "payload_bytes", "op1", "op2", "op3"):
        if key not in obj:
            raise FieldError(f"{where}: missing field {key!r}")
    where = f"{where} ({obj['name']})"
    try:
        kind = Kind.parse(str(obj["kind"]))
        level = SecurityLevel.parse(str(obj["pq_level"]))
    except ValueError as exc:
        raise DatasetValueError(f"{where}: {exc}") from None
    sizes = {}
    for key in ("pubkey_bytes", "payload_bytes"):
        v = obj[key]
        if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
            raise DatasetValueError(f"{where}.{key}: must be a positive integer, got {v!r}")
        sizes[key] = v
    flags = obj.get("flags") or []
    if isinstance(flags, str):
        flags = _parse_flags(flags)
    return AlgorithmRecord(
        name=str(obj["name"]),
        kind=kind,
        family=obj.get("family"),
        pq_level=level,
        op1=_measurement_from_json(obj["op1"], f"{where}.op1"),
        op2=_measurement_from_json(obj["op2"], f"{where}.op2"),
        op3=_measurement_from_json(obj["op3"], f"{where}.op3"),
        flags=frozenset(flags),
        **sizes,
    )


def _platform_from_json(obj) -> Platform:
    if not isinstance(obj, dict):
        raise FieldError("platform: expected an object")
    for key in ("name", "freq", "voltage"):
        if key not in obj:
            raise FieldError(f"platform: missing field {key!r}")
    try:
        return Platform(
            name=str(obj["name"]),
            freq=float(obj["freq"]),
            voltage=float(obj["voltage"]),
            energy_per_cycle=obj.get("energy_per_cycle"),
            current_per_mhz=obj.get("current_per_mhz"),
        )
    except ValueError as exc:
        raise DatasetValueError(str(exc)) from None


def load_dataset(text: str, format: str = "csv") -> tuple[Optional[Platform], list[AlgorithmRecord]]:
    """Parse a dataset; the platform is only present in JSON documents."""
    fmt = format.lower()
    if fmt == "csv":
        return None, _parse_csv(text)
    if fmt != "json":
        raise ValueError(f"unsupported dataset format {format!r}")
    if not text.strip():
        return None, []
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict):
        raise FieldError("top level must be an object with 'records'")
    if "records" not in doc:
        raise FieldError("missing field 'records'")
    platform = _platform_from_json(doc["platform"]) if doc.get("platform") is not None else None
    return platform, [_record_from_json(r, i) for i, r in enumerate(doc["records"])]


def parse_dataset(text: str, format: str = "csv") -> list[AlgorithmRecord]:
    return load_dataset(text, format)[1]


# -- serialization -------------------------------------------------------


def _csv_row(r: AlgorithmRecord) -> list[str]:
    row = [r.name, r.kind.value, r.family or "", str(r.pq_level), str(r.pubkey_bytes), str(r.payload_bytes)]
    for m in r.ops:
        row += [_from_si(m.cycles, 6), _from_si(m.avg_power, -3), repr(float(m.energy))]
    row.append(";".join(sorted(r.flags)))
    return row


def _record_to_json(r: AlgorithmRecord) -> dict:
    def meas(m: Measurement) -> dict:
        return {"cycles": m.cycles, "avg_power": m.avg_power, "energy": m.energy}

    return {
        "name": r.name,
        "kind": r.kind.value,
        "family": r.family,
        "pq_level": str(r.pq_level),
        "pubkey_bytes": r.pubkey_bytes,
        "payload_bytes": r.payload_bytes,
        "op1": meas(r.op1),
        "op2": meas(r.op2),
        "op3": meas(r.op3),
        "flags": sorted(r.flags),
    }


def serialize_dataset(
    records: Iterable[AlgorithmRecord],
    format: str = "csv",
    platform: Optional[Platform] = None,
) -> str:
    fmt = format.lower()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow(_csv_row(r))
        return buf.getvalue()
    if fmt == "json":
        plat = None
        if platform is not None:
            plat = {
                "name": platform.name,
                "freq": platform.freq,
                "voltage": platform.voltage,
                "energy_per_cycle": platform.energy_per_cycle,
                "current_per_mhz": platform.current_per_mhz,
            }
        doc = {"platform": plat, "records": [_record_to_json(r) for r in records]}
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unsupported dataset format {format!r}")


# -- validation ----------------------------------------------------------


def validate_record(
    record: AlgorithmRecord, platform: Platform, rel_tol: float = 0.02
) -> list[ValidationFinding]:
    """Check that each op's energy matches (cycles / freq) * avg_power.

    Non-positive fields are Errors; inconsistent triples are Warnings.
    """
    if not 0 < rel_tol < 0.5:
        raise ValueError(f"rel_tol must be in (0, 0.5), got {rel_tol}")
    findings = []
    for attr in ("pubkey_bytes", "payload_bytes"):
        v = getattr(record, attr)
        if not v > 0:
            findings.append(
                ValidationFinding(record.name, attr, Severity.ERROR, f"{attr} must be > 0", v, 1)
            )
    for i, m in enumerate(record.ops, start=1):
        bad = False
        for attr in ("cycles", "avg_power", "energy"):
            v = getattr(m, attr)
            if not v > 0:
                bad = True
                findings.append(
                    ValidationFinding(
                        record.name, f"op{i}.{attr}", Severity.ERROR, f"op{i}.{attr} must be > 0", v, 0.0
                    )
                )
        if bad:
            continue
        predicted = m.cycles / platform.freq * m.avg_power
        deviation = abs(m.energy - predicted) / m.energy
        if deviation > rel_tol:
            findings.append(
                ValidationFinding(
                    record.name,
                    f"op{i}.energy",
                    Severity.WARNING,
                    f"op{i} energy is {m.energy / predicted - 1:+.1%} off (cycles/freq)*avg_power "
                    f"= {predicted:.4g} J (tolerance {rel_tol:.1%})",
                    m.energy,
                    predicted,
                )
            )
    return findings


def validate_dataset(
    records: Iterable[AlgorithmRecord], platform: Platform, rel_tol: float = 0.02
) -> list[ValidationFinding]:
    return [f for r in records for f in validate_record(r, platform, rel_tol)]


# -- reference data ------------------------------------------------------


def builtin_reference_dataset() -> tuple[Platform, list[AlgorithmRecord]]:
    """The 46 Cortex-M4 measurements (38 key establishment, 8 signature)."""
    text = resources.files("pqep").joinpath("data/reference.csv").read_text(encoding="utf-8")
    return REFERENCE_PLATFORM, parse_dataset(text, "csv")


def filter_records(
    records: Iterable[AlgorithmRecord],
    kind: Optional[Kind] = None,
    min_level: Optional[SecurityLevel] = None,
    families: Optional[Iterable[str]] = None,
) -> list[AlgorithmRecord]:
    fams = None if families is None else {f.lower() for f in families}
    out = []
    for r in records:
        if kind is not None and r.kind is not kind:
            continue
        if min_level is not None and r.pq_level < min_level:
            continue
        if fams is not None and (r.family or "").lower() not in fams:
            continue
        out.append(r)
    return out

