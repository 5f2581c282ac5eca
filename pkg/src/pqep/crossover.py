"""Energy-optimal algorithm selection over the per-bit transfer cost axis."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from .baskets import AffineEnergy, EnergyBasket, affine_energy, basket_energy
from .dataset import AlgorithmRecord

__all__ = [
    "TransmissionLink",
    "CrossoverKind",
    "CrossoverResult",
    "FrontierSegment",
    "crossover_point",
    "rank_at",
    "lower_envelope",
    "frontier",
    "frontier_owner",
    "brute_force_owner",
    "technology_presets",
    "link_from_spec",
    "battery_budget",
]


@dataclass(frozen=True)
class TransmissionLink:
    name: str
    e_xfer: float
    data_rate: Optional[float] = None
    source: str = ""

    def __post_init__(self):
        if not self.e_xfer > 0:
            raise ValueError(f"link {self.name!r}: e_xfer must be > 0")
        if self.data_rate is not None and not self.data_rate > 0:
            raise ValueError(f"link {self.name!r}: data_rate must be > 0")


class CrossoverKind(str, Enum):
    AT = "At"
    ALWAYS_FIRST = "AlwaysFirst"
    ALWAYS_SECOND = "AlwaysSecond"
    IDENTICAL = "Identical"


@dataclass(frozen=True)
class CrossoverResult:
    kind: CrossoverKind
    e_star: Optional[float] = None

    def mirrored(self) -> "CrossoverResult":
        swap = {
            CrossoverKind.ALWAYS_FIRST: CrossoverKind.ALWAYS_SECOND,
            CrossoverKind.ALWAYS_SECOND: CrossoverKind.ALWAYS_FIRST,
        }
        return CrossoverResult(swap.get(self.kind, self.kind), self.e_star)


@dataclass(frozen=True)
class FrontierSegment:
    """``algorithm`` is optimal on the half-open interval [e_lo, e_hi)."""

    e_lo: float
    e_hi: float
    algorithm: str


def crossover_point(a: AffineEnergy, b: AffineEnergy) -> CrossoverResult:
    """Where the two energy lines meet on e >= 0.

    A negative algebraic intersection is reported as AlwaysFirst/AlwaysSecond
    (whichever is cheaper at e = 0) rather than clamped.
    """
    if a.slope_bits == b.slope_bits:
        if a.intercept == b.intercept:
            return CrossoverResult(CrossoverKind.IDENTICAL)
        return CrossoverResult(
            CrossoverKind.ALWAYS_FIRST if a.intercept < b.intercept else CrossoverKind.ALWAYS_SECOND
        )
    e_star = (a.intercept - b.intercept) / (b.slope_bits - a.slope_bits)
    if e_star >= 0:
        return CrossoverResult(CrossoverKind.AT, e_star)
    return CrossoverResult(
        CrossoverKind.ALWAYS_FIRST if a.intercept < b.intercept else CrossoverKind.ALWAYS_SECOND
    )


def rank_at(
    records: Iterable[AlgorithmRecord], basket: EnergyBasket, e_xfer: float
) -> list[tuple[str, float]]:
    """(name, joules) ascending by energy, ties by name."""
    if e_xfer < 0:
        raise ValueError("e_xfer must be >= 0")
    scored = [(r.name, basket_energy(r, basket, e_xfer)) for r in records]
    return sorted(scored, key=lambda t: (t[1], t[0]))


def _meet(p: AffineEnergy, q: AffineEnergy) -> float:
    # requires p.slope_bits > q.slope_bits
    return (q.intercept - p.intercept) / (p.slope_bits - q.slope_bits)


def lower_envelope(lines: Iterable[AffineEnergy], e_max: float = math.inf) -> list[FrontierSegment]:
    """Exact lower envelope of affine functions on [0, e_max].

    Lines are sorted by decreasing slope and swept once with a stack (the
    convex hull trick), O(n log n) overall. Where two lines coincide the
    lexicographically smaller name is kept; at a breakpoint the segment to
    the right owns the point.
    """
    if not e_max > 0:
        raise ValueError("e_max must be > 0")
    best: dict[float, AffineEnergy] = {}
    for ln in lines:
        cur = best.get(ln.slope_bits)
        if cur is None or (ln.intercept, ln.algorithm) < (cur.intercept, cur.algorithm):
            best[ln.slope_bits] = ln
    if not best:
        raise ValueError("frontier needs at least one line")
    ordered = sorted(best.values(), key=lambda ln: -ln.slope_bits)

    hull: list[AffineEnergy] = []
    for ln in ordered:
        while len(hull) >= 2 and _meet(hull[-2], ln) <= _meet(hull[-2], hull[-1]):
            hull.pop()
        hull.append(ln)

    bounds = [-math.inf] + [_meet(hull[i], hull[i + 1]) for i in range(len(hull) - 1)] + [math.inf]
    segments: list[FrontierSegment] = []
    for i, ln in enumerate(hull):
        lo, hi = max(bounds[i], 0.0), min(bounds[i + 1], e_max)
        if lo >= hi:
            continue
        if segments and segments[-1].algorithm == ln.algorithm:
            lo = segments.pop().e_lo
        segments.append(FrontierSegment(lo, hi, ln.algorithm))
    return segments


def frontier(
    records: Sequence[AlgorithmRecord], basket: EnergyBasket, e_max: float = math.inf
) -> list[FrontierSegment]:
    if not records:
        raise ValueError("frontier needs at least one record")
    return lower_envelope((affine_energy(r, basket) for r in records), e_max)


def frontier_owner(segments: Sequence[FrontierSegment], e_xfer: float) -> str:
    idx = bisect.bisect_right([s.e_lo for s in segments], e_xfer) - 1
    if idx < 0 or e_xfer > segments[-1].e_hi:
        raise ValueError(f"e_xfer {e_xfer} outside frontier range")
    return segments[idx].algorithm


def brute_force_owner(lines: Iterable[AffineEnergy], e_xfer: float) -> str:
    """Reference argmin by direct evaluation, ties to the smaller name."""
    return min(lines, key=lambda ln: (ln(e_xfer), ln.algorithm)).algorithm


_PRESETS = (
    TransmissionLink("edge-2g", 1e-5, source="2G (EDGE) era, 10 uJ/bit"),
    TransmissionLink(
        "wifi-hspa-ble-lte-generation", 1e-6, source="WiFi/HSPA/BLE/ZigBee/LTE upper bound, 1 uJ/bit"
    ),
    TransmissionLink("lte-ble", 1e-7, source="current LTE or Bluetooth LE, 0.1 uJ/bit"),
    TransmissionLink("5g", 1e-9, source="predicted 5G, nJ/bit range"),
)


def technology_presets() -> list[TransmissionLink]:
    return list(_PRESETS)


def link_from_spec(spec: str) -> TransmissionLink:
    """Preset name, or a raw per-bit energy in J/bit."""
    for link in _PRESETS:
        if link.name == spec:
            return link
    try:
        value = float(spec)
    except ValueError:
        names = ", ".join(link.name for link in _PRESETS)
        raise ValueError(f"unknown link {spec!r}; presets: {names}") from None
    return TransmissionLink(name=spec, e_xfer=value)


def battery_budget(record: AlgorithmRecord, basket: EnergyBasket, e_xfer: float, battery: float) -> int:
    """How many complete basket executions a battery of ``battery`` joules supports."""
    if not battery > 0:
        raise ValueError("battery must be > 0")
    energy = basket_energy(record, basket, e_xfer)
    if not energy > 0:
        raise ValueError(f"basket energy for {record.name} is zero")
    return math.floor(battery / energy)
