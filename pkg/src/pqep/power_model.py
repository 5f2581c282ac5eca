"""CMOS dynamic power, per-cycle energy, cross-platform scaling and latency."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dataset import Measurement, Platform

__all__ = [
    "DynPowerParams",
    "LatencyEstimate",
    "ConfigurationError",
    "dynamic_power",
    "energy_per_cycle",
    "scale_measurement",
    "transfer_energy",
    "latency",
]


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class DynPowerParams:
    activity: float
    capacitance: float
    voltage: float
    freq: float

    def __post_init__(self):
        for name in ("activity", "capacitance", "voltage", "freq"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if self.activity > 1:
            raise ValueError("activity must be <= 1")


@dataclass(frozen=True)
class LatencyEstimate:
    compute_s: float
    transmit_s: float

    @property
    def total_s(self) -> float:
        return self.compute_s + self.transmit_s


def dynamic_power(p: DynPowerParams) -> float:
    """Switching power alpha * C * V**2 * f in watts. Static power is not modelled."""
    return p.activity * p.capacitance * p.voltage**2 * p.freq


def energy_per_cycle(m: Measurement, freq: float) -> float:
    """Measured energy per clock cycle [J/cycle].

    ``m.avg_power / freq`` is the second route to the same quantity; for
    consistent data the two agree within the dataset tolerance.
    """
    if not freq > 0:
        raise ValueError("freq must be > 0")
    if not m.cycles > 0:
        raise ValueError("measurement has no cycles")
    return m.energy / m.cycles


def _epc(platform: Platform, m: Measurement, role: str, allow_implicit: bool) -> float:
    epc = platform.scaling_energy_per_cycle
    if epc is not None:
        return epc
    if allow_implicit:
        return m.energy / m.cycles
    raise ConfigurationError(
        f"{role} platform {platform.name!r} has neither energy_per_cycle nor current_per_mhz"
    )


def scale_measurement(m: Measurement, src: Platform, dst: Platform) -> Measurement:
    """Re-express a measurement on another platform.

    Cycle counts are kept (they depend on the ISA, not on the clock); energy
    follows the ratio of the two platforms' per-cycle energies and power is
    recomputed at the destination clock. Voltage enters only through
    energy-per-cycle, so no separate V**2 factor is applied.
    """
    if not m.cycles > 0:
        raise ValueError("measurement has no cycles")
    dst_epc = _epc(dst, m, "destination", allow_implicit=False)
    src_epc = _epc(src, m, "source", allow_implicit=True)
    if src == dst:
        return m
    energy = m.energy * (dst_epc / src_epc)
    return Measurement(cycles=m.cycles, avg_power=energy * dst.freq / m.cycles, energy=energy)


def transfer_energy(bits: float, e_xfer: float) -> float:
    if bits < 0 or e_xfer < 0:
        raise ValueError("bits and e_xfer must be >= 0")
    return bits * e_xfer


def latency(m: Measurement, freq: float, bits: float = 0, data_rate: Optional[float] = None) -> LatencyEstimate:
    if not freq > 0:
        raise ValueError("freq must be > 0")
    if bits < 0:
        raise ValueError("bits must be >= 0")
    if bits == 0:
        transmit = 0.0
    elif data_rate is None or not data_rate > 0:
        raise ValueError("a positive data_rate is required to transmit bits")
    else:
        transmit = bits / data_rate
    return LatencyEstimate(compute_s=m.cycles / freq, transmit_s=transmit)
