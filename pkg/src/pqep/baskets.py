"""Energy baskets: affine total energy as a function of per-bit transfer cost.

A basket weights the three operation energies of a record and the bits of
its public key and payload (ciphertext or signature). Evaluated against a
record it gives ``E(e) = intercept + slope_bits * e`` with ``e`` in J/bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields

from .dataset import AlgorithmRecord, Measurement, SecurityLevel
from .power_model import LatencyEstimate

__all__ = [
    "EnergyBasket",
    "AffineEnergy",
    "CompositionError",
    "KEYGEN",
    "ENCAPS",
    "SIGN",
    "VERIFY",
    "EPHEMERAL_TOTAL",
    "PRESETS",
    "basket_from_spec",
    "affine_energy",
    "basket_energy",
    "basket_latency",
    "compose_hybrid",
    "rsa_equivalent_bits",
]


class CompositionError(ValueError):
    pass


@dataclass(frozen=True)
class EnergyBasket:
    w_op1: float = 0.0
    w_op2: float = 0.0
    w_op3: float = 0.0
    w_pubkey: float = 0.0
    w_payload: float = 0.0
    label: str = "custom"
    paper: bool = True

    def __post_init__(self):
        weights = self.weights
        if any(w < 0 for w in weights):
            raise ValueError(f"basket {self.label!r}: weights must be nonnegative")
        if not any(w > 0 for w in weights):
            raise ValueError(f"basket {self.label!r}: at least one weight must be > 0")

    @property
    def weights(self) -> tuple[float, float, float, float, float]:
        return (self.w_op1, self.w_op2, self.w_op3, self.w_pubkey, self.w_payload)


KEYGEN = EnergyBasket(w_op1=1, w_pubkey=1, label="keygen")
ENCAPS = EnergyBasket(w_op2=1, w_payload=1, label="encaps")
SIGN = EnergyBasket(w_op2=1, w_payload=1, label="sign")
# verifier side has no published basket; provided for symmetry
VERIFY = EnergyBasket(w_op3=1, w_payload=1, label="verify", paper=False)
EPHEMERAL_TOTAL = EnergyBasket(
    w_op1=1, w_op2=1, w_op3=1, w_pubkey=1, w_payload=1, label="ephemeral-total"
)

PRESETS = {b.label: b for b in (KEYGEN, ENCAPS, SIGN, VERIFY, EPHEMERAL_TOTAL)}

_WEIGHT_KEYS = {f.name for f in fields(EnergyBasket) if f.name.startswith("w_")}


def basket_from_spec(spec: str) -> EnergyBasket:
    """Resolve a preset name or an inline JSON weight object."""
    s = spec.strip()
    if s in PRESETS:
        return PRESETS[s]
    if not s.startswith("{"):
        raise ValueError(f"unknown basket {spec!r}; presets: {', '.join(PRESETS)}")
    obj = json.loads(s)
    unknown = set(obj) - _WEIGHT_KEYS - {"label"}
    if unknown:
        raise ValueError(f"unknown basket field(s): {', '.join(sorted(unknown))}")
    return EnergyBasket(
        **{k: float(v) for k, v in obj.items() if k in _WEIGHT_KEYS},
        label=str(obj.get("label", "custom")),
        paper=False,
    )


@dataclass(frozen=True)
class AffineEnergy:
    intercept: float
    slope_bits: float
    algorithm: str

    def __call__(self, e_xfer: float) -> float:
        return self.intercept + self.slope_bits * e_xfer


def affine_energy(record: AlgorithmRecord, basket: EnergyBasket) -> AffineEnergy:
    intercept = (
        basket.w_op1 * record.op1.energy
        + basket.w_op2 * record.op2.energy
        + basket.w_op3 * record.op3.energy
    )
    slope = 8 * (basket.w_pubkey * record.pubkey_bytes + basket.w_payload * record.payload_bytes)
    return AffineEnergy(intercept=intercept, slope_bits=slope, algorithm=record.name)


def basket_energy(record: AlgorithmRecord, basket: EnergyBasket, e_xfer: float) -> float:
    if e_xfer < 0:
        raise ValueError("e_xfer must be >= 0")
    return affine_energy(record, basket)(e_xfer)


def basket_latency(
    record: AlgorithmRecord, basket: EnergyBasket, freq: float, data_rate: float | None = None
) -> LatencyEstimate:
    """Wall-clock time of a basket: weighted compute cycles plus transmitted bits."""
    if not freq > 0:
        raise ValueError("freq must be > 0")
    cycles = basket.w_op1 * record.op1.cycles + basket.w_op2 * record.op2.cycles + basket.w_op3 * record.op3.cycles
    bits = affine_energy(record, basket).slope_bits
    if bits == 0:
        transmit = 0.0
    elif data_rate is None or not data_rate > 0:
        raise ValueError("a positive data_rate is required to transmit bits")
    else:
        transmit = bits / data_rate
    return LatencyEstimate(compute_s=cycles / freq, transmit_s=transmit)


def compose_hybrid(
    a: AlgorithmRecord, b: AlgorithmRecord, name: str | None = None, freq: float = 96e6
) -> AlgorithmRecord:
    """Combine two schemes of the same kind; costs and sizes add.

    Average power of each op is recomputed from the summed energy and cycles
    at ``freq`` (the reference clock by default).
    """
    if a.kind is not b.kind:
        raise CompositionError(f"cannot combine {a.kind.value} {a.name!r} with {b.kind.value} {b.name!r}")

    def add(x: Measurement, y: Measurement) -> Measurement:
        cycles = x.cycles + y.cycles
        energy = x.energy + y.energy
        return Measurement(cycles=cycles, avg_power=energy * freq / cycles, energy=energy)

    return AlgorithmRecord(
        name=name or f"{a.name}+{b.name}",
        kind=a.kind,
        family="Hybrid",
        pq_level=SecurityLevel(max(a.pq_level, b.pq_level)),
        pubkey_bytes=a.pubkey_bytes + b.pubkey_bytes,
        payload_bytes=a.payload_bytes + b.payload_bytes,
        op1=add(a.op1, b.op1),
        op2=add(a.op2, b.op2),
        op3=add(a.op3, b.op3),
        flags=a.flags | b.flags | {"hybrid"},
    )


def rsa_equivalent_bits(record: AlgorithmRecord) -> float:
    # RSA public key and ciphertext are each one modulus long
    return 8 * (record.pubkey_bytes + record.payload_bytes) / 2
