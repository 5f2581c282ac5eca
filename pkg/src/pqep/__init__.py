"""Energy cost model and energy-optimal selection for post-quantum KEMs and signatures."""

from .baskets import (
    ENCAPS,
    EPHEMERAL_TOTAL,
    KEYGEN,
    SIGN,
    VERIFY,
    AffineEnergy,
    EnergyBasket,
    affine_energy,
    basket_energy,
    compose_hybrid,
    rsa_equivalent_bits,
)
from .crossover import (
    CrossoverKind,
    CrossoverResult,
    FrontierSegment,
    TransmissionLink,
    battery_budget,
    crossover_point,
    frontier,
    rank_at,
    technology_presets,
)
from .dataset import (
    AlgorithmRecord,
    Kind,
    Measurement,
    Platform,
    SecurityLevel,
    builtin_reference_dataset,
    filter_records,
    parse_dataset,
    serialize_dataset,
    validate_record,
)
from .power_model import (
    DynPowerParams,
    dynamic_power,
    energy_per_cycle,
    latency,
    scale_measurement,
    transfer_energy,
)

__version__ = "0.1.0"

__all__ = [
    "ENCAPS",
    "EPHEMERAL_TOTAL",
    "KEYGEN",
    "SIGN",
    "VERIFY",
    "AffineEnergy",
    "EnergyBasket",
    "affine_energy",
    "basket_energy",
    "compose_hybrid",
    "rsa_equivalent_bits",
    "CrossoverKind",
    "CrossoverResult",
    "FrontierSegment",
    "TransmissionLink",
    "battery_budget",
    "crossover_point",
    "frontier",
    "rank_at",
    "technology_presets",
    "AlgorithmRecord",
    "Kind",
    "Measurement",
    "Platform",
    "SecurityLevel",
    "builtin_reference_dataset",
    "filter_records",
    "parse_dataset",
    "serialize_dataset",
    "validate_record",
    "DynPowerParams",
    "dynamic_power",
    "energy_per_cycle",
    "latency",
    "scale_measurement",
    "transfer_energy",
]
