"""Exit criteria. A per-criterion PASS/FAIL summary prints at the end of the run."""

import math
import random

import pytest

from pqep.baskets import (
    EPHEMERAL_TOTAL,
    AffineEnergy,
    EnergyBasket,
    affine_energy,
    basket_energy,
    compose_hybrid,
    rsa_equivalent_bits,
)
from pqep.cli import run
from pqep.crossover import CrossoverKind, crossover_point, frontier, frontier_owner
from pqep.dataset import Measurement, Platform, validate_dataset
from pqep.power_model import energy_per_cycle, latency, scale_measurement, transfer_energy

criterion = pytest.mark.criterion
N_RANDOM = 1000


def _line(r):
    # independent of affine_energy: straight from the record fields
    return AffineEnergy(r.op1.energy + r.op2.energy + r.op3.energy, 8 * (r.pubkey_bytes + r.payload_bytes), r.name)


@criterion(1, "dataset fidelity: 46 rows, zero findings at rel_tol 0.02, Kyber512 keygen 413.2 uJ vs 413.6 uJ")
def test_c1_dataset_fidelity(reference, capsys):
    platform, records = reference
    assert len(records) == 46
    assert validate_dataset(records, platform, 0.02) == []
    assert run(["validate", "--strict"]) == 0
    assert "0 errors, 0 warnings" in capsys.readouterr().err
    kyber = next(r for r in records if r.name == "Kyber512").op1
    predicted = kyber.cycles / platform.freq * kyber.avg_power
    assert round(predicted * 1e6, 1) == 413.2
    assert kyber.energy == 413.6e-6
    assert abs(kyber.energy - predicted) / kyber.energy == pytest.approx(0.001, abs=0.0005)


@criterion(2, "Round5 -> SIKE cross-overs 0.77 / 1.10 / 1.44 mJ/bit within 3%")
@pytest.mark.parametrize(
    "lattice, isogeny, published",
    [("R5ND_1KEM_5d", "SIKEp434", 0.77e-3), ("R5ND_3KEM_5d", "SIKEp610", 1.10e-3), ("R5ND_5KEM_5d", "SIKEp751", 1.44e-3)],
)
def test_c2_round5_sike_crossover(by_name, lattice, isogeny, published):
    res = crossover_point(
        affine_energy(by_name[lattice], EPHEMERAL_TOTAL), affine_energy(by_name[isogeny], EPHEMERAL_TOTAL)
    )
    assert res.kind is CrossoverKind.AT
    assert res.e_star == pytest.approx(published, rel=0.03)


@criterion(3, "Round5 -> ECDH-secp256r1 cross-over 1.9 uJ/bit within 3%")
def test_c3_ecc_crossover(by_name):
    res = crossover_point(
        affine_energy(by_name["R5ND_1KEM_5d"], EPHEMERAL_TOTAL),
        affine_energy(by_name["ECDH-secp256r1"], EPHEMERAL_TOTAL),
    )
    assert res.kind is CrossoverKind.AT
    assert res.e_star == pytest.approx(1.9e-6, rel=0.03)


@criterion(4, "RSA yardstick: SIKEp434 ~ 2600 bits (5%), R5ND_1KEM_5d ~ 4000 bits (2%)")
def test_c4_rsa_yardstick(by_name):
    assert rsa_equivalent_bits(by_name["SIKEp434"]) == pytest.approx(2600, rel=0.05)
    assert rsa_equivalent_bits(by_name["R5ND_1KEM_5d"]) == pytest.approx(4000, rel=0.02)


@criterion(5, "battery footnote: 4e7 bits at 1e-3 J/bit = 4.0e4 J exactly")
def test_c5_battery_footnote():
    assert transfer_energy(4e7, 1e-3) == 4.0e4


@criterion(6, "per-cycle energy: two routes within 2%; 1e6 cycles 5.4 -> 8.8 nJ/cycle gives 8.8e-3 J")
def test_c6_per_cycle_energy(records):
    for r in records:
        for m in r.ops:
            assert math.isclose(energy_per_cycle(m, 96e6), m.avg_power / 96e6, rel_tol=0.02), r.name
    m = Measurement(1e6, 5.4e-9 * 96e6, 1e6 * 5.4e-9)
    laptop = Platform("laptop", 96e6, 1.0, energy_per_cycle=5.4e-9)
    desktop = Platform("desktop", 96e6, 1.0, energy_per_cycle=8.8e-9)
    out = scale_measurement(m, laptop, desktop)
    # 1e6 * 8.8e-9 itself rounds to one ulp below the double nearest 8.8e-3
    assert abs(out.energy - 8.8e-3) <= math.ulp(8.8e-3)
    assert out.cycles == 1e6


@criterion(7, "frontier owner == brute-force argmin: 50 subsets x 1000 e values, zero mismatches")
def test_c7_frontier_oracle(records):
    rng = random.Random(20200101)
    e_max = 1e-2
    mismatches = 0
    for _ in range(50):
        subset = rng.sample(records, rng.randint(1, len(records)))
        segments = frontier(subset, EPHEMERAL_TOTAL, e_max)
        lines = [_line(r) for r in subset]
        samples = [rng.uniform(0, e_max) for _ in range(500)]
        samples += [10 ** rng.uniform(-12, math.log10(e_max)) for _ in range(500)]
        for e in samples:
            brute = min(lines, key=lambda ln: (ln.intercept + ln.slope_bits * e, ln.algorithm)).algorithm
            mismatches += frontier_owner(segments, e) != brute
    assert mismatches == 0


def _rel(a, b):
    return abs(a - b) <= 1e-12 * max(abs(a), abs(b))


@criterion(8, "affinity/linearity: affine identity, antisymmetry, hybrid commutativity, uniform scaling at 1e-12")
def test_c8_affine_identity(records):
    rng = random.Random(8)
    for _ in range(N_RANDOM):
        r = rng.choice(records)
        basket = EnergyBasket(*(rng.choice([0, rng.uniform(0, 3)]) for _ in range(4)), w_payload=rng.uniform(0.1, 3))
        e1, e2 = rng.uniform(0, 1e-2), 10 ** rng.uniform(-12, -2)
        E = lambda e: basket_energy(r, basket, e)  # noqa: E731
        assert _rel(E(e1) + E(e2) - E(0), E(e1 + e2))


@criterion(8, "affinity/linearity: affine identity, antisymmetry, hybrid commutativity, uniform scaling at 1e-12")
def test_c8_crossover_antisymmetry(records):
    rng = random.Random(9)
    for _ in range(N_RANDOM):
        a, b = (_line(r) for r in rng.sample(records, 2))
        ab, ba = crossover_point(a, b), crossover_point(b, a)
        assert ba == ab.mirrored()
        if ab.kind is CrossoverKind.AT:
            assert _rel(ab.e_star, ba.e_star)


@criterion(8, "affinity/linearity: affine identity, antisymmetry, hybrid commutativity, uniform scaling at 1e-12")
def test_c8_hybrid_commutative(records):
    rng = random.Random(10)
    for _ in range(N_RANDOM):
        a, b = rng.sample(records, 2)
        if a.kind is not b.kind:
            continue
        ab, ba = compose_hybrid(a, b, "h"), compose_hybrid(b, a, "h")
        assert (ab.pubkey_bytes, ab.payload_bytes, ab.pq_level) == (ba.pubkey_bytes, ba.payload_bytes, ba.pq_level)
        for x, y in zip(ab.ops, ba.ops):
            assert _rel(x.cycles, y.cycles) and _rel(x.energy, y.energy) and _rel(x.avg_power, y.avg_power)


@criterion(8, "affinity/linearity: affine identity, antisymmetry, hybrid commutativity, uniform scaling at 1e-12")
def test_c8_uniform_scaling(records):
    rng = random.Random(11)
    checked = 0
    while checked < N_RANDOM:
        a, b = (_line(r) for r in rng.sample(records, 2))
        res = crossover_point(a, b)
        if res.kind is not CrossoverKind.AT:
            continue
        k = 10 ** rng.uniform(-3, 3)
        ka = AffineEnergy(a.intercept * k, a.slope_bits, a.algorithm)
        kb = AffineEnergy(b.intercept * k, b.slope_bits, b.algorithm)
        scaled = crossover_point(ka, kb)
        assert scaled.kind is CrossoverKind.AT
        assert _rel(scaled.e_star, k * res.e_star)
        checked += 1


@criterion(9, "SIKEp610/p751: every operation takes more than 10 s at 96 MHz")
def test_c9_sike_latency(by_name):
    for name in ("SIKEp610", "SIKEp751"):
        for m in by_name[name].ops:
            assert latency(m, 96e6, 0).total_s > 10, name
