import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pqep.dataset import Measurement, Platform
from pqep.power_model import (
    ConfigurationError,
    DynPowerParams,
    dynamic_power,
    energy_per_cycle,
    latency,
    scale_measurement,
    transfer_energy,
)


def test_dynamic_power_unit():
    assert dynamic_power(DynPowerParams(1, 1, 1, 1)) == 1.0


def test_dynamic_power_arithmetic():
    p = dynamic_power(DynPowerParams(0.5, 2e-12, 3, 96e6))
    assert p == pytest.approx(0.5 * 2e-12 * 9 * 96e6, rel=1e-15)
    assert p == pytest.approx(8.64e-4, rel=1e-12)


@pytest.mark.parametrize("bad", [dict(activity=0), dict(capacitance=-1), dict(activity=1.5)])
def test_dynamic_power_rejects(bad):
    kw = dict(activity=0.5, capacitance=1e-12, voltage=3.0, freq=1e6) | bad
    with pytest.raises(ValueError):
        DynPowerParams(**kw)


factors = st.floats(0.01, 100)


@given(factors)
def test_dynamic_power_scaling(k):
    base = DynPowerParams(0.3, 5e-12, 1.8, 48e6)
    p0 = dynamic_power(base)
    assert dynamic_power(DynPowerParams(0.3, 5e-12 * k, 1.8, 48e6)) == pytest.approx(p0 * k, rel=1e-12)
    assert dynamic_power(DynPowerParams(0.3, 5e-12, 1.8, 48e6 * k)) == pytest.approx(p0 * k, rel=1e-12)
    assert dynamic_power(DynPowerParams(0.3, 5e-12, 1.8 * k, 48e6)) == pytest.approx(p0 * k * k, rel=1e-12)
    a = min(k, 1.0)
    assert dynamic_power(DynPowerParams(0.3 * a, 5e-12, 1.8, 48e6)) == pytest.approx(p0 * a, rel=1e-12)


def test_doubling_voltage_quadruples_power():
    p = dynamic_power(DynPowerParams(0.2, 1e-11, 1.5, 1e8))
    assert dynamic_power(DynPowerParams(0.2, 1e-11, 3.0, 1e8)) == pytest.approx(4 * p, rel=1e-15)


def test_energy_per_cycle_kyber(by_name):
    m = by_name["Kyber512"].op1
    via_energy = energy_per_cycle(m, 96e6)
    assert via_energy == pytest.approx(413.6e-6 / 516000, rel=1e-15)
    assert via_energy == pytest.approx(8.016e-10, rel=1e-3)
    via_power = 0.07688 / 96e6
    assert via_power == pytest.approx(8.008e-10, rel=1e-3)
    assert abs(via_energy - via_power) / via_power < 0.002


def test_energy_per_cycle_exact_and_ecdh(by_name):
    assert energy_per_cycle(Measurement(2e6, 1.0, 2e6 * 1e-9), 123e6) == pytest.approx(1e-9, rel=1e-15)
    assert energy_per_cycle(by_name["ECDH-secp256r1"].op1, 96e6) == pytest.approx(6.30e-10, rel=1e-3)
    with pytest.raises(ValueError):
        energy_per_cycle(Measurement(0, 1.0, 1.0), 96e6)


def test_scale_measurement_laptop_to_desktop():
    m = Measurement(516000, 5.4e-9 * 96e6, 516000 * 5.4e-9)
    assert m.energy == pytest.approx(2.786e-3, rel=1e-3)
    src = Platform("laptop", 96e6, 1.0, energy_per_cycle=5.4e-9)
    dst = Platform("desktop", 96e6, 1.0, energy_per_cycle=8.8e-9)
    out = scale_measurement(m, src, dst)
    assert out.cycles == 516000
    assert out.energy / m.energy == pytest.approx(8.8 / 5.4, rel=1e-12)
    assert out.energy == pytest.approx(4.541e-3, rel=1e-3)
    assert out.avg_power == pytest.approx(out.energy * 96e6 / 516000, rel=1e-15)


def test_scale_identity(by_name):
    m = by_name["Kyber512"].op1
    p = Platform("ref", 96e6, 3.0, energy_per_cycle=8e-10)
    assert scale_measurement(m, p, p) == m


def test_scale_half_energy_halves_power(by_name):
    m = by_name["Kyber512"].op2
    src = Platform("a", 96e6, 3.0, energy_per_cycle=8e-10)
    dst = Platform("b", 96e6, 3.0, energy_per_cycle=4e-10)
    out = scale_measurement(m, src, dst)
    assert out.energy == pytest.approx(m.energy / 2, rel=1e-15)
    assert out.avg_power == pytest.approx(m.energy * 96e6 / m.cycles / 2, rel=1e-15)


def test_scale_implicit_source_and_ua_per_mhz(by_name):
    m = by_name["Kyber512"].op1
    src = Platform("ref", 96e6, 3.0)
    # 3 V at 200 uA/MHz -> 6e-10 J/cycle
    dst = Platform("mcu", 48e6, 3.0, current_per_mhz=200e-6)
    out = scale_measurement(m, src, dst)
    assert out.energy == pytest.approx(m.cycles * 6e-10, rel=1e-12)
    assert out.avg_power == pytest.approx(6e-10 * 48e6, rel=1e-12)


def test_scale_missing_destination_data(by_name):
    m = by_name["Kyber512"].op1
    ref = Platform("ref", 96e6, 3.0)
    with pytest.raises(ConfigurationError):
        scale_measurement(m, ref, Platform("x", 48e6, 1.8))


@given(st.floats(1e-10, 1e-8), st.floats(1e-10, 1e-8), st.floats(1e-10, 1e-8), st.floats(1e3, 1e10))
def test_scale_composes(a, b, c, cycles):
    m = Measurement(cycles, 0.05, cycles * 7e-10)
    pa, pb, pc = (Platform(n, 96e6, 3.0, energy_per_cycle=e) for n, e in (("a", a), ("b", b), ("c", c)))
    via_b = scale_measurement(scale_measurement(m, pa, pb), pb, pc)
    direct = scale_measurement(m, pa, pc)
    assert via_b.energy == pytest.approx(direct.energy, rel=1e-12)
    assert via_b.avg_power == pytest.approx(direct.avg_power, rel=1e-12)


def test_transfer_energy_examples():
    assert transfer_energy(4e7, 1e-3) == 4.0e4
    assert transfer_energy(0, 1e-3) == 0
    assert transfer_energy((800 + 736) * 8, 1e-7) == pytest.approx(1.2288e-3, rel=1e-12)


@given(st.integers(0, 10**9), st.integers(0, 10**9), st.floats(0, 1e-3))
def test_transfer_and_latency_additive(b1, b2, e):
    assert transfer_energy(b1 + b2, e) == pytest.approx(transfer_energy(b1, e) + transfer_energy(b2, e), rel=1e-12)
    m = Measurement(1e6, 0.07, 1e-3)
    t = lambda b: latency(m, 96e6, b, 1e6).transmit_s  # noqa: E731
    assert t(b1 + b2) == pytest.approx(t(b1) + t(b2), rel=1e-12)


def test_latency_examples(by_name):
    est = latency(by_name["SIKEp751"].op3, 96e6, 0)
    assert est.compute_s == pytest.approx(5.930e9 / 96e6, rel=1e-15)
    assert est.compute_s == pytest.approx(61.77, abs=0.005)
    assert est.transmit_s == 0
    est = latency(by_name["Kyber512"].op1, 96e6, 9600 * 8, 1e6)
    assert est.transmit_s == pytest.approx(0.0768, rel=1e-12)
    assert est.total_s == est.compute_s + est.transmit_s
    with pytest.raises(ValueError):
        latency(by_name["Kyber512"].op1, 96e6, 8, 0)


def test_two_routes_agree_on_reference(records):
    for r in records:
        for m in r.ops:
            a = energy_per_cycle(m, 96e6)
            b = m.avg_power / 96e6
            assert math.isclose(a, b, rel_tol=0.02), r.name
