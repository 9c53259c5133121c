import math

import numpy as np
import pytest

from bohmpart import (BathInitialState, BathSpec, DivergentIntegral, Method,
                      Oscillator, ThermalSpec, bath_classicality,
                      classical_bath_Z, large_N_ratio, memory_kernel,
                      noise_force, unified_bath_Z, uniform_bath)


def single(m=1.0, w=1.0, c=1.0, sigma=1.0, q0=0.0):
    return BathSpec((Oscillator(m, w, c),), sigma, q0)


# ---------------------------------------------------------------------------
# kernel and noise
# ---------------------------------------------------------------------------

def test_memory_kernel_at_zero_sums_static_friction():
    bath = BathSpec((Oscillator(1.0, 2.0, 3.0), Oscillator(1.0, 0.5, 1.0)), 1.0)
    assert memory_kernel(bath, 0.0) == pytest.approx(9.0 / 4.0 + 4.0)


def test_memory_kernel_single_oscillator():
    bath = single(w=2.0, c=2.0)
    assert memory_kernel(bath, math.pi / 2) == pytest.approx(-1.0)


def test_memory_kernel_even_and_bounded():
    rng = np.random.default_rng(3)
    oscillators = tuple(Oscillator(rng.uniform(0.5, 2.0), rng.uniform(0.2, 3.0),
                                   rng.uniform(-2.0, 2.0)) for _ in range(6))
    bath = BathSpec(oscillators, 1.0)
    nu0 = memory_kernel(bath, 0.0)
    for t in rng.uniform(-8.0, 8.0, 20):
        assert memory_kernel(bath, t) == pytest.approx(memory_kernel(bath, -t))
        assert nu0 >= abs(memory_kernel(bath, t)) - 1e-12


def test_noise_force_at_zero_time():
    bath = BathSpec((Oscillator(2.0, 1.5, 0.7),), 1.0, q0=0.4)
    init = BathInitialState((1.1,), (0.3,))
    expected = 2.0 * 0.7 * (1.1 - 0.7 * 0.4 / 1.5**2)
    assert noise_force(bath, init, 0.0) == pytest.approx(expected)


def test_noise_force_equilibrium_initial_condition_silent():
    oscillators = (Oscillator(1.0, 1.0, 2.0), Oscillator(2.0, 0.7, -0.5))
    bath = BathSpec(oscillators, 1.0, q0=1.3)
    init = BathInitialState(
        tuple(o.coupling * bath.q0 / o.omega**2 for o in oscillators),
        (0.0, 0.0))
    for t in np.linspace(0.0, 9.0, 13):
        assert abs(noise_force(bath, init, t)) < 1e-14


def test_noise_force_quarter_period_example():
    bath = single()
    init = BathInitialState((1.0,), (1.0,))
    assert noise_force(bath, init, math.pi / 2) == pytest.approx(1.0)


def test_noise_force_size_mismatch():
    with pytest.raises(ValueError):
        noise_force(single(), BathInitialState((1.0, 2.0), (0.0, 0.0)), 0.0)


# ---------------------------------------------------------------------------
# classical bath Z
# ---------------------------------------------------------------------------

def test_classical_bath_Z_single():
    assert classical_bath_Z(single(), ThermalSpec(1.0)).value == pytest.approx(
        2.0 * math.pi)


def test_classical_bath_Z_product():
    bath = BathSpec((Oscillator(1.0, 1.0, 0.0), Oscillator(1.0, 2.0, 0.0)), 1.0)
    assert classical_bath_Z(bath, ThermalSpec(1.0)).value == pytest.approx(
        (2.0 * math.pi) ** 2 / 2.0)


def test_classical_bath_Z_quadrature_and_coupling_invariance(quad):
    th = ThermalSpec(1.0)
    plain = classical_bath_Z(single(c=0.0), th, quad, Method.QUADRATURE)
    coupled = classical_bath_Z(single(c=5.0, q0=2.0), th, quad,
                               Method.QUADRATURE)
    assert plain.value == pytest.approx(2.0 * math.pi, rel=1e-10)
    assert coupled.value == pytest.approx(plain.value, rel=1e-12)


# ---------------------------------------------------------------------------
# unified bath Z
# ---------------------------------------------------------------------------

def test_unified_bath_Z_single_closed_form():
    exact, printed = unified_bath_Z(single(), ThermalSpec(1.0))
    c = math.exp(-0.25) / math.sqrt(0.75)
    assert exact.value == pytest.approx(2.0 * math.pi * c, rel=1e-14)
    assert printed.value == pytest.approx(exact.value * 2.0 * math.pi, rel=1e-14)


def test_unified_bath_Z_quadrature_oracle(quad):
    # coupled, shifted oscillator: the 3D integral still gives the exact
    # factor with no extra 2 pi
    bath = single(c=1.5, q0=0.7)
    th = ThermalSpec(1.0)
    exact_cf, _ = unified_bath_Z(bath, th)
    exact_qd, printed_qd = unified_bath_Z(bath, th, quad,
                                          method=Method.QUADRATURE)
    assert exact_qd.value == pytest.approx(exact_cf.value, rel=1e-8)
    assert printed_qd.value / exact_qd.value == pytest.approx(
        2.0 * math.pi, rel=1e-12)


def test_unified_bath_Z_classical_limit(quad):
    bath = single(sigma=100.0)
    th = ThermalSpec(1.0)
    exact, _ = unified_bath_Z(bath, th)
    z_b = classical_bath_Z(bath, th).value
    assert exact.value / z_b == pytest.approx(1.0, abs=1e-4)


def test_unified_bath_Z_depends_on_m_sigma_sq_multiset(quad):
    th = ThermalSpec(0.5)
    bath_a = BathSpec((Oscillator(4.0, 1.0, 1.0), Oscillator(1.0, 2.0, 0.3)),
                      sigma=0.5)
    bath_b = BathSpec((Oscillator(1.0, 0.7, 2.0), Oscillator(0.25, 3.0, 1.0)),
                      sigma=1.0)
    # multisets of m * sigma^2 match: {4*0.25, 1*0.25} == {1*1, 0.25*1}
    ra = unified_bath_Z(bath_a, th)[0].value / classical_bath_Z(bath_a, th).value
    rb = unified_bath_Z(bath_b, th)[0].value / classical_bath_Z(bath_b, th).value
    assert ra == pytest.approx(rb, rel=1e-14)


def test_unified_bath_Z_factorizes(quad):
    th = ThermalSpec(0.8)
    oscillators = (Oscillator(1.0, 1.0, 1.0), Oscillator(2.0, 0.6, -0.4),
                   Oscillator(0.7, 2.2, 0.1))
    bath = BathSpec(oscillators, sigma=0.9, q0=0.2)
    whole = unified_bath_Z(bath, th)[0].value
    parts = 1.0
    for o in oscillators:
        parts *= unified_bath_Z(BathSpec((o,), 0.9, 0.2), th)[0].value
    assert whole == pytest.approx(parts, rel=1e-10)


def test_unified_bath_Z_divergence():
    with pytest.raises(DivergentIntegral):
        unified_bath_Z(single(sigma=0.4), ThermalSpec(1.0))


# ---------------------------------------------------------------------------
# large-N approximation
# ---------------------------------------------------------------------------

def test_large_N_example():
    approx, exact, rel = large_N_ratio(10, 1.0, 1.0, ThermalSpec(0.04))
    assert rel == pytest.approx(abs(1.0 - 0.99**5), rel=1e-12)


def test_large_N_error_formula_identity():
    rng = np.random.default_rng(9)
    for _ in range(25):
        n = int(rng.integers(1, 40))
        r = float(rng.uniform(1e-4, 0.9))
        approx, exact, rel = large_N_ratio(n, 1.0, 1.0, ThermalSpec(4.0 * r))
        assert rel == pytest.approx(abs(1.0 - (1.0 - r) ** (n / 2)), abs=1e-12)


def test_large_N_error_vanishes_with_ratio():
    rels = [large_N_ratio(8, 1.0, 1.0, ThermalSpec(4.0 * r))[2]
            for r in (1e-2, 1e-4, 1e-6)]
    assert rels[0] > rels[1] > rels[2]
    assert rels[2] < 1e-5


def test_large_N_quarter_ratio_product():
    approx, exact, rel = large_N_ratio(4, 1.0, 1.0, ThermalSpec(1.0))
    c = math.exp(-0.25) / math.sqrt(0.75)
    assert exact == pytest.approx(c**4, rel=1e-12)
    assert approx == pytest.approx(math.exp(-1.0), rel=1e-12)


def test_large_N_divergence():
    with pytest.raises(DivergentIntegral):
        large_N_ratio(5, 1.0, 0.5, ThermalSpec(1.0))


# ---------------------------------------------------------------------------
# criterion
# ---------------------------------------------------------------------------

def test_bath_classicality_table():
    reports = bath_classicality(single(m=1.0, sigma=0.5), ThermalSpec(4.0))
    assert reports[0].dimensionless_ratio == pytest.approx(4.0)
    assert not reports[0].classical_ok

    reports = bath_classicality(single(m=1.0, sigma=0.5), ThermalSpec(0.5))
    assert reports[0].dimensionless_ratio == pytest.approx(0.5)
    assert reports[0].classical_ok


def test_bath_classicality_mixed_bath_conjunction():
    bath = BathSpec((Oscillator(1.0, 1.0, 1.0), Oscillator(0.1, 1.0, 1.0)),
                    sigma=0.6)
    reports = bath_classicality(bath, ThermalSpec(1.0))
    assert reports[0].classical_ok and not reports[1].classical_ok
    assert not all(r.classical_ok for r in reports)


def test_uniform_bath_constructor():
    bath = uniform_bath(5, m0=2.0, omega_max=3.0, coupling_scale=0.5)
    assert bath.size == 5
    assert bath.oscillators[-1].omega == pytest.approx(3.0)
    assert bath.oscillators[0].omega == pytest.approx(0.6)
    assert all(o.mass == 2.0 for o in bath.oscillators)


def test_bath_spec_validation():
    with pytest.raises(ValueError):
        BathSpec((), 1.0)
    with pytest.raises(ValueError):
        Oscillator(1.0, -1.0, 0.0)
    with pytest.raises(ValueError):
        BathInitialState((1.0,), (1.0, 2.0))
