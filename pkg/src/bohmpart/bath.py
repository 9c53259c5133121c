"""Harmonic-bath crossover: kernel, noise force, and bath partition functions.

A tagged particle at q couples bilinearly to N oscillators; the bath
Hamiltonian is a sum of completed squares

    H_B = 1/2 sum_a [ P_a^2/m_a + m_a w_a^2 (X_a - c_a q / w_a^2)^2 ],

so the classical bath partition function (raw measure, matching the
Langevin-average convention) is the product of 2 pi / (beta w_a) factors and
never depends on the couplings or on q.  When every oscillator is prepared
in a shared-width Gaussian instead of a point, integrating out the hidden
coordinates multiplies Z_B by the same correction factor as the single
particle case, once per oscillator:

    (1 - r_a)^(-1/2) exp(-r_a),   r_a = beta hbar^2 / (4 m_a sigma^2).

A variant with an extra 2 pi per oscillator is retained alongside the exact
factor because it circulates in closed-form write-ups; the quadrature oracle
in the verification suite pins down which one the integral actually gives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (DivergentIntegral, QuadratureConfig, ThermalSpec,
                   integrate_window)
from .partition import CriterionReport, Method, PartitionResult, classicality_criterion


@dataclass(frozen=True)
class Oscillator:
    mass: float
    omega: float
    coupling: float

    def __post_init__(self):
        if self.mass <= 0 or self.omega <= 0:
            raise ValueError("oscillator mass and frequency must be positive")


@dataclass(frozen=True)
class BathSpec:
    """N oscillators, the shared packet width, and the tagged position q(0)."""

    oscillators: tuple[Oscillator, ...]
    sigma: float
    q0: float = 0.0

    def __post_init__(self):
        if not self.oscillators:
            raise ValueError("bath must contain at least one oscillator")
        if self.sigma <= 0:
            raise ValueError("sigma must be strictly positive")

    @property
    def size(self) -> int:
        return len(self.oscillators)


@dataclass(frozen=True)
class BathInitialState:
    positions: tuple[float, ...]
    momenta: tuple[float, ...]

    def __post_init__(self):
        if len(self.positions) != len(self.momenta):
            raise ValueError("positions and momenta must have equal length")


def uniform_bath(n: int, m0: float = 1.0, omega_max: float = 1.0,
                 coupling_scale: float = 1.0, sigma: float = 1.0,
                 q0: float = 0.0) -> BathSpec:
    """Convenience bath: equal masses, linear frequency and coupling grids."""
    oscillators = tuple(
        Oscillator(m0, omega_max * k / n, coupling_scale * k / n)
        for k in range(1, n + 1))
    return BathSpec(oscillators, sigma, q0)


def memory_kernel(bath: BathSpec, t) -> float | np.ndarray:
    """Friction kernel nu(t) = sum_a (c_a^2 / w_a^2) cos(w_a t)."""
    t_arr = np.asarray(t, dtype=float)
    out = sum((o.coupling**2 / o.omega**2) * np.cos(o.omega * t_arr)
              for o in bath.oscillators)
    return out if np.ndim(t) else float(out)


def noise_force(bath: BathSpec, init: BathInitialState, t) -> float | np.ndarray:
    """Stochastic force from the bath initial conditions.

    F(t) = sum_a { m_a c_a [X_a(0) - c_a q0 / w_a^2] cos(w_a t)
                   + c_a P_a(0) sin(w_a t) / w_a }.
    """
    if len(init.positions) != bath.size:
        raise ValueError("initial state size does not match bath size")
    t_arr = np.asarray(t, dtype=float)
    out = 0.0
    for o, x_a, p_a in zip(bath.oscillators, init.positions, init.momenta):
        shift = x_a - o.coupling * bath.q0 / o.omega**2
        out = out + o.mass * o.coupling * shift * np.cos(o.omega * t_arr) \
            + o.coupling * p_a * np.sin(o.omega * t_arr) / o.omega
    return out if np.ndim(t) else float(out)


def bath_ratios(bath: BathSpec, thermal: ThermalSpec, hbar: float = 1.0) -> np.ndarray:
    """Per-oscillator convergence ratios beta hbar^2 / (4 m_a sigma^2)."""
    return np.array([thermal.beta * hbar**2 / (4.0 * o.mass * bath.sigma**2)
                     for o in bath.oscillators])


def classical_bath_Z(bath: BathSpec, thermal: ThermalSpec,
                     quad: QuadratureConfig | None = None,
                     method: Method = Method.CLOSED_FORM) -> PartitionResult:
    """Z_B = prod_a 2 pi / (beta w_a), raw measure; quadrature oracle optional."""
    beta = thermal.beta
    if method is Method.CLOSED_FORM:
        val = 1.0
        for o in bath.oscillators:
            val *= 2.0 * math.pi / (beta * o.omega)
        return PartitionResult(val, 0.0, method)
    if method is not Method.QUADRATURE:
        raise ValueError("classical_bath_Z supports CLOSED_FORM and QUADRATURE")

    quad = quad or QuadratureConfig()
    ws = quad.window_sigmas
    inner = quad.tightened()
    val, relerr = 1.0, 0.0
    for o in bath.oscillators:
        center = o.coupling * bath.q0 / o.omega**2
        sx = 1.0 / math.sqrt(beta * o.mass) / o.omega
        sp = math.sqrt(o.mass / beta)

        def x_slice(x0: float, osc=o, c0=center) -> float:
            v = 0.5 * osc.mass * osc.omega**2 * (x0 - c0) ** 2
            pval, _ = integrate_window(
                lambda p: math.exp(-beta * (p * p / (2 * osc.mass) + v)),
                -ws * sp, ws * sp, inner)
            return pval

        factor, err = integrate_window(x_slice, center - ws * sx,
                                       center + ws * sx, quad)
        relerr += err / factor
        val *= factor
    return PartitionResult(val, abs(val) * relerr, method)


def _oscillator_correction_quadrature(osc: Oscillator, sigma: float, q0: float,
                                      thermal: ThermalSpec, hbar: float,
                                      quad: QuadratureConfig) -> float:
    """3D quadrature over (X_a(0), P_a(0), X_a), divided by the classical factor."""
    beta = thermal.beta
    r = beta * hbar**2 / (4.0 * osc.mass * sigma**2)
    ws = quad.window_sigmas
    mid = quad.tightened(10.0)
    inner = quad.tightened(100.0)
    center = osc.coupling * q0 / osc.omega**2
    sx0 = 1.0 / math.sqrt(beta * osc.mass) / osc.omega
    sp0 = math.sqrt(osc.mass / beta)
    sig_eff = sigma / math.sqrt(1.0 - r)
    pref = 1.0 / (math.sqrt(2.0 * math.pi) * sigma)
    const_q = hbar**2 / (4.0 * osc.mass * sigma**2)

    def over_x(x0: float, p0: float) -> float:
        e_cls = p0 * p0 / (2.0 * osc.mass) \
            + 0.5 * osc.mass * osc.omega**2 * (x0 - center) ** 2

        def f(x: float) -> float:
            u = x - x0
            pg = pref * math.exp(-u * u / (2.0 * sigma**2))
            energy = e_cls + const_q - hbar**2 * u * u / (8.0 * osc.mass * sigma**4)
            return pg * math.exp(-beta * energy)

        val, _ = integrate_window(f, x0 - ws * sig_eff, x0 + ws * sig_eff, inner)
        return val

    def over_p0(x0: float) -> float:
        val, _ = integrate_window(lambda p0: over_x(x0, p0), -ws * sp0, ws * sp0, mid)
        return val

    val, _ = integrate_window(over_p0, center - ws * sx0, center + ws * sx0, quad)
    return val / (2.0 * math.pi / (beta * osc.omega))


def unified_bath_Z(bath: BathSpec, thermal: ThermalSpec,
                   quad: QuadratureConfig | None = None,
                   hbar: float = 1.0,
                   method: Method = Method.CLOSED_FORM
                   ) -> tuple[PartitionResult, PartitionResult]:
    """Bath partition function with the hidden coordinates integrated out.

    Returns (exact, with_2pi): the exact result multiplies Z_B by
    (1 - r_a)^(-1/2) exp(-r_a) per oscillator; with_2pi carries an extra
    2 pi per oscillator and is reported only for the discrepancy ledger.
    """
    ratios = bath_ratios(bath, thermal, hbar)
    if np.any(ratios >= 1.0):
        worst = float(np.max(ratios))
        raise DivergentIntegral(
            f"bath ratio {worst:g} >= 1: hidden-coordinate integral diverges")
    z_b = classical_bath_Z(bath, thermal).value

    if method is Method.CLOSED_FORM:
        factor = 1.0
        for r in ratios:
            factor *= math.exp(-r) / math.sqrt(1.0 - r)
        exact = PartitionResult(z_b * factor, 0.0, method)
        printed = PartitionResult(z_b * factor * (2.0 * math.pi) ** bath.size,
                                  0.0, method)
        return exact, printed
    if method is not Method.QUADRATURE:
        raise ValueError("unified_bath_Z supports CLOSED_FORM and QUADRATURE")

    quad = quad or QuadratureConfig()
    factor = 1.0
    for osc in bath.oscillators:
        factor *= _oscillator_correction_quadrature(
            osc, bath.sigma, bath.q0, thermal, hbar, quad)
    exact = PartitionResult(z_b * factor, 0.0, method)
    printed = PartitionResult(z_b * factor * (2.0 * math.pi) ** bath.size,
                              0.0, method)
    return exact, printed


def large_N_ratio(n: int, m0: float, sigma: float, thermal: ThermalSpec,
                  hbar: float = 1.0) -> tuple[float, float, float]:
    """Uniform-mass large-N approximation vs the exact product factor.

    Returns (approx, exact, rel_err) for Z'_B / Z_B:
        approx  = exp(-N r)
        exact   = [(1 - r)^(-1/2) exp(-r)]^N
        rel_err = |approx - exact| / exact = |1 - (1 - r)^(N/2)|.
    """
    r = thermal.beta * hbar**2 / (4.0 * m0 * sigma**2)
    if r >= 1.0:
        raise DivergentIntegral(f"ratio {r:g} >= 1: bath factor diverges")
    approx = math.exp(-n * r)
    exact = (math.exp(-r) / math.sqrt(1.0 - r)) ** n
    return approx, exact, abs(approx - exact) / exact


def bath_classicality(bath: BathSpec, thermal: ThermalSpec,
                      hbar: float = 1.0, kb: float = 1.0) -> list[CriterionReport]:
    """Per-oscillator temperature criterion; the bath passes iff all do."""
    return [classicality_criterion(o.mass, bath.sigma, thermal, hbar, kb)
            for o in bath.oscillators]
