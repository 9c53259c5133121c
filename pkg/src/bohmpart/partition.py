"""Partition functions: classical, quantum, unified Gaussian, and marginal.

Conventions
-----------
* The phase-space measure is dGamma = dx dp / (2 pi hbar) by default; pass
  measure="raw" for plain dx dp.  Ratios such as Z_u/Z_cl do not depend on
  the choice.
* The unified Gaussian form integrates the packet density against
  exp(-beta E) over the hidden coordinate and the trajectory initial
  conditions.  The x-integral converges only while

      beta hbar^2 / (4 m sigma^2) < 1,

  which is the classicality temperature bound; every entry point checks it
  before integrating and raises DivergentIntegral at or beyond the threshold.
* The marginal partition function at fixed (x0, p0) keeps the single
  prepared packet in the distribution sum; it is evaluated by adaptive
  quadrature of P exp(-beta E) with the window sized from the completed
  square of the full exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .core import (DivergentIntegral, QuadratureConfig, SystemParams,
                   ThermalSpec, integrate_window, potential_value)
from .wavepacket import (WavepacketInit, density, density_dt, energy_dt,
                         energy_pointwise, evolve, _energy_coefficients)


class Method(Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    EIGEN_SUM = "eigen_sum"


@dataclass(frozen=True)
class PartitionResult:
    value: float
    est_error: float
    method: Method

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError("partition value must be positive")
        if self.est_error < 0:
            raise ValueError("est_error must be non-negative")


@dataclass(frozen=True)
class MarginalCurve:
    """Time series of the marginal partition function for one (sigma, kbt)."""

    times: np.ndarray
    values: np.ndarray
    normalized: bool
    sigma: float
    kbt: float
    x0: float
    p0: float


@dataclass(frozen=True)
class CriterionReport:
    """Classicality diagnostic for one (m, sigma, beta) combination."""

    t_min: float
    dimensionless_ratio: float
    classical_ok: bool
    thermal_de_broglie: float


def _measure_factor(params: SystemParams, measure: str) -> float:
    if measure == "dGamma":
        return 2.0 * math.pi * params.constants.hbar
    if measure == "raw":
        return 1.0
    raise ValueError(f"unknown measure {measure!r}; use 'dGamma' or 'raw'")


def quantum_ratio(params_mass: float, sigma: float, thermal: ThermalSpec,
                  hbar: float) -> float:
    """The dimensionless convergence ratio beta hbar^2 / (4 m sigma^2)."""
    return thermal.beta * hbar**2 / (4.0 * params_mass * sigma**2)


# ---------------------------------------------------------------------------
# Classical and quantum references
# ---------------------------------------------------------------------------

def classical_Z(params: SystemParams, thermal: ThermalSpec,
                quad: QuadratureConfig, method: Method = Method.CLOSED_FORM,
                measure: str = "dGamma") -> PartitionResult:
    """Phase-space integral of exp(-beta H); closed form k_B T/(hbar omega).

    Only the harmonic well has a convergent configuration integral; the free
    particle raises DivergentIntegral.
    """
    if not params.is_harmonic:
        raise DivergentIntegral("free particle: unbounded configuration integral")
    beta = thermal.beta
    m, w = params.mass, params.omega
    norm = _measure_factor(params, measure)

    if method is Method.CLOSED_FORM:
        return PartitionResult(2.0 * math.pi / (beta * w) / norm, 0.0, method)
    if method is not Method.QUADRATURE:
        raise ValueError("classical_Z supports CLOSED_FORM and QUADRATURE")

    sx = 1.0 / math.sqrt(beta * m) / w
    sp = math.sqrt(m / beta)
    inner = quad.tightened()

    def x_slice(x: float) -> float:
        vx = potential_value(params, x)
        val, _ = integrate_window(
            lambda p: math.exp(-beta * (p * p / (2 * m) + vx)),
            -quad.window_sigmas * sp, quad.window_sigmas * sp, inner)
        return val

    val, err = integrate_window(x_slice, -quad.window_sigmas * sx,
                                quad.window_sigmas * sx, quad)
    return PartitionResult(val / norm, err / norm, method)


def quantum_Z(params: SystemParams, thermal: ThermalSpec,
              tail_tol: float = 1e-14) -> PartitionResult:
    """Eigenvalue sum over the harmonic ladder, truncated at the tail bound.

    The geometric tail after the last kept term is below tail_tol relative to
    the partial sum; the closed form 1/(2 sinh(beta hbar omega / 2)) is the
    exact limit.
    """
    if not params.is_harmonic:
        raise DivergentIntegral("free particle: continuous spectrum")
    x = thermal.beta * params.constants.hbar * params.omega
    ratio = math.exp(-x)
    # tail after K terms: exp(-x(K+1/2)) * ratio/(1-ratio)
    n_terms = max(2, int(math.ceil((math.log(1.0 / tail_tol)
                                    + math.log(1.0 / (1.0 - ratio))) / x)) + 2)
    k = np.arange(n_terms)
    partial = float(np.sum(np.exp(-x * (k + 0.5))))
    tail = math.exp(-x * (n_terms + 0.5)) / (1.0 - ratio)
    return PartitionResult(partial, tail, Method.EIGEN_SUM)


def quantum_Z_closed_form(params: SystemParams, thermal: ThermalSpec) -> float:
    x = thermal.beta * params.constants.hbar * params.omega
    return 1.0 / (2.0 * math.sinh(0.5 * x))


# ---------------------------------------------------------------------------
# Unified Gaussian form
# ---------------------------------------------------------------------------

def gaussian_correction(m: float, sigma: float, thermal: ThermalSpec,
                        hbar: float = 1.0,
                        quad: QuadratureConfig | None = None,
                        method: Method = Method.CLOSED_FORM) -> float:
    """Factor C multiplying the classical Z in the unified Gaussian form.

    C = (1 - r)^(-1/2) exp(-r) with r = beta hbar^2/(4 m sigma^2), from
    integrating the packet density against the Boltzmann weight of its own
    quantum potential.  Diverges (is raised) at r >= 1.
    """
    r = quantum_ratio(m, sigma, thermal, hbar)
    if r >= 1.0:
        raise DivergentIntegral(
            f"beta hbar^2/(4 m sigma^2) = {r:g} >= 1: x-integral diverges")
    if method is Method.CLOSED_FORM:
        return math.exp(-r) / math.sqrt(1.0 - r)
    if method is not Method.QUADRATURE:
        raise ValueError("gaussian_correction supports CLOSED_FORM and QUADRATURE")

    quad = quad or QuadratureConfig()
    beta = thermal.beta
    sig_eff = sigma / math.sqrt(1.0 - r)
    half = quad.window_sigmas * sig_eff

    def f(u: float) -> float:
        pg = math.exp(-u * u / (2 * sigma**2)) / (math.sqrt(2 * math.pi) * sigma)
        qpot = hbar**2 / (4 * m * sigma**2) - hbar**2 * u * u / (8 * m * sigma**4)
        return pg * math.exp(-beta * qpot)

    val, _ = integrate_window(f, -half, half, quad)
    return val


def unified_Z_gaussian(params: SystemParams, sigma: float, thermal: ThermalSpec,
                       quad: QuadratureConfig,
                       method: Method = Method.CLOSED_FORM,
                       measure: str = "dGamma") -> PartitionResult:
    """Unified partition function for the prepared Gaussian ensemble.

    Triple integral over trajectory initial conditions (x0, p0) and the
    hidden coordinate x of P_G(x; x0) exp(-beta E(x; x0, p0)) at t = 0.
    Factorizes exactly into sqrt(2 pi m/beta) * C * integral exp(-beta V);
    the QUADRATURE method performs the honest nested integral instead.
    """
    if not params.is_harmonic:
        raise DivergentIntegral("free particle: unbounded x0 integral")
    beta = thermal.beta
    m, w = params.mass, params.omega
    hbar = params.constants.hbar
    r = quantum_ratio(m, sigma, thermal, hbar)
    if r >= 1.0:
        raise DivergentIntegral(
            f"beta hbar^2/(4 m sigma^2) = {r:g} >= 1: x-integral diverges")
    norm = _measure_factor(params, measure)

    if method is Method.CLOSED_FORM:
        c = gaussian_correction(m, sigma, thermal, hbar)
        zcl_raw = 2.0 * math.pi / (beta * w)
        return PartitionResult(zcl_raw * c / norm, 0.0, method)
    if method is not Method.QUADRATURE:
        raise ValueError("unified_Z_gaussian supports CLOSED_FORM and QUADRATURE")

    sx0 = 1.0 / math.sqrt(beta * m) / w
    sp0 = math.sqrt(m / beta)
    sig_eff = sigma / math.sqrt(1.0 - r)
    ws = quad.window_sigmas
    mid = quad.tightened(10.0)
    inner = quad.tightened(100.0)
    const_q = hbar**2 / (4 * m * sigma**2)
    pref = 1.0 / (math.sqrt(2 * math.pi) * sigma)

    def over_x(x0: float, p0: float) -> float:
        e_cls = p0 * p0 / (2 * m) + potential_value(params, x0)

        def f(x: float) -> float:
            u = x - x0
            pg = pref * math.exp(-u * u / (2 * sigma**2))
            energy = e_cls + const_q - hbar**2 * u * u / (8 * m * sigma**4)
            return pg * math.exp(-beta * energy)

        val, _ = integrate_window(f, x0 - ws * sig_eff, x0 + ws * sig_eff, inner)
        return val

    def over_p0(x0: float) -> float:
        val, _ = integrate_window(lambda p0: over_x(x0, p0),
                                  -ws * sp0, ws * sp0, mid)
        return val

    val, err = integrate_window(over_p0, -ws * sx0, ws * sx0, quad)
    return PartitionResult(val / norm, err / norm, method)


# ---------------------------------------------------------------------------
# Marginal partition function and its time derivative
# ---------------------------------------------------------------------------

def _marginal_exponent_shape(state, beta: float) -> tuple[float, float, float]:
    """(kappa, u_star, width) of the full integrand exponent in u = x - q.

    log(P e^(-beta E)) = -kappa u^2 - beta A1 u + const; kappa <= 0 means the
    integral diverges.  u_star is the completed-square center, width the
    effective Gaussian standard deviation.
    """
    a2, a1, _ = _energy_coefficients(state)
    kappa = 2.0 * state.alpha.real + beta * a2
    if kappa <= 0.0:
        return kappa, 0.0, math.inf
    u_star = -beta * a1 / (2.0 * kappa)
    return kappa, u_star, 1.0 / math.sqrt(2.0 * kappa)


def marginal_convergent(params: SystemParams, init: WavepacketInit,
                        thermal: ThermalSpec, t: float) -> bool:
    """Whether the marginal integrand is normalizable at this t."""
    state = evolve(params, init, t)
    kappa, _, _ = _marginal_exponent_shape(state, thermal.beta)
    return kappa > 0.0


def marginal_Z(params: SystemParams, init: WavepacketInit, thermal: ThermalSpec,
               t: float, quad: QuadratureConfig) -> float:
    """integral P(x,t) exp(-beta E(x,t)) dx at fixed (x0, p0).

    Time-dependent away from the quantum and classical limits; raises
    DivergentIntegral when the total quadratic exponent coefficient is
    non-negative at this t.
    """
    beta = thermal.beta
    state = evolve(params, init, t)
    kappa, u_star, width = _marginal_exponent_shape(state, beta)
    if kappa <= 0.0:
        raise DivergentIntegral(
            f"marginal integrand not normalizable at t={t:g} "
            f"(quadratic coefficient {-kappa:g} >= 0)")
    center = state.q + u_star
    half = quad.window_sigmas * width
    val, _ = integrate_window(
        lambda x: density(state, x) * math.exp(-beta * energy_pointwise(state, x)),
        center - half, center + half, quad)
    return val


@dataclass(frozen=True)
class MarginalRate:
    """Time derivative of the marginal Z.

    exact   : integral (dP/dt - beta P dE/dt) exp(-beta E) dx, the true
              d/dt of the marginal integral.
    bracket : integral (dP/dt + P dE/dt) exp(-beta E) dx, the same bracket
              without the -beta weight on the energy term, kept for the
              cross-check report.
    """

    exact: float
    bracket: float


def marginal_Z_derivative(params: SystemParams, init: WavepacketInit,
                          thermal: ThermalSpec, t: float,
                          quad: QuadratureConfig) -> MarginalRate:
    beta = thermal.beta
    state = evolve(params, init, t)
    kappa, u_star, width = _marginal_exponent_shape(state, beta)
    if kappa <= 0.0:
        raise DivergentIntegral(
            f"marginal integrand not normalizable at t={t:g}")
    center = state.q + u_star
    half = quad.window_sigmas * width

    def exact_f(x: float) -> float:
        w_boltz = math.exp(-beta * energy_pointwise(state, x))
        return (density_dt(state, x)
                - beta * density(state, x) * energy_dt(state, x)) * w_boltz

    def bracket_f(x: float) -> float:
        w_boltz = math.exp(-beta * energy_pointwise(state, x))
        return (density_dt(state, x)
                + density(state, x) * energy_dt(state, x)) * w_boltz

    exact, _ = integrate_window(exact_f, center - half, center + half, quad)
    bracket, _ = integrate_window(bracket_f, center - half, center + half, quad)
    return MarginalRate(exact, bracket)


def marginal_curve(params: SystemParams, init: WavepacketInit,
                   thermal: ThermalSpec, times: Sequence[float],
                   quad: QuadratureConfig, normalized: bool = True) -> MarginalCurve:
    """Marginal Z sampled on a time grid, optionally normalized to 1 at t=0."""
    times = np.asarray(times, dtype=float)
    values = np.array([marginal_Z(params, init, thermal, t, quad) for t in times])
    if normalized:
        z0 = marginal_Z(params, init, thermal, 0.0, quad) \
            if times[0] != 0.0 else values[0]
        values = values / z0
    return MarginalCurve(times, values, normalized, init.sigma,
                         thermal.kbt, init.x0, init.p0)


# ---------------------------------------------------------------------------
# Classicality criterion and average energy
# ---------------------------------------------------------------------------

def classicality_criterion(m: float, sigma: float, thermal: ThermalSpec,
                           hbar: float = 1.0, kb: float = 1.0) -> CriterionReport:
    """Temperature bound T > hbar^2/(4 m sigma^2 k_B) and related scales."""
    ratio = quantum_ratio(m, sigma, thermal, hbar)
    t_min = hbar**2 / (4.0 * m * sigma**2 * kb)
    lam = math.sqrt(2.0 * math.pi * hbar**2 * thermal.beta / m)
    return CriterionReport(t_min, ratio, ratio < 1.0, lam)


class AverageEnergyMode(Enum):
    QUANTUM_EIGEN = "quantum_eigen"
    CLASSICAL_LIMIT = "classical_limit"
    UNIFIED_GAUSSIAN = "unified_gaussian"


def classical_average_energy(params: SystemParams, thermal: ThermalSpec,
                             quad: QuadratureConfig) -> float:
    """<H> over the classical Boltzmann weight, by 2D Gaussian moment quadrature."""
    if not params.is_harmonic:
        raise DivergentIntegral("free particle: unbounded configuration integral")
    beta = thermal.beta
    m, w = params.mass, params.omega
    sx = 1.0 / math.sqrt(beta * m) / w
    sp = math.sqrt(m / beta)
    inner = quad.tightened()
    ws = quad.window_sigmas

    def moment(weighted: bool) -> float:
        def x_slice(x: float) -> float:
            vx = potential_value(params, x)

            def f(p: float) -> float:
                h_val = p * p / (2 * m) + vx
                boltz = math.exp(-beta * h_val)
                return h_val * boltz if weighted else boltz

            val, _ = integrate_window(f, -ws * sp, ws * sp, inner)
            return val

        val, _ = integrate_window(x_slice, -ws * sx, ws * sx, quad)
        return val

    return moment(True) / moment(False)


def average_energy(mode: AverageEnergyMode, params: SystemParams,
                   thermal: ThermalSpec, sigma: float,
                   quad: QuadratureConfig) -> float:
    """<E> in the requested regime.

    QUANTUM_EIGEN    : hbar w/2 + hbar w/(exp(beta hbar w) - 1)
    CLASSICAL_LIMIT  : classical <H> plus the additive hbar^2/(4 m sigma^2)
    UNIFIED_GAUSSIAN : -d/d(beta) log Z_u by central differences with one
                       Richardson step (relative step 1e-5)
    """
    hbar = params.constants.hbar
    m = params.mass
    if mode is AverageEnergyMode.QUANTUM_EIGEN:
        if not params.is_harmonic:
            raise DivergentIntegral("free particle: continuous spectrum")
        x = thermal.beta * hbar * params.omega
        return 0.5 * hbar * params.omega + hbar * params.omega / math.expm1(x)
    if mode is AverageEnergyMode.CLASSICAL_LIMIT:
        return classical_average_energy(params, thermal, quad) \
            + hbar**2 / (4.0 * m * sigma**2)
    if mode is not AverageEnergyMode.UNIFIED_GAUSSIAN:
        raise ValueError(f"unknown mode {mode!r}")

    def log_zu(beta: float) -> float:
        res = unified_Z_gaussian(params, sigma, ThermalSpec(beta), quad)
        return math.log(res.value)

    beta0 = thermal.beta
    h = 1e-5 * beta0

    def diff(step: float) -> float:
        return (log_zu(beta0 + step) - log_zu(beta0 - step)) / (2.0 * step)

    d1, d2 = diff(h), diff(h / 2)
    return -(4.0 * d2 - d1) / 3.0


def heat_capacity(mode: AverageEnergyMode, params: SystemParams,
                  thermal: ThermalSpec, sigma: float,
                  quad: QuadratureConfig) -> float:
    """d<E>/dT = -k_B beta^2 d<E>/d(beta) by central differences."""
    kb = params.constants.boltzmann
    beta0 = thermal.beta
    h = 1e-4 * beta0

    def e_of(beta: float) -> float:
        return average_energy(mode, params, ThermalSpec(beta), sigma, quad)

    d = (e_of(beta0 + h) - e_of(beta0 - h)) / (2.0 * h)
    return -kb * beta0**2 * d
