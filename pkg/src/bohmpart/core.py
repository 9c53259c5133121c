"""Shared parameter records, physical constants, grids, and quadrature plumbing.

All other modules consume the types defined here.  Everything is an immutable
value record; default units are the natural ones (hbar = k_B = 1) so that the
harmonic-oscillator results come out in units of m*omega^2*x0^2 for energy and
1/omega for time.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Union

import numpy as np
from scipy import integrate as _sciint


# ---------------------------------------------------------------------------
# Errors shared across modules
# ---------------------------------------------------------------------------

class DivergentIntegral(Exception):
    """The requested integral does not converge for these parameters."""


class QuadratureFailure(Exception):
    """Adaptive quadrature could not reach the requested tolerance."""


class StepFailure(Exception):
    """The ODE step controller could not meet its tolerance."""


class TruncationInsufficient(Exception):
    """A truncated basis expansion failed to capture the state."""


# ---------------------------------------------------------------------------
# Constants and parameter records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Constants:
    """Physical constants: hbar (action) and boltzmann (energy/temperature)."""

    hbar: float = 1.0
    boltzmann: float = 1.0

    def __post_init__(self):
        if self.hbar <= 0 or self.boltzmann <= 0:
            raise ValueError("hbar and boltzmann must be strictly positive")


def natural_units() -> Constants:
    """Constants with hbar = k_B = 1 (the default dimensionless convention)."""
    return Constants(1.0, 1.0)


@dataclass(frozen=True)
class Harmonic:
    """Harmonic well V(x) = m*omega^2*x^2/2."""

    omega: float

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError("omega must be strictly positive")


@dataclass(frozen=True)
class Free:
    """Flat potential V(x) = 0."""


Potential = Union[Harmonic, Free]


@dataclass(frozen=True)
class SystemParams:
    """Single-particle system: mass plus one of the supported potentials."""

    mass: float
    potential: Potential
    constants: Constants = field(default_factory=natural_units)

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError("mass must be strictly positive")

    @property
    def omega(self) -> float:
        """Angular frequency; zero for the free particle."""
        return self.potential.omega if isinstance(self.potential, Harmonic) else 0.0

    @property
    def is_harmonic(self) -> bool:
        return isinstance(self.potential, Harmonic)


def harmonic_system(mass: float, omega: float, constants: Constants | None = None) -> SystemParams:
    return SystemParams(mass, Harmonic(omega), constants or natural_units())


def free_system(mass: float, constants: Constants | None = None) -> SystemParams:
    return SystemParams(mass, Free(), constants or natural_units())


def potential_value(params: SystemParams, x):
    """V(x): m*omega^2*x^2/2 for the harmonic well, 0 for the free particle."""
    if isinstance(params.potential, Harmonic):
        return 0.5 * params.mass * params.potential.omega**2 * np.square(x)
    return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0


@dataclass(frozen=True)
class ThermalSpec:
    """Canonical-ensemble inverse temperature beta = 1/(k_B T)."""

    beta: float

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("beta must be strictly positive")

    @classmethod
    def from_kbt(cls, kbt: float) -> "ThermalSpec":
        """Build from the thermal energy k_B*T."""
        return cls(1.0 / kbt)

    @property
    def kbt(self) -> float:
        return 1.0 / self.beta


@dataclass(frozen=True)
class QuadratureConfig:
    """Window and tolerance settings for the adaptive integrals.

    window_sigmas is the half-width of every truncated Gaussian integral in
    units of the integrand's standard deviation; 12 sigma keeps the tail below
    1e-30, far under the quadrature tolerances.
    """

    window_sigmas: float = 12.0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_subdiv: int = 200

    def __post_init__(self):
        if self.window_sigmas < 6:
            raise ValueError("window_sigmas must be at least 6")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be strictly positive")
        if self.max_subdiv < 1:
            raise ValueError("max_subdiv must be at least 1")

    def tightened(self, factor: float = 100.0) -> "QuadratureConfig":
        """Config for inner integrals of a nested quadrature."""
        return replace(
            self,
            rel_tol=max(self.rel_tol / factor, 1e-13),
            abs_tol=max(self.abs_tol / factor, 1e-15),
        )


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1D grid on [lo, hi] with n points."""

    lo: float
    hi: float
    n: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("grid requires lo < hi")
        if self.n < 3:
            raise ValueError("grid requires n >= 3")

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.n - 1)


# ---------------------------------------------------------------------------
# Quadrature wrapper
# ---------------------------------------------------------------------------

def integrate_window(f: Callable[[float], float], lo: float, hi: float,
                     quad: QuadratureConfig) -> tuple[float, float]:
    """Adaptive quadrature of f over [lo, hi], honoring the config tolerances.

    Returns (value, error estimate).  Raises QuadratureFailure when the
    adaptive subdivision limit is exhausted before the tolerance is met.
    """
    out = _sciint.quad(f, lo, hi, epsabs=quad.abs_tol, epsrel=quad.rel_tol,
                       limit=quad.max_subdiv, full_output=True)
    if len(out) > 3:
        raise QuadratureFailure(out[3])
    value, err = out[0], out[1]
    if err > 100.0 * max(quad.abs_tol, quad.rel_tol * abs(value)):
        raise QuadratureFailure(
            f"estimated error {err:g} exceeds tolerance for value {value:g}")
    return value, err
