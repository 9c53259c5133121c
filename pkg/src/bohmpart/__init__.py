"""Phase-space partition functions for Gaussian wavepackets.

Closed-form Gaussian packet dynamics (harmonic and free), Bohmian
trajectories of the resulting flow, and the family of partition functions
that interpolates between the quantum eigenvalue sum and the classical
phase-space integral, including the harmonic-bath crossover factors.
"""

from .core import (Constants, DivergentIntegral, Free, Grid1D, Harmonic,
                   QuadratureConfig, QuadratureFailure, StepFailure,
                   SystemParams, ThermalSpec, TruncationInsufficient,
                   free_system, harmonic_system, natural_units,
                   potential_value)
from .wavepacket import (SpectralDecomposition, WavepacketInit,
                         WavepacketState, density, energy_pointwise, evolve,
                         mean_energy, phase_gradient, quantum_potential,
                         spectral_project)
from .trajectories import (RK4Fixed, RK45Adaptive, TrajectoryConfig,
                           TrajectoryPath, bohmian_velocity,
                           equivariance_check, integrate, quantum_force)
from .partition import (AverageEnergyMode, CriterionReport, MarginalCurve,
                        Method, PartitionResult, average_energy, classical_Z,
                        classicality_criterion, gaussian_correction,
                        marginal_Z, marginal_Z_derivative, marginal_curve,
                        quantum_Z, unified_Z_gaussian)
from .bath import (BathInitialState, BathSpec, Oscillator, bath_classicality,
                   classical_bath_Z, large_N_ratio, memory_kernel,
                   noise_force, unified_bath_Z, uniform_bath)

__version__ = "0.1.0"
