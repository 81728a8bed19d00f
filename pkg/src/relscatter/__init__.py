"""Relativistic 1-D quantum scattering off piecewise-constant potentials.

Closed-form reflection/transmission for spin-1/2 and spin-0 particles on
steps and square barriers, a boundary-matching numeric solver for arbitrary
piecewise-constant profiles, curve sweeps with structural annotations, and
the massless smooth-potential phase solution.  Natural units hbar = c = 1.
"""

from .analysis import (
    SmoothPotential,
    SweepCurve,
    WidthRule,
    figure_curves,
    find_total_transmissions,
    integrate_coupled_components,
    jump_gap,
    massless_phase_solution,
    resonance_amplitudes,
    small_mass_bound,
    solve_point,
    sweep,
)
from .core import (
    Boundary,
    Branch,
    Geometry,
    InvalidParticleError,
    InvalidProfileError,
    Model,
    ParticleSpec,
    PotentialProfile,
    Regime,
    RegionKinematics,
    ScatteringSolution,
    classify_regime,
    kinematics,
)
from .dirac import (
    SpinorValue,
    dirac_barrier_crossing_r,
    dirac_barrier_limit,
    dirac_barrier_solve,
    dirac_current,
    dirac_step_limit,
    dirac_step_solve,
    dirac_wavefunction,
)
from .kleingordon import (
    ScalarWaveValue,
    kg_barrier_solve,
    kg_branch,
    kg_step_solve,
    kg_wavefunction,
)
from .matcher import (
    SingularSystemError,
    build_basis,
    continuity_residual,
    region_fluxes,
    solve_numeric,
    solve_profile,
    transfer_matrix_solve,
)
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "Boundary",
    "Branch",
    "Geometry",
    "InvalidParticleError",
    "InvalidProfileError",
    "Model",
    "ParticleSpec",
    "PotentialProfile",
    "Regime",
    "RegionKinematics",
    "ScalarWaveValue",
    "ScatteringSolution",
    "SingularSystemError",
    "SmoothPotential",
    "SpinorValue",
    "SweepCurve",
    "WidthRule",
    "build_basis",
    "classify_regime",
    "continuity_residual",
    "dirac_barrier_crossing_r",
    "dirac_barrier_limit",
    "dirac_barrier_solve",
    "dirac_current",
    "dirac_step_limit",
    "dirac_step_solve",
    "dirac_wavefunction",
    "figure_curves",
    "find_total_transmissions",
    "integrate_coupled_components",
    "jump_gap",
    "kg_barrier_solve",
    "kg_branch",
    "kg_step_solve",
    "kg_wavefunction",
    "kinematics",
    "massless_phase_solution",
    "region_fluxes",
    "resonance_amplitudes",
    "run_suite",
    "small_mass_bound",
    "solve_numeric",
    "solve_point",
    "solve_profile",
    "sweep",
    "transfer_matrix_solve",
    "__version__",
]
