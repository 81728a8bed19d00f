"""Closed-form spin-0 scattering off a potential step and a square barrier.

The second-order scalar equation factorizes over each constant-potential
region into a positive- and a negative-energy-branch equation; the branch
that applies is fixed by the sign of E - V, which for a scalar wave amounts
to keeping the momentum real on both sides of the gap instead of forcing an
exponential decay whenever E < V.  Matching conditions are continuity of
psi and psi' at every interface.

Reflection stays below 1 for all heights: both propagating ranges share the
single formula R = ((q - p) / (q + p))^2, symmetric under V0 - E <-> E - V0,
with the transmission alley at V0 = 2E; the gap range totally reflects the
step and tunnels through the barrier, joining the propagating result
continuously (the two barrier amplitudes map into each other under k -> ip).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .bases import basis_kind, evaluate_solution
from .core import (
    BasisKind,
    Branch,
    InvalidProfileError,
    Model,
    ParticleSpec,
    PotentialProfile,
    RegionSolution,
    ScatteringSolution,
    classify_regime,
    kinematics,
)

__all__ = [
    "ScalarWaveValue",
    "kg_branch",
    "kg_step_solve",
    "kg_barrier_solve",
    "kg_wavefunction",
]


@dataclass(frozen=True)
class ScalarWaveValue:
    """psi and dpsi/dx at a point."""

    value: complex
    derivative: complex


def kg_branch(energy: float, v: float, mass: float) -> Branch:
    """Which decoupled branch governs a region: positive where E > V,
    negative where E < V (the tie at E = V goes to the negative side)."""
    return kinematics(energy, v, mass).branch


def _coth(x: float) -> float:
    return 1.0 / math.tanh(x)


def _r_of(b: complex) -> float:
    # |B|^2 is analytically <= 1 for every closed form here; shave the
    # ulp-level excess floating roundoff can produce in degenerate corners
    return min(abs(b) ** 2, 1.0)


def _region(spec: ParticleSpec, v: float, anchor: float,
            amp_plus: complex, amp_minus: complex,
            basis: BasisKind | None = None) -> RegionSolution:
    kin = kinematics(spec.energy, v, spec.mass_energy)
    kind = basis if basis is not None else basis_kind(
        Model.KLEIN_GORDON, spec.energy, spec.mass_energy, v
    )
    return RegionSolution(v, kin, anchor, kind, amp_plus, amp_minus)


def _solution(spec: ParticleSpec, profile: PotentialProfile,
              regions: tuple[RegionSolution, ...], r: float) -> ScatteringSolution:
    return ScatteringSolution(Model.KLEIN_GORDON, spec, profile, regions, r, 1.0 - r)


def kg_step_solve(spec: ParticleSpec, v0: float) -> ScatteringSolution:
    """Scattering state for an infinitely wide step of height ``v0``."""
    e, m, q = spec.energy, spec.mass_energy, spec.q
    profile = PotentialProfile.step(v0)
    rc = classify_regime(e, v0, m)
    kin = kinematics(e, v0, m)

    if kin.momentum == 0.0:
        # gap edge (and the massless v0 = E point): psi is constant inside,
        # so psi' must vanish at the interface
        b, f, r = 1.0 + 0j, 2.0 + 0j, 1.0
    elif rc.regime.is_evanescent:
        k = kin.momentum
        b = -complex(k, q) / complex(k, -q)
        f = 1.0 + b
        r = 1.0
    else:
        p = kin.momentum
        b = complex((q - p) / (q + p))
        f = 1.0 + b
        r = _r_of(b)

    regions = (
        _region(spec, 0.0, 0.0, 1.0, b),
        _region(spec, v0, 0.0, f, 0.0),
    )
    return _solution(spec, profile, regions, r)


def kg_barrier_solve(spec: ParticleSpec, v0: float, width: float
                     ) -> ScatteringSolution:
    """Scattering state for a square barrier of height ``v0`` and ``width``.

    Resonant (R = 0) at p a = n pi in the propagating ranges, with maxima
    ((p^2 - q^2) / (p^2 + q^2))^2 halfway between; the gap range joins both
    sides continuously, including the exact edge heights where the interior
    degenerates to a linear profile and the amplitude has a finite limit.
    """
    e, m, q = spec.energy, spec.mass_energy, spec.q
    if not (width > 0.0) or not math.isfinite(width):
        raise InvalidProfileError(f"barrier width must be positive, got {width}")
    profile = PotentialProfile.barrier(v0, width)
    rc = classify_regime(e, v0, m)
    kin = kinematics(e, v0, m)

    def build(b: complex, f_plus: complex, f_minus: complex, g: complex,
              mid_basis: BasisKind | None = None) -> ScatteringSolution:
        r = _r_of(b)
        regions = (
            _region(spec, 0.0, 0.0, 1.0, b),
            _region(spec, v0, 0.0, f_plus, f_minus, basis=mid_basis),
            _region(spec, 0.0, width, g, 0.0),
        )
        return _solution(spec, profile, regions, r)

    if v0 == 0.0:
        return build(0.0, 1.0, 0.0, cmath.exp(1j * q * width))

    if kin.momentum == 0.0:
        # gap edge: the interior reduces to c0 + c1 x; finite-limit amplitudes
        b = -1j * q * width / complex(2.0, -q * width)
        c0 = 1.0 + b
        c1 = 1j * q * (1.0 - b)
        g = 2.0 / complex(2.0, -q * width)
        return build(b, c0, c1, g, mid_basis=BasisKind.KG_LINEAR)

    if rc.regime.is_evanescent:
        k = kin.momentum
        ka = k * width
        b = (k * k + q * q) / complex(q * q - k * k, 2.0 * k * q * _coth(ka))
        f_plus = ((1.0 + b) - 1j * q * (1.0 - b) / k) / 2.0
        f_minus = ((1.0 + b) + 1j * q * (1.0 - b) / k) / 2.0
        inv_cosh = 1.0 / math.cosh(ka) if ka < 300.0 else 2.0 * math.exp(-ka)
        g = 2.0 * k * q * inv_cosh / complex(
            2.0 * k * q, -math.tanh(ka) * (q * q - k * k)
        )
        return build(b, f_plus, f_minus, g)

    p = kin.momentum
    s = math.sin(p * width)
    c = math.cos(p * width)
    b = (q * q - p * p) * s / complex((p * p + q * q) * s, 2.0 * p * q * c)
    f_plus = ((1.0 + b) + q * (1.0 - b) / p) / 2.0
    f_minus = ((1.0 + b) - q * (1.0 - b) / p) / 2.0
    g = 2.0 * p * q / complex(2.0 * p * q * c, -s * (p * p + q * q))
    return build(b, f_plus, f_minus, g)


def kg_wavefunction(sol: ScatteringSolution, x: float) -> ScalarWaveValue:
    """Evaluate the solved piecewise scalar wave at x; both the value and the
    derivative are continuous at every interface."""
    if sol.model is not Model.KLEIN_GORDON:
        raise ValueError("solution is not a Klein-Gordon solution")
    value, derivative = evaluate_solution(sol, x)
    return ScalarWaveValue(value, derivative)
