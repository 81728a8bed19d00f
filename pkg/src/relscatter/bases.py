"""Two-solution bases for constant-potential regions, and piecewise evaluation.

Component conventions (hbar = c = 1, delta = E - V, principal roots
p = sqrt(delta^2 - m^2), k = sqrt(m^2 - delta^2)):

Dirac spinor columns (upper, lower):

* positive branch, plane:   (+p, delta - m) e^{+ipx}   /  (-p, delta - m) e^{-ipx}
* negative branch, plane:   (m - delta, +p) e^{+ipx}   /  (m - delta, -p) e^{-ipx}
* gap, E above V:           (+ik, delta - m) e^{-kx}   /  (-ik, delta - m) e^{+kx}
* gap, E below V:           (delta + m, +ik) e^{-kx}   /  (delta + m, -ik) e^{+kx}
* degenerate (p = k = 0):   constant columns (1, 0) and (0, 1)

The negative-branch plane pair is the spinor convention that resolves the
overshoot of R past 1 for strong potentials: the rightward-transmitted wave
keeps exp(+ipx) with p >= 0 and carries positive current 2 Re(upper* lower).
It is adopted exactly as stated by its source treatment; it is not the
analytic continuation of the positive-branch column.

Klein-Gordon rows are (psi, dpsi/dx):

* plane:      e^{+-ipx}
* evanescent: e^{-+kx} (decaying listed first)
* degenerate (k = 0): {1, x - anchor}

All exponentials are referenced to a per-region anchor so matrix entries in
multi-region solves stay bounded by one e-folding across the region width.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .core import (
    BasisKind,
    Branch,
    Model,
    ParticleSpec,
    RegionKinematics,
    RegionSolution,
    ScatteringSolution,
    kinematics,
)

__all__ = [
    "RegionBasis",
    "basis_kind",
    "make_region_basis",
    "evaluate_region",
    "evaluate_solution",
    "region_flux",
]

Column = tuple[complex, complex]


def basis_kind(model: Model, energy: float, mass: float, v: float) -> BasisKind:
    """Pick the basis family for a region, degenerate cases included."""
    kin = kinematics(energy, v, mass)
    degenerate = kin.momentum == 0.0
    if model is Model.KLEIN_GORDON:
        if degenerate:
            return BasisKind.KG_LINEAR
        return BasisKind.KG_PLANE if kin.propagating else BasisKind.KG_EVAN
    if degenerate:
        return BasisKind.CONST_PAIR
    if kin.propagating:
        return BasisKind.PLANE_POS if kin.branch is Branch.POSITIVE else BasisKind.PLANE_NEG
    return BasisKind.EVAN_BELOW if v <= energy else BasisKind.EVAN_ABOVE


def _columns(
    kind: BasisKind, energy: float, mass: float, v: float, momentum: float
) -> tuple[Column, complex, Column, complex]:
    """Coefficient columns and exponential rates (c_plus, lam_plus, c_minus, lam_minus)."""
    delta = energy - v
    if kind is BasisKind.PLANE_POS:
        p = momentum
        return (p, delta - mass), 1j * p, (-p, delta - mass), -1j * p
    if kind is BasisKind.PLANE_NEG:
        p = momentum
        return (mass - delta, p), 1j * p, (mass - delta, -p), -1j * p
    if kind is BasisKind.EVAN_BELOW:
        k = momentum
        return (1j * k, delta - mass), -k, (-1j * k, delta - mass), k
    if kind is BasisKind.EVAN_ABOVE:
        k = momentum
        return (delta + mass, 1j * k), -k, (delta + mass, -1j * k), k
    if kind is BasisKind.CONST_PAIR:
        return (1.0, 0.0), 0.0, (0.0, 1.0), 0.0
    if kind is BasisKind.KG_PLANE:
        p = momentum
        return (1.0, 1j * p), 1j * p, (1.0, -1j * p), -1j * p
    if kind is BasisKind.KG_EVAN:
        k = momentum
        return (1.0, -k), -k, (1.0, k), k
    raise ValueError(f"no exponential columns for basis kind {kind}")


@dataclass(frozen=True)
class RegionBasis:
    """The two basis solutions spanning one region.

    ``value_plus``/``value_minus`` return the matched component pair at x:
    (upper, lower) spinor components for the Dirac model, (psi, psi') for
    Klein-Gordon.
    """

    model: Model
    v: float
    kin: RegionKinematics
    kind: BasisKind
    anchor: float
    energy: float
    mass: float

    def value_plus(self, x: float) -> Column:
        return _evaluate_pair(self, x, plus=True)

    def value_minus(self, x: float) -> Column:
        return _evaluate_pair(self, x, plus=False)


def make_region_basis(
    spec: ParticleSpec, v: float, model: Model, anchor: float = 0.0
) -> RegionBasis:
    kin = kinematics(spec.energy, v, spec.mass_energy)
    kind = basis_kind(model, spec.energy, spec.mass_energy, v)
    return RegionBasis(model, v, kin, kind, anchor, spec.energy, spec.mass_energy)


def _evaluate_pair(basis: RegionBasis, x: float, plus: bool) -> Column:
    if basis.kind is BasisKind.KG_LINEAR:
        if plus:
            return (1.0 + 0j, 0.0 + 0j)
        return (complex(x - basis.anchor), 1.0 + 0j)
    cp, lp, cm, lm = _columns(
        basis.kind, basis.energy, basis.mass, basis.v, basis.kin.momentum
    )
    c, lam = (cp, lp) if plus else (cm, lm)
    phase = cmath.exp(lam * (x - basis.anchor))
    return (c[0] * phase, c[1] * phase)


def evaluate_region(
    sol: ScatteringSolution, index: int, x: float
) -> tuple[complex, complex]:
    """Evaluate the solved wave of region ``index`` at x (both components)."""
    region = sol.regions[index]
    basis = RegionBasis(
        sol.model,
        region.v,
        region.kin,
        region.basis,
        region.anchor,
        sol.particle.energy,
        sol.particle.mass_energy,
    )
    up = basis.value_plus(x)
    um = basis.value_minus(x)
    return (
        region.amp_plus * up[0] + region.amp_minus * um[0],
        region.amp_plus * up[1] + region.amp_minus * um[1],
    )


def evaluate_solution(sol: ScatteringSolution, x: float) -> tuple[complex, complex]:
    """Evaluate the piecewise wave at x (points on an edge use the right region)."""
    return evaluate_region(sol, sol.profile.region_of(x), x)


def region_flux(sol: ScatteringSolution, index: int, x: float) -> float:
    """Probability current of region ``index`` evaluated at x.

    Dirac: j = 2 Re(upper* lower).  Klein-Gordon: j = Im(psi* psi').
    For stationary solutions j is x-independent inside a region and equal
    across regions; rightward flux is positive.
    """
    a, b = evaluate_region(sol, index, x)
    if sol.model is Model.DIRAC:
        return 2.0 * (a.conjugate() * b).real
    return (a.conjugate() * b).imag
