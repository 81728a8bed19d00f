"""Domain types, units convention, and regime/branch classification.

Natural units with hbar = c = 1 are used everywhere: the total energy E,
the rest energy m c^2 and potential heights V share one energy unit,
momenta carry the same unit, and lengths its inverse.  For a massive
particle the convenient unit is the rest energy itself, so ``energy=1.3``
reads "1.3 rest energies" and widths are in Compton units hbar/(m c).
For a massless particle any consistent raw unit works.

The sign of E - V in a region decides which energy branch,
E = +sqrt(m^2 + p^2) + V or E = -sqrt(m^2 + p^2) + V, supports the local
solution; |E - V| < m is the spectral gap, where the local momentum is
imaginary and waves are evanescent.  The gap has width exactly 2 m and is
empty for massless particles.
"""

from __future__ import annotations

import cmath
import math
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "Model",
    "Geometry",
    "Branch",
    "Regime",
    "Boundary",
    "BasisKind",
    "RegimeClass",
    "RegionKinematics",
    "ParticleSpec",
    "Segment",
    "PotentialProfile",
    "RegionSolution",
    "ScatteringSolution",
    "InvalidParticleError",
    "InvalidProfileError",
    "classify_regime",
    "kinematics",
]


class InvalidParticleError(ValueError):
    """The incident particle cannot scatter (non-propagating incidence)."""


class InvalidProfileError(ValueError):
    """The potential profile violates a structural invariant."""


class Model(str, Enum):
    DIRAC = "dirac"
    KLEIN_GORDON = "kg"


class Geometry(str, Enum):
    STEP = "step"
    BARRIER = "barrier"
    GENERAL = "general"


class Branch(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Regime(str, Enum):
    """The four height ranges a constant potential V can fall in.

    They partition the V axis for fixed (E, m):

    * ``PROPAGATING_POSITIVE``: V < E - m, plane waves on the positive branch
    * ``EVANESCENT_BELOW_E``:   E - m <= V <= E, decaying waves, E above V
    * ``EVANESCENT_ABOVE_E``:   E < V < E + m, decaying waves, E below V
    * ``PROPAGATING_NEGATIVE``: V >= E + m, plane waves on the negative branch
    """

    PROPAGATING_POSITIVE = "propagating_positive"
    EVANESCENT_BELOW_E = "evanescent_below_e"
    EVANESCENT_ABOVE_E = "evanescent_above_e"
    PROPAGATING_NEGATIVE = "propagating_negative"

    @property
    def is_evanescent(self) -> bool:
        return self in (Regime.EVANESCENT_BELOW_E, Regime.EVANESCENT_ABOVE_E)


class Boundary(str, Enum):
    """Marks V sitting exactly on a classification boundary."""

    LOWER_EDGE = "lower_edge"    # V = E - m
    AT_ENERGY = "at_energy"      # V = E
    UPPER_EDGE = "upper_edge"    # V = E + m


class BasisKind(str, Enum):
    """Which two-solution basis spans a region (see :mod:`relscatter.bases`)."""

    PLANE_POS = "plane_pos"      # positive-branch plane waves
    PLANE_NEG = "plane_neg"      # negative-branch plane waves (spinor convention)
    EVAN_BELOW = "evan_below"    # evanescent pair, E above V
    EVAN_ABOVE = "evan_above"    # evanescent pair, E below V
    CONST_PAIR = "const_pair"    # degenerate spinor region: constant columns
    KG_PLANE = "kg_plane"
    KG_EVAN = "kg_evan"
    KG_LINEAR = "kg_linear"      # degenerate scalar region: {1, x} basis


@dataclass(frozen=True)
class RegimeClass:
    regime: Regime
    boundary: Boundary | None = None

    @property
    def boundary_flag(self) -> bool:
        return self.boundary is not None


def classify_regime(energy: float, v: float, mass: float) -> RegimeClass:
    """Classify a potential height against the four ranges.

    Total and deterministic.  Tie rules: V = E - m and V = E + m classify as
    evanescent (gap) with the boundary flag set; V = E classifies as
    ``EVANESCENT_BELOW_E`` with the flag set.
    """
    lower = energy - mass
    upper = energy + mass
    if v == energy:
        return RegimeClass(Regime.EVANESCENT_BELOW_E, Boundary.AT_ENERGY)
    if v == lower:
        return RegimeClass(Regime.EVANESCENT_BELOW_E, Boundary.LOWER_EDGE)
    if v == upper:
        return RegimeClass(Regime.EVANESCENT_ABOVE_E, Boundary.UPPER_EDGE)
    if v < lower:
        return RegimeClass(Regime.PROPAGATING_POSITIVE)
    if v < energy:
        return RegimeClass(Regime.EVANESCENT_BELOW_E)
    if v < upper:
        return RegimeClass(Regime.EVANESCENT_ABOVE_E)
    return RegimeClass(Regime.PROPAGATING_NEGATIVE)


@dataclass(frozen=True)
class RegionKinematics:
    """Branch and wave character of one constant-potential region.

    ``momentum`` is the propagating momentum p when ``propagating`` is true,
    else the evanescent decay constant k; both are the principal
    (non-negative) roots of (E - V)^2 - m^2 = +-(p or k)^2.
    """

    branch: Branch
    propagating: bool
    momentum: float
    boundary: Boundary | None = None

    @property
    def p(self) -> float:
        if not self.propagating:
            raise ValueError("region is evanescent; no propagating momentum")
        return self.momentum

    @property
    def k(self) -> float:
        if self.propagating:
            raise ValueError("region is propagating; no decay constant")
        return self.momentum


def kinematics(energy: float, v: float, mass: float) -> RegionKinematics:
    """Kinematics of a region at height V for a particle (E, m).

    Branch is positive where E > V, negative where E < V (tie at E = V goes
    to the negative side).  At the gap edges |E - V| = m both p and k vanish;
    the region is reported as evanescent with k = 0 and the boundary flagged.
    """
    rc = classify_regime(energy, v, mass)
    delta = energy - v
    if rc.regime.is_evanescent:
        momentum = math.sqrt(max(mass * mass - delta * delta, 0.0))
        propagating = False
    else:
        momentum = math.sqrt(max(delta * delta - mass * mass, 0.0))
        propagating = True
    branch = Branch.POSITIVE if delta > 0 else Branch.NEGATIVE
    return RegionKinematics(branch, propagating, momentum, rc.boundary)


@dataclass(frozen=True)
class ParticleSpec:
    """Incident particle: rest energy m c^2 and total energy E.

    The incident region is at zero reference potential, so propagating
    incidence requires E > m c^2 (for a massless particle, E > 0).
    """

    mass_energy: float
    energy: float

    def __post_init__(self) -> None:
        if not (self.mass_energy >= 0.0) or not math.isfinite(self.mass_energy):
            raise InvalidParticleError(
                f"rest energy must be finite and >= 0, got {self.mass_energy}"
            )
        if not math.isfinite(self.energy) or self.energy <= self.mass_energy:
            raise InvalidParticleError(
                "incident energy inside gap: "
                f"E={self.energy} requires E > mc^2={self.mass_energy} "
                "for a propagating incident wave"
            )

    @property
    def q(self) -> float:
        """Incident momentum at zero potential, q = sqrt(E^2 - m^2)."""
        return math.sqrt(self.energy**2 - self.mass_energy**2)


@dataclass(frozen=True)
class Segment:
    left: float
    right: float
    height: float


@dataclass(frozen=True)
class PotentialProfile:
    """Contiguous piecewise-constant potential covering the whole axis.

    ``heights`` lists the region values left to right; ``edges`` the interior
    interface positions (one fewer than heights, strictly increasing).  The
    first region extends to -inf and the last to +inf.
    """

    heights: tuple[float, ...]
    edges: tuple[float, ...]
    geometry: Geometry = Geometry.GENERAL

    def __post_init__(self) -> None:
        if len(self.heights) == 0:
            raise InvalidProfileError("profile needs at least one region")
        if len(self.edges) != len(self.heights) - 1:
            raise InvalidProfileError(
                f"{len(self.heights)} regions need {len(self.heights) - 1} "
                f"interior edges, got {len(self.edges)}"
            )
        for h in self.heights:
            if not math.isfinite(h):
                raise InvalidProfileError("potential heights must be finite")
        for a, b in zip(self.edges, self.edges[1:]):
            if not b > a:
                raise InvalidProfileError("interior edges must be strictly increasing")
        for e in self.edges:
            if not math.isfinite(e):
                raise InvalidProfileError("interior edges must be finite")

    @classmethod
    def step(cls, v0: float, at: float = 0.0) -> "PotentialProfile":
        return cls(heights=(0.0, v0), edges=(at,), geometry=Geometry.STEP)

    @classmethod
    def barrier(cls, v0: float, width: float, at: float = 0.0) -> "PotentialProfile":
        if not (width > 0.0) or not math.isfinite(width):
            raise InvalidProfileError(f"barrier width must be positive, got {width}")
        return cls(
            heights=(0.0, v0, 0.0),
            edges=(at, at + width),
            geometry=Geometry.BARRIER,
        )

    @classmethod
    def from_heights(
        cls, heights: "list[float] | tuple[float, ...]",
        edges: "list[float] | tuple[float, ...]",
    ) -> "PotentialProfile":
        return cls(heights=tuple(heights), edges=tuple(edges))

    @property
    def n_regions(self) -> int:
        return len(self.heights)

    @property
    def segments(self) -> tuple[Segment, ...]:
        bounds = (-math.inf,) + self.edges + (math.inf,)
        return tuple(
            Segment(bounds[i], bounds[i + 1], h) for i, h in enumerate(self.heights)
        )

    def region_of(self, x: float) -> int:
        """Region index containing x (points exactly on an edge go right)."""
        return bisect_right(self.edges, x)

    def anchors(self) -> tuple[float, ...]:
        """Phase-reference point per region: the left edge, except the first
        region, which is anchored at its right edge."""
        if not self.edges:
            return (0.0,)
        return (self.edges[0],) + self.edges

    def require_propagating_incidence(self, spec: ParticleSpec) -> None:
        delta = spec.energy - self.heights[0]
        if delta <= spec.mass_energy:
            raise InvalidProfileError(
                "incident energy inside gap: E - V_first = "
                f"{delta} requires > mc^2 = {spec.mass_energy}"
            )


@dataclass(frozen=True)
class RegionSolution:
    """Solved amplitudes of one region on its two basis solutions.

    ``amp_plus`` multiplies the rightward-moving (or decaying) basis element,
    ``amp_minus`` the leftward-moving (or growing) one; see
    :mod:`relscatter.bases` for the component conventions.
    """

    v: float
    kin: RegionKinematics
    anchor: float
    basis: BasisKind
    amp_plus: complex
    amp_minus: complex


@dataclass(frozen=True)
class ScatteringSolution:
    """A solved stationary scattering state.

    ``R`` and ``T`` are the reflection and transmission coefficients,
    0 <= R, T <= 1 with R + T = 1 (up to floating noise; exact where the
    value is an exact limit).  ``asserted`` marks solutions at spectral-gap
    boundary points whose stored values are one-sided limits rather than the
    output of a continuity solve; their interior amplitudes are not
    meaningful.
    """

    model: Model
    particle: ParticleSpec
    profile: PotentialProfile
    regions: tuple[RegionSolution, ...]
    R: float
    T: float
    asserted: bool = False

    @property
    def B(self) -> complex:
        """Reflection amplitude (leftward amplitude of the incident region)."""
        return self.regions[0].amp_minus

    @property
    def G(self) -> complex:
        """Transmission amplitude in the convention where every plane wave is
        referenced to the origin (exp(i p x), not exp(i p (x - anchor)))."""
        last = self.regions[-1]
        if last.kin.propagating:
            return last.amp_plus * cmath.exp(-1j * last.kin.momentum * last.anchor)
        return last.amp_plus

    @property
    def F(self) -> complex:
        """Interior amplitude of a two-region (step) solution."""
        if len(self.regions) != 2:
            raise ValueError("F is defined for step solutions only")
        return self.regions[1].amp_plus

    def _interior_pair(self) -> tuple[complex, complex]:
        if len(self.regions) != 3:
            raise ValueError("F1/F2 are defined for barrier solutions only")
        mid = self.regions[1]
        if mid.basis in (BasisKind.EVAN_BELOW, BasisKind.EVAN_ABOVE, BasisKind.KG_EVAN):
            # conventional index order puts the growing exponential first
            return mid.amp_minus, mid.amp_plus
        return mid.amp_plus, mid.amp_minus

    @property
    def F1(self) -> complex:
        return self._interior_pair()[0]

    @property
    def F2(self) -> complex:
        return self._interior_pair()[1]

    @property
    def region_kinematics(self) -> tuple[RegionKinematics, ...]:
        return tuple(r.kin for r in self.regions)

    @property
    def boundary_flag(self) -> bool:
        return any(r.kin.boundary is not None for r in self.regions)
