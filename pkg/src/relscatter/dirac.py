"""Closed-form spin-1/2 scattering off a potential step and a square barrier.

Every formula here follows from continuity of both spinor components at the
interfaces, with the interior basis picked by the branch rule: positive-branch
columns where E > V, the negative-branch convention where E < V, and the
evanescent pairs inside the spectral gap |E - V| < m.  Reflection amplitudes
in propagating ranges are written in a pole-free rational form (numerator and
denominator multiplied through by sin(pa)) so barrier resonances come out as
exact zeros; the gap range uses coth via tanh so arbitrarily wide barriers
neither overflow nor lose the total-reflection limit.

Boundary heights are special:

* V0 = E -+ m (gap edges): the step has an exact bounded solution with
  |B| = 1; the barrier's interface system is degenerate there and the solver
  returns the asserted width-independent limit R = 1.
* V0 = E (barrier): the two evanescent spinor conventions give different
  one-sided closed forms; the solver returns the below-side value, and
  :func:`dirac_barrier_crossing_r` exposes both sides.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .bases import basis_kind, evaluate_solution
from .core import (
    BasisKind,
    Boundary,
    InvalidProfileError,
    Model,
    ParticleSpec,
    PotentialProfile,
    Regime,
    RegionSolution,
    ScatteringSolution,
    classify_regime,
    kinematics,
)

__all__ = [
    "SpinorValue",
    "dirac_step_solve",
    "dirac_step_limit",
    "dirac_barrier_solve",
    "dirac_barrier_limit",
    "dirac_barrier_crossing_r",
    "dirac_wavefunction",
    "dirac_current",
]


@dataclass(frozen=True)
class SpinorValue:
    """The two components of the one-dimensional spinor at a point."""

    upper: complex
    lower: complex


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
        Model.DIRAC, spec.energy, spec.mass_energy, v
    )
    return RegionSolution(v, kin, anchor, kind, amp_plus, amp_minus)


def _solution(spec: ParticleSpec, profile: PotentialProfile,
              regions: tuple[RegionSolution, ...], r: float,
              asserted: bool = False) -> ScatteringSolution:
    return ScatteringSolution(
        Model.DIRAC, spec, profile, regions, r, 1.0 - r, asserted
    )


def dirac_step_solve(spec: ParticleSpec, v0: float) -> ScatteringSolution:
    """Scattering state for an infinitely wide step of height ``v0``.

    Dispatches on the height range: R < 1 in both propagating ranges, with a
    total-transmission alley at v0 = 2E where the interior momentum matches
    the incident one, and R = 1 exactly across the whole gap
    E - m <= v0 <= E + m.
    """
    e, m, q = spec.energy, spec.mass_energy, spec.q
    profile = PotentialProfile.step(v0)
    rc = classify_regime(e, v0, m)

    if m == 0.0 and v0 == e:
        # fully transparent degenerate point: the interior is any constant
        # spinor, fixed by continuity to the incident boundary value
        regions = (
            _region(spec, 0.0, 0.0, 1.0, 0.0),
            _region(spec, v0, 0.0, q, e, basis=BasisKind.CONST_PAIR),
        )
        return _solution(spec, profile, regions, 0.0)

    kin = kinematics(e, v0, m)
    if kin.momentum == 0.0 or kin.boundary in (Boundary.LOWER_EDGE,
                                               Boundary.UPPER_EDGE):
        # on (or within an ulp of) a gap edge: zero interior momentum, so the
        # bounded interior solution is a constant column and reflection total
        if e > v0:
            regions = (
                _region(spec, 0.0, 0.0, 1.0, -1.0),
                _region(spec, v0, 0.0, 2.0 * q, 0.0, basis=BasisKind.CONST_PAIR),
            )
        else:
            regions = (
                _region(spec, 0.0, 0.0, 1.0, 1.0),
                _region(spec, v0, 0.0, 0.0, 2.0 * (e - m),
                        basis=BasisKind.CONST_PAIR),
            )
        return _solution(spec, profile, regions, 1.0)
    if rc.regime is Regime.PROPAGATING_POSITIVE:
        p = kin.momentum
        alpha = q * (e - v0 - m) / (p * (e - m))
        b = complex((alpha - 1.0) / (alpha + 1.0))
        f = q * (1.0 - b) / p
        r = _r_of(b)
    elif rc.regime is Regime.PROPAGATING_NEGATIVE:
        p = kin.momentum
        d = v0 - e + m
        gamma = p * q / ((e - m) * d)
        b = complex((gamma - 1.0) / (gamma + 1.0))
        f = q * (1.0 - b) / d
        r = _r_of(b)
    elif rc.regime is Regime.EVANESCENT_BELOW_E:
        k = kin.momentum
        mu = 1j * q * (v0 - e + m) / (k * (e - m))
        b = (mu - 1.0) / (mu + 1.0)
        f = -1j * q * (1.0 - b) / k
        r = 1.0
    else:
        k = kin.momentum
        d = e - v0 + m
        mu = 1j * k * q / (d * (e - m))
        b = (mu - 1.0) / (mu + 1.0)
        f = q * (1.0 - b) / d
        r = 1.0

    regions = (
        _region(spec, 0.0, 0.0, 1.0, b),
        _region(spec, v0, 0.0, f, 0.0),
    )
    return _solution(spec, profile, regions, r)


def dirac_step_limit(spec: ParticleSpec) -> float:
    """Reflection coefficient of the step as its height grows without bound:
    R -> (m / (E + sqrt(E^2 - m^2)))^2, which is 0 for a massless particle."""
    return (spec.mass_energy / (spec.energy + spec.q)) ** 2


def _barrier_propagating(spec: ParticleSpec, v0: float, width: float,
                         klein: bool) -> tuple[complex, complex, complex, complex]:
    """Amplitudes (B, F+, F-, G_anchored) for a propagating interior."""
    e, m, q = spec.energy, spec.mass_energy, spec.q
    p = kinematics(e, v0, m).momentum
    s = math.sin(p * width)
    c = math.cos(p * width)
    if klein:
        den = complex((e * v0 - 2.0 * e * e + q * q) * s, p * q * c)
        b = (v0 - 2.0 * e) * m * s / den
        d = v0 - e + m
        f_plus = (q * (1.0 - b) / d + (e - m) * (1.0 + b) / p) / 2.0
        f_minus = (q * (1.0 - b) / d - (e - m) * (1.0 + b) / p) / 2.0
        g = (1.0 + b) / complex(c, -p * q * s / (d * (e - m)))
    else:
        den = complex((q * q - e * v0) * s, p * q * c)
        b = -v0 * m * s / den
        w = (e - m) / (e - v0 - m)
        f_plus = (w * (1.0 + b) + q * (1.0 - b) / p) / 2.0
        f_minus = (w * (1.0 + b) - q * (1.0 - b) / p) / 2.0
        g = (1.0 + b) / complex(c, -q * s / (p * w))
    return b, f_plus, f_minus, g


def _barrier_gap(spec: ParticleSpec, v0: float, width: float
                 ) -> tuple[complex, complex, complex, complex]:
    """Amplitudes for an evanescent interior.

    The reflection amplitude is the analytic continuation p -> ik of the
    below-range closed form and is valid across the whole open gap; the
    interior amplitudes are expressed on the evanescent basis matching the
    side of E the height sits on.
    """
    e, m, q = spec.energy, spec.mass_energy, spec.q
    k = kinematics(e, v0, m).momentum
    ka = k * width
    b = -v0 * m / complex(q * q - e * v0, k * q * _coth(ka))
    inv_cosh = 1.0 / math.cosh(ka) if ka < 300.0 else 2.0 * math.exp(-ka)
    if v0 <= e:
        w = (e - m) / (e - v0 - m)
        f_plus = (w * (1.0 + b) - 1j * q * (1.0 - b) / k) / 2.0
        f_minus = (w * (1.0 + b) + 1j * q * (1.0 - b) / k) / 2.0
        g = (1.0 + b) * inv_cosh / complex(1.0, -q * math.tanh(ka) / (k * w))
    else:
        d = e - v0 + m
        f_plus = (q * (1.0 - b) / d - 1j * (e - m) * (1.0 + b) / k) / 2.0
        f_minus = (q * (1.0 - b) / d + 1j * (e - m) * (1.0 + b) / k) / 2.0
        g = (1.0 + b) * inv_cosh / complex(
            1.0, k * q * math.tanh(ka) / (d * (e - m))
        )
    return b, f_plus, f_minus, g


def dirac_barrier_crossing_r(spec: ParticleSpec, width: float,
                             side: str = "below") -> float:
    """One-sided reflection coefficients of the barrier at v0 = E.

    The evanescent spinor conventions on the two sides of V = E produce
    different closed forms whose values at v0 = E disagree for finite width
    (the curve jumps there) and both approach 1 as the width grows.  The
    decay constant at this height is k = m, so the width enters as coth(m a).
    """
    e, m, q = spec.energy, spec.mass_energy, spec.q
    if m <= 0.0:
        raise ValueError("one-sided values at v0 = E need a massive particle")
    if not width > 0.0:
        raise ValueError("width must be positive")
    c = _coth(m * width)
    if side == "below":
        return e**4 / ((m * m - q * q) ** 2 + 4.0 * m * m * q * q * c * c)
    if side == "above":
        return e * e / (m * m + q * q * c * c)
    raise ValueError(f"side must be 'below' or 'above', got {side!r}")


def dirac_barrier_solve(spec: ParticleSpec, v0: float, width: float
                        ) -> ScatteringSolution:
    """Scattering state for a square barrier of height ``v0`` and ``width``.

    Propagating interiors resonate (R = 0 exactly at p a = n pi) and share
    the v0 = 2E transmission alley with the step.  Evanescent interiors
    tunnel, approaching the step's total reflection as k a grows.  At the
    boundary heights the solver returns limit values: R = 1 at v0 = E -+ m
    (width-independent), and the below-side closed form at v0 = E.
    """
    e, m, q = spec.energy, spec.mass_energy, spec.q
    if not (width > 0.0) or not math.isfinite(width):
        raise InvalidProfileError(f"barrier width must be positive, got {width}")
    profile = PotentialProfile.barrier(v0, width)
    rc = classify_regime(e, v0, m)

    def build(b: complex, f_plus: complex, f_minus: complex, g: complex,
              r: float, asserted: bool = False,
              mid_basis: BasisKind | None = None) -> ScatteringSolution:
        regions = (
            _region(spec, 0.0, 0.0, 1.0, b),
            _region(spec, v0, 0.0, f_plus, f_minus, basis=mid_basis),
            _region(spec, 0.0, width, g, 0.0),
        )
        return _solution(spec, profile, regions, r, asserted)

    if v0 == 0.0:
        return build(0.0, 1.0, 0.0, cmath.exp(1j * q * width), 0.0)

    if m == 0.0 and v0 == e:
        # transparent degenerate interior: constant spinor fixed by continuity
        return build(0.0, q, e, 1.0, 0.0, mid_basis=BasisKind.CONST_PAIR)

    kin = kinematics(e, v0, m)
    if kin.momentum == 0.0 or kin.boundary in (Boundary.LOWER_EDGE,
                                               Boundary.UPPER_EDGE):
        # on (or within an ulp of) a gap edge: total reflection at any width
        b = -1.0 if e > v0 else 1.0
        return build(b, 0.0, 0.0, 0.0, 1.0, asserted=True,
                     mid_basis=BasisKind.CONST_PAIR)

    if rc.boundary is Boundary.AT_ENERGY:
        c = _coth(m * width)
        b = -e * e / complex(m * m - q * q, -2.0 * m * q * c)
        r = _r_of(b)
        return build(b, 0.0, 0.0, math.sqrt(max(1.0 - r, 0.0)), r, asserted=True)

    if rc.regime is Regime.PROPAGATING_POSITIVE:
        b, fp, fm, g = _barrier_propagating(spec, v0, width, klein=False)
    elif rc.regime is Regime.PROPAGATING_NEGATIVE:
        b, fp, fm, g = _barrier_propagating(spec, v0, width, klein=True)
    else:
        b, fp, fm, g = _barrier_gap(spec, v0, width)
    return build(b, fp, fm, g, _r_of(b))


def dirac_barrier_limit(spec: ParticleSpec, phase: float) -> float:
    """Barrier reflection as the height grows without bound at fixed interior
    phase p a (mod pi): R -> m^2 / (E^2 + (E^2 - m^2) cot^2(pa)).

    Bounded by (m/E)^2, attained where cot vanishes; 0 for massless
    particles.  Phases where cot diverges (pa = n pi) are rejected.
    """
    s = math.sin(phase)
    if abs(s) < 1e-12:
        raise ValueError("phase sits on a resonance; cot(phase) diverges")
    cot = math.cos(phase) / s
    e, m = spec.energy, spec.mass_energy
    return m * m / (e * e + (e * e - m * m) * cot * cot)


def dirac_wavefunction(sol: ScatteringSolution, x: float) -> SpinorValue:
    """Evaluate the solved piecewise spinor at x (unit incident amplitude)."""
    if sol.model is not Model.DIRAC:
        raise ValueError("solution is not a Dirac solution")
    upper, lower = evaluate_solution(sol, x)
    return SpinorValue(upper, lower)


def dirac_current(psi: SpinorValue) -> float:
    """Probability current carried by a spinor value: j = 2 Re(upper* lower).

    Positive for rightward flux; x-independent inside each region of a
    solved state and conserved across interfaces.
    """
    return 2.0 * (psi.upper.conjugate() * psi.lower).real
