"""Parameter sweeps, structure finders, and massless/small-mass results.

Sweeps walk a reflection curve R(V0) at fixed particle and geometry and
annotate the structure the curve is known to carry: the total-reflection
platform across the spectral gap, the transmission alley at V0 = 2E, barrier
resonances, and (for the spin-1/2 barrier) the two one-sided values at
V0 = E, which differ at finite width and merge as the width grows.

Figure presets reproduce four reference curves: the step and barrier
reflection for both models at E = 1.3 and 3 rest energies.  Barrier presets
fix one width per curve segment from the caption rules coth(k a) = 2 and
cot(p a) = 1/2, evaluating k at V0 = E (where k = m) and p at V0 = 0 (where
p equals the incident momentum q).

For massless particles in a smooth potential the two spinor components obey
a first-order coupled system whose exact solution is a pure phase; the
closed-form phase integral and a fixed-step high-order integrator of the
coupled system are both provided so one can check the other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import (
    Boundary,
    Geometry,
    InvalidProfileError,
    Model,
    ParticleSpec,
    PotentialProfile,
    Regime,
    ScatteringSolution,
    classify_regime,
    kinematics,
)
from .dirac import (
    dirac_barrier_crossing_r,
    dirac_barrier_solve,
    dirac_step_solve,
)
from .kleingordon import kg_barrier_solve, kg_step_solve

__all__ = [
    "WidthRule",
    "SweepSample",
    "SweepCurve",
    "TotalTransmissions",
    "ResonanceAmplitudes",
    "SmoothPotential",
    "solve_point",
    "sweep",
    "figure_curves",
    "FIGURE_ENERGIES",
    "find_total_transmissions",
    "resonance_amplitudes",
    "jump_gap",
    "small_mass_bound",
    "massless_phase_solution",
    "integrate_coupled_components",
]


@dataclass(frozen=True)
class WidthRule:
    """Barrier width per curve segment: one value for propagating interiors,
    one for evanescent interiors (they may coincide)."""

    propagating: float
    evanescent: float

    def width_at(self, energy: float, mass: float, v0: float) -> float:
        rc = classify_regime(energy, v0, mass)
        return self.evanescent if rc.regime.is_evanescent else self.propagating

    @classmethod
    def fixed(cls, width: float) -> "WidthRule":
        return cls(width, width)

    @classmethod
    def caption_rule(cls, spec: ParticleSpec) -> "WidthRule":
        """coth(k a) = 2 with k at V0 = E (k = m); cot(p a) = 1/2 with p at
        V0 = 0 (p = q)."""
        if spec.mass_energy == 0.0:
            raise ValueError("caption width rule needs a massive particle")
        a_evan = 0.5 * math.log(3.0) / spec.mass_energy
        a_prop = math.atan(2.0) / spec.q
        return cls(a_prop, a_evan)


def solve_point(model: Model, geometry: Geometry, spec: ParticleSpec,
                v0: float, width: float | None = None) -> ScatteringSolution:
    """Front door: dispatch one (model, geometry) solve."""
    if geometry is Geometry.STEP:
        if model is Model.DIRAC:
            return dirac_step_solve(spec, v0)
        return kg_step_solve(spec, v0)
    if geometry is Geometry.BARRIER:
        if width is None:
            raise InvalidProfileError("barrier geometry needs a width")
        if model is Model.DIRAC:
            return dirac_barrier_solve(spec, v0, width)
        return kg_barrier_solve(spec, v0, width)
    raise InvalidProfileError("solve_point handles step and barrier geometries")


@dataclass(frozen=True)
class SweepSample:
    v0: float
    r: float
    regime: Regime
    annotation: str = ""


@dataclass(frozen=True)
class SweepCurve:
    """An R(V0) curve with its generation parameters and annotations."""

    model: Model
    geometry: Geometry
    energy: float
    mass: float
    width: WidthRule | None
    samples: tuple[SweepSample, ...]
    alleys: tuple[float, ...]
    gap: tuple[float, float] | None
    resonances: tuple[float, ...] = ()
    jump: float | None = None

    def to_csv(self) -> str:
        """Serialize as CSV: header row, 17-significant-digit floats,
        newline-terminated lines."""
        lines = ["V0,R,regime,annotation"]
        for s in self.samples:
            lines.append(
                f"{s.v0:.17g},{s.r:.17g},{s.regime.value},{s.annotation}"
            )
        return "\n".join(lines) + "\n"


def _annotate(rc_boundary: Boundary | None, v0: float, alley: float) -> str:
    if v0 == alley:
        return "alley"
    if rc_boundary is Boundary.LOWER_EDGE:
        return "gap-edge-lower"
    if rc_boundary is Boundary.UPPER_EDGE:
        return "gap-edge-upper"
    return ""


def sweep(model: Model, geometry: Geometry, spec: ParticleSpec,
          v0_grid: Sequence[float], width: float | WidthRule | None = None,
          ) -> SweepCurve:
    """Solve R over an ordered V0 grid.

    Boundary heights are allowed; they produce the solvers' limit values.
    For the spin-1/2 barrier, a grid point exactly at V0 = E emits two
    samples annotated ``jump-`` and ``jump+``, the one-sided values from the
    two evanescent conventions.
    """
    e, m = spec.energy, spec.mass_energy
    rule = (
        width if isinstance(width, WidthRule)
        else WidthRule.fixed(width) if width is not None
        else None
    )
    if geometry is Geometry.BARRIER and rule is None:
        raise InvalidProfileError("barrier sweeps need a width or width rule")

    grid = sorted(float(v) for v in v0_grid)
    alley = 2.0 * e
    samples: list[SweepSample] = []
    for v0 in grid:
        rc = classify_regime(e, v0, m)
        a = rule.width_at(e, m, v0) if rule is not None else None
        if (
            model is Model.DIRAC
            and geometry is Geometry.BARRIER
            and m > 0.0
            and rc.boundary is Boundary.AT_ENERGY
        ):
            below = dirac_barrier_crossing_r(spec, a, side="below")
            above = dirac_barrier_crossing_r(spec, a, side="above")
            samples.append(SweepSample(v0, below, rc.regime, "jump-"))
            samples.append(SweepSample(v0, above, rc.regime, "jump+"))
            continue
        sol = solve_point(model, geometry, spec, v0, a)
        samples.append(
            SweepSample(v0, sol.R, rc.regime, _annotate(rc.boundary, v0, alley))
        )

    gap = (e - m, e + m) if m > 0.0 else None
    resonances: tuple[float, ...] = ()
    jump: float | None = None
    if geometry is Geometry.BARRIER:
        found = find_total_transmissions(
            model, geometry, spec,
            width=rule.propagating, v0_max=max(grid) if grid else alley,
        )
        resonances = found.resonant_v0
        if model is Model.DIRAC and m > 0.0:
            jump = jump_gap(spec, rule.evanescent)
    return SweepCurve(
        model, geometry, e, m, rule, tuple(samples),
        (alley,), gap, resonances, jump,
    )


FIGURE_ENERGIES: tuple[float, ...] = (1.3, 3.0)

_FIGURE_LAYOUT: dict[int, tuple[Model, Geometry]] = {
    2: (Model.DIRAC, Geometry.STEP),
    3: (Model.KLEIN_GORDON, Geometry.STEP),
    5: (Model.DIRAC, Geometry.BARRIER),
    6: (Model.KLEIN_GORDON, Geometry.BARRIER),
}


def figure_curves(fig: int, count: int = 401) -> dict[str, SweepCurve]:
    """Reference-curve presets, keyed by output file name.

    Energies are in rest-energy units (mass fixed to 1); the grid runs from
    0 to 4E with the structural heights E - m, E, E + m, and 2E inserted.
    """
    if fig not in _FIGURE_LAYOUT:
        raise ValueError(f"unknown figure id {fig}; expected one of 2, 3, 5, 6")
    model, geometry = _FIGURE_LAYOUT[fig]
    out: dict[str, SweepCurve] = {}
    for e in FIGURE_ENERGIES:
        spec = ParticleSpec(1.0, e)
        grid = list(np.linspace(0.0, 4.0 * e, count))
        for special in (e - 1.0, e, e + 1.0, 2.0 * e):
            if special not in grid:
                grid.append(special)
        width = WidthRule.caption_rule(spec) if geometry is Geometry.BARRIER else None
        name = f"fig{fig}_{model.value}_{geometry.value}_E{e:g}.csv"
        out[name] = sweep(model, geometry, spec, grid, width)
    return out


@dataclass(frozen=True)
class TotalTransmissions:
    """Heights and widths with exactly zero reflection."""

    alley_v0: float
    resonant_v0: tuple[float, ...] = ()
    resonant_widths: tuple[float, ...] = ()
    all_transparent: bool = False


def find_total_transmissions(model: Model, geometry: Geometry,
                             spec: ParticleSpec, width: float | None = None,
                             v0: float | None = None,
                             v0_max: float | None = None,
                             n_max: int = 8) -> TotalTransmissions:
    """Locate total-transmission points and verify each by solving.

    The alley sits at V0 = 2E for every geometry.  For barriers, a fixed
    ``width`` yields the resonant heights below ``v0_max`` with p a = n pi,
    while a fixed ``v0`` yields the resonant width ladder a_n = n pi / p.
    Massless spin-1/2 particles are transparent at every height, reported by
    the ``all_transparent`` flag.
    """
    e, m = spec.energy, spec.mass_energy
    alley = 2.0 * e
    all_transparent = model is Model.DIRAC and m == 0.0

    resonant_v0: list[float] = []
    resonant_widths: list[float] = []
    if geometry is Geometry.BARRIER:
        if v0 is not None:
            kin = kinematics(e, v0, m)
            if not kin.propagating or kin.momentum == 0.0:
                raise InvalidProfileError(
                    "resonant widths need a propagating interior"
                )
            resonant_widths = [n * math.pi / kin.momentum
                               for n in range(1, n_max + 1)]
        if width is not None:
            hi = v0_max if v0_max is not None else 4.0 * e
            for n in range(1, n_max + 1):
                p_n = n * math.pi / width
                omega = math.hypot(p_n, m)
                below = e - omega
                if 0.0 < below:
                    resonant_v0.append(below)
                above = e + omega
                if above <= hi:
                    resonant_v0.append(above)
            resonant_v0.sort()
            for v in resonant_v0:
                check = solve_point(model, geometry, spec, v, width)
                if not check.R < 1e-12:
                    raise AssertionError(
                        f"resonance candidate V0={v} failed verification"
                    )

    check_width = width if width is not None else (
        resonant_widths[0] if resonant_widths else 1.0 / max(e, 1.0)
    )
    alley_sol = solve_point(
        model, geometry, spec, alley,
        check_width if geometry is Geometry.BARRIER else None,
    )
    if not alley_sol.R < 1e-12:
        raise AssertionError("alley verification failed")
    return TotalTransmissions(
        alley, tuple(resonant_v0), tuple(resonant_widths), all_transparent
    )


@dataclass(frozen=True)
class ResonanceAmplitudes:
    """Closed-form amplitudes of a resonant spin-1/2 barrier state."""

    v0: float
    n: int
    width: float
    b: complex
    g: complex
    f1: complex
    f2: complex


def resonance_amplitudes(spec: ParticleSpec, v0: float,
                         n: int = 1) -> ResonanceAmplitudes:
    """Interior amplitudes at exact resonance p a = n pi, for a propagating
    barrier interior on either branch.

    With no reflected wave the interface conditions at x = 0 fix the interior
    pair alone; the transmitted amplitude is a pure phase.  (For the
    negative-branch range the widely quoted coefficient list swaps a factor
    p/(E - m) for its reciprocal; these are the values the interface
    conditions and current conservation actually give.)
    """
    if n < 1:
        raise ValueError("resonance order n must be >= 1")
    e, m, q = spec.energy, spec.mass_energy, spec.q
    rc = classify_regime(e, v0, m)
    kin = kinematics(e, v0, m)
    if rc.regime.is_evanescent or kin.momentum == 0.0:
        raise InvalidProfileError(
            "resonance amplitudes need a propagating barrier interior"
        )
    p = kin.momentum
    width = n * math.pi / p
    if rc.regime is Regime.PROPAGATING_POSITIVE:
        w = (e - m) / (e - v0 - m)
        f1 = (w + q / p) / 2.0
        f2 = (w - q / p) / 2.0
    else:
        d = v0 - e + m
        f1 = (q / d + (e - m) / p) / 2.0
        f2 = (q / d - (e - m) / p) / 2.0
    g = (-1.0) ** n * cmath.exp(-1j * q * width)
    return ResonanceAmplitudes(v0, n, width, 0.0 + 0j, g, f1, f2)


def jump_gap(spec: ParticleSpec, width: float) -> float:
    """Magnitude of the one-sided mismatch of the spin-1/2 barrier reflection
    at V0 = E; zero for massless particles (no gap) and decaying to zero as
    the width grows."""
    if spec.mass_energy == 0.0:
        return 0.0
    below = dirac_barrier_crossing_r(spec, width, side="below")
    above = dirac_barrier_crossing_r(spec, width, side="above")
    return abs(below - above)


def small_mass_bound(spec: ParticleSpec) -> float:
    """Upper bound (m / E)^2 on the reflection of a light particle from any
    height beyond the alley, both geometries."""
    return (spec.mass_energy / spec.energy) ** 2


class SmoothPotential:
    """A smooth scalar potential on a finite interval.

    Wraps either a callable V(x) or sampled (x, V) arrays; sampled input is
    interpolated with a cubic spline.
    """

    def __init__(self, v: Callable[[float], float] | tuple[Sequence[float], Sequence[float]],
                 domain: tuple[float, float]):
        lo, hi = domain
        if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
            raise ValueError("domain must be a finite increasing interval")
        self.domain = (float(lo), float(hi))
        if callable(v):
            self._v = v
        else:
            from scipy.interpolate import CubicSpline

            xs, vs = np.asarray(v[0], dtype=float), np.asarray(v[1], dtype=float)
            if xs.ndim != 1 or xs.shape != vs.shape or xs.size < 4:
                raise ValueError("sampled potential needs matching 1-D arrays")
            self._v = CubicSpline(xs, vs)

    def __call__(self, x: float) -> float:
        return float(self._v(x))

    @classmethod
    def linear(cls, slope: float, domain: tuple[float, float]) -> "SmoothPotential":
        return cls(lambda x: slope * x, domain)


_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(8)


def _integrate_potential(pot: SmoothPotential, a: float, b: float,
                         tol: float = 1e-10, max_doublings: int = 18) -> float:
    """Composite 8-point Gauss-Legendre integral of V from a to b, panels
    doubled until the result moves by less than ``tol``."""
    if a == b:
        return 0.0

    def with_panels(n: int) -> float:
        edges = np.linspace(a, b, n + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        total = 0.0
        for c, h in zip(mid, half):
            xs = c + h * _GAUSS_NODES
            total += h * float(
                np.dot(_GAUSS_WEIGHTS, [pot(float(x)) for x in xs])
            )
        return total

    panels = 4
    prev = with_panels(panels)
    for _ in range(max_doublings):
        panels *= 2
        cur = with_panels(panels)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    return prev


def massless_phase_solution(pot: SmoothPotential, energy: float,
                            x_ref: float, x: float,
                            sign: int = +1) -> complex:
    """Exact massless smooth-potential solution as a pure phase:

        phi(x) = phi(x_ref) exp[+- i (E (x - x_ref) - int_{x_ref}^x V)]

    normalized to phi(x_ref) = 1.  The amplitude is exactly constant; both
    sign sheets are available (the companion component is chi = +-phi).
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    integral = _integrate_potential(pot, x_ref, x)
    phase = energy * (x - x_ref) - integral
    return cmath.exp(1j * sign * phase)


def integrate_coupled_components(pot: SmoothPotential, energy: float,
                                 mass: float, x_ref: float, x: float,
                                 phi0: complex = 1.0 + 0j,
                                 chi0: complex | None = None,
                                 sign: int = +1,
                                 n_steps: int = 4000) -> tuple[complex, complex]:
    """Fixed-step RK4 integration of the coupled first-order system obeyed by
    the two spinor components in a smooth potential,

        phi' = i (E - V + m) chi,    chi' = i (E - V - m) phi,

    from ``x_ref`` to ``x``.  Starts from chi = sign * phi unless ``chi0`` is
    given; serves as the independent check of the massless phase solution.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be positive")
    chi = sign * phi0 if chi0 is None else chi0
    phi = phi0
    h = (x - x_ref) / n_steps

    def deriv(xx: float, f: complex, c: complex) -> tuple[complex, complex]:
        v = pot(xx)
        return 1j * (energy - v + mass) * c, 1j * (energy - v - mass) * f

    xx = x_ref
    for _ in range(n_steps):
        k1f, k1c = deriv(xx, phi, chi)
        k2f, k2c = deriv(xx + h / 2, phi + h / 2 * k1f, chi + h / 2 * k1c)
        k3f, k3c = deriv(xx + h / 2, phi + h / 2 * k2f, chi + h / 2 * k2c)
        k4f, k4c = deriv(xx + h, phi + h * k3f, chi + h * k3c)
        phi = phi + h / 6 * (k1f + 2 * k2f + 2 * k3f + k4f)
        chi = chi + h / 6 * (k1c + 2 * k2c + 2 * k3c + k4c)
        xx += h
    return phi, chi
