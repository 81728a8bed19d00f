"""Seeded property suite: the runtime self-check behind the verify command.

Each property draws random valid parameter tuples from one seeded generator
and checks an exact structural statement: closed forms against the
boundary-matching solver, current conservation, the exchange symmetry
V0 - E <-> E - V0, the gap platform, the alley, barrier resonances,
boundedness of R, and massless transparency.  Failures report the offending
tuple so a run can be reproduced.

``inject`` perturbs the named property's measured value before comparison;
it exists so harnesses can confirm the suite actually detects defects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcher
from .analysis import solve_point
from .core import Geometry, Model, ParticleSpec, PotentialProfile
from .dirac import dirac_barrier_solve, dirac_step_solve

__all__ = ["PropertyResult", "VerifyReport", "run_suite", "PROPERTY_NAMES"]

PROPERTY_NAMES = (
    "oracle-equivalence",
    "unitarity",
    "flux-conservation",
    "exchange-symmetry",
    "gap-platform",
    "alley",
    "resonance",
    "boundedness",
    "massless-transparency",
)

_MODELS = (Model.DIRAC, Model.KLEIN_GORDON)
_GEOMETRIES = (Geometry.STEP, Geometry.BARRIER)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    checks: int
    max_error: float
    tolerance: float
    counterexample: str | None = None


@dataclass(frozen=True)
class VerifyReport:
    seed: int
    samples: int
    results: tuple[PropertyResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


class _Check:
    """Accumulates the worst deviation seen for one property."""

    def __init__(self, name: str, tolerance: float, inject: bool):
        self.name = name
        self.tolerance = tolerance
        self.inject = inject
        self.checks = 0
        self.worst = 0.0
        self.counterexample: str | None = None

    def add(self, error: float, context: str) -> None:
        if self.inject:
            error = error + max(10.0 * self.tolerance, 1e-6)
        self.checks += 1
        if error > self.worst:
            self.worst = error
            if error > self.tolerance:
                self.counterexample = context

    def result(self) -> PropertyResult:
        return PropertyResult(
            self.name,
            self.worst <= self.tolerance,
            self.checks,
            self.worst,
            self.tolerance,
            self.counterexample,
        )


def _interior_height(rng: np.random.Generator, energy: float) -> float:
    """A random height kept safely away from degenerate momentum points."""
    v = float(rng.uniform(0.0, 3.0 * energy))
    for special in (energy,):
        if abs(v - special) < 0.05 * energy:
            v += 0.1 * energy
    return v


def run_suite(seed: int, samples: int, inject: str | None = None) -> VerifyReport:
    """Run every property on ``samples`` seeded draws."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if inject is not None and inject not in PROPERTY_NAMES:
        raise ValueError(
            f"unknown inject target {inject!r}; expected one of {PROPERTY_NAMES}"
        )
    rng = np.random.default_rng(seed)
    checks = {
        name: _Check(name, tol, inject == name)
        for name, tol in (
            ("oracle-equivalence", 1e-10),
            ("unitarity", 1e-10),
            ("flux-conservation", 1e-10),
            ("exchange-symmetry", 1e-12),
            ("gap-platform", 0.0),
            ("alley", 1e-12),
            ("resonance", 1e-12),
            ("boundedness", 0.0),
            ("massless-transparency", 1e-12),
        )
    }

    for _ in range(samples):
        mass = 1.0
        spec = ParticleSpec(mass, mass * (1.0 + 10.0 ** rng.uniform(-2.0, 1.2)))
        e, m = spec.energy, spec.mass_energy
        model = _MODELS[rng.integers(2)]
        geometry = _GEOMETRIES[rng.integers(2)]
        v0 = float(rng.uniform(0.0, 3.0 * e))
        width = float(rng.uniform(0.05, 4.0))
        bwidth = width if geometry is Geometry.BARRIER else None
        ctx = (
            f"(model={model.value}, geometry={geometry.value}, "
            f"E={e!r}, m={m!r}, v0={v0!r}, a={width!r})"
        )

        sol = solve_point(model, geometry, spec, v0, bwidth)
        checks["boundedness"].add(max(-sol.R, sol.R - 1.0, 0.0), ctx)

        if not sol.boundary_flag:
            profile = (
                PotentialProfile.step(v0) if geometry is Geometry.STEP
                else PotentialProfile.barrier(v0, width)
            )
            numeric = matcher.solve_numeric(profile, spec, model)
            denom = max(abs(sol.R), abs(numeric.R), 1e-2)
            checks["oracle-equivalence"].add(abs(sol.R - numeric.R) / denom, ctx)
            checks["unitarity"].add(abs(numeric.R + numeric.T - 1.0), ctx)

            j0 = matcher.region_fluxes(numeric, offset=0.0)
            j1 = matcher.region_fluxes(numeric, offset=0.31 * max(width, 0.1))
            scale = max(abs(j0[0]), 1.0)
            worst = max(abs(a - b) for a, b in zip(j0, j1)) / scale
            if numeric.regions[-1].kin.propagating:
                worst = max(worst, max(abs(j - j0[0]) for j in j0) / scale)
            checks["flux-conservation"].add(worst, ctx)

        v_low = float(rng.uniform(0.05, 0.95)) * (e - m)
        left = solve_point(model, geometry, spec, v_low, bwidth)
        right = solve_point(model, geometry, spec, 2.0 * e - v_low, bwidth)
        checks["exchange-symmetry"].add(abs(left.R - right.R), ctx)

        v_gap = e - m + 2.0 * m * float(rng.uniform(0.05, 0.95))
        step_sol = solve_point(model, Geometry.STEP, spec, v_gap, None)
        checks["gap-platform"].add(abs(step_sol.R - 1.0), ctx)

        alley_sol = solve_point(model, geometry, spec, 2.0 * e, bwidth)
        checks["alley"].add(alley_sol.R, ctx)

        v_res = 0.5 * (e - m)
        p_res = math.sqrt((e - v_res) ** 2 - m * m)
        n = int(rng.integers(1, 6))
        res_sol = solve_point(model, Geometry.BARRIER, spec, v_res,
                              n * math.pi / p_res)
        checks["resonance"].add(res_sol.R, ctx)

        # massless spin-1/2 transparency, multi-region profiles included
        e0 = float(rng.uniform(0.5, 5.0))
        mspec = ParticleSpec(0.0, e0)
        n_regions = int(rng.integers(2, 6))
        heights = [0.0] + [
            _interior_height(rng, e0) for _ in range(n_regions - 2)
        ] + [0.0]
        edges = np.cumsum([0.0] + list(rng.uniform(0.2, 1.5, n_regions - 2)))
        mprofile = PotentialProfile.from_heights(heights, list(edges))
        msol = matcher.transfer_matrix_solve(mprofile, mspec, Model.DIRAC)
        mctx = f"(massless profile heights={heights}, edges={list(edges)})"
        checks["massless-transparency"].add(msol.R, mctx)
        mstep = dirac_step_solve(mspec, _interior_height(rng, e0))
        checks["massless-transparency"].add(mstep.R, "(massless step)")
        mbar = dirac_barrier_solve(mspec, _interior_height(rng, e0),
                                   float(rng.uniform(0.1, 3.0)))
        checks["massless-transparency"].add(mbar.R, "(massless barrier)")

    return VerifyReport(seed, samples, tuple(
        checks[name].result() for name in PROPERTY_NAMES
    ))
