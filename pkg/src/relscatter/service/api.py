"""Handler functions behind the HTTP routes.

Kept separate from the FastAPI wiring so the command-line client can call
them in-process with the same request/response models it would send over
the wire.
"""

from __future__ import annotations

import numpy as np

from .. import matcher
from ..analysis import WidthRule, SweepCurve, figure_curves, sweep
from ..core import (
    Geometry,
    Model,
    ParticleSpec,
    PotentialProfile,
    ScatteringSolution,
    classify_regime,
)
from ..dirac import dirac_barrier_solve, dirac_step_solve
from ..kleingordon import kg_barrier_solve, kg_step_solve
from ..verify import run_suite
from .schemas import (
    FiguresRequest,
    FiguresResponse,
    PropertyOut,
    RegionOut,
    ScatterRequest,
    ScatterResponse,
    SweepRequest,
    SweepResponse,
    SweepRow,
    VerifyRequest,
    VerifyResponse,
)

__all__ = [
    "do_scatter",
    "do_sweep",
    "do_sweep_csv",
    "do_verify",
    "do_figures",
]


def _particle(req) -> ParticleSpec:
    return ParticleSpec(req.mass, req.energy)


def _solution_response(sol: ScatteringSolution) -> ScatterResponse:
    e, m = sol.particle.energy, sol.particle.mass_energy
    regions = [
        RegionOut(
            v=r.v,
            regime=classify_regime(e, r.v, m).regime.value,
            branch=r.kin.branch.value,
            wave="propagating" if r.kin.propagating else "evanescent",
            momentum=r.kin.momentum,
            boundary=r.kin.boundary.value if r.kin.boundary else None,
            amp_plus_re=r.amp_plus.real,
            amp_plus_im=r.amp_plus.imag,
            amp_minus_re=r.amp_minus.real,
            amp_minus_im=r.amp_minus.imag,
        )
        for r in sol.regions
    ]
    return ScatterResponse(
        model=sol.model.value,
        r=sol.R,
        t=sol.T,
        b_re=sol.B.real,
        b_im=sol.B.imag,
        asserted=sol.asserted,
        regions=regions,
    )


def do_scatter(req: ScatterRequest) -> ScatterResponse:
    spec = _particle(req)
    model = Model(req.model)
    if req.geometry == "profile":
        profile = PotentialProfile.from_heights(
            req.profile.heights, req.profile.edges
        )
        sol = matcher.solve_profile(profile, spec, model)
    elif req.geometry == "step":
        sol = (dirac_step_solve if model is Model.DIRAC else kg_step_solve)(
            spec, req.v0
        )
    else:
        solver = dirac_barrier_solve if model is Model.DIRAC else kg_barrier_solve
        sol = solver(spec, req.v0, req.width)
    return _solution_response(sol)


def _sweep_curve(req: SweepRequest) -> SweepCurve:
    spec = _particle(req)
    model = Model(req.model)
    geometry = Geometry(req.geometry)
    grid = list(np.linspace(req.grid.v0_min, req.grid.v0_max, req.grid.count))
    if req.grid.special_points:
        e, m = spec.energy, spec.mass_energy
        for special in (e - m, e, e + m, 2.0 * e):
            if req.grid.v0_min <= special <= req.grid.v0_max and special not in grid:
                grid.append(special)
    width = WidthRule.fixed(req.width) if req.width is not None else None
    return sweep(model, geometry, spec, grid, width)


def do_sweep(req: SweepRequest) -> SweepResponse:
    curve = _sweep_curve(req)
    return SweepResponse(
        model=req.model,
        geometry=req.geometry,
        energy=curve.energy,
        mass=curve.mass,
        rows=[
            SweepRow(v0=s.v0, r=s.r, regime=s.regime.value, annotation=s.annotation)
            for s in curve.samples
        ],
        alleys=list(curve.alleys),
        gap=curve.gap,
        resonances=list(curve.resonances),
        jump=curve.jump,
    )


def do_sweep_csv(req: SweepRequest) -> str:
    return _sweep_curve(req).to_csv()


def do_verify(req: VerifyRequest) -> VerifyResponse:
    report = run_suite(req.seed, req.samples, req.inject)
    return VerifyResponse(
        passed=report.passed,
        seed=report.seed,
        samples=report.samples,
        properties=[
            PropertyOut(
                name=r.name,
                passed=r.passed,
                checks=r.checks,
                max_error=r.max_error,
                tolerance=r.tolerance,
                counterexample=r.counterexample,
            )
            for r in report.results
        ],
    )


def do_figures(req: FiguresRequest) -> FiguresResponse:
    curves = figure_curves(req.fig)
    return FiguresResponse(
        files={name: curve.to_csv() for name, curve in curves.items()}
    )
