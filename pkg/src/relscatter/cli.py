"""Command-line client for the scattering service.

Thin by design: every subcommand builds the same request models the HTTP
endpoints accept and either calls the service handlers in-process (default)
or posts them to a running instance given with ``--server``.  Options may
also come from a flat key=value config file; command-line flags win.

Exit codes: 0 success, 1 property-suite failure, 2 invalid input,
3 output I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import pydantic

from .core import InvalidParticleError, InvalidProfileError
from .matcher import SingularSystemError
from .service import api
from .service.schemas import (
    FiguresRequest,
    FiguresResponse,
    GridSpec,
    ProfileSpec,
    ScatterRequest,
    ScatterResponse,
    SweepRequest,
    VerifyRequest,
    VerifyResponse,
)

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_INVALID_INPUT = 2
EXIT_IO_FAILURE = 3

_DOMAIN_ERRORS = (
    InvalidParticleError,
    InvalidProfileError,
    SingularSystemError,
    pydantic.ValidationError,
    ValueError,
)


class _InputError(Exception):
    pass


class _Client:
    """Dispatches requests in-process or to a remote server."""

    def __init__(self, server: str | None):
        self.server = server.rstrip("/") if server else None

    def _post(self, path: str, payload: dict, raw: bool = False):
        import httpx

        resp = httpx.post(f"{self.server}{path}", json=payload, timeout=600.0)
        if resp.status_code in (400, 422):
            raise _InputError(_detail(resp))
        resp.raise_for_status()
        return resp.text if raw else resp.json()

    def scatter(self, req: ScatterRequest) -> ScatterResponse:
        if self.server is None:
            return api.do_scatter(req)
        return ScatterResponse.model_validate(
            self._post("/scatter", req.model_dump())
        )

    def sweep_csv(self, req: SweepRequest) -> str:
        if self.server is None:
            return api.do_sweep_csv(req)
        return self._post("/sweep/csv", req.model_dump(), raw=True)

    def verify(self, req: VerifyRequest) -> VerifyResponse:
        if self.server is None:
            return api.do_verify(req)
        return VerifyResponse.model_validate(self._post("/verify", req.model_dump()))

    def figures(self, req: FiguresRequest) -> FiguresResponse:
        if self.server is None:
            return api.do_figures(req)
        return FiguresResponse.model_validate(
            self._post("/figures", req.model_dump())
        )


def _detail(resp) -> str:
    try:
        return str(resp.json().get("detail"))
    except Exception:
        return resp.text


def _read_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"cannot read config file: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise _InputError(f"config line {lineno} is not key=value: {line!r}")
        key, value = stripped.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _merged(args: argparse.Namespace, key: str, cast=str, default=None):
    """Flag value if given, else config value, else default."""
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    config: dict[str, str] = getattr(args, "_config", {})
    if key in config:
        raw = config[key]
        if cast is bool:
            return raw.lower() in ("1", "true", "yes", "on")
        return cast(raw)
    return default


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relscatter",
        description="Relativistic 1-D scattering: solves, sweeps, verification",
    )
    parser.add_argument("--config", help="flat key=value config file; flags win")
    parser.add_argument("--server", help="base URL of a running service; "
                        "default solves in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--model", choices=["dirac", "kg"])
        p.add_argument("--energy", type=float)
        p.add_argument("--mass", type=float)
        p.add_argument("--units", choices=["mc2", "raw"])
        p.add_argument("--width", type=float)

    p_scatter = sub.add_parser("scatter", help="solve one configuration")
    common(p_scatter)
    p_scatter.add_argument("--geometry", help="step, barrier, or a profile JSON file")
    p_scatter.add_argument("--v0", type=float)

    p_sweep = sub.add_parser("sweep", help="R(V0) curve to CSV")
    common(p_sweep)
    p_sweep.add_argument("--geometry", choices=["step", "barrier"])
    p_sweep.add_argument("--v0-range", dest="v0_range",
                         help="grid as min:max:count")
    p_sweep.add_argument("--no-special-points", action="store_true",
                         help="skip inserting E-m, E, E+m, 2E into the grid")
    p_sweep.add_argument("--out")

    p_verify = sub.add_parser("verify", help="run the seeded property suite")
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--samples", type=int)
    p_verify.add_argument("--inject", help="fault injection for harness tests")

    p_figures = sub.add_parser("figures", help="emit a reference curve set")
    p_figures.add_argument("--fig", type=int, choices=[2, 3, 5, 6])
    p_figures.add_argument("--out", help="output directory")

    return parser


def _particle_kwargs(args) -> dict:
    kwargs = {
        "model": _merged(args, "model", str, "dirac"),
        "energy": _merged(args, "energy", float),
        "units": _merged(args, "units", str, "mc2"),
    }
    mass = _merged(args, "mass", float)
    if mass is not None:
        kwargs["mass"] = mass
    if kwargs["energy"] is None:
        raise _InputError("missing required value: energy")
    return kwargs


def _cmd_scatter(args, client: _Client) -> int:
    geometry = _merged(args, "geometry", str, "step")
    kwargs = _particle_kwargs(args)
    if geometry in ("step", "barrier"):
        req = ScatterRequest(
            geometry=geometry,
            v0=_merged(args, "v0", float),
            width=_merged(args, "width", float),
            **kwargs,
        )
    else:
        try:
            raw = json.loads(Path(geometry).read_text(encoding="utf-8"))
        except OSError as exc:
            raise _InputError(f"cannot read profile file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise _InputError(f"profile file is not valid JSON: {exc}") from exc
        req = ScatterRequest(
            geometry="profile", profile=ProfileSpec(**raw), **kwargs
        )
    resp = client.scatter(req)
    print(f"model={resp.model} R={resp.r:.17g} T={resp.t:.17g}")
    print(f"B={resp.b_re:.17g}{resp.b_im:+.17g}i asserted={resp.asserted}")
    for i, region in enumerate(resp.regions):
        kind = "p" if region.wave == "propagating" else "k"
        boundary = f" boundary={region.boundary}" if region.boundary else ""
        print(
            f"region {i}: V={region.v:.17g} regime={region.regime} "
            f"branch={region.branch} {kind}={region.momentum:.17g}{boundary}"
        )
    return EXIT_OK


def _parse_range(text: str) -> GridSpec:
    parts = text.split(":")
    if len(parts) != 3:
        raise _InputError("v0-range must be min:max:count")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise _InputError(f"bad v0-range: {exc}") from exc
    return GridSpec(v0_min=lo, v0_max=hi, count=count)


def _cmd_sweep(args, client: _Client) -> int:
    range_text = _merged(args, "v0_range", str)
    if range_text is None:
        raise _InputError("missing required value: v0-range")
    grid = _parse_range(range_text)
    if args.no_special_points or not _merged(args, "special_points", bool, True):
        grid = grid.model_copy(update={"special_points": False})
    req = SweepRequest(
        geometry=_merged(args, "geometry", str, "step"),
        width=_merged(args, "width", float),
        grid=grid,
        **_particle_kwargs(args),
    )
    csv_text = client.sweep_csv(req)
    out = _merged(args, "out", str)
    if out is None:
        sys.stdout.write(csv_text)
        return EXIT_OK
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(csv_text)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO_FAILURE
    return EXIT_OK


def _cmd_verify(args, client: _Client) -> int:
    req = VerifyRequest(
        seed=_merged(args, "seed", int, 0),
        samples=_merged(args, "samples", int, 200),
        inject=_merged(args, "inject", str),
    )
    resp = client.verify(req)
    for prop in resp.properties:
        status = "pass" if prop.passed else "FAIL"
        line = (
            f"{status} {prop.name}: {prop.checks} checks, "
            f"max error {prop.max_error:.3g} (tolerance {prop.tolerance:.3g})"
        )
        if not prop.passed and prop.counterexample:
            line += f" at {prop.counterexample}"
        print(line)
    if not resp.passed:
        return EXIT_PROPERTY_FAILURE
    return EXIT_OK


def _cmd_figures(args, client: _Client) -> int:
    fig = _merged(args, "fig", int)
    if fig is None:
        raise _InputError("missing required value: fig")
    resp = client.figures(FiguresRequest(fig=fig))
    out_dir = Path(_merged(args, "out", str, "."))
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, text in resp.files.items():
            with open(out_dir / name, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: cannot write figures: {exc}", file=sys.stderr)
        return EXIT_IO_FAILURE
    for name in resp.files:
        print(out_dir / name)
    return EXIT_OK


_COMMANDS = {
    "scatter": _cmd_scatter,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "figures": _cmd_figures,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    client = _Client(args.server)
    try:
        args._config = _read_config(args.config) if args.config else {}
        return _COMMANDS[args.command](args, client)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except pydantic.ValidationError as exc:
        first = exc.errors()[0]
        print(f"error: {first.get('msg', exc)}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
