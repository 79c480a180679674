"""Batch command-line frontend emitting reproducible CSV and JSON tables.

Every command writes a single self-describing document: CSV tables carry
'#'-prefixed header lines (tool version, command, parameters, column names)
above plain comma-separated numeric rows with '.' decimals; JSON output is
one object that embeds the same version and parameter block.  Output
contains no timestamps or machine identifiers, so repeated runs with equal
arguments are byte-identical.

Exit codes: 0 success, 2 invalid arguments or parameters, 3 numerical
failure (quadrature budget, profile blow-up, constraint violation).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from . import __version__
from .criteria import (
    STABLE,
    grad_condition_report,
    lambda1_bounds,
    lambda1_bounds_pinched,
    pointwise_stability_test,
    sobolev_stability_test,
)
from .helicoid import (
    Helicoid,
    embed as helicoid_embed,
    first_fundamental,
    is_stable_by_pitch,
    norm_A_sq as helicoid_norm_A_sq,
)
from .hyperbolic_catenoid import (
    HyperbolicCatenoid,
    ProfileError,
    generating_curve_points,
    is_stable_by_window,
    stability_window_max_t,
)
from .lorentz import on_hyperboloid
from .quadrature import QuadratureError
from .spectral import morse_index
from .spherical_catenoid import (
    DEFAULT_TOL,
    F,
    SphericalCatenoid,
    _locate_c0,
    embed as catenoid_embed,
)

__all__ = [
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_NUMERICAL",
    "ExportError",
    "RunConfig",
    "run",
    "embed_export",
    "read_table",
    "main",
]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_EXPORT_TOL = 1e-8  # hyperboloid membership tolerance for every emitted point


class ExportError(RuntimeError):
    """An emitted point failed its geometric validity check."""


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved command invocation."""

    command: str
    parameters: Mapping[str, Any] = field(default_factory=dict)
    output: str = "-"
    fmt: str = "json"


def _fmt(x: float) -> str:
    """15 significant digits, plain decimal point; enough to round-trip any
    double that the toolkit emits."""
    return f"{float(x):.15g}"


def _param_str(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _fmt(value)
    return str(value)


def _worker_count(n_jobs: int) -> int:
    """Thread count for sweeps, capped by the HYPSTAB_THREADS variable."""
    raw = os.environ.get("HYPSTAB_THREADS")
    if raw is None:
        cap = os.cpu_count() or 1
    else:
        try:
            cap = int(raw)
        except ValueError:
            raise ValueError(f"HYPSTAB_THREADS must be an integer, got {raw!r}")
        if cap < 1:
            raise ValueError(f"HYPSTAB_THREADS must be >= 1, got {cap}")
    return max(1, min(n_jobs, cap))


def _float_grid(lo: float, hi: float, step: float) -> list[float]:
    if not (math.isfinite(lo) and math.isfinite(hi) and math.isfinite(step)):
        raise ValueError("grid bounds and step must be finite")
    if step <= 0.0:
        raise ValueError(f"step must be positive, got {step}")
    if hi < lo:
        raise ValueError(f"need hi >= lo, got [{lo}, {hi}]")
    count = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + k * step for k in range(count + 1)]


# ---------------------------------------------------------------------------
# command handlers: params dict in, payload dict out.  Tabular payloads carry
# "columns" and "rows"; everything else is scalar metadata.


def _cmd_sweep_f(params: Mapping[str, Any]) -> dict[str, Any]:
    a_min = float(params["a_min"])
    a_max = float(params["a_max"])
    step = float(params["step"])
    tol = float(params["tol"])
    if a_min <= 0.5:
        raise ValueError(f"a_min must exceed 1/2, got {a_min}")
    grid = _float_grid(a_min, a_max, step)

    def one(a: float) -> list[float]:
        res = F(SphericalCatenoid(a), tol)
        return [a, res.value, res.error_estimate]

    workers = _worker_count(len(grid))
    if workers == 1:
        rows = [one(a) for a in grid]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, grid))  # map preserves parameter order
    return {"columns": ["a", "F", "err"], "rows": rows}


def _cmd_find_c0(params: Mapping[str, Any]) -> dict[str, Any]:
    tol = float(params["tol"])
    quad_tol = float(params["quad_tol"])
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if quad_tol <= 0.0:
        raise ValueError(f"quad_tol must be positive, got {quad_tol}")
    root, lo, hi = _locate_c0(tol, quad_tol)
    return {"c0": root, "bracket": [lo, hi]}


def _cmd_index(params: Mapping[str, Any]) -> dict[str, Any]:
    cat = SphericalCatenoid(float(params["a"]))
    report = morse_index(
        cat,
        R=float(params["radius"]),
        N=int(params["nodes"]),
        m_max=int(params["m_max"]),
        k_eigs=int(params["k_eigs"]),
    )
    return {
        "a": report.a,
        "radius": report.radius,
        "nodes": report.nodes,
        "total_index": report.total_index,
        "converged": report.converged,
        "notes": list(report.notes),
        "modes": [
            {
                "mode": entry.mode,
                "negative_count": entry.negative_count,
                "lowest_eigenvalues": list(entry.lowest_eigenvalues),
            }
            for entry in report.modes
        ],
    }


def _cmd_hyperbolic_window(params: Mapping[str, Any]) -> dict[str, Any]:
    n = int(params["n"])
    t_min = float(params["t_min"])
    t_max = float(params["t_max"])
    steps = int(params["steps"])
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    if not t_min > 1.0:
        raise ValueError(f"t_min must exceed 1, got {t_min}")
    if not t_max >= t_min:
        raise ValueError(f"need t_max >= t_min, got [{t_min}, {t_max}]")
    max_t = stability_window_max_t(n)
    rows = []
    for t in np.linspace(t_min, t_max, steps):
        cat = HyperbolicCatenoid(n, float(t))
        window_ok = 1.0 if is_stable_by_window(cat) else 0.0
        bound = n * (n - 1) * (t * t - 1.0)
        pointwise_ok = (
            1.0 if pointwise_stability_test(n, bound).verdict == STABLE else 0.0
        )
        rows.append([float(t), max_t, window_ok, bound, pointwise_ok])
    return {
        "columns": ["t", "window_max_t", "window_stable", "bound_A_sq", "pointwise_stable"],
        "rows": rows,
    }


def _cmd_helicoid(params: Mapping[str, Any]) -> dict[str, Any]:
    h = Helicoid(float(params["alpha"]))
    t_max = float(params["t_max"])
    t_grid = int(params["t_grid"])
    if t_grid < 2:
        raise ValueError(f"t_grid must be >= 2, got {t_grid}")
    if not (math.isfinite(t_max) and t_max > 0.0):
        raise ValueError(f"t_max must be positive, got {t_max}")
    rows = []
    for t in np.linspace(-t_max, t_max, t_grid):
        e_coef, _, _ = first_fundamental(h, float(t))
        rows.append([float(t), e_coef, helicoid_norm_A_sq(h, float(t))])
    return {
        "columns": ["t", "E", "norm_A_sq"],
        "rows": rows,
        "stable_by_pitch": is_stable_by_pitch(h),
    }


def _spherical_export(params: Mapping[str, Any]) -> dict[str, Any]:
    cat = SphericalCatenoid(float(params["a"]))
    s_max = float(params["s_max"])
    s_grid = int(params["s_grid"])
    theta_grid = int(params["theta_grid"])
    if s_grid < 2 or theta_grid < 1:
        raise ValueError("need s_grid >= 2 and theta_grid >= 1")
    if not (math.isfinite(s_max) and s_max > 0.0):
        raise ValueError(f"s_max must be positive, got {s_max}")
    rows = []
    for s in np.linspace(-s_max, s_max, s_grid):
        for theta in np.linspace(0.0, 2.0 * math.pi, theta_grid, endpoint=False):
            point = catenoid_embed(cat, float(s), float(theta), DEFAULT_TOL)
            if not on_hyperboloid(point, _EXPORT_TOL):
                raise ExportError(
                    f"embedded point at (s, theta) = ({s}, {theta}) leaves "
                    f"the hyperboloid beyond {_EXPORT_TOL}"
                )
            rows.append([float(s), float(theta), *point.coords])
    return {"columns": ["s", "theta", "x1", "x2", "x3", "x4"], "rows": rows}


def _helicoid_export(params: Mapping[str, Any]) -> dict[str, Any]:
    h = Helicoid(float(params["alpha"]))
    s_max = float(params["s_max"])
    t_max = float(params["t_max"])
    s_grid = int(params["s_grid"])
    t_grid = int(params["t_grid"])
    if s_grid < 2 or t_grid < 2:
        raise ValueError("need s_grid >= 2 and t_grid >= 2")
    rows = []
    for s in np.linspace(-s_max, s_max, s_grid):
        for t in np.linspace(-t_max, t_max, t_grid):
            point = helicoid_embed(h, float(s), float(t))
            if not on_hyperboloid(point, _EXPORT_TOL):
                raise ExportError(
                    f"embedded point at (s, t) = ({s}, {t}) leaves the "
                    f"hyperboloid beyond {_EXPORT_TOL}"
                )
            rows.append([float(s), float(t), *point.coords])
    return {"columns": ["s", "t", "x1", "x2", "x3", "x4"], "rows": rows}


def _hyperbolic_curve_export(params: Mapping[str, Any]) -> dict[str, Any]:
    cat = HyperbolicCatenoid(int(params["n"]), float(params["t"]))
    s_max = float(params["s_max"])
    samples = int(params["samples"])
    if samples < 2:
        raise ValueError(f"samples must be >= 2, got {samples}")
    if not (math.isfinite(s_max) and s_max > 0.0):
        raise ValueError(f"s_max must be positive, got {s_max}")
    targets = [float(s) for s in np.linspace(0.0, s_max, samples)]
    rows = []
    for s, point in generating_curve_points(cat, targets):
        if not on_hyperboloid(point, _EXPORT_TOL):
            raise ExportError(
                f"generating-curve point at s = {s} leaves the hyperbolic "
                f"plane beyond {_EXPORT_TOL}"
            )
        rows.append([s, *point.coords])
    return {"columns": ["s", "x", "y", "z"], "rows": rows}


_EXPORT_FAMILIES: dict[str, Callable[[Mapping[str, Any]], dict[str, Any]]] = {
    "spherical": _spherical_export,
    "helicoid": _helicoid_export,
    "hyperbolic-curve": _hyperbolic_curve_export,
}


def _cmd_embed_export(params: Mapping[str, Any]) -> dict[str, Any]:
    family = str(params["family"])
    if family not in _EXPORT_FAMILIES:
        raise ValueError(f"unknown export family {family!r}")
    return _EXPORT_FAMILIES[family](params)


def _report_dict(report) -> dict[str, Any]:
    return {
        "verdict": report.verdict,
        "criterion": report.criterion,
        "witness": report.witness,
        "threshold": report.threshold,
    }


def _cmd_criteria(params: Mapping[str, Any]) -> dict[str, Any]:
    n = int(params["n"])
    out: dict[str, Any] = {"lambda1": list(lambda1_bounds(n))}

    pinch_a = params.get("pinch_a")
    pinch_b = params.get("pinch_b")
    if (pinch_a is None) != (pinch_b is None):
        raise ValueError("--pinch-a and --pinch-b must be given together")
    if pinch_a is not None:
        out["lambda1_pinched"] = list(
            lambda1_bounds_pinched(float(pinch_a), float(pinch_b))
        )

    sup_a_sq = params.get("sup_a_sq")
    if sup_a_sq is not None:
        out["pointwise"] = _report_dict(pointwise_stability_test(n, float(sup_a_sq)))

    c_s = params.get("sobolev_constant")
    mass_n = params.get("a_n_mass")
    if (c_s is None) != (mass_n is None):
        raise ValueError("--sobolev-constant and --a-n-mass must be given together")
    if c_s is not None:
        out["sobolev"] = _report_dict(
            sobolev_stability_test(n, float(c_s), float(mass_n))
        )

    mass_a = params.get("mass_a_sq")
    mass_g = params.get("mass_grad_a_sq")
    if (mass_a is None) != (mass_g is None):
        raise ValueError("--mass-a-sq and --mass-grad-a-sq must be given together")
    if mass_a is not None:
        out["grad_deficit"] = _report_dict(
            grad_condition_report(n, float(mass_a), float(mass_g))
        )
    return out


_HANDLERS: dict[str, Callable[[Mapping[str, Any]], dict[str, Any]]] = {
    "sweep-f": _cmd_sweep_f,
    "find-c0": _cmd_find_c0,
    "index": _cmd_index,
    "hyperbolic-window": _cmd_hyperbolic_window,
    "helicoid": _cmd_helicoid,
    "embed-export": _cmd_embed_export,
    "criteria": _cmd_criteria,
}

# Commands whose payload is a single object rather than a table; they only
# support JSON output.
_JSON_ONLY = frozenset({"find-c0", "index", "criteria"})


def _render_csv(config: RunConfig, payload: dict[str, Any]) -> str:
    if "columns" not in payload:
        raise ValueError(f"command {config.command} does not produce CSV tables")
    lines = [f"# hypstab {__version__}", f"# command={config.command}"]
    for key in sorted(config.parameters):
        lines.append(f"# {key}={_param_str(config.parameters[key])}")
    for key in sorted(payload):
        if key in ("columns", "rows"):
            continue
        lines.append(f"# {key}={_param_str(payload[key])}")
    lines.append("# columns=" + ",".join(payload["columns"]))
    for row in payload["rows"]:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _render_json(config: RunConfig, payload: dict[str, Any]) -> str:
    document = {
        "version": __version__,
        "command": config.command,
        "parameters": {k: config.parameters[k] for k in sorted(config.parameters)},
    }
    document.update(payload)
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _emit(output: str, text: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def run(config: RunConfig) -> int:
    """Execute one resolved invocation; returns the process exit code."""
    try:
        if config.command not in _HANDLERS:
            raise ValueError(f"unknown command {config.command!r}")
        if config.fmt not in ("csv", "json"):
            raise ValueError(f"unknown format {config.fmt!r}")
        if config.fmt == "csv" and config.command in _JSON_ONLY:
            raise ValueError(f"command {config.command} only supports JSON output")
        payload = _HANDLERS[config.command](config.parameters)
        render = _render_csv if config.fmt == "csv" else _render_json
        _emit(config.output, render(config, payload))
        return EXIT_OK
    except ValueError as exc:
        print(f"hypstab {config.command}: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuadratureError, ProfileError, ExportError) as exc:
        print(f"hypstab {config.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def embed_export(config: RunConfig) -> int:
    """Entry point for surface exports; config.command must be embed-export."""
    if config.command != "embed-export":
        raise ValueError(f"embed_export got command {config.command!r}")
    return run(config)


def read_table(path: str | Path) -> tuple[dict[str, str], list[str], list[list[float]]]:
    """Parse a CSV table written by this tool.

    Returns (metadata, column names, numeric rows); metadata maps the header
    keys to their string values, with the version banner under 'banner'.
    """
    meta: dict[str, str] = {}
    columns: list[str] = []
    rows: list[list[float]] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, value = body.split("=", 1)
                if key == "columns":
                    columns = value.split(",")
                else:
                    meta[key] = value
            else:
                meta.setdefault("banner", body)
        elif line.strip():
            rows.append([float(tok) for tok in line.split(",")])
    return meta, columns, rows


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypstab",
        description=(
            "Numerical toolkit for minimal catenoids and helicoids in "
            "hyperbolic space: curvature functionals, stability windows, "
            "and spectral Morse indices."
        ),
    )
    parser.add_argument("--version", action="version", version=f"hypstab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add_command(name: str, help_text: str, fmt_default: str):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--output", default="-", help="output path, '-' for stdout")
        if name in _JSON_ONLY:
            sp.add_argument(
                "--format", dest="fmt", default="json", choices=("json",),
                help="output format",
            )
        else:
            sp.add_argument(
                "--format", dest="fmt", default=fmt_default,
                choices=("csv", "json"), help="output format",
            )
        return sp

    sp = add_command("sweep-f", "tabulate the instability functional F(a)", "csv")
    sp.add_argument("--a-min", type=float, default=0.55)
    sp.add_argument("--a-max", type=float, default=1.5)
    sp.add_argument("--step", type=float, default=0.05)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="quadrature tolerance")

    sp = add_command("find-c0", "locate the sign change of F along the family", "json")
    sp.add_argument("--tol", type=float, default=1e-4, help="bracket width at the root")
    sp.add_argument("--quad-tol", type=float, default=DEFAULT_TOL)

    sp = add_command("index", "spectral Morse index of one spherical catenoid", "json")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--radius", type=float, default=10.0)
    sp.add_argument("--nodes", type=int, default=2000)
    sp.add_argument("--m-max", type=int, default=5)
    sp.add_argument("--k-eigs", type=int, default=3)

    sp = add_command(
        "hyperbolic-window", "stable neck window of hyperbolic catenoids", "csv"
    )
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--t-min", type=float, default=1.01)
    sp.add_argument("--t-max", type=float, default=3.0)
    sp.add_argument("--steps", type=int, default=50)

    sp = add_command("helicoid", "metric and curvature profile of a helicoid", "csv")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--t-max", type=float, default=3.0)
    sp.add_argument("--t-grid", type=int, default=101)

    sp = add_command("embed-export", "emit surface points in hyperboloid coordinates", "csv")
    sp.add_argument(
        "--family", required=True, choices=sorted(_EXPORT_FAMILIES),
    )
    sp.add_argument("--a", type=float, default=1.0, help="spherical family shape")
    sp.add_argument("--alpha", type=float, default=1.0, help="helicoid pitch")
    sp.add_argument("--n", type=int, default=2, help="hyperbolic-curve dimension")
    sp.add_argument("--t", type=float, default=1.5, help="hyperbolic-curve neck height")
    sp.add_argument("--s-max", type=float, default=3.0)
    sp.add_argument("--s-grid", type=int, default=20)
    sp.add_argument("--t-max", type=float, default=2.0)
    sp.add_argument("--t-grid", type=int, default=20)
    sp.add_argument("--theta-grid", type=int, default=20)
    sp.add_argument("--samples", type=int, default=101)

    sp = add_command("criteria", "dimension-generic stability certificates", "json")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sup-a-sq", type=float, default=None)
    sp.add_argument("--pinch-a", type=float, default=None)
    sp.add_argument("--pinch-b", type=float, default=None)
    sp.add_argument("--sobolev-constant", type=float, default=None)
    sp.add_argument("--a-n-mass", type=float, default=None)
    sp.add_argument("--mass-a-sq", type=float, default=None)
    sp.add_argument("--mass-grad-a-sq", type=float, default=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    params = {
        key: value
        for key, value in vars(args).items()
        if key not in ("command", "output", "fmt")
    }
    config = RunConfig(
        command=args.command,
        parameters=params,
        output=args.output,
        fmt=args.fmt,
    )
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
