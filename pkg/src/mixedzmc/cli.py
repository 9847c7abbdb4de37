"""Command-line interface.

Exit codes: 0 success, 1 usage or validation error, 2 numerical cross-check
failure, 3 invariant-suite failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import io
from .analysis import (
    elliptic_limit_residual,
    gyroid_residual,
    gyroid_search,
    helicoid_limit_residual,
    s0_residual,
    scherk_residual,
)
from .assembly import (
    build_omega1,
    disk_mesh,
    extend_to_omega32,
    mesh_omega_min,
    prism_containment,
    quotient_genus,
)
from .errors import CrossCheckFailure, MixedZMCError, NoRootFound, OutOfRange, QuadratureFailure, RootFindFailure
from .intersect import self_intersection_scan
from .maxface import classify_singularities
from .periods import period_matrix, period_table
from .riemann import make_params
from .timelike import fold_curve
from .verify import SUITES, run_suite

DEFAULT_A = (math.sqrt(3.0) - 1.0) / math.sqrt(2.0)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CROSSCHECK = 2
EXIT_SUITE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_angle(text: str) -> float:
    """Radians, or degrees with a ``deg`` suffix (converted here, once)."""
    s = text.strip().lower()
    try:
        if s.endswith("deg"):
            return math.radians(float(s[:-3]))
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid angle {text!r}") from None


def parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}") from None
    return lo, hi


@dataclass
class RunConfig:
    """Validated options shared by the subcommands."""

    command: str
    a: float = DEFAULT_A
    theta: float = 0.5 * math.pi
    res_u: int = 8
    res_v: int | None = None
    out: Path | None = None
    fmt: str | None = None
    seed: int = 0
    suite: str = "all"
    emit_grid: bool = False
    a_range: tuple[float, float] = (0.2, 0.5)
    theta_range: tuple[float, float] = (0.5, 1.0)
    grid: tuple[int, int] = (61, 51)
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if not (0.0 < self.a < 1.0) or not math.isfinite(self.a):
            raise UsageError(f"--a must lie in (0, 1), got {self.a}")
        if not math.isfinite(self.theta):
            raise UsageError("--theta must be finite")
        if self.res_u < 4 or (self.res_v is not None and self.res_v < 4):
            raise UsageError("resolutions must be at least 4")
        if self.fmt is not None and self.fmt not in ("obj", "ply", "json"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.suite not in SUITES + ("all",):
            raise UsageError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES + ('all',))}")
        if min(self.grid) < 2:
            raise UsageError("--grid needs at least 2 points per axis")

    @property
    def format(self) -> str:
        if self.fmt:
            return self.fmt
        if self.out is not None and self.out.suffix.lstrip(".").lower() in ("obj", "ply", "json"):
            return self.out.suffix.lstrip(".").lower()
        return "obj"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=float, default=DEFAULT_A, help="surface parameter in (0, 1)")
    common.add_argument("--out", type=Path, default=None, help="output file (default: standard output for JSON)")
    common.add_argument("--format", dest="fmt", choices=("obj", "ply", "json"), default=None)
    common.add_argument("--seed", type=int, default=0, help="seed for sample-based checks")

    mesh = argparse.ArgumentParser(add_help=False)
    mesh.add_argument("--res-u", type=int, default=8, help="first mesh resolution")
    mesh.add_argument("--res-v", type=int, default=None, help="second mesh resolution (default: --res-u)")

    p = _Parser(prog="mixedzmc", description="Triply periodic zero mean curvature surfaces of mixed type.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("periods", parents=[common], help="period constants and matrices as JSON")
    s.add_argument("--theta", type=parse_angle, default=None, help="also report P1, P2 at this angle")

    s = sub.add_parser("surface", parents=[common, mesh], help="maxface mesh of the unit disk")
    s.add_argument("--theta", type=parse_angle, default=0.5 * math.pi)

    sub.add_parser("extend", parents=[common, mesh], help="timelike piece over the height rectangle")
    sub.add_parser("assemble", parents=[common, mesh], help="32-copy piece, lattice and embeddedness report")

    s = sub.add_parser("gyroid-search", parents=[common], help="search for a closing intermediate angle")
    s.add_argument("--a-range", type=parse_range, default=(0.2, 0.5))
    s.add_argument("--theta-range", type=parse_range, default=(0.5, 1.0))
    s.add_argument("--grid", type=int, nargs=2, default=(61, 51), metavar=("N_A", "N_THETA"))
    s.add_argument("--emit-grid", action="store_true", help="include the residual grid in the output")

    sub.add_parser("limits", parents=[common], help="limit residual sequences")

    s = sub.add_parser("verify", parents=[common], help="run invariant suites")
    s.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES + ('all',))}")
    return p


def _config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, a=ns.a, out=ns.out, fmt=ns.fmt, seed=ns.seed)
    for name in ("theta", "res_u", "res_v", "suite", "emit_grid", "a_range", "theta_range"):
        value = getattr(ns, name, None)
        if value is not None:
            setattr(cfg, name, value)
    if getattr(ns, "grid", None) is not None:
        cfg.grid = tuple(ns.grid)
    if ns.command == "periods":
        cfg.extra["theta"] = ns.theta
    cfg.validate()
    return cfg


def _emit_json(cfg: RunConfig, payload: dict, stdout) -> None:
    text = io.dumps_json(payload)
    if cfg.out is None:
        stdout.write(text)
    else:
        cfg.out.write_text(text, encoding="utf-8")


def _emit_mesh(cfg: RunConfig, mesh, report: dict, stdout) -> None:
    if cfg.out is None:
        raise UsageError("--out is required for mesh output")
    io.save_mesh(mesh, cfg.out, cfg.format)
    report = {"output": str(cfg.out), "format": cfg.format, **report}
    stdout.write(io.dumps_json(report))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_periods(cfg: RunConfig, stdout) -> int:
    params = make_params(cfg.a)
    payload = period_table(params).to_json()
    theta = cfg.extra.get("theta")
    if theta is not None:
        payload["theta"] = theta
        payload["P1"] = period_matrix(params, 1, theta, method="checked")
        payload["P2"] = period_matrix(params, 2, theta, method="checked")
    _emit_json(cfg, payload, stdout)
    return EXIT_OK


def cmd_surface(cfg: RunConfig, stdout) -> int:
    params = make_params(cfg.a)
    mesh = disk_mesh(params, cfg.theta, cfg.res_u, cfg.res_v or cfg.res_u)
    report = {
        "a": cfg.a,
        "theta": cfg.theta,
        "singularity": classify_singularities(params, cfg.theta).value,
        "rim_images": mesh.meta["rim_images"],
        "vertices": mesh.n_vertices,
        "faces": mesh.n_faces,
    }
    _emit_mesh(cfg, mesh, report, stdout)
    return EXIT_OK


def cmd_extend(cfg: RunConfig, stdout) -> int:
    params = make_params(cfg.a)
    mesh = mesh_omega_min(params, cfg.res_u, cfg.res_v or cfg.res_u)
    fc = fold_curve(params)
    report = {
        "a": cfg.a,
        "alpha_range": [0.0, float(fc.tau(np.pi / 4))],
        "beta_range": [0.0, float(fc.tau(np.pi / 2))],
        "vertices": mesh.n_vertices,
        "faces": mesh.n_faces,
    }
    _emit_mesh(cfg, mesh, report, stdout)
    return EXIT_OK


def assembly_report(a: float, res_u: int, res_v: int | None = None) -> tuple[dict, object]:
    """Build the 32-copy piece and its embeddedness and topology report."""
    params = make_params(a)
    omega1 = build_omega1(params, res_u, res_v)
    prism = prism_containment(params, omega1)
    asm = extend_to_omega32(params, omega1)
    genus = quotient_genus(asm.mesh, asm.lattice)
    pairs = self_intersection_scan(asm.mesh)
    report = {
        "a": a,
        "genus": genus,
        "embedded": len(pairs) == 0,
        "self_intersections": len(pairs),
        "lattice_generators": asm.lattice.generators,
        "lengths": asm.lengths,
        "prism": {
            "max_violation": prism.max_violation,
            "height": list(prism.height),
            "right_angle_defect": prism.right_angle_defect,
            "leg_ratio": prism.leg_ratio,
        },
        "copies": asm.diagnostics["copies"],
        "rotation_angle": asm.diagnostics["rotation_angle"],
        "box_vs_lattice": asm.diagnostics["box_vs_lattice"],
        "vertices": asm.mesh.n_vertices,
        "faces": asm.mesh.n_faces,
    }
    return report, asm


def cmd_assemble(cfg: RunConfig, stdout) -> int:
    report, asm = assembly_report(cfg.a, cfg.res_u, cfg.res_v)
    if cfg.out is None or cfg.format == "json":
        _emit_json(cfg, report, stdout)
    else:
        _emit_mesh(cfg, asm.mesh, report, stdout)
    return EXIT_OK


def cmd_gyroid_search(cfg: RunConfig, stdout) -> int:
    res = gyroid_search(cfg.a_range, cfg.theta_range, n_a=cfg.grid[0], n_theta=cfg.grid[1])
    best = gyroid_residual(make_params(res.a), res.theta)
    payload = {
        "a": res.a,
        "theta": res.theta,
        "residual": res.residual,
        "basis": list(best.basis),
        "denominator": best.denominator,
        "a_range": list(cfg.a_range),
        "theta_range": list(cfg.theta_range),
        "grid": list(cfg.grid),
    }
    if cfg.emit_grid:
        payload["rows"] = res.grid_rows()
    _emit_json(cfg, payload, stdout)
    return EXIT_OK


def cmd_limits(cfg: RunConfig, stdout) -> int:
    near_one = (0.9, 0.99, 0.999)
    near_zero = (0.1, 0.05, 0.01)
    payload = {
        "scherk": [{"a": a, "residual": scherk_residual(make_params(a))} for a in near_one],
        "entire_graph": [{"a": a, "residual": s0_residual(make_params(a))} for a in near_one],
        "helicoid": [{"a": a, "residual": helicoid_limit_residual(make_params(a))} for a in near_zero],
        "elliptic": [
            {"a": a, "theta": th, "residual": elliptic_limit_residual(make_params(a), th)}
            for th in (0.0, 0.5 * math.pi)
            for a in near_zero
        ],
    }
    _emit_json(cfg, payload, stdout)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, stdout) -> int:
    report = run_suite(cfg.suite, make_params(cfg.a), seed=cfg.seed)
    payload = {"a": cfg.a, "seed": cfg.seed, "passed": all(r["passed"] for r in report.values()), "suites": report}
    _emit_json(cfg, payload, stdout)
    return EXIT_OK if payload["passed"] else EXIT_SUITE


COMMANDS = {
    "periods": cmd_periods,
    "surface": cmd_surface,
    "extend": cmd_extend,
    "assemble": cmd_assemble,
    "gyroid-search": cmd_gyroid_search,
    "limits": cmd_limits,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(ns)
        return COMMANDS[cfg.command](cfg, stdout)
    except (UsageError, OutOfRange, NoRootFound) as exc:
        print(f"mixedzmc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CrossCheckFailure, QuadratureFailure, RootFindFailure) as exc:
        print(f"mixedzmc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except MixedZMCError as exc:
        print(f"mixedzmc: invariant failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SUITE
    except OSError as exc:
        print(f"mixedzmc: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
