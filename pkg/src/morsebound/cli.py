"""Command line front end.

Subcommands: ``bound``, ``strong``, ``tregion``, ``torus``, ``model`` and
``check``.  Reports are CSV with a header row and numbers written as
``%.16e``.  Errors go to stderr as ``error code=<CODE> exit=<N>: <message>``.

Exit codes: 0 success, 2 parse error, 3 divergent/unbounded region,
4 quadrature failure, 5 suite failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

from . import __version__
from .bergman import ModelBoundaryData, ProfileFunction, fiber_integral_residual, model_density
from .checks import run_suite
from .errors import DivergentBoundaryTerm, MorseError, ParseError, SuiteFailure
from .integrals import Units, bulk_term, grade_terms, strong_bounds, strong_range
from .pencil import HermitianMatrix, t_region, tolerances
from .scene_io import parse_matrix, parse_scene
from .torus import TorusBundleSpec, convergence_table

__all__ = ["RunConfig", "run", "main", "build_parser"]

COMMANDS = ("bound", "strong", "tregion", "torus", "model", "check")


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    output_path: str | None = None
    q: int | None = None
    units: str | None = None
    rel_tol: float = 1e-8
    zero_tol: float | None = None
    imag_tol: float | None = None
    mode: str = "convex"
    lam: tuple = ()
    mu: tuple = ()
    k_list: tuple = ()
    phi0: str | None = None
    levi: str | None = None
    v_list: tuple = (0.0,)
    suite: str | None = None
    matrices: tuple = field(default_factory=tuple)

    def validate(self):
        if self.command not in COMMANDS:
            raise ParseError(f"unknown command {self.command!r}")
        need = {
            "bound": ("input_path",),
            "strong": ("input_path", "q"),
            "tregion": ("q",),
            "torus": ("lam", "mu", "q", "k_list"),
            "model": ("phi0", "levi", "q"),
            "check": ("suite",),
        }[self.command]
        for name in need:
            if getattr(self, name) in (None, ()):
                raise ParseError(f"{self.command} requires {name}")
        if self.command == "tregion" and not self.input_path and not (self.phi0 and self.levi):
            raise ParseError("tregion requires --input or both --A and --B")


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return f"{x:.16e}"
    return str(x)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def _json_matrix(text, name):
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{name}: {exc.msg}", field=name) from None
    if isinstance(rows, (int, float)):
        rows = [[rows]]
    return HermitianMatrix(parse_matrix(rows, name))


def _divergent_samples(scene, q):
    out = []
    for i, s in enumerate(scene.boundary):
        if t_region(s.theta_tan, s.levi, q).unbounded:
            out.append(i)
    return out


def _cmd_bound(cfg: RunConfig) -> str:
    scene = parse_scene(cfg.input_path)
    grades = range(scene.n + 1) if cfg.q is None else [cfg.q]
    header = ["grade", "bulk", "boundary", "total", "degenerate_bulk", "divergent_samples"]
    rows = []
    for q in grades:
        divergent = _divergent_samples(scene, q)
        if divergent:
            if cfg.q is not None:
                raise DivergentBoundaryTerm(
                    f"index region T({q}) unbounded at boundary samples {divergent}",
                    sample=divergent[0], grade=q)
            rows.append([q, bulk_term(scene, q), "", "", "",
                         ";".join(map(str, divergent))])
            continue
        terms = grade_terms(scene, q)
        rows.append([q, terms.bulk, terms.boundary, terms.total,
                     ";".join(map(str, terms.degenerate_bulk)), ""])
    return _csv(header, rows)


def _cmd_strong(cfg: RunConfig) -> str:
    scene = parse_scene(cfg.input_path)
    anchor, grades = strong_range(scene.n, cfg.q, cfg.mode)
    value = strong_bounds(scene, cfg.q, cfg.mode)
    rows = []
    for i in grades:
        t = grade_terms(scene, i)
        rows.append([cfg.mode, i, (-1) ** (anchor - i), t.bulk, t.boundary, t.total])
    rows.append([cfg.mode, "assembled", "", "", "", value])
    return _csv(["mode", "grade", "sign", "bulk", "boundary", "total"], rows)


def _cmd_tregion(cfg: RunConfig) -> str:
    if cfg.input_path:
        pairs = [(s.theta_tan, s.levi) for s in parse_scene(cfg.input_path).boundary]
    else:
        pairs = [(_json_matrix(cfg.phi0, "A"), _json_matrix(cfg.levi, "B"))]
    rows = []
    for i, (a, b) in enumerate(pairs):
        region = t_region(a, b, cfg.q)
        if region.empty:
            rows.append([i, cfg.q, "", "", region.unbounded])
        for lo, hi in region.intervals:
            rows.append([i, cfg.q, lo, hi, region.unbounded])
    return _csv(["sample", "grade", "lo", "hi", "unbounded"], rows)


def _cmd_torus(cfg: RunConfig) -> str:
    spec = TorusBundleSpec(cfg.lam, cfg.mu)
    rows = [[r.k, r.dim, r.normalized, r.limit, r.abs_error]
            for r in convergence_table(spec, cfg.q, cfg.k_list)]
    return _csv(["k", "dim", "normalized", "limit", "abs_error"], rows)


def _cmd_model(cfg: RunConfig) -> str:
    data = ModelBoundaryData(_json_matrix(cfg.phi0, "phi0"), _json_matrix(cfg.levi, "levi"),
                             cfg.q, ProfileFunction())
    units = Units(cfg.units or "chern")
    rows = [["density", v, model_density(data, v, cfg.rel_tol, units)] for v in cfg.v_list]
    rows.append(["fiber_residual", "", fiber_integral_residual(data, max(cfg.rel_tol, 1e-6))])
    return _csv(["quantity", "v", "value"], rows)


def _cmd_check(cfg: RunConfig) -> tuple[str, bool]:
    try:
        results = run_suite(cfg.suite)
    except ValueError as exc:
        raise ParseError(str(exc), field="suite") from None
    text = _csv(["check", "value", "tolerance", "pass"],
                [[r.name, r.value, r.tolerance, r.passed] for r in results])
    return text, all(r.passed for r in results)


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    """Execute ``cfg``; write the report and return the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ok = True
    try:
        cfg.validate()
        with tolerances(cfg.zero_tol, cfg.imag_tol):
            if cfg.command == "check":
                text, ok = _cmd_check(cfg)
            else:
                text = globals()[f"_cmd_{cfg.command}"](cfg)
    except MorseError as exc:
        stderr.write(f"error code={exc.code} exit={exc.exit_code}: {exc}\n")
        return exc.exit_code
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if not ok:
        exc = SuiteFailure(f"suite {cfg.suite} failed")
        stderr.write(f"error code={exc.code} exit={exc.exit_code}: {exc}\n")
        return exc.exit_code
    return 0


def _ints(values):
    out = []
    for v in values:
        out.extend(int(x) for x in str(v).split(",") if x)
    return tuple(out)


def _floats(values):
    out = []
    for v in values:
        out.extend(float(x) for x in str(v).split(",") if x)
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="morsebound",
                                description="Holomorphic Morse bounds on manifolds with boundary.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", "-o", dest="output_path")
        sp.add_argument("--rel-tol", type=float, default=1e-8)
        sp.add_argument("--zero-tol", type=float, default=None,
                        help="relative factor for zero eigenvalues (default 1e-10)")
        sp.add_argument("--imag-tol", type=float, default=None)

    sp = sub.add_parser("bound", help="weak Morse bound of a scene file")
    sp.add_argument("--input", "-i", dest="input_path", required=True)
    sp.add_argument("--q", default="all", help="grade or 'all'")
    common(sp)

    sp = sub.add_parser("strong", help="strong Morse bound of a scene file")
    sp.add_argument("--input", "-i", dest="input_path", required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--mode", choices=("convex", "concave"), default="convex")
    common(sp)

    sp = sub.add_parser("tregion", help="index regions T(q) of boundary pencils")
    sp.add_argument("--input", "-i", dest="input_path")
    sp.add_argument("--A", dest="phi0", help="JSON matrix")
    sp.add_argument("--B", dest="levi", help="JSON matrix")
    sp.add_argument("--q", type=int, required=True)
    common(sp)

    sp = sub.add_parser("torus", help="disc bundle dimensions and their limit")
    sp.add_argument("--lambda", dest="lam", nargs="+", required=True)
    sp.add_argument("--mu", nargs="+", required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--k", dest="k_list", nargs="+", required=True)
    common(sp)

    sp = sub.add_parser("model", help="model boundary Bergman density")
    sp.add_argument("--phi0", required=True, help="JSON matrix")
    sp.add_argument("--levi", required=True, help="JSON matrix")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--v", dest="v_list", nargs="+", default=["0"])
    sp.add_argument("--units", choices=("chern", "raw"), default="chern")
    common(sp)

    sp = sub.add_parser("check", help="run a built-in verification suite")
    sp.add_argument("--suite", required=True, choices=("holefill", "fubini", "zq", "convergence"))
    common(sp)
    return p


def config_from_args(ns) -> RunConfig:
    cfg = RunConfig(command=ns.command, output_path=ns.output_path, rel_tol=ns.rel_tol,
                    zero_tol=ns.zero_tol, imag_tol=ns.imag_tol)
    for name in ("input_path", "mode", "phi0", "levi", "suite", "units"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    q = getattr(ns, "q", None)
    if q is not None and q != "all":
        cfg.q = int(q)
    if hasattr(ns, "lam"):
        cfg.lam, cfg.mu, cfg.k_list = _ints(ns.lam), _ints(ns.mu), _ints(ns.k_list)
    if hasattr(ns, "v_list"):
        cfg.v_list = _floats(ns.v_list)
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        sys.stderr.write(f"error code={ParseError.code} exit=2: {exc}\n")
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
