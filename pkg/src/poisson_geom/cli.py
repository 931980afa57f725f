"""``poisson-geom`` command line.

Exit codes: 0 success, 1 property failure, 2 usage error, 3 degenerate
geometry.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from . import figures
from . import identities as ids
from . import projective as pj
from . import surface as sf
from .algebra import proportional_residual, unit, vec3
from .errors import DegenerateGeometryError, UsageError
from .harmonics import AlgebraKind
from .verify import DEFAULT_TOLERANCES, VerifyConfig, dump_report, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3
SEED_ENV = "POISSON_GEOM_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _seed(value) -> int:
    try:
        seed = int(value, 0) if isinstance(value, str) else int(value)
    except ValueError:
        raise UsageError(f"seed must be an integer, got {value!r}") from None
    if not 0 <= seed < 2**64:
        raise UsageError("seed must be an unsigned 64-bit integer")
    return seed


def _contexts(text: str) -> tuple:
    if text.strip().lower() == "all":
        return ids.ALL_CONTEXTS
    return tuple(ids.parse_context(part) for part in text.split(",") if part.strip())


def _tolerances(items) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects NAME=VALUE, got {item!r}")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"bad tolerance value {value!r}") from None
    return out


def _triple(text: str) -> np.ndarray:
    s = text.strip()
    try:
        vals = json.loads(s) if s.startswith("[") else [float(v) for v in s.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse triple {text!r}") from None
    v = np.asarray(vals, dtype=float)
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise UsageError(f"expected three finite numbers, got {text!r}")
    return v


def _load_json(arg: str | None):
    """``None``/``default`` -> None; inline JSON or a path to a JSON file otherwise."""
    if arg is None or arg == "default":
        return None
    text = arg
    if not arg.lstrip().startswith(("[", "{")):
        try:
            with open(arg, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {arg}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON geometry: {exc.msg}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _floats(v) -> list:
    return [float(x) + 0.0 for x in np.asarray(v).ravel()]


# -- subcommands ------------------------------------------------------------


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else os.environ.get(SEED_ENV, "0")
    suites = tuple(DEFAULT_TOLERANCES)
    if args.suites:
        suites = tuple(s.strip() for s in args.suites.split(",") if s.strip())
    cfg = VerifyConfig(
        seed=_seed(seed),
        trials=args.trials,
        contexts=_contexts(args.contexts),
        tolerances=_tolerances(args.tol),
        suites=suites,
    )
    report = run_verify(cfg)
    _emit(dump_report(report), args.out)
    if not report["pass"]:
        failed = [k for k, v in report["suites"].items() if not v["pass"]]
        print(f"property failure in: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_figure(args) -> int:
    if args.figure not in figures.FIGURES:
        raise UsageError(f"unknown figure {args.figure!r}; choose from {', '.join(figures.FIGURES)}")
    if args.format != "svg":
        raise UsageError("figures are only emitted as SVG")
    data = _load_json(args.config) if args.config is not None else _load_json(args.triangle)
    _emit(figures.render_figure(args.figure, data), args.out)
    return EXIT_OK


def demo_orthocenter() -> dict:
    out = {}
    verts = figures.DEFAULT_SPHERICAL_TRIANGLE
    t = sf.Triangle(AlgebraKind.SPHERE, [unit(vec3(v)) for v in verts])
    h = sf.orthocenter(t)
    hd = sf.altitude_meets(t.dual_triangle())[0]
    out["sphere"] = {
        "triangle": verts,
        "orthocenter": _floats(h.rep),
        "concurrency_residual": sf.concurrency_residual(t),
        "dual_orthocenter_residual": proportional_residual(h.rep, hd),
    }
    try:
        sf.altitude(sf.Triangle(AlgebraKind.SPHERE, list(np.eye(3))), 0)
        out["e1e2e3_rejected"] = False
    except DegenerateGeometryError:
        out["e1e2e3_rejected"] = True
    return out


def demo_eh() -> dict:
    p = pj.ProjPoint([2.0, 0.0, 1.0])
    le, lh = pj.line_of(p.homogeneous, pj.Duality.E), pj.line_of(p.homogeneous, pj.Duality.H)
    x_axis = pj.ProjLine([0.0, 1.0, 0.0])
    b = pj.meet(le, x_axis).xy()[0]
    c = pj.meet(lh, x_axis).xy()[0]
    return {
        "point": [2.0, 0.0, 1.0],
        "dual_E_meets_x_axis_at": b,
        "dual_H_meets_x_axis_at": c,
        "reflection_residual": proportional_residual(le.covector, pj.eh_reflect(lh).covector),
    }


def demo_pappus() -> dict:
    d = figures.DEFAULT_PAPPUS
    cfg = pj.PappusConfig.from_points(d["a"], d["b"])
    residual, cpts = pj.pappus_check(cfg)
    A, B, C = d["a"]
    D, E, H = d["b"]
    via = ids.pappus_via_tomihisa(A, B, C, D, E, H)
    return {
        "a": d["a"],
        "b": d["b"],
        "pappus_points": [_floats(p.homogeneous) for p in cpts],
        "collinearity_residual": residual,
        "via_tomihisa": {
            "residual": via.residual,
            "collinearity_MNP": via.pappus_residual,
            "C_residual": via.C_residual,
            "H_residual": via.H_residual,
        },
    }


def demo_tomihisa() -> dict:
    pts = [pj.ProjPoint(v) for v in figures.DEFAULT_TOMIHISA]
    lines = [pj.ProjLine(v) for v in figures.DEFAULT_TOMIHISA]
    X = np.array(figures.DEFAULT_TOMIHISA)
    algebraic = {
        ids.context_label(ctx): float(np.linalg.norm(ids.tomihisa(ctx, *X))) for ctx in ids.ALL_CONTEXTS
    }
    return {
        "inputs": figures.DEFAULT_TOMIHISA,
        "algebraic_residuals": algebraic,
        "points_concurrency_residual": ids.tomihisa_geometric(pts),
        "lines_collinearity_residual": ids.tomihisa_geometric(lines),
    }


_DEMOS = {
    "orthocenter": demo_orthocenter,
    "eh": demo_eh,
    "pappus": demo_pappus,
    "tomihisa": demo_tomihisa,
}


def cmd_demo(args) -> int:
    if args.format != "json":
        raise UsageError("demos report JSON only")
    _emit(_json(_DEMOS[args.name]()), args.out)
    return EXIT_OK


def cmd_bracket(args) -> int:
    ctx = ids.parse_context(args.context)
    vecs = [_triple(t) for t in args.triples]
    if len(vecs) < 2:
        raise UsageError("bracket needs at least two triples")
    br = ids.context_bracket(ctx)
    acc = vecs[0]
    for v in vecs[1:]:  # left-normed {{X1, X2}, X3}...
        acc = br(acc, v)
    if args.format != "json":
        raise UsageError("bracket results are JSON only")
    _emit(_json({"context": ids.context_label(ctx), "inputs": [_floats(v) for v in vecs], "result": _floats(acc)}), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="poisson-geom", description="Poisson-algebra geometry toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run the seeded property suites")
    v.add_argument("--seed", default=None, help=f"64-bit seed (fallback: ${SEED_ENV}, then 0)")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--contexts", default="all", help="'all' or comma list, e.g. '+++,++-,sphere'")
    v.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a suite tolerance")
    v.add_argument("--suites", default=None, help="comma list of suites to run")
    v.add_argument("--format", choices=("json",), default="json")
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("figure", help="emit an SVG figure")
    f.add_argument("figure", help=", ".join(figures.FIGURES))
    f.add_argument("--triangle", default=None, help="'default', inline JSON or a JSON file")
    f.add_argument("--config", default=None, help="inline JSON or a JSON file with the geometry")
    f.add_argument("--format", default="svg")
    f.add_argument("--out", default=None)
    f.set_defaults(func=cmd_figure)

    d = sub.add_parser("demo", help="print a worked theorem check")
    d.add_argument("name", choices=sorted(_DEMOS))
    d.add_argument("--format", default="json")
    d.add_argument("--out", default=None)
    d.set_defaults(func=cmd_demo)

    b = sub.add_parser("bracket", help="left-normed bracket of the given triples")
    b.add_argument("--context", default="+++")
    b.add_argument("triples", nargs="+", help="'x,y,z' or '[x,y,z]'")
    b.add_argument("--format", default="json")
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_bracket)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"poisson-geom: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateGeometryError as exc:
        print(f"poisson-geom: degenerate geometry: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
