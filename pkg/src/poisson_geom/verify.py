"""Seeded property suites and the JSON verification report.

Every trial draws from its own SplitMix64 stream keyed by
``(seed, suite id, context index)`` (vectorized identity suites, one block
per trial) or ``(seed, suite id, trial)`` (geometric suites with rejection
sampling), so any subset or ordering of trials gives the same numbers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import identities as ids
from . import projective as pj
from . import surface as sf
from .algebra import HYPERBOLIC, cross3, dot, proportional_residual, unit
from .errors import DegenerateGeometryError, UsageError
from .harmonics import (
    AlgebraKind,
    Harmonic,
    SurfaceCoord,
    eval_harmonic,
    poisson_algebraic,
    poisson_numeric,
)
from .rng import SplitMix64, derive_seed, uniform_block

DEFAULT_TOLERANCES = {
    "jacobi": 1e-12,
    "tomihisa": 1e-11,
    "razmyslov1": 1e-10,
    "razmyslov2": 1e-11,
    "decomposition": 1e-10,
    "bracket_law": 1e-10,
    "orthogonality": 1e-9,
    "orthocenter": 1e-9,
    "eh_duality": 1e-12,
    "conic_altitudes": 1e-9,
    "tomihisa_geometric": 1e-9,
    "pappus": 1e-9,
}

IDENTITY_SUITES = ("jacobi", "tomihisa", "razmyslov1", "razmyslov2", "decomposition")
_SUITE_ID = {name: i + 1 for i, name in enumerate(DEFAULT_TOLERANCES)}
_OPERANDS = {"jacobi": 3, "tomihisa": 5, "razmyslov1": 5, "razmyslov2": 3, "decomposition": 5}

# Rejection thresholds for "well-conditioned" random geometry.
_MARGIN = 1e-3
_OFF_CONE = 0.05


@dataclass
class VerifyConfig:
    seed: int = 0
    trials: int = 100
    contexts: tuple = ids.ALL_CONTEXTS
    tolerances: dict = field(default_factory=dict)
    suites: tuple = tuple(DEFAULT_TOLERANCES)

    def __post_init__(self):
        if not isinstance(self.trials, int) or self.trials <= 0:
            raise UsageError("trials must be a positive integer")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be an unsigned 64-bit integer")
        if not self.contexts:
            raise UsageError("at least one context is required")
        unknown = (set(self.tolerances) | set(self.suites)) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise UsageError(f"unknown suite name(s): {', '.join(sorted(unknown))}")
        for name, tol in self.tolerances.items():
            if not (tol > 0 and np.isfinite(tol)):
                raise UsageError(f"tolerance for {name} must be a positive number")

    def tolerance(self, suite: str) -> float:
        return float(self.tolerances.get(suite, DEFAULT_TOLERANCES[suite]))


def identity_operands(seed: int, suite: str, ctx_index: int, trials: int) -> np.ndarray:
    """Operands of shape ``(n_operands, trials, 3)`` uniform in [-1, 1]."""
    k = _OPERANDS[suite]
    stream = derive_seed(seed, _SUITE_ID[suite], ctx_index)
    block = uniform_block(stream, 0, trials * k * 3).reshape(trials, k, 3)
    return np.transpose(block, (1, 0, 2))


def identity_residuals(suite: str, ctx, X: np.ndarray) -> np.ndarray:
    """Euclidean norms of the residual vectors, one per trial."""
    if suite == "jacobi":
        r = ids.jacobi_residual(ctx, *X)
    elif suite == "tomihisa":
        r = ids.tomihisa(ctx, *X)
    elif suite == "razmyslov1":
        r = ids.razmyslov1_residual(ctx, *X)
    elif suite == "razmyslov2":
        r = ids.razmyslov2_residual(ctx, *X)
    elif suite == "decomposition":
        r = ids.tomihisa_decomposition_residual(ctx, *X)
    else:
        raise UsageError(f"{suite} is not an identity suite")
    return np.linalg.norm(r, axis=-1)


# -- random geometry --------------------------------------------------------


def trial_rng(seed: int, suite: str, trial: int, sub: int = 0) -> SplitMix64:
    return SplitMix64(derive_seed(seed, _SUITE_ID[suite], sub, trial))


def random_surface_vector(rng: SplitMix64, kind: AlgebraKind) -> np.ndarray:
    """Direction in [-1, 1]^3; hyperbolic kinds stay away from the cone."""
    while True:
        v = rng.uniform(3)
        e2 = float(v @ v)
        if e2 < 1e-2:
            continue
        if kind is AlgebraKind.SPHERE or abs(float(dot(HYPERBOLIC, v, v))) > _OFF_CONE * e2:
            return v


def random_proper_triangle(rng: SplitMix64, kind: AlgebraKind, margin: float = _MARGIN):
    """Returns ``(triangle, rejections)``; proper with a conditioning margin."""
    rejected = 0
    while True:
        verts = [random_surface_vector(rng, kind) for _ in range(3)]
        try:
            t = sf.Triangle(kind, verts)
        except DegenerateGeometryError:
            rejected += 1
            continue
        if sf.properness_margin(t) <= margin:
            rejected += 1
            continue
        alts = [unit(sf.altitude(t, i).normal) for i in range(3)]
        meets = [t.bracket(alts[a], alts[b]) for a, b in ((0, 1), (1, 2), (2, 0))]
        dual_margin = sf.properness_margin(t.dual_triangle())
        if min(np.linalg.norm(m) for m in meets) <= margin or dual_margin <= margin:
            rejected += 1
            continue
        return t, rejected


def orthogonal_pair(rng: SplitMix64, kind: AlgebraKind):
    """Gram-Schmidt pair ``F1 . F2 = 0`` in the kind's metric whose zero sets meet."""
    sig = kind.signature
    rejected = 0
    while True:
        a = rng.uniform(3)
        b = rng.uniform(3)
        na = float(dot(sig, a, a))
        if abs(na) < 0.05 * float(a @ a) or float(a @ a) < 1e-2:
            rejected += 1
            continue
        b = b - float(dot(sig, a, b)) / na * a
        if float(b @ b) < 1e-2:
            rejected += 1
            continue
        F1, F2 = Harmonic(kind, a), Harmonic(kind, b)
        d = cross3(a, b)
        n2 = float(dot(sig, d, d))
        e2 = float(d @ d)
        if kind is AlgebraKind.PSEUDOSPHERE and n2 > -_OFF_CONE * e2:
            rejected += 1
            continue
        if kind is AlgebraKind.DESITTER and n2 < _OFF_CONE * e2:
            rejected += 1
            continue
        return F1, F2, rejected


def random_conic(rng: SplitMix64) -> pj.Conic:
    while True:
        m = rng.uniform((3, 3))
        m = (m + m.T) / 2
        if abs(np.linalg.det(m)) > 0.05:
            return pj.Conic(m)


def random_proj_triangle(rng: SplitMix64, conic: pj.Conic):
    while True:
        verts = [pj.ProjPoint(rng.uniform(3)) for _ in range(3)]
        h = [unit(p.homogeneous) for p in verts]
        if abs(np.linalg.det(np.array(h))) < _MARGIN * 10:
            continue
        try:
            alts = [pj.projective_altitude(conic, verts, i) for i in range(3)]
        except DegenerateGeometryError:
            continue
        a = [unit(l.covector) for l in alts]
        if min(np.linalg.norm(cross3(a[i], a[j])) for i, j in ((0, 1), (1, 2), (2, 0))) < _MARGIN:
            continue
        return verts


def random_pappus(rng: SplitMix64) -> pj.PappusConfig:
    """Two random lines with three random points each, affine, well separated."""
    while True:
        try:
            anchors = rng.uniform((2, 2, 2), -2.0, 2.0)
            params = rng.uniform((2, 3), -2.0, 2.0)
            triples = []
            for (p0, p1), ts in zip(anchors, params):
                d = p1 - p0
                if np.linalg.norm(d) < 0.2 or min(abs(ts[i] - ts[j]) for i, j in ((0, 1), (1, 2), (0, 2))) < 0.1:
                    raise DegenerateGeometryError("clustered")
                triples.append([pj.ProjPoint.affine(*(p0 + t * d)) for t in ts])
            cfg = pj.PappusConfig.from_points(*triples)
            off = [cfg.l2.residual(p) for p in cfg.a] + [cfg.l1.residual(p) for p in cfg.b]
            if min(off) < 1e-2:
                raise DegenerateGeometryError("point near the other line")
            c = pj.pappus_points(cfg)
            joins = [pj.join(cfg.a[j], cfg.b[k]) for j in range(3) for k in range(3) if j != k]
            if min(proportional_residual(l.covector, m.covector) for l in joins for m in joins if l is not m) < _MARGIN:
                raise DegenerateGeometryError("near-parallel construction lines")
            if min(proportional_residual(c[i].homogeneous, c[j].homogeneous) for i, j in ((0, 1), (1, 2), (0, 2))) < _MARGIN:
                raise DegenerateGeometryError("Pappus points nearly coincide")
            return cfg
        except DegenerateGeometryError:
            continue


def random_tomihisa_points(rng: SplitMix64) -> list:
    while True:
        pts = [pj.ProjPoint(rng.uniform(3)) for _ in range(5)]
        try:
            lines = ids.tomihisa_geometric_objects(pts)
        except DegenerateGeometryError:
            continue
        a = [unit(l.covector) for l in lines]
        if min(np.linalg.norm(cross3(a[i], a[j])) for i, j in ((0, 1), (1, 2), (2, 0))) < _MARGIN:
            continue
        return pts


def random_tomihisa_lines(rng: SplitMix64) -> list:
    while True:
        lines = [pj.ProjLine(rng.uniform(3)) for _ in range(5)]
        try:
            pts = ids.tomihisa_geometric_objects(lines)
        except DegenerateGeometryError:
            continue
        a = [unit(p.homogeneous) for p in pts]
        if min(np.linalg.norm(cross3(a[i], a[j])) for i, j in ((0, 1), (1, 2), (2, 0))) < _MARGIN:
            continue
        return lines


# -- geometric suites -------------------------------------------------------


def suite_bracket_law(seed: int, trials: int) -> dict:
    out = {}
    for kind in AlgebraKind:
        worst = 0.0
        for t in range(trials):
            rng = trial_rng(seed, "bracket_law", t, list(AlgebraKind).index(kind))
            F = Harmonic(kind, rng.uniform(3))
            G = Harmonic(kind, rng.uniform(3))
            H = poisson_algebraic(F, G)
            for _ in range(10):
                s = _random_chart_point(rng, kind)
                worst = max(worst, abs(poisson_numeric(F, G, s) - eval_harmonic(H, s)))
        out[kind.value] = worst
    return out


def _random_chart_point(rng: SplitMix64, kind: AlgebraKind) -> SurfaceCoord:
    a, b = rng.uniform(2, 0.0, 1.0)
    if kind is AlgebraKind.SPHERE:
        return SurfaceCoord(0.05 + (np.pi - 0.1) * a, 2 * np.pi * b)
    if kind is AlgebraKind.PSEUDOSPHERE:
        return SurfaceCoord(0.05 + 1.95 * a, 2 * np.pi * b)
    if kind is AlgebraKind.DESITTER:
        return SurfaceCoord(-2.0 + 4.0 * a, 2 * np.pi * b)
    return SurfaceCoord(-1.0 + 2.0 * a, -1.0 + 2.0 * b)


def suite_orthogonality(seed: int, trials: int) -> dict:
    out = {}
    for sub, kind in enumerate(sf.SURFACE_KINDS):
        worst = 0.0
        for t in range(trials):
            F1, F2, _ = orthogonal_pair(trial_rng(seed, "orthogonality", t, sub), kind)
            worst = max(worst, abs(sf.orthogonality_residual(F1, F2)))
        out[kind.value] = worst
    return out


def orthocenter_residuals(t: sf.Triangle) -> tuple:
    """``(pairwise meet disagreement, dual-triangle disagreement)``."""
    concurrency = sf.concurrency_residual(t)
    h = sf.altitude_meets(t)[0]
    hd = sf.altitude_meets(t.dual_triangle())[0]
    return concurrency, proportional_residual(h, hd)


def suite_orthocenter(seed: int, trials: int) -> dict:
    out = {}
    for sub, kind in enumerate(sf.SURFACE_KINDS):
        worst = 0.0
        for t in range(trials):
            tri, _ = random_proper_triangle(trial_rng(seed, "orthocenter", t, sub), kind)
            worst = max(worst, *orthocenter_residuals(tri))
        out[kind.value] = worst
    return out


def eh_residuals(v: np.ndarray) -> float:
    p, l = pj.ProjPoint(v), pj.ProjLine(v)
    r1 = proportional_residual(pj.dual_E(p).covector, pj.eh_reflect(pj.dual_H(p)).covector)
    r2 = proportional_residual(pj.dual_E(l).homogeneous, pj.eh_reflect(pj.dual_H(l)).homogeneous)
    return max(r1, r2)


def suite_eh(seed: int, trials: int) -> dict:
    X = uniform_block(derive_seed(seed, _SUITE_ID["eh_duality"], 0), 0, 3 * trials).reshape(trials, 3)
    worst = 0.0
    for v in X:
        if np.any(v):
            worst = max(worst, eh_residuals(v))
    return {"all": worst}


def suite_conic_altitudes(seed: int, trials: int) -> dict:
    worst = 0.0
    for t in range(trials):
        rng = trial_rng(seed, "conic_altitudes", t)
        c = random_conic(rng)
        verts = random_proj_triangle(rng, c)
        worst = max(worst, pj.projective_altitude_concurrency(c, verts))
    return {"all": worst}


def suite_tomihisa_geometric(seed: int, trials: int) -> dict:
    wp = wl = 0.0
    for t in range(trials):
        wp = max(wp, ids.tomihisa_geometric(random_tomihisa_points(trial_rng(seed, "tomihisa_geometric", t, 0))))
        wl = max(wl, ids.tomihisa_geometric(random_tomihisa_lines(trial_rng(seed, "tomihisa_geometric", t, 1))))
    return {"points": wp, "lines": wl}


def pappus_residuals(cfg: pj.PappusConfig) -> tuple:
    direct, _ = pj.pappus_check(cfg)
    (A, B, C), (D, E, H) = cfg.a, cfg.b
    via = ids.pappus_via_tomihisa(A, B, C, D, E, H)
    return direct, via.residual, via.pappus_residual, via.C_residual, via.H_residual


def suite_pappus(seed: int, trials: int) -> dict:
    direct = via = 0.0
    for t in range(trials):
        r = pappus_residuals(random_pappus(trial_rng(seed, "pappus", t)))
        direct = max(direct, r[0])
        via = max(via, *r[1:])
    return {"direct": direct, "tomihisa": via}


_GEOMETRIC = {
    "bracket_law": suite_bracket_law,
    "orthogonality": suite_orthogonality,
    "orthocenter": suite_orthocenter,
    "eh_duality": suite_eh,
    "conic_altitudes": suite_conic_altitudes,
    "tomihisa_geometric": suite_tomihisa_geometric,
    "pappus": suite_pappus,
}


def run_verify(cfg: VerifyConfig) -> dict:
    """Run the selected suites and build the report (a JSON-ready dict)."""
    suites = {}
    passed = True
    for name in cfg.suites:
        tol = cfg.tolerance(name)
        if name in IDENTITY_SUITES:
            results = {}
            for ctx in cfg.contexts:
                ctx_index = ids.ALL_CONTEXTS.index(ctx)
                X = identity_operands(cfg.seed, name, ctx_index, cfg.trials)
                results[ids.context_label(ctx)] = float(np.max(identity_residuals(name, ctx, X)))
        else:
            results = _GEOMETRIC[name](cfg.seed, cfg.trials)
        entry = {
            "tolerance": tol,
            "max_residual": {k: float(v) for k, v in results.items()},
        }
        entry["pass"] = all(v < tol for v in results.values())
        passed = passed and entry["pass"]
        suites[name] = entry
    return {
        "generator": "splitmix64",
        "version": __version__,
        "seed": cfg.seed,
        "trials": cfg.trials,
        "contexts": [ids.context_label(c) for c in cfg.contexts],
        "suites": suites,
        "pass": passed,
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"

