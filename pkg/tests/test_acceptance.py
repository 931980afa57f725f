"""Acceptance criteria 1-11, each pinned at its stated tolerance and runtime.

Every test prints (and records for the terminal summary) one PASS/FAIL line.
"""
import functools
import json
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from poisson_geom import identities as ids
from poisson_geom import projective as pj
from poisson_geom import surface as sf
from poisson_geom.algebra import proportional_residual
from poisson_geom.errors import DegenerateInputError, ImproperTriangleError
from poisson_geom.harmonics import (
    AlgebraKind,
    Harmonic,
    SurfaceCoord,
    eval_harmonic,
    gram_matrix,
    poisson_algebraic,
    poisson_numeric,
)
from poisson_geom.verify import (
    identity_operands,
    identity_residuals,
    orthocenter_residuals,
    pappus_residuals,
    random_pappus,
    suite_bracket_law,
    suite_conic_altitudes,
    suite_eh,
    suite_orthogonality,
    suite_orthocenter,
    suite_tomihisa_geometric,
    trial_rng,
)

SEED = 42


def criterion(number, title, budget=None):
    """Time the test body, enforce the runtime budget, record one result line."""

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            t0 = time.perf_counter()
            status, detail = "FAIL", ""
            try:
                detail = fn(*args, **kwargs) or ""
                elapsed = time.perf_counter() - t0
                if budget is not None:
                    assert elapsed < budget, f"runtime {elapsed:.2f}s over budget {budget}s"
                status = "PASS"
            except BaseException as exc:
                detail = (str(exc).splitlines() or [type(exc).__name__])[0][:120]
                raise
            finally:
                elapsed = time.perf_counter() - t0
                limit = f" (budget {budget}s)" if budget is not None else ""
                line = f"[{status}] criterion {number:>2}: {title} | {elapsed:.2f}s{limit} | {detail}"
                print(line)
                ACCEPTANCE_LINES.append((number, line))

        return wrapper

    return deco


def _max_identity(suite, trials, contexts=ids.ALL_CONTEXTS):
    worst = {}
    for ctx in contexts:
        X = identity_operands(SEED, suite, ids.ALL_CONTEXTS.index(ctx), trials)
        worst[ids.context_label(ctx)] = float(np.max(identity_residuals(suite, ctx, X)))
    return worst


@criterion(1, "Jacobi, 12 contexts x 1000 triples, < 1e-12", budget=1.0)
def test_c01_jacobi():
    worst = _max_identity("jacobi", 1000)
    assert len(worst) == 12
    assert max(worst.values()) < 1e-12, worst
    return f"max residual {max(worst.values()):.2e}"


BASIS_TABLE = {
    AlgebraKind.SPHERE: {(0, 1): (2, 1), (1, 2): (0, 1), (2, 0): (1, 1)},
    AlgebraKind.PSEUDOSPHERE: {(0, 1): (2, -1), (1, 2): (0, 1), (2, 0): (1, 1)},
    AlgebraKind.DESITTER: {(0, 1): (2, 1), (1, 2): (0, -1), (2, 0): (1, -1)},
    AlgebraKind.QUADRATIC: {(0, 1): (2, -4), (1, 2): (0, 4), (2, 0): (1, 4)},
}
CHART_POINTS = {
    AlgebraKind.SPHERE: [SurfaceCoord(1.0, 0.5), SurfaceCoord(2.2, 4.0)],
    AlgebraKind.PSEUDOSPHERE: [SurfaceCoord(0.6, 0.5), SurfaceCoord(1.1, 4.0)],
    AlgebraKind.DESITTER: [SurfaceCoord(-0.4, 0.5), SurfaceCoord(0.9, 4.0)],
    AlgebraKind.QUADRATIC: [SurfaceCoord(0.7, -0.3), SurfaceCoord(-0.2, 0.9)],
}


def _table_entry(kind, i, j):
    if i == j:
        return np.zeros(3)
    key, sign = ((i, j), 1) if (i, j) in BASIS_TABLE[kind] else ((j, i), -1)
    k, c = BASIS_TABLE[kind][key]
    out = np.zeros(3)
    out[k] = sign * c
    return out


@criterion(2, "bracket vs law, 200 pairs x 10 points < 1e-10; basis tables < 1e-14", budget=2.0)
def test_c02_bracket_law():
    worst = suite_bracket_law(SEED, 200)
    assert max(worst.values()) < 1e-10, worst
    table_worst = 0.0
    for kind in AlgebraKind:
        equalities = 0
        for i in range(3):
            for j in range(3):
                want = _table_entry(kind, i, j)
                Fi, Fj = Harmonic.basis(kind, i), Harmonic.basis(kind, j)
                got = poisson_algebraic(Fi, Fj).coeffs
                table_worst = max(table_worst, float(np.abs(got - want).max()))
                for s in CHART_POINTS[kind]:
                    num = poisson_numeric(Fi, Fj, s)
                    table_worst = max(table_worst, abs(num - eval_harmonic(Harmonic(kind, want), s)))
                equalities += 1
        assert equalities == 9
    assert table_worst < 1e-14, table_worst
    return f"max law residual {max(worst.values()):.2e}, basis table {table_worst:.2e}"


@criterion(3, "L2 Gram matrix = identity within 1e-12", budget=0.5)
def test_c03_l2_gram():
    err = float(np.abs(gram_matrix() - np.eye(3)).max())
    assert err < 1e-12, err
    return f"max |G - I| {err:.2e}"


@criterion(4, "orthogonal zero sets, 100 pairs per surface < 1e-9", budget=2.0)
def test_c04_orthogonality():
    worst = suite_orthogonality(SEED, 100)
    assert set(worst) == {"sphere", "pseudosphere", "desitter"}
    assert max(worst.values()) < 1e-9, worst
    return f"max residual {max(worst.values()):.2e}"


@criterion(5, "orthocenter, 200 triangles per kind < 1e-9; (e1,e2,e3) improper", budget=3.0)
def test_c05_orthocenter():
    worst = suite_orthocenter(SEED, 200)
    assert max(worst.values()) < 1e-9, worst
    t = sf.Triangle(AlgebraKind.SPHERE, np.eye(3))
    assert not sf.is_proper(t)
    with pytest.raises(ImproperTriangleError):
        sf.altitude(t, 0)
    return f"max concurrency/dual residual {max(worst.values()):.2e}"


@criterion(6, "E-H reflection, 1000 points/lines < 1e-12; a=2 gives -1/2, +1/2 exactly", budget=0.5)
def test_c06_eh():
    worst = suite_eh(SEED, 1000)["all"]
    assert worst < 1e-12
    x_axis = pj.ProjLine([0, 1, 0])
    b = pj.meet(pj.line_of([2, 0, 1], pj.Duality.E), x_axis).xy()[0]
    c = pj.meet(pj.line_of([2, 0, 1], pj.Duality.H), x_axis).xy()[0]
    assert (b, c) == (-0.5, 0.5)
    return f"max residual {worst:.2e}, b={b}, c={c}"


@criterion(7, "conic-absolute altitudes, 100 conics < 1e-9", budget=2.0)
def test_c07_conic_altitudes():
    worst = suite_conic_altitudes(SEED, 100)["all"]
    assert worst < 1e-9
    return f"max concurrency residual {worst:.2e}"


@criterion(8, "Tomihisa, 10^4 trials over 12 contexts < 1e-11; geometric readings < 1e-9", budget=5.0)
def test_c08_tomihisa():
    per_ctx = -(-10_000 // len(ids.ALL_CONTEXTS))
    worst = _max_identity("tomihisa", per_ctx)
    assert per_ctx * len(worst) >= 10_000
    assert max(worst.values()) < 1e-11, worst
    geo = suite_tomihisa_geometric(SEED, 500)
    assert geo["points"] < 1e-9 and geo["lines"] < 1e-9, geo
    return f"max algebraic {max(worst.values()):.2e}, points {geo['points']:.2e}, lines {geo['lines']:.2e}"


@criterion(9, "Razmyslov alternating sum < 1e-10, three-term < 1e-11 x 1000; decomposition < 1e-10 x 500", budget=10.0)
def test_c09_razmyslov():
    r1 = _max_identity("razmyslov1", 1000)
    r2 = _max_identity("razmyslov2", 1000)
    dec = _max_identity("decomposition", 500)
    assert max(r1.values()) < 1e-10, r1
    assert max(r2.values()) < 1e-11, r2
    assert max(dec.values()) < 1e-10, dec
    return f"max alternating {max(r1.values()):.2e}, three-term {max(r2.values()):.2e}, decomposition {max(dec.values()):.2e}"


CONCRETE_PAPPUS = [
    ([[0, 0, 1], [1, 0, 1], [3, 0, 1]], [[0, 1, 1], [2, 1, 1], [3, 1, 1]]),
    ([[1, 0, 1], [2, 0, 1], [3, 0, 1]], [[-1, 1, 1], [-2, 1, 1], [-3, 1, 1]]),
]


@criterion(10, "Pappus direct and via Tomihisa < 1e-9: 2 concrete + 500 random; degenerate rejected", budget=2.0)
def test_c10_pappus():
    worst = 0.0
    for a, b in CONCRETE_PAPPUS:
        worst = max(worst, *pappus_residuals(pj.PappusConfig.from_points(a, b)))
    for t in range(500):
        worst = max(worst, *pappus_residuals(random_pappus(trial_rng(SEED, "pappus", t))))
    assert worst < 1e-9, worst
    (a1, a2, a3), (b1, b2, b3) = CONCRETE_PAPPUS[0]
    with pytest.raises(DegenerateInputError):
        pj.PappusConfig.from_points([a1, a2, a3], [a1, [2, 1, 1], [4, 2, 1]])
    with pytest.raises(DegenerateInputError):
        ids.pappus_via_tomihisa(a1, a1, a3, b1, b2, b3)
    return f"max residual {worst:.2e}"


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "poisson_geom", *args], capture_output=True, check=True).stdout


@criterion(11, "verify --seed 42 and figure pappus are byte-identical across runs")
def test_c11_determinism():
    r1, r2 = _cli("verify", "--seed", "42"), _cli("verify", "--seed", "42")
    assert r1 == r2 and json.loads(r1)["pass"]
    f1, f2 = _cli("figure", "pappus"), _cli("figure", "pappus")
    assert f1 == f2 and f1.startswith(b"<?xml")
    return f"report {len(r1)} bytes, svg {len(f1)} bytes"
