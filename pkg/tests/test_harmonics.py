import numpy as np
import pytest
import sympy as sp

from poisson_geom.algebra import EUCLIDEAN, HYPERBOLIC, dot
from poisson_geom.errors import ChartSingularityError, KindMismatchError, UsageError
from poisson_geom.harmonics import (
    AlgebraKind,
    Harmonic,
    QuadraticForm,
    SurfaceCoord,
    basis_values,
    discriminant_scalar,
    eval_harmonic,
    gram_matrix,
    l2_inner,
    parse_kind,
    poisson_algebraic,
    poisson_numeric,
    quadratic_convert,
    quadratic_from_vec3,
)

S, L, D, Q = AlgebraKind.SPHERE, AlgebraKind.PSEUDOSPHERE, AlgebraKind.DESITTER, AlgebraKind.QUADRATIC


def f(kind, i):
    return Harmonic.basis(kind, i)


# Symbolic oracle: chart basis and bracket written out independently, derivatives by sympy.
_a, _b = sp.symbols("a b", real=True)
_X = sp.symbols("X0:3", real=True)
_Y = sp.symbols("Y0:3", real=True)
_CHARTS = {
    S: ((sp.sin(_a) * sp.cos(_b), sp.sin(_a) * sp.sin(_b), sp.cos(_a)), 1 / sp.sin(_a)),
    L: ((sp.sinh(_a) * sp.cos(_b), sp.sinh(_a) * sp.sin(_b), sp.cosh(_a)), -1 / sp.sinh(_a)),
    D: ((sp.cosh(_a) * sp.cos(_b), sp.cosh(_a) * sp.sin(_b), sp.sinh(_a)), 1 / sp.cosh(_a)),
    Q: ((2 * _a * _b, _a**2 - _b**2, _a**2 + _b**2), sp.Integer(1)),
}
_ORACLE = {}


def symbolic_bracket(kind):
    if kind not in _ORACLE:
        basis, pref = _CHARTS[kind]
        F = sum(x * g for x, g in zip(_X, basis))
        G = sum(y * g for y, g in zip(_Y, basis))
        expr = pref * (sp.diff(F, _a) * sp.diff(G, _b) - sp.diff(F, _b) * sp.diff(G, _a))
        _ORACLE[kind] = sp.lambdify((_X, _Y, _a, _b), expr, "numpy")
    return _ORACLE[kind]


def random_coord(rng, kind):
    if kind is S:
        return SurfaceCoord(rng.uniform(0.2, np.pi - 0.2), rng.uniform(0, 2 * np.pi))
    if kind is Q:
        return SurfaceCoord(*rng.uniform(-1, 1, 2))
    return SurfaceCoord(rng.uniform(0.2, 1.5), rng.uniform(0, 2 * np.pi))


def test_eval_examples():
    assert eval_harmonic(f(S, 2), SurfaceCoord(1e-9, 0.0)) == pytest.approx(1.0)
    assert eval_harmonic(f(L, 2), SurfaceCoord(0.0, 0.3)) == 1.0
    assert eval_harmonic(f(Q, 0), SurfaceCoord(1.0, 1.0)) == 2.0
    with pytest.raises(ChartSingularityError):
        eval_harmonic(f(S, 0), SurfaceCoord(np.pi, 0.0))
    with pytest.raises(UsageError):
        eval_harmonic(f(S, 0), SurfaceCoord(-0.1, 0.0))


@pytest.mark.parametrize(
    "kind, i, j, expected",
    [
        (S, 0, 1, [0, 0, 1]),
        (S, 1, 2, [1, 0, 0]),
        (S, 2, 0, [0, 1, 0]),
        (L, 0, 1, [0, 0, -1]),
        (L, 1, 2, [1, 0, 0]),
        (L, 2, 0, [0, 1, 0]),
        (D, 0, 1, [0, 0, 1]),
        (D, 1, 2, [-1, 0, 0]),
        (D, 2, 0, [0, -1, 0]),
        (Q, 0, 1, [0, 0, -4]),
        (Q, 1, 2, [4, 0, 0]),
        (Q, 2, 0, [0, 4, 0]),
    ],
)
def test_basis_bracket_tables(kind, i, j, expected):
    got = poisson_algebraic(f(kind, i), f(kind, j))
    np.testing.assert_array_equal(got.coeffs, expected)
    np.testing.assert_array_equal(poisson_algebraic(f(kind, j), f(kind, i)).coeffs, -np.array(expected))


def test_law_definitions(rng):
    from conftest import structure_cross

    u, v = rng.uniform(-1, 1, (2, 3))
    laws = {S: structure_cross((1, 1, 1), u, v), L: structure_cross((1, 1, -1), u, v)}
    laws[D] = -laws[L]
    laws[Q] = 4 * laws[L]
    for kind, want in laws.items():
        np.testing.assert_allclose(poisson_algebraic(Harmonic(kind, u), Harmonic(kind, v)).coeffs, want, atol=1e-15)


def test_kind_mismatch():
    with pytest.raises(KindMismatchError):
        poisson_algebraic(f(S, 0), f(L, 1))
    with pytest.raises(KindMismatchError):
        l2_inner(f(S, 0), f(Q, 0))


def test_numeric_examples(rng):
    assert poisson_numeric(f(S, 0), f(S, 1), SurfaceCoord(np.pi / 2, 0.0)) == pytest.approx(0.0, abs=1e-15)
    p2, q2 = Harmonic(Q, quadratic_convert(QuadraticForm(1, 0, 0))), Harmonic(Q, quadratic_convert(QuadraticForm(0, 0, 1)))
    for p, q in rng.uniform(-2, 2, (10, 2)):
        assert poisson_numeric(p2, q2, SurfaceCoord(p, q)) == pytest.approx(2 * p * 2 * q, abs=1e-14)
    assert poisson_numeric(p2, q2, SurfaceCoord(1.0, 1.0)) == pytest.approx(4.0)
    F, G = Harmonic(L, rng.uniform(-1, 1, 3)), Harmonic(L, rng.uniform(-1, 1, 3))
    s = SurfaceCoord(0.7, 1.1)
    assert abs(poisson_numeric(F, G, s) - eval_harmonic(poisson_algebraic(F, G), s)) < 1e-10


@pytest.mark.parametrize("kind", [S, L, D, Q])
def test_numeric_matches_symbolic_oracle(kind, rng):
    oracle = symbolic_bracket(kind)
    for _ in range(50):
        u, v = rng.uniform(-1, 1, (2, 3))
        s = random_coord(rng, kind)
        want = float(oracle(tuple(u), tuple(v), s.u1, s.u2))
        assert poisson_numeric(Harmonic(kind, u), Harmonic(kind, v), s) == pytest.approx(want, abs=1e-12)


@pytest.mark.parametrize("kind", [S, L, D, Q])
def test_closure_spot_check(kind, rng):
    F, G = Harmonic(kind, rng.uniform(-1, 1, 3)), Harmonic(kind, rng.uniform(-1, 1, 3))
    H = poisson_algebraic(F, G)
    assert H.kind is kind
    for _ in range(10):
        s = random_coord(rng, kind)
        assert abs(poisson_numeric(F, G, s) - eval_harmonic(H, s)) < 1e-10


def test_chart_singularities():
    with pytest.raises(ChartSingularityError):
        poisson_numeric(f(S, 0), f(S, 1), SurfaceCoord(1e-12, 0.0))
    with pytest.raises(ChartSingularityError):
        poisson_numeric(f(L, 0), f(L, 1), SurfaceCoord(0.0, 0.0))


@pytest.mark.parametrize("kind, target", [(S, 1.0), (L, -1.0), (D, 1.0), (Q, 0.0)])
def test_basis_sum_identities(kind, target, rng):
    sig = EUCLIDEAN if kind is S else HYPERBOLIC
    for _ in range(100):
        v = basis_values(kind, random_coord(rng, kind))
        assert abs(dot(sig, v, v) - target) < 1e-12
        if kind is Q:
            assert v[2] >= 0


def test_l2_gram_and_examples():
    assert np.abs(gram_matrix() - np.eye(3)).max() < 1e-12
    assert l2_inner(f(S, 0), f(S, 0)) == pytest.approx(1.0, abs=1e-12)
    assert abs(l2_inner(f(S, 0), f(S, 1))) < 1e-12
    F = Harmonic(S, [1.0, 2.0, 3.0])
    assert l2_inner(F, F) == pytest.approx(14.0, abs=1e-11)


def _midpoint_l2(u, v, n=400):
    # Independent product midpoint rule in (theta, phi).
    th = (np.arange(n) + 0.5) * np.pi / n
    ph = (np.arange(2 * n) + 0.5) * np.pi / n
    T, P = np.meshgrid(th, ph, indexing="ij")
    x = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)])
    integrand = np.tensordot(u, x, 1) * np.tensordot(v, x, 1) * np.sin(T)
    return 3 / (4 * np.pi) * integrand.sum() * (np.pi / n) ** 2


def test_l2_matches_dot_and_independent_rule(rng):
    for _ in range(20):
        u, v, w = rng.uniform(-1, 1, (3, 3))
        F, G, H = (Harmonic(S, x) for x in (u, v, w))
        assert abs(l2_inner(F, G) - dot(EUCLIDEAN, u, v)) < 1e-10
        assert l2_inner(F, G) == pytest.approx(l2_inner(G, F), abs=1e-15)
        assert abs(l2_inner(Harmonic(S, 2 * u + w), G) - 2 * l2_inner(F, G) - l2_inner(H, G)) < 1e-12
    u, v = rng.uniform(-1, 1, (2, 3))
    assert abs(_midpoint_l2(u, v) - l2_inner(Harmonic(S, u), Harmonic(S, v))) < 1e-4


def test_quadratic_conversion():
    np.testing.assert_array_equal(quadratic_convert(QuadraticForm(1, 0, 1)), [0, 0, 1])
    np.testing.assert_array_equal(quadratic_convert(QuadraticForm(1, 0, 0)), [0, 0.5, 0.5])
    assert quadratic_from_vec3(quadratic_convert(QuadraticForm(2, -3, 5))) == QuadraticForm(2, -3, 5)


def test_quadratic_basis_evaluates_as_forms(rng):
    # F = a p^2 + 2b pq + c q^2 evaluated directly vs. through the harmonic basis.
    a, b, c = rng.uniform(-1, 1, 3)
    F = Harmonic(Q, quadratic_convert(QuadraticForm(a, b, c)))
    for p, q in rng.uniform(-1, 1, (10, 2)):
        assert eval_harmonic(F, SurfaceCoord(p, q)) == pytest.approx(a * p * p + 2 * b * p * q + c * q * q, abs=1e-14)


def test_discriminant_scalar(rng):
    circle, p2, q2 = QuadraticForm(1, 0, 1), QuadraticForm(1, 0, 0), QuadraticForm(0, 0, 1)
    assert discriminant_scalar(circle, circle) == -1 == dot(HYPERBOLIC, [0, 0, 1], [0, 0, 1])
    assert discriminant_scalar(p2, p2) == 0
    assert discriminant_scalar(p2, q2) == -0.5
    for _ in range(100):
        q, r = QuadraticForm(*rng.uniform(-1, 1, 3)), QuadraticForm(*rng.uniform(-1, 1, 3))
        want = dot(HYPERBOLIC, quadratic_convert(q), quadratic_convert(r))
        assert abs(discriminant_scalar(q, r) - want) <= 1e-14 * max(1.0, abs(want))


def test_parse_kind():
    assert parse_kind("DeSitter") is D
    with pytest.raises(UsageError):
        parse_kind("torus")
