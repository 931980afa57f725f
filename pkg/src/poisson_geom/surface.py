"""Point pairs, geodesics, triangles and altitudes on the sphere and on the
hyperboloids.

A point pair ``(a, -a)`` is stored through a canonical representative; a
geodesic is the section of the surface by the plane metric-orthogonal to its
``normal``. Duality swaps the two roles of one vector.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import cross3, dot, proportional_residual, unit, vec3
from .errors import (
    ConeVectorError,
    DegenerateInputError,
    ImproperTriangleError,
    KindMismatchError,
    NoIntersectionError,
    UsageError,
)
from .harmonics import AlgebraKind, Harmonic, SurfaceCoord, bracket_law, gradient

SURFACE_KINDS = (AlgebraKind.SPHERE, AlgebraKind.PSEUDOSPHERE, AlgebraKind.DESITTER)
CONE_TOL = 1e-9
PROPER_TOL = 1e-9
_INDEPENDENT_TOL = 1e-12


def _check_surface_kind(kind: AlgebraKind) -> None:
    if kind not in SURFACE_KINDS:
        raise KindMismatchError(f"{kind.name} is not a surface kind")


def _family(kind: AlgebraKind) -> AlgebraKind:
    # Hyperbolic surface kinds share the metric and, up to sign, the law.
    return AlgebraKind.SPHERE if kind is AlgebraKind.SPHERE else AlgebraKind.PSEUDOSPHERE


def canonical_sign(v: np.ndarray) -> np.ndarray:
    """Pick the member of ``{v, -v}`` whose first nonzero of (z, y, x) is positive."""
    for i in (2, 1, 0):
        if v[i] > 0:
            return v
        if v[i] < 0:
            return -v
    return v


@dataclass(frozen=True, eq=False)
class SurfacePoint:
    kind: AlgebraKind
    rep: np.ndarray

    def same_as(self, other: "SurfacePoint", tol: float = 1e-12) -> bool:
        if _family(self.kind) is not _family(other.kind):
            return False
        d = min(np.linalg.norm(self.rep - other.rep), np.linalg.norm(self.rep + other.rep))
        return bool(d <= tol * max(1.0, np.linalg.norm(self.rep)))


@dataclass(frozen=True, eq=False)
class Geodesic:
    kind: AlgebraKind
    normal: np.ndarray

    def __post_init__(self):
        n = vec3(self.normal)
        if not np.any(n):
            raise DegenerateInputError("geodesic normal must be nonzero")
        object.__setattr__(self, "normal", n)

    def residual(self, x) -> float:
        """Metric-orthogonality of ``x`` to the normal, scale-free."""
        return abs(float(dot(self.kind.signature, unit(self.normal), unit(x))))

    def contains(self, p: SurfacePoint, tol: float = 1e-12) -> bool:
        return self.residual(p.rep) <= tol

    def same_as(self, other: "Geodesic", tol: float = 1e-12) -> bool:
        return _family(self.kind) is _family(other.kind) and (
            proportional_residual(self.normal, other.normal) <= tol
        )


def surface_point(kind: AlgebraKind, v) -> SurfacePoint:
    """Normalized canonical representative of the pair through ``v``.

    For the hyperbolic kinds the surface is chosen by the sign of the norm:
    negative lands on the pseudo-sphere, positive on the de Sitter world.
    """
    _check_surface_kind(kind)
    v = vec3(v)
    e2 = float(np.dot(v, v))
    if e2 == 0.0:
        raise UsageError("the zero vector defines no point pair")
    n2 = float(dot(kind.signature, v, v))
    if kind is not AlgebraKind.SPHERE:
        if abs(n2) <= CONE_TOL * e2:
            raise ConeVectorError(f"{v} lies on the light cone")
        kind = AlgebraKind.PSEUDOSPHERE if n2 < 0 else AlgebraKind.DESITTER
    rep = canonical_sign(v / np.sqrt(abs(n2)))
    rep.setflags(write=False)
    return SurfacePoint(kind, rep)


def dual(x):
    """Point pair -> dual geodesic, geodesic -> dual point pair."""
    if isinstance(x, SurfacePoint):
        return Geodesic(x.kind, x.rep.copy())
    if isinstance(x, Geodesic):
        return surface_point(x.kind, x.normal)
    raise UsageError(f"cannot dualize {type(x).__name__}")


def _law(kind: AlgebraKind, u, v) -> np.ndarray:
    return bracket_law(kind, u, v)


def _independent(u, v, w) -> bool:
    scale = np.linalg.norm(u) * np.linalg.norm(v)
    return bool(np.linalg.norm(w) > _INDEPENDENT_TOL * scale)


def geodesic_through(p: SurfacePoint, q: SurfacePoint) -> Geodesic:
    if _family(p.kind) is not _family(q.kind):
        raise KindMismatchError("points live in different geometries")
    n = _law(p.kind, p.rep, q.rep)
    if not _independent(p.rep, q.rep, n):
        raise DegenerateInputError("coincident or antipodal point pairs")
    return Geodesic(p.kind, n)


def meet(g1: Geodesic, g2: Geodesic) -> SurfacePoint:
    if _family(g1.kind) is not _family(g2.kind):
        raise KindMismatchError("geodesics live in different geometries")
    d = _law(g1.kind, g1.normal, g2.normal)
    if not _independent(g1.normal, g2.normal, d):
        raise DegenerateInputError("geodesics coincide")
    return surface_point(g1.kind, d)


# -- orthogonality of zero sets ---------------------------------------------

_SINGULAR_CHART = 1e-6


def _zero_set_crossing(F1: Harmonic, F2: Harmonic) -> np.ndarray:
    # F(x) = coeffs . x (plain dot), so each zero set is a Euclidean plane.
    kind = F1.kind
    d = cross3(F1.coeffs, F2.coeffs)
    e2 = float(np.dot(d, d))
    if e2 <= 1e-24 * np.dot(F1.coeffs, F1.coeffs) * np.dot(F2.coeffs, F2.coeffs):
        raise NoIntersectionError("zero sets coincide")
    n2 = float(dot(kind.signature, d, d))
    if kind is AlgebraKind.SPHERE:
        return d / np.sqrt(n2)
    if kind is AlgebraKind.PSEUDOSPHERE:
        if n2 >= -CONE_TOL * e2:
            raise NoIntersectionError("zero sets do not meet on the pseudo-sphere")
        x = d / np.sqrt(-n2)
        return x if x[2] > 0 else -x
    if n2 <= CONE_TOL * e2:
        raise NoIntersectionError("zero sets do not meet on the one-sheeted hyperboloid")
    return d / np.sqrt(n2)


def chart_coords(kind: AlgebraKind, x) -> SurfaceCoord:
    """Chart coordinates of a point of the surface."""
    x = np.asarray(x, dtype=float)
    phi = float(np.arctan2(x[1], x[0]))
    if kind is AlgebraKind.SPHERE:
        return SurfaceCoord(float(np.arctan2(np.hypot(x[0], x[1]), x[2])), phi)
    if kind is AlgebraKind.PSEUDOSPHERE:
        return SurfaceCoord(float(np.arcsinh(np.hypot(x[0], x[1]))), phi)
    if kind is AlgebraKind.DESITTER:
        return SurfaceCoord(float(np.arcsinh(x[2])), phi)
    raise KindMismatchError(f"{kind.name} has no surface chart")


def chart_metric(kind: AlgebraKind, s: SurfaceCoord) -> np.ndarray:
    """Induced metric in the chart: sphere, pseudo-sphere, de Sitter (indefinite)."""
    if kind is AlgebraKind.SPHERE:
        return np.diag([1.0, np.sin(s.u1) ** 2])
    if kind is AlgebraKind.PSEUDOSPHERE:
        return np.diag([1.0, np.sinh(s.u1) ** 2])
    return np.diag([-1.0, np.cosh(s.u1) ** 2])


def _chart_residual(F1: Harmonic, F2: Harmonic, x: np.ndarray) -> float:
    kind = F1.kind
    s = chart_coords(kind, x)
    G = chart_metric(kind, s)
    tangents = []
    for F in (F1, F2):
        dF = gradient(F, s)
        tangents.append(np.array([dF[1], -dF[0]]))  # kernel of dF
    t1, t2 = tangents
    return _metric_cosine(lambda a, b: a @ G @ b, t1, t2)


def _ambient_residual(F1: Harmonic, F2: Harmonic, x: np.ndarray) -> float:
    kind = F1.kind
    sig = kind.signature
    surface_normal = sig.signs * x  # Euclidean gradient of the quadric
    t1 = cross3(F1.coeffs, surface_normal)
    t2 = cross3(F2.coeffs, surface_normal)
    return _metric_cosine(lambda a, b: dot(sig, a, b), t1, t2)


def _metric_cosine(g, t1, t2) -> float:
    n1 = abs(float(g(t1, t1)))
    n2 = abs(float(g(t2, t2)))
    if n1 * n2 <= 1e-24:
        # Null tangent on the indefinite surface: fall back to Euclidean lengths.
        n1, n2 = float(t1 @ t1), float(t2 @ t2)
    return float(g(t1, t2)) / np.sqrt(n1 * n2)


def orthogonality_residual(F1: Harmonic, F2: Harmonic) -> float:
    """Metric inner product of the unit tangents of ``F1 = 0`` and ``F2 = 0``
    at a common point of the surface.

    Tangents come from the chart derivatives and the induced chart metric;
    at the chart singularity the same quantity is computed in R^3.
    """
    if F1.kind is not F2.kind:
        raise KindMismatchError("harmonics of different kinds")
    _check_surface_kind(F1.kind)
    x = _zero_set_crossing(F1, F2)
    s = chart_coords(F1.kind, x)
    if F1.kind is AlgebraKind.SPHERE:
        singular = abs(np.sin(s.u1)) < _SINGULAR_CHART
    elif F1.kind is AlgebraKind.PSEUDOSPHERE:
        singular = abs(np.sinh(s.u1)) < _SINGULAR_CHART
    else:
        singular = False
    if singular:
        return _ambient_residual(F1, F2, x)
    return _chart_residual(F1, F2, x)


def orthogonality_residual_ambient(F1: Harmonic, F2: Harmonic) -> float:
    """Chart-free version of :func:`orthogonality_residual`."""
    if F1.kind is not F2.kind:
        raise KindMismatchError("harmonics of different kinds")
    _check_surface_kind(F1.kind)
    return _ambient_residual(F1, F2, _zero_set_crossing(F1, F2))


# -- triangles --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Triangle:
    kind: AlgebraKind
    vertices: tuple

    def __post_init__(self):
        _check_surface_kind(self.kind)
        verts = tuple(vec3(v) for v in self.vertices)
        if len(verts) != 3:
            raise UsageError("a triangle has three vertices")
        for i, j in itertools.combinations(range(3), 2):
            if not _independent(verts[i], verts[j], _law(self.kind, verts[i], verts[j])):
                raise DegenerateInputError(f"vertices {i} and {j} are dependent")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_points(cls, a: SurfacePoint, b: SurfacePoint, c: SurfacePoint) -> "Triangle":
        return cls(_family(a.kind), (a.rep, b.rep, c.rep))

    def bracket(self, u, v) -> np.ndarray:
        return _law(self.kind, u, v)

    def side(self, i: int) -> Geodesic:
        """Geodesic through the two vertices other than ``i``."""
        j, k = (i + 1) % 3, (i + 2) % 3
        return Geodesic(self.kind, self.bracket(self.vertices[j], self.vertices[k]))

    def dual_triangle(self) -> "Triangle":
        """Triangle cut out by the three geodesics dual to the vertices."""
        return Triangle(self.kind, tuple(self.side(i).normal for i in range(3)))


def nested_brackets(t: Triangle) -> dict:
    """``{{F_i, F_j}, F_k}`` for all six orderings, keyed by (i, j, k)."""
    F = t.vertices
    return {
        (i, j, k): t.bracket(t.bracket(F[i], F[j]), F[k])
        for i, j, k in itertools.permutations(range(3))
    }


def properness_margin(t: Triangle) -> float:
    """Smallest nested bracket norm relative to the vertex norms (cubic scale)."""
    scale = float(np.prod([np.linalg.norm(v) for v in t.vertices]))
    return min(float(np.linalg.norm(b)) for b in nested_brackets(t).values()) / scale


def is_proper(t: Triangle, tol: float = PROPER_TOL) -> bool:
    return properness_margin(t) > tol


def altitude(t: Triangle, i: int) -> Geodesic:
    """Geodesic through vertex ``i`` and the pole of the opposite side."""
    if not is_proper(t):
        raise ImproperTriangleError("a vertex is the pole of its opposite side")
    F = t.vertices
    j, k = (i + 1) % 3, (i + 2) % 3
    return Geodesic(t.kind, t.bracket(t.bracket(F[j], F[k]), F[i]))


def altitude_meets(t: Triangle) -> list:
    """Directions of the three pairwise intersections of the altitudes."""
    alts = [altitude(t, i).normal for i in range(3)]
    return [t.bracket(alts[a], alts[b]) for a, b in ((0, 1), (1, 2), (2, 0))]


def orthocenter(t: Triangle) -> SurfacePoint:
    """Common pair of the three altitudes (meet of the first two)."""
    g1, g2 = altitude(t, 0), altitude(t, 1)
    return meet(g1, g2)


def concurrency_residual(t: Triangle) -> float:
    """Largest sine between the pairwise altitude meets."""
    m = altitude_meets(t)
    return max(proportional_residual(m[a], m[b]) for a, b in ((0, 1), (1, 2), (2, 0)))


def feet_coplanarity(t: Triangle) -> float:
    """Normalized volume of the three points ``{{F_j,F_k},F_i}``; zero by Jacobi."""
    F = t.vertices
    c = [unit(t.bracket(t.bracket(F[(i + 1) % 3], F[(i + 2) % 3]), F[i])) for i in range(3)]
    return abs(float(np.linalg.det(np.array(c))))
