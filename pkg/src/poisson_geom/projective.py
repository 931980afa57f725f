"""Projective plane models: incidence, the H and E dualities, central
reflection, pole-polar with respect to a conic absolute, and Pappus.

Points and lines are homogeneous triples. Incidence is the plain (unsigned)
dot product, and join/meet are the Euclidean cross product, which is
metric-free: it is the pair functional ``z -> det(u, v, z)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .algebra import cross3, pair_functional, proportional_residual, unit, vec3
from .errors import (
    AtInfinityError,
    DegenerateConicError,
    DegenerateInputError,
    EmptyConicError,
    ImproperTriangleError,
    UsageError,
)

_DEGENERATE_TOL = 1e-12
_AFFINE_TOL = 1e-12
ON_CONIC_TOL = 1e-10
INCIDENCE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ProjPoint:
    homogeneous: np.ndarray

    def __post_init__(self):
        v = vec3(self.homogeneous)
        if not np.any(v):
            raise UsageError("homogeneous coordinates must not all vanish")
        object.__setattr__(self, "homogeneous", v)

    @classmethod
    def affine(cls, x: float, y: float) -> "ProjPoint":
        return cls(np.array([x, y, 1.0]))

    def xy(self) -> tuple:
        X, Y, Z = self.homogeneous
        if abs(Z) <= _AFFINE_TOL * np.linalg.norm(self.homogeneous):
            raise AtInfinityError(f"{self.homogeneous} is a point at infinity")
        return (X / Z, Y / Z)

    def same_as(self, other: "ProjPoint", tol: float = 1e-12) -> bool:
        return proportional_residual(self.homogeneous, other.homogeneous) <= tol


@dataclass(frozen=True, eq=False)
class ProjLine:
    """Line ``{p : covector . p = 0}``."""

    covector: np.ndarray

    def __post_init__(self):
        v = vec3(self.covector)
        if not np.any(v):
            raise UsageError("line covector must not vanish")
        object.__setattr__(self, "covector", v)

    def residual(self, p: ProjPoint) -> float:
        return abs(float(np.dot(unit(self.covector), unit(p.homogeneous))))

    def contains(self, p: ProjPoint, tol: float = INCIDENCE_TOL) -> bool:
        return self.residual(p) <= tol

    def same_as(self, other: "ProjLine", tol: float = 1e-12) -> bool:
        return proportional_residual(self.covector, other.covector) <= tol


LINE_AT_INFINITY = ProjLine(np.array([0.0, 0.0, 1.0]))
ORIGIN = ProjPoint(np.array([0.0, 0.0, 1.0]))


def project(v) -> ProjPoint:
    return ProjPoint(v)


class Duality(enum.Enum):
    H = "H"
    E = "E"


def line_of(normal, duality: Duality) -> ProjLine:
    """Projective line of the plane metric-orthogonal to ``normal``."""
    n = vec3(normal)
    if duality is Duality.E:
        return ProjLine(n)
    return ProjLine(n * np.array([1.0, 1.0, -1.0]))


def dual_E(x):
    """Euclidean duality: the same triple read as the other kind of object."""
    if isinstance(x, ProjPoint):
        return ProjLine(x.homogeneous.copy())
    if isinstance(x, ProjLine):
        return ProjPoint(x.covector.copy())
    raise UsageError(f"cannot dualize {type(x).__name__}")


def dual_H(x):
    """Duality inherited from the (+,+,-) metric."""
    flip = np.array([1.0, 1.0, -1.0])
    if isinstance(x, ProjPoint):
        return ProjLine(x.homogeneous * flip)
    if isinstance(x, ProjLine):
        return ProjPoint(x.covector * flip)
    raise UsageError(f"cannot dualize {type(x).__name__}")


def eh_reflect(x):
    """Central reflection about the affine origin."""
    flip = np.array([-1.0, -1.0, 1.0])
    if isinstance(x, ProjPoint):
        return ProjPoint(x.homogeneous * flip)
    if isinstance(x, ProjLine):
        return ProjLine(x.covector * flip)
    raise UsageError(f"cannot reflect {type(x).__name__}")


# -- incidence --------------------------------------------------------------


def _cross_checked(u, v, what: str) -> np.ndarray:
    f = pair_functional(u, v).as_array()
    if np.linalg.norm(f) <= _DEGENERATE_TOL * np.linalg.norm(u) * np.linalg.norm(v):
        raise DegenerateInputError(f"coincident {what}")
    return f


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    return ProjLine(_cross_checked(p.homogeneous, q.homogeneous, "points"))


def meet(l: ProjLine, m: ProjLine) -> ProjPoint:
    return ProjPoint(_cross_checked(l.covector, m.covector, "lines"))


def _det3(a, b, c) -> float:
    return abs(float(np.linalg.det(np.array([unit(a), unit(b), unit(c)]))))


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> float:
    """|det| of the unit-normalized triples; 0 means collinear."""
    return _det3(p.homogeneous, q.homogeneous, r.homogeneous)


def concurrent(l: ProjLine, m: ProjLine, n: ProjLine) -> float:
    return _det3(l.covector, m.covector, n.covector)


# -- conic absolute ---------------------------------------------------------


class Region(enum.Enum):
    L = "L"
    D = "D"
    ON = "ON"


@dataclass(frozen=True, eq=False)
class Conic:
    """Symmetric coefficient matrix; ``p`` is on the conic iff ``p^T C p = 0``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (3, 3) or not np.all(np.isfinite(m)):
            raise UsageError("conic needs a finite 3x3 matrix")
        m = np.triu(m) + np.triu(m, 1).T  # exact symmetry from the upper triangle
        scale = float(np.max(np.abs(m)))
        if scale == 0.0 or abs(np.linalg.det(m)) <= 1e-12 * scale**3:
            raise DegenerateConicError("conic matrix is singular")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_upper(cls, entries) -> "Conic":
        """From ``[c11, c12, c13, c22, c23, c33]``."""
        e = [float(v) for v in entries]
        if len(e) != 6:
            raise UsageError("a conic needs six upper-triangle entries")
        c11, c12, c13, c22, c23, c33 = e
        return cls(np.array([[c11, c12, c13], [c12, c22, c23], [c13, c23, c33]]))

    def upper(self) -> list:
        m = self.matrix
        return [m[0, 0], m[0, 1], m[0, 2], m[1, 1], m[1, 2], m[2, 2]]

    def value(self, p: ProjPoint) -> float:
        v = p.homogeneous
        return float(v @ self.matrix @ v)


UNIT_CIRCLE = Conic(np.diag([1.0, 1.0, -1.0]))


def polar(c: Conic, p: ProjPoint) -> ProjLine:
    return ProjLine(c.matrix @ p.homogeneous)


def pole(c: Conic, l: ProjLine) -> ProjPoint:
    return ProjPoint(np.linalg.solve(c.matrix, l.covector))


def classify_region(c: Conic, p: ProjPoint) -> Region:
    """Which side of the absolute ``p`` is on.

    The form is rescaled to signature (+, +, -); the negative side is the
    disc-like region that holds the foci (L), the positive side is D.
    """
    eig = np.linalg.eigvalsh(c.matrix)
    negatives = int(np.sum(eig < 0))
    if negatives in (0, 3):
        raise EmptyConicError("conic has no real points")
    sign = 1.0 if negatives == 1 else -1.0
    v = p.homogeneous
    val = sign * c.value(p)
    scale = np.max(np.abs(eig)) * float(v @ v)
    if abs(val) <= ON_CONIC_TOL * scale:
        return Region.ON
    return Region.L if val < 0 else Region.D


def conic_line_intersections(c: Conic, l: ProjLine) -> list:
    """Real intersection points of a line with the conic (0, 1 or 2 of them)."""
    # Parametrize the line by two points spanning it.
    n = unit(l.covector)
    a = unit(cross3(n, np.eye(3)[int(np.argmin(np.abs(n)))]))
    b = cross3(n, a)
    C = c.matrix
    A, B, D = a @ C @ a, a @ C @ b, b @ C @ b
    # (s a + t b)^T C (s a + t b) = A s^2 + 2 B s t + D t^2
    disc = B * B - A * D
    scale = max(abs(A), abs(B), abs(D))
    if disc < -1e-14 * scale * scale:
        return []
    disc = max(disc, 0.0)
    if abs(A) >= abs(D):
        roots = [(-B + r) / A for r in (np.sqrt(disc), -np.sqrt(disc))]
        pts = [ProjPoint(s * a + b) for s in roots]
    else:
        roots = [(-B + r) / D for r in (np.sqrt(disc), -np.sqrt(disc))]
        pts = [ProjPoint(a + t * b) for t in roots]
    if disc == 0.0:
        return pts[:1]
    return pts


def projective_altitude(c: Conic, t, i: int) -> ProjLine:
    """Line joining vertex ``i`` with the pole of the opposite side."""
    verts = list(t)
    if len(verts) != 3:
        raise UsageError("a triangle has three vertices")
    j, k = (i + 1) % 3, (i + 2) % 3
    side = join(verts[j], verts[k])
    foot = pole(c, side)
    try:
        return join(verts[i], foot)
    except DegenerateInputError:
        raise ImproperTriangleError(f"vertex {i} is the pole of its opposite side") from None


def projective_altitude_concurrency(c: Conic, t) -> float:
    return concurrent(*(projective_altitude(c, t, i) for i in range(3)))


# -- Pappus -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PappusConfig:
    """Triples ``a`` on ``l1`` and ``b`` on ``l2``."""

    l1: ProjLine
    l2: ProjLine
    a: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a) != 3 or len(self.b) != 3:
            raise UsageError("Pappus needs two triples of points")
        for p in self.a:
            if not self.l1.contains(p):
                raise UsageError("point of the first triple is off its line")
        for p in self.b:
            if not self.l2.contains(p):
                raise UsageError("point of the second triple is off its line")
        corner = None
        if not self.l1.same_as(self.l2):
            corner = meet(self.l1, self.l2)
        pts = list(self.a) + list(self.b)
        for x in range(6):
            if corner is not None and pts[x].same_as(corner, 1e-12):
                raise DegenerateInputError("point at the intersection of the two lines")
            for y in range(x + 1, 6):
                if pts[x].same_as(pts[y], 1e-12):
                    raise DegenerateInputError("repeated point in the configuration")

    @classmethod
    def from_points(cls, a, b) -> "PappusConfig":
        a = tuple(p if isinstance(p, ProjPoint) else ProjPoint(p) for p in a)
        b = tuple(p if isinstance(p, ProjPoint) else ProjPoint(p) for p in b)
        if len(a) != 3 or len(b) != 3:
            raise UsageError("Pappus needs two triples of points")
        return cls(join(a[0], a[1]), join(b[0], b[1]), a, b)


def pappus_points(cfg: PappusConfig) -> tuple:
    """``c_i = (a_j b_k) . (a_k b_j)`` for the cyclic splits (i, j, k)."""
    a, b = cfg.a, cfg.b
    out = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        out.append(meet(join(a[j], b[k]), join(a[k], b[j])))
    return tuple(out)


def pappus_check(cfg: PappusConfig) -> tuple:
    """Return ``(collinearity residual, (c1, c2, c3))``."""
    c = pappus_points(cfg)
    return collinear(*c), c
