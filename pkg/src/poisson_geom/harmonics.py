"""First-degree harmonics on the sphere, the two hyperboloids and the
quadratic forms on the symplectic plane, with their Poisson brackets.

Each algebra kind fixes a chart ``(u1, u2)``, three basis functions and a
closed-form bracket law on coefficient triples:

=============  ================  =====================================  ==============
kind           chart             basis (f1, f2, f3)                     law
=============  ================  =====================================  ==============
SPHERE         (theta, phi)      sin t cos p, sin t sin p, cos t        F ^ G
PSEUDOSPHERE   (chi, phi)        sinh c cos p, sinh c sin p, cosh c     F ^h G
DESITTER       (chi, phi)        cosh c cos p, cosh c sin p, sinh c     -(F ^h G)
QUADRATIC      (p, q)            2pq, p^2 - q^2, p^2 + q^2              4 (F ^h G)
=============  ================  =====================================  ==============

where ``^`` is the Euclidean and ``^h`` the (+,+,-) vector product.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import EUCLIDEAN, HYPERBOLIC, Signature, cross, dot, vec3
from .errors import ChartSingularityError, KindMismatchError, UsageError

_CHART_EPS = 1e-9


class AlgebraKind(enum.Enum):
    SPHERE = "sphere"
    PSEUDOSPHERE = "pseudosphere"
    DESITTER = "desitter"
    QUADRATIC = "quadratic"

    @property
    def signature(self) -> Signature:
        """Metric carried by the coefficient space."""
        return EUCLIDEAN if self is AlgebraKind.SPHERE else HYPERBOLIC

    @property
    def law_scale(self) -> float:
        """The bracket law is ``law_scale * cross(signature, F, G)``."""
        return _LAW_SCALE[self]


_LAW_SCALE = {
    AlgebraKind.SPHERE: 1.0,
    AlgebraKind.PSEUDOSPHERE: 1.0,
    AlgebraKind.DESITTER: -1.0,
    AlgebraKind.QUADRATIC: 4.0,
}


def bracket_law(kind: AlgebraKind, u, v) -> np.ndarray:
    """Algebraic bracket of coefficient triples (vectorized over leading axes)."""
    return kind.law_scale * cross(kind.signature, u, v)


@dataclass(frozen=True, eq=False)
class Harmonic:
    """``F = X f1 + Y f2 + Z f3`` in the algebra of the given kind."""

    kind: AlgebraKind
    coeffs: np.ndarray

    def __post_init__(self):
        c = vec3(self.coeffs)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def basis(cls, kind: AlgebraKind, i: int) -> "Harmonic":
        c = np.zeros(3)
        c[i] = 1.0
        return cls(kind, c)

    def __eq__(self, other):
        if not isinstance(other, Harmonic):
            return NotImplemented
        return self.kind is other.kind and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.kind, tuple(self.coeffs)))

    def __repr__(self):
        x, y, z = self.coeffs
        return f"Harmonic({self.kind.name}, ({x!r}, {y!r}, {z!r}))"


@dataclass(frozen=True)
class SurfaceCoord:
    u1: float
    u2: float


@dataclass(frozen=True)
class QuadraticForm:
    """The binary form ``a p^2 + 2 b pq + c q^2``."""

    a: float
    b: float
    c: float

    def to_vec3(self) -> np.ndarray:
        return np.array([self.b, (self.a - self.c) / 2, (self.a + self.c) / 2])

    @classmethod
    def from_vec3(cls, v) -> "QuadraticForm":
        x, y, z = vec3(v)
        return cls(y + z, x, z - y)


def quadratic_convert(q: QuadraticForm) -> np.ndarray:
    return q.to_vec3()


def quadratic_from_vec3(v) -> QuadraticForm:
    return QuadraticForm.from_vec3(v)


def discriminant_scalar(q: QuadraticForm, r: QuadraticForm) -> float:
    """Minus the polarized discriminant, ``bb' - (ac' + ca')/2``."""
    return q.b * r.b - (q.a * r.c + q.c * r.a) / 2


def _check_coord(kind: AlgebraKind, s: SurfaceCoord, for_bracket: bool) -> None:
    if not (np.isfinite(s.u1) and np.isfinite(s.u2)):
        raise ChartSingularityError(f"non-finite chart coordinate {s}")
    if kind is AlgebraKind.SPHERE:
        if not 0.0 < s.u1 < np.pi:
            raise ChartSingularityError(f"theta={s.u1} outside (0, pi)")
        if for_bracket and abs(np.sin(s.u1)) <= _CHART_EPS:
            raise ChartSingularityError(f"sin(theta) vanishes at theta={s.u1}")
    elif kind is AlgebraKind.PSEUDOSPHERE:
        if for_bracket and abs(np.sinh(s.u1)) <= _CHART_EPS:
            raise ChartSingularityError(f"sinh(chi) vanishes at chi={s.u1}")


def basis_values(kind: AlgebraKind, s: SurfaceCoord) -> np.ndarray:
    """(f1, f2, f3) at s; for the surfaces this is the point of R^3 itself."""
    a, b = s.u1, s.u2
    if kind is AlgebraKind.SPHERE:
        return np.array([np.sin(a) * np.cos(b), np.sin(a) * np.sin(b), np.cos(a)])
    if kind is AlgebraKind.PSEUDOSPHERE:
        return np.array([np.sinh(a) * np.cos(b), np.sinh(a) * np.sin(b), np.cosh(a)])
    if kind is AlgebraKind.DESITTER:
        return np.array([np.cosh(a) * np.cos(b), np.cosh(a) * np.sin(b), np.sinh(a)])
    p, q = a, b
    return np.array([2 * p * q, p * p - q * q, p * p + q * q])


def basis_gradients(kind: AlgebraKind, s: SurfaceCoord) -> np.ndarray:
    """Rows: d/du1 and d/du2 of (f1, f2, f3), shape (2, 3)."""
    a, b = s.u1, s.u2
    ca, sa = np.cos(a), np.sin(a)
    cb, sb = np.cos(b), np.sin(b)
    if kind is AlgebraKind.SPHERE:
        return np.array([[ca * cb, ca * sb, -sa], [-sa * sb, sa * cb, 0.0]])
    if kind is AlgebraKind.PSEUDOSPHERE:
        ch, sh = np.cosh(a), np.sinh(a)
        return np.array([[ch * cb, ch * sb, sh], [-sh * sb, sh * cb, 0.0]])
    if kind is AlgebraKind.DESITTER:
        ch, sh = np.cosh(a), np.sinh(a)
        return np.array([[sh * cb, sh * sb, ch], [-ch * sb, ch * cb, 0.0]])
    p, q = a, b
    return np.array([[2 * q, 2 * p, 2 * p], [2 * p, -2 * q, 2 * q]])


def bracket_prefactor(kind: AlgebraKind, s: SurfaceCoord) -> float:
    """Factor multiplying ``dF/du1 dG/du2 - dF/du2 dG/du1``.

    The pseudo-sphere carries the opposite orientation (factor ``-1/sinh chi``);
    with that choice every kind reproduces its basis bracket table.
    """
    if kind is AlgebraKind.SPHERE:
        return 1.0 / np.sin(s.u1)
    if kind is AlgebraKind.PSEUDOSPHERE:
        return -1.0 / np.sinh(s.u1)
    if kind is AlgebraKind.DESITTER:
        return 1.0 / np.cosh(s.u1)
    return 1.0


def eval_harmonic(F: Harmonic, s: SurfaceCoord) -> float:
    _check_coord(F.kind, s, for_bracket=False)
    return float(np.dot(F.coeffs, basis_values(F.kind, s)))


def gradient(F: Harmonic, s: SurfaceCoord) -> np.ndarray:
    """(dF/du1, dF/du2) from the analytic basis derivatives."""
    return basis_gradients(F.kind, s) @ F.coeffs


def _same_kind(F: Harmonic, G: Harmonic) -> None:
    if F.kind is not G.kind:
        raise KindMismatchError(f"cannot combine {F.kind.name} with {G.kind.name}")


def poisson_algebraic(F: Harmonic, G: Harmonic) -> Harmonic:
    _same_kind(F, G)
    return Harmonic(F.kind, bracket_law(F.kind, F.coeffs, G.coeffs))


def poisson_numeric(F: Harmonic, G: Harmonic, s: SurfaceCoord) -> float:
    """Poisson bracket of F and G evaluated at s from chart derivatives."""
    _same_kind(F, G)
    _check_coord(F.kind, s, for_bracket=True)
    dF = gradient(F, s)
    dG = gradient(G, s)
    return float(bracket_prefactor(F.kind, s) * (dF[0] * dG[1] - dF[1] * dG[0]))


GL_NODES = 32
PHI_NODES = 64


@lru_cache(maxsize=None)
def _sphere_rule():
    z, wz = np.polynomial.legendre.leggauss(GL_NODES)
    phi = 2 * np.pi * np.arange(PHI_NODES) / PHI_NODES
    wphi = np.full(PHI_NODES, 2 * np.pi / PHI_NODES)
    Z, P = np.meshgrid(z, phi, indexing="ij")
    r = np.sqrt(1 - Z * Z)
    values = np.stack([r * np.cos(P), r * np.sin(P), Z])  # (3, nz, nphi)
    weights = np.outer(wz, wphi)
    values.setflags(write=False)
    weights.setflags(write=False)
    return values, weights


def l2_inner(F: Harmonic, G: Harmonic) -> float:
    """Normalized L2 product ``3/(4 pi) * int F G dA`` on the unit sphere.

    Gauss-Legendre in ``cos(theta)`` times the uniform rule in ``phi``; both
    are exact for products of first-degree harmonics.
    """
    if F.kind is not AlgebraKind.SPHERE or G.kind is not AlgebraKind.SPHERE:
        raise KindMismatchError("the L2 product is only defined on the sphere")
    values, weights = _sphere_rule()
    f = np.tensordot(F.coeffs, values, axes=1)
    g = np.tensordot(G.coeffs, values, axes=1)
    return float(3.0 / (4.0 * np.pi) * np.sum(weights * f * g))


def gram_matrix() -> np.ndarray:
    basis = [Harmonic.basis(AlgebraKind.SPHERE, i) for i in range(3)]
    return np.array([[l2_inner(a, b) for b in basis] for a in basis])


def metric_product(F: Harmonic, G: Harmonic) -> float:
    """Scalar product of coefficient triples in the kind's metric."""
    _same_kind(F, G)
    return float(dot(F.kind.signature, F.coeffs, G.coeffs))


def parse_kind(name: str) -> AlgebraKind:
    try:
        return AlgebraKind(name.lower())
    except ValueError:
        raise UsageError(f"unknown algebra kind {name!r}") from None
