"""Signed vector products, (pseudo)scalar products and the sl2 realization.

Vectors are plain numpy arrays whose last axis has length 3, so every
operation here also works on stacks of vectors of shape ``(..., 3)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import UsageError

Vec3 = np.ndarray

# Commutator of mu(u), mu(v) equals SL2_BRACKET_SCALE * mu(cross(HYPERBOLIC, u, v)).
SL2_BRACKET_SCALE = 1.0


def vec3(x, y=None, z=None) -> Vec3:
    """Build a finite float vector of shape (3,) from a triple or three scalars."""
    if y is None and z is None:
        v = np.asarray(x, dtype=float)
    else:
        v = np.array([x, y, z], dtype=float)
    if v.shape != (3,):
        raise UsageError(f"expected a 3-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise UsageError(f"non-finite vector component in {v}")
    return v


class Signature(enum.Enum):
    """The eight sign triples (s1, s2, s3) defining a metric and a vector product."""

    PPP = (1, 1, 1)
    PPM = (1, 1, -1)
    PMP = (1, -1, 1)
    PMM = (1, -1, -1)
    MPP = (-1, 1, 1)
    MPM = (-1, 1, -1)
    MMP = (-1, -1, 1)
    MMM = (-1, -1, -1)
    EUCLIDEAN = (1, 1, 1)
    HYPERBOLIC = (1, 1, -1)

    @property
    def signs(self) -> np.ndarray:
        return np.array(self.value, dtype=float)

    @property
    def det(self) -> int:
        s1, s2, s3 = self.value
        return s1 * s2 * s3

    @property
    def label(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.value)

    @classmethod
    def from_label(cls, label: str) -> "Signature":
        if len(label) != 3 or set(label) - {"+", "-"}:
            raise UsageError(f"signature label must be three of '+'/'-', got {label!r}")
        return cls(tuple(1 if ch == "+" else -1 for ch in label))


EUCLIDEAN = Signature.EUCLIDEAN
HYPERBOLIC = Signature.HYPERBOLIC


def cross3(u, v) -> np.ndarray:
    """Plain Euclidean cross product of two 3-vectors (cheaper than np.cross)."""
    u0, u1, u2 = u
    v0, v1, v2 = v
    return np.array([u1 * v2 - u2 * v1, u2 * v0 - u0 * v2, u0 * v1 - u1 * v0], dtype=float)


def cross(sig: Signature, u, v) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    s1, s2, s3 = sig.value
    if u.ndim == 1 and v.ndim == 1:
        return cross3(u, v) * sig.signs
    return np.stack(
        [
            s1 * (u[..., 1] * v[..., 2] - u[..., 2] * v[..., 1]),
            s2 * (u[..., 2] * v[..., 0] - u[..., 0] * v[..., 2]),
            s3 * (u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]),
        ],
        axis=-1,
    )


def dot(sig: Signature, u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.sum(sig.signs * u * v, axis=-1)


def square_norm(sig: Signature, v):
    return dot(sig, v, v)


def triple(sig: Signature, u, v, w):
    """Oriented volume of (u, v, w); the same number for every signature."""
    return dot(sig, cross(sig, u, v), w)


def unit(v) -> np.ndarray:
    """Euclidean normalization; the zero vector is rejected, never normalized."""
    v = np.asarray(v, dtype=float)
    if v.ndim == 1:
        n = math.sqrt(float(v @ v))
        if n == 0.0:
            raise UsageError("cannot normalize the zero vector")
        return v / n
    n = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(n == 0):
        raise UsageError("cannot normalize the zero vector")
    return v / n


def proportional_residual(u, v) -> float:
    """Sine of the angle between two nonzero vectors; 0 iff they are parallel."""
    c = cross3(unit(u), unit(v))
    return math.sqrt(float(c @ c))


@dataclass(frozen=True)
class TracelessMatrix2:
    """A trace-zero 2x2 matrix; the lower-right entry is always ``-m11``."""

    m11: float
    m12: float
    m21: float

    @property
    def m22(self) -> float:
        return -self.m11

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    @classmethod
    def from_array(cls, m) -> "TracelessMatrix2":
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise UsageError(f"expected a 2x2 matrix, got shape {m.shape}")
        scale = max(1.0, float(np.max(np.abs(m))))
        if abs(m[0, 0] + m[1, 1]) > 1e-12 * scale:
            raise UsageError("matrix is not traceless")
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]))


def to_sl2(v) -> TracelessMatrix2:
    x, y, z = vec3(v)
    return TracelessMatrix2(0.5 * y, -0.5 * (x + z), 0.5 * (z - x))


def from_sl2(m: TracelessMatrix2) -> Vec3:
    # m11 = y/2, m12 = -(x+z)/2, m21 = (z-x)/2
    y = 2.0 * m.m11
    x = -(m.m12 + m.m21)
    z = m.m21 - m.m12
    return np.array([x, y, z])


def sl2_commutator(a: TracelessMatrix2, b: TracelessMatrix2) -> TracelessMatrix2:
    A, B = a.as_array(), b.as_array()
    return TracelessMatrix2.from_array(A @ B - B @ A)


@dataclass(frozen=True)
class Covector3:
    """A linear functional on 3-vectors."""

    c1: float
    c2: float
    c3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3])

    def __call__(self, z) -> float:
        return float(np.dot(self.as_array(), np.asarray(z, dtype=float)))

    def __neg__(self) -> "Covector3":
        return Covector3(-self.c1, -self.c2, -self.c3)


def pair_functional(u, v) -> Covector3:
    """The functional z -> det(u, v, z); needs no metric or duality."""
    c = cross3(vec3(u), vec3(v))
    return Covector3(float(c[0]), float(c[1]), float(c[2]))
