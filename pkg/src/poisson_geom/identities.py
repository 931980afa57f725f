"""Residuals of the degree-3 and degree-5 bracket identities, and their
homogeneous (join/meet) readings in the projective plane.

A bracket context is either a :class:`Signature` (the raw signed vector
product) or an :class:`AlgebraKind` (that algebra's bracket law, scale
included). All residual functions broadcast over leading axes, so a whole
batch of trials is evaluated in one call.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .algebra import Signature, cross, cross3, dot, pair_functional, unit
from .errors import DegenerateInputError, UsageError
from .harmonics import AlgebraKind
from .projective import ProjLine, ProjPoint, collinear, concurrent, join, meet

BracketContext = Union[Signature, AlgebraKind]

ALL_CONTEXTS: tuple = tuple(Signature) + tuple(AlgebraKind)


def context_parts(ctx: BracketContext) -> tuple:
    """``(scale, signature)`` such that the bracket is ``scale * cross(signature, ., .)``."""
    if isinstance(ctx, Signature):
        return 1.0, ctx
    if isinstance(ctx, AlgebraKind):
        return ctx.law_scale, ctx.signature
    raise UsageError(f"not a bracket context: {ctx!r}")


def context_bracket(ctx: BracketContext) -> Callable:
    scale, sig = context_parts(ctx)
    if scale == 1.0:
        return lambda u, v: cross(sig, u, v)
    return lambda u, v: scale * cross(sig, u, v)


def context_label(ctx: BracketContext) -> str:
    return ctx.label if isinstance(ctx, Signature) else ctx.value


def parse_context(name: str) -> BracketContext:
    name = name.strip()
    lowered = name.lower()
    if lowered == "euclidean":
        return Signature.EUCLIDEAN
    if lowered == "hyperbolic":
        return Signature.HYPERBOLIC
    if len(name) == 3 and set(name) <= {"+", "-"}:
        return Signature.from_label(name)
    for kind in AlgebraKind:
        if lowered == kind.value:
            return kind
    raise UsageError(f"unknown bracket context {name!r}")


def jacobi_terms(ctx: BracketContext, X1, X2, X3) -> tuple:
    b = context_bracket(ctx)
    return b(b(X1, X2), X3), b(b(X2, X3), X1), b(b(X3, X1), X2)


def jacobi_residual(ctx: BracketContext, X1, X2, X3) -> np.ndarray:
    t1, t2, t3 = jacobi_terms(ctx, X1, X2, X3)
    return t1 + t2 + t3


@dataclass(frozen=True)
class TomihisaInstance:
    """Five operands; ``fixed`` play the roles of F2, F4 and ``cyclic`` of F1, F3, F5."""

    operands: tuple
    fixed: tuple = (1, 3)
    cyclic: tuple = (0, 2, 4)

    def __post_init__(self):
        if len(self.operands) != 5:
            raise UsageError("Tomihisa's identity takes five operands")
        if sorted(tuple(self.fixed) + tuple(self.cyclic)) != [0, 1, 2, 3, 4]:
            raise UsageError("fixed and cyclic indices must partition 0..4")


def tomihisa_terms(ctx: BracketContext, inst: TomihisaInstance) -> tuple:
    b = context_bracket(ctx)
    F = inst.operands
    p, q = inst.fixed
    i1, i3, i5 = inst.cyclic
    out = []
    for a, c, e in ((i1, i3, i5), (i3, i5, i1), (i5, i1, i3)):
        # {F_a, {{F_p, F_c}, {F_q, F_e}}}
        out.append(b(F[a], b(b(F[p], F[c]), b(F[q], F[e]))))
    return tuple(out)


def tomihisa_residual(ctx: BracketContext, inst: TomihisaInstance) -> np.ndarray:
    t1, t2, t3 = tomihisa_terms(ctx, inst)
    return t1 + t2 + t3


def tomihisa(ctx: BracketContext, F1, F2, F3, F4, F5) -> np.ndarray:
    return tomihisa_residual(ctx, TomihisaInstance((F1, F2, F3, F4, F5)))


def _parity(perm) -> int:
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


# Lexicographic order of S4 acting on (1, 2, 3, 4), with signs.
S4_SIGNED: tuple = tuple((perm, _parity(perm)) for perm in itertools.permutations((1, 2, 3, 4)))


def left_normed(ctx: BracketContext, X, indices) -> np.ndarray:
    """``[X_i, [X_j, [X_k, [X_l, X_0]]]]`` for indices (i, j, k, l)."""
    b = context_bracket(ctx)
    acc = X[0]
    for idx in reversed(indices):
        acc = b(X[idx], acc)
    return acc


def razmyslov1_terms(ctx: BracketContext, X0, X1, X2, X3, X4) -> dict:
    X = (X0, X1, X2, X3, X4)
    return {perm: sign * left_normed(ctx, X, perm) for perm, sign in S4_SIGNED}


def razmyslov1_residual(ctx: BracketContext, X0, X1, X2, X3, X4) -> np.ndarray:
    total = 0.0
    for term in razmyslov1_terms(ctx, X0, X1, X2, X3, X4).values():
        total = total + term
    return total


def razmyslov2_terms(ctx: BracketContext, X0, X1, X2) -> tuple:
    """The three terms ``[X_a, [X_0, [X_0, [X_b, X_c]]]]`` for (a, b, c) cyclic in (0, 1, 2)."""
    b = context_bracket(ctx)
    X = (X0, X1, X2)
    out = []
    for a, c, d in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        out.append(b(X[a], b(X0, b(X0, b(X[c], X[d])))))
    return tuple(out)


def razmyslov2_residual(ctx: BracketContext, X0, X1, X2) -> np.ndarray:
    t1, t2, t3 = razmyslov2_terms(ctx, X0, X1, X2)
    return t1 + t2 + t3


def razmyslov2_alternating(ctx: BracketContext, X0, X1, X2) -> np.ndarray:
    """Same three terms with the middle one subtracted; not an identity."""
    t1, t2, t3 = razmyslov2_terms(ctx, X0, X1, X2)
    return t1 - t2 + t3


def norm_scaled_jacobi_terms(ctx: BracketContext, X0, X1, X2) -> tuple:
    """``-scale^2 * det(S) * ||X0||_S * [X_a, [X_b, X_c]]`` for the same (a, b, c).

    Term ``a`` of :func:`razmyslov2_terms` equals term ``a`` here, so the
    degree-5 identity is the Jacobi identity times the square norm of X0.
    """
    scale, sig = context_parts(ctx)
    b = context_bracket(ctx)
    X = (X0, X1, X2)
    factor = -(scale**2) * sig.det * dot(sig, X0, X0)
    factor = np.asarray(factor)[..., None]
    return tuple(
        factor * b(X[a], b(X[c], X[d])) for a, c, d in ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    )


def expanded_tomihisa_terms(Y: int, A: int, B: int, C: int) -> list:
    """Jacobi re-association of ``T(X0, Y; A, B, C)`` into left-normed words.

    Returns ``(sign, (i, j, k, l))`` meaning ``sign * [X_i, [X_j, [X_k, [X_l, X_0]]]]``.
    """
    out = []
    for i, j, k in ((A, B, C), (B, C, A), (C, A, B)):
        out.append((1, (i, j, Y, k)))
        out.append((-1, (i, Y, j, k)))
    return out


# T(X0, X1; X2, X3, X4) + T(X0, X2; X3, X1, X4) + T(X0, X3; X1, X2, X4) + T(X0, X4; X2, X1, X3)
DECOMPOSITION: tuple = ((1, 2, 3, 4), (2, 3, 1, 4), (3, 1, 2, 4), (4, 2, 1, 3))


def tomihisa_T(ctx: BracketContext, X, Y: int, A: int, B: int, C: int) -> np.ndarray:
    """``T(X0, X_Y; X_A, X_B, X_C)`` evaluated in its original nested form."""
    inst = TomihisaInstance((X[A], X[Y], X[B], X[0], X[C]))
    return tomihisa_residual(ctx, inst)


def decomposition_words() -> list:
    words = []
    for Y, A, B, C in DECOMPOSITION:
        words.extend(expanded_tomihisa_terms(Y, A, B, C))
    return words


def tomihisa_decomposition_residual(ctx: BracketContext, X0, X1, X2, X3, X4) -> np.ndarray:
    """Razmyslov's alternating sum minus the four re-associated Tomihisa instances."""
    X = (X0, X1, X2, X3, X4)
    total = razmyslov1_residual(ctx, *X)
    for sign, word in decomposition_words():
        total = total - sign * left_normed(ctx, X, word)
    return total


# -- homogeneous interpretation --------------------------------------------


def _tomihisa_lines(points) -> list:
    F = list(points)
    lines = []
    for a, c, e in ((0, 2, 4), (2, 4, 0), (4, 0, 2)):
        inner = meet(join(F[1], F[c]), join(F[3], F[e]))
        lines.append(join(F[a], inner))
    return lines


def _tomihisa_points(lines) -> list:
    F = list(lines)
    pts = []
    for a, c, e in ((0, 2, 4), (2, 4, 0), (4, 0, 2)):
        inner = join(meet(F[1], F[c]), meet(F[3], F[e]))
        pts.append(meet(F[a], inner))
    return pts


def tomihisa_geometric(objects) -> float:
    """Concurrency residual of the three Tomihisa lines built from five points,
    or collinearity residual of the three points built from five lines."""
    objs = list(objects)
    if len(objs) != 5:
        raise UsageError("five points or five lines are required")
    if all(isinstance(o, ProjPoint) for o in objs):
        return concurrent(*_tomihisa_lines(objs))
    if all(isinstance(o, ProjLine) for o in objs):
        return collinear(*_tomihisa_points(objs))
    raise UsageError("mix of points and lines")


def tomihisa_geometric_objects(objects) -> list:
    objs = list(objects)
    if all(isinstance(o, ProjPoint) for o in objs):
        return _tomihisa_lines(objs)
    return _tomihisa_points(objs)


@dataclass(frozen=True)
class PappusTomihisaResult:
    residual: float
    pappus_residual: float
    C_residual: float
    H_residual: float
    M: ProjPoint
    N: ProjPoint
    P: ProjPoint


def _pf(u, v) -> np.ndarray:
    f = pair_functional(u, v).as_array()
    if np.linalg.norm(f) <= 1e-12 * np.linalg.norm(u) * np.linalg.norm(v):
        raise DegenerateInputError("degenerate bracket in the Pappus construction")
    return f


def pappus_via_tomihisa(A, B, C, D, E, H) -> PappusTomihisaResult:
    """Pappus' theorem for A, B, C on one line and D, E, H on another, read off
    from Tomihisa's identity with the metric-free bracket.
    """
    pts = [p if isinstance(p, ProjPoint) else ProjPoint(p) for p in (A, B, C, D, E, H)]
    if collinear(pts[0], pts[1], pts[2]) > 1e-12 or collinear(pts[3], pts[4], pts[5]) > 1e-12:
        raise UsageError("A, B, C and D, E, H must each be collinear")
    a, b, c, d, e, h = (unit(p.homogeneous) for p in pts)
    P = meet(join(pts[1], pts[5]), join(pts[2], pts[4]))
    p = unit(P.homogeneous)
    F1, F2, F3, F4, F5 = a, b, p, e, d
    C_ = _pf(_pf(F1, F2), _pf(F3, F4))
    H_ = _pf(_pf(F3, F2), _pf(F5, F4))
    M_ = _pf(_pf(F5, F2), _pf(F1, F4))
    terms = [cross3(F1, H_), cross3(F3, M_), cross3(F5, C_)]
    scale = sum(float(np.linalg.norm(t)) for t in terms)
    if scale == 0.0:
        raise DegenerateInputError("all Tomihisa terms vanish")
    residual = float(np.linalg.norm(terms[0] + terms[1] + terms[2])) / scale
    M = ProjPoint(M_)
    N = meet(join(pts[0], pts[5]), join(pts[3], pts[2]))
    return PappusTomihisaResult(
        residual=residual,
        pappus_residual=collinear(M, N, P),
        C_residual=float(np.linalg.norm(cross3(unit(C_), c))),
        H_residual=float(np.linalg.norm(cross3(unit(H_), h))),
        M=M,
        N=N,
        P=P,
    )

