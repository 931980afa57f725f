"""Deterministic SVG figures: stereographic spherical triangles, the disc
model, the two projective dualities, Pappus and Tomihisa configurations.

Coordinates are rounded to six decimals; every drawn element carries a
``class`` naming its role so documents can be checked structurally.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import identities as ids
from . import projective as pj
from . import surface as sf
from .algebra import proportional_residual, unit, vec3
from .errors import AtPoleError, DegenerateInputError, UsageError
from .harmonics import AlgebraKind

FIGURES = ("spherical-altitudes", "disc-altitudes", "eh-duality", "pappus", "tomihisa-incidence")

DEFAULT_SPHERICAL_TRIANGLE = [[0.8, 0.1, 0.6], [-0.3, 0.75, 0.6], [-0.35, -0.6, 0.7]]
DEFAULT_DISC_TRIANGLE = [[0.55, 0.1, 1.0], [-0.3, 0.5, 1.0], [-0.15, -0.6, 1.0]]
DEFAULT_EH_POINT = [0.5, 0.3, 1.0]
DEFAULT_PAPPUS = {
    "a": [[0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [3.0, 0.0, 1.0]],
    "b": [[0.0, 1.0, 1.0], [2.0, 1.0, 1.0], [3.0, 1.0, 1.0]],
}
DEFAULT_TOMIHISA = [
    [0.9, 0.2, 1.0],
    [-0.4, 0.8, 1.0],
    [0.1, -0.7, 1.0],
    [-0.8, -0.3, 1.0],
    [0.5, 0.6, 1.0],
]

SIZE = 640
_STYLE = (
    ".geodesic,.line{fill:none;stroke:#333;stroke-width:1.2}"
    ".altitude{stroke:#c03;stroke-dasharray:6 4}"
    ".dual{stroke:#07a}"
    ".absolute{fill:none;stroke:#000;stroke-width:1.6}"
    ".pappus-line,.tomihisa{stroke:#c03;stroke-width:2.4}"
    ".vertex,.point{fill:#000}"
    ".dual-vertex{fill:#07a}"
    ".concurrency{fill:#c03}"
)


def _fmt(x: float) -> str:
    s = f"{float(x):.6f}"
    return "0.000000" if s == "-0.000000" else s


def stereographic(p) -> tuple:
    """Projection from the south pole onto z = 0: ``(x, y, z) -> (x, y) / (1 + z)``."""
    rep = p.rep if isinstance(p, sf.SurfacePoint) else unit(vec3(p))
    x, y, z = rep
    if 1.0 + z <= 1e-12:
        raise AtPoleError("the south pole has no stereographic image")
    return (x / (1.0 + z), y / (1.0 + z))


def great_circle_image(normal) -> tuple:
    """Stereographic image of the great circle ``normal . x = 0``.

    Returns ``("circle", cx, cy, r)`` or, for circles through the pole,
    ``("line", covector)`` of a line through the origin.
    """
    n1, n2, n3 = unit(vec3(normal))
    if abs(n3) <= 1e-12:
        return ("line", np.array([n1, n2, 0.0]))
    cx, cy = n1 / n3, n2 / n3
    return ("circle", cx, cy, float(np.sqrt(1.0 + cx * cx + cy * cy)))


@dataclass
class Canvas:
    """Square viewport ``[x0, x0 + span] x [y0, y0 + span]`` in world units."""

    x0: float
    y0: float
    span: float
    title: str
    notes: list = field(default_factory=list)
    items: list = field(default_factory=list)

    @classmethod
    def fit(cls, points, title: str, margin: float = 0.25, minimum: float = 1.0) -> "Canvas":
        pts = np.array(points, dtype=float).reshape(-1, 2)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        span = max(float(np.max(hi - lo)), minimum) * (1 + 2 * margin)
        mid = (lo + hi) / 2
        return cls(mid[0] - span / 2, mid[1] - span / 2, span, title)

    def _px(self, x: float, y: float) -> tuple:
        s = SIZE / self.span
        return ((x - self.x0) * s, SIZE - (y - self.y0) * s)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def circle(self, cx, cy, r, cls: str) -> None:
        px, py = self._px(cx, cy)
        self.items.append(
            f'<circle class="{cls}" cx="{_fmt(px)}" cy="{_fmt(py)}" r="{_fmt(r * SIZE / self.span)}"/>'
        )

    def marker(self, x, y, cls: str, label: str = "") -> None:
        px, py = self._px(x, y)
        self.items.append(f'<circle class="{cls}" cx="{_fmt(px)}" cy="{_fmt(py)}" r="4.000000"/>')
        if label:
            self.items.append(
                f'<text class="label" x="{_fmt(px + 6)}" y="{_fmt(py - 6)}" font-size="13">{label}</text>'
            )

    def segment(self, p, q, cls: str) -> None:
        (ax, ay), (bx, by) = self._px(*p), self._px(*q)
        self.items.append(
            f'<line class="{cls}" x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}"/>'
        )

    def line(self, covector, cls: str) -> bool:
        """Draw the part of ``a x + b y + c = 0`` inside the viewport."""
        ends = clip_line(covector, (self.x0, self.y0, self.x0 + self.span, self.y0 + self.span))
        if ends is None:
            self.note(f"{cls} misses the viewport")
            return False
        self.segment(*ends, cls)
        return True

    def render(self) -> str:
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">',
            f"<title>{self.title}</title>",
            f"<style>{_STYLE}</style>",
        ]
        notes = [f"<!-- {n.replace('--', '- -')} -->" for n in self.notes]
        return "\n".join(head + notes + self.items + ["</svg>"]) + "\n"


def clip_line(covector, box) -> tuple | None:
    a, b, c = (float(v) for v in covector)
    xmin, ymin, xmax, ymax = box
    pts = []
    if abs(b) > 1e-15:
        for x in (xmin, xmax):
            y = -(a * x + c) / b
            if ymin - 1e-12 <= y <= ymax + 1e-12:
                pts.append((x, y))
    if abs(a) > 1e-15:
        for y in (ymin, ymax):
            x = -(b * y + c) / a
            if xmin - 1e-12 <= x <= xmax + 1e-12:
                pts.append((x, y))
    if len(pts) < 2:
        return None
    best = max(itertools.combinations(pts, 2), key=lambda pq: np.hypot(pq[0][0] - pq[1][0], pq[0][1] - pq[1][1]))
    return best


def _affine_or_none(p: pj.ProjPoint):
    try:
        return p.xy()
    except Exception:
        return None


# -- figures ----------------------------------------------------------------


def _great_circle(canvas: Canvas, normal, cls: str) -> None:
    img = great_circle_image(normal)
    if img[0] == "circle":
        canvas.circle(img[1], img[2], img[3], cls)
    else:
        canvas.line(img[1], cls)


def spherical_altitudes(vertices=None) -> str:
    verts = [unit(vec3(v)) for v in (vertices or DEFAULT_SPHERICAL_TRIANGLE)]
    t = sf.Triangle(AlgebraKind.SPHERE, verts)
    h = sf.orthocenter(t)
    canvas = Canvas(-2.2, -2.2, 4.4, "Spherical triangle, dual triangle and common altitudes")
    canvas.note("stereographic projection from (0,0,-1) onto z=0; viewpoint chosen for legibility")
    canvas.note(f"altitude concurrency residual {sf.concurrency_residual(t)!r}")
    hd = sf.altitude_meets(t.dual_triangle())[0]
    canvas.note(f"dual triangle orthocenter residual {proportional_residual(h.rep, hd)!r}")
    canvas.circle(0.0, 0.0, 1.0, "absolute")
    for i in range(3):
        _great_circle(canvas, t.side(i).normal, "geodesic side")
    for i in range(3):
        _great_circle(canvas, verts[i], "geodesic dual")
    for i in range(3):
        _great_circle(canvas, sf.altitude(t, i).normal, "geodesic altitude")
    for i, v in enumerate(verts):
        canvas.marker(*stereographic(sf.surface_point(AlgebraKind.SPHERE, v)), "vertex", f"a{i + 1}")
    for i in range(3):
        b = sf.surface_point(AlgebraKind.SPHERE, t.side(i).normal)
        canvas.marker(*stereographic(b), "dual-vertex", f"b{i + 1}")
    canvas.marker(*stereographic(h), "concurrency", "h")
    return canvas.render()


def _chord(canvas: Canvas, line: pj.ProjLine, cls: str) -> None:
    hits = pj.conic_line_intersections(pj.UNIT_CIRCLE, line)
    ends = [p.xy() for p in hits if _affine_or_none(p) is not None]
    if len(ends) == 2:
        canvas.segment(ends[0], ends[1], cls)
    else:
        canvas.line(line.covector, cls)


def disc_altitudes(vertices=None) -> str:
    pts = [pj.ProjPoint(v) for v in (vertices or DEFAULT_DISC_TRIANGLE)]
    c = pj.UNIT_CIRCLE
    alts = [pj.projective_altitude(c, pts, i) for i in range(3)]
    residual = pj.concurrent(*alts)
    h = pj.meet(alts[0], alts[1])
    canvas = Canvas(-2.5, -2.5, 5.0, "Altitudes in the disc model with the unit-circle absolute")
    canvas.note("projection of R^3_H to the plane Z=1")
    canvas.note(f"altitude concurrency residual {residual!r}")
    canvas.circle(0.0, 0.0, 1.0, "absolute")
    for i in range(3):
        side = pj.join(pts[(i + 1) % 3], pts[(i + 2) % 3])
        _chord(canvas, side, "geodesic side")
    for a in alts:
        _chord(canvas, a, "geodesic altitude")
    for i, p in enumerate(pts):
        xy = _affine_or_none(p)
        if xy is not None:
            canvas.marker(*xy, "vertex", f"a{i + 1}")
    for i in range(3):
        b = pj.pole(c, pj.join(pts[(i + 1) % 3], pts[(i + 2) % 3]))
        xy = _affine_or_none(b)
        if xy is not None and max(abs(xy[0]), abs(xy[1])) < 2.5:
            canvas.marker(*xy, "dual-vertex", f"b{i + 1}")
        else:
            canvas.note(f"dual vertex b{i + 1} outside the viewport")
    xy = _affine_or_none(h)
    if xy is not None:
        canvas.marker(*xy, "concurrency", "h")
    return canvas.render()


def eh_duality(point=None) -> str:
    p = pj.ProjPoint(point or DEFAULT_EH_POINT)
    lh, le = pj.dual_H(p), pj.dual_E(p)
    residual = proportional_residual(le.covector, pj.eh_reflect(lh).covector)
    canvas = Canvas(-3.0, -3.0, 6.0, "Dual line of a point in RP2_H and RP2_E")
    canvas.note(f"E-dual vs reflected H-dual residual {residual!r}")
    canvas.circle(0.0, 0.0, 1.0, "absolute")
    canvas.line(lh.covector, "line dual-H")
    canvas.line(le.covector, "line dual-E dual")
    xy = _affine_or_none(p)
    if xy is not None:
        canvas.marker(*xy, "point", "a")
    canvas.marker(0.0, 0.0, "concurrency", "O")
    return canvas.render()


def pappus(config=None) -> str:
    cfg_in = config or DEFAULT_PAPPUS
    try:
        a, b = cfg_in["a"], cfg_in["b"]
    except (KeyError, TypeError):
        raise UsageError("Pappus config needs 'a' and 'b' point triples") from None
    cfg = pj.PappusConfig.from_points(a, b)
    residual, cpts = pj.pappus_check(cfg)
    pappus_line = pj.join(cpts[0], cpts[1])
    finite = [xy for xy in (_affine_or_none(p) for p in cfg.a + cfg.b + cpts) if xy is not None]
    canvas = Canvas.fit(finite, "Pappus configuration")
    canvas.note(f"Pappus collinearity residual {residual!r}")
    canvas.line(cfg.l1.covector, "line base")
    canvas.line(cfg.l2.covector, "line base")
    for j, k in itertools.permutations(range(3), 2):
        canvas.line(pj.join(cfg.a[j], cfg.b[k]).covector, "line cross")
    canvas.line(pappus_line.covector, "line pappus-line")
    for name, pts in (("a", cfg.a), ("b", cfg.b)):
        for i, p in enumerate(pts):
            xy = _affine_or_none(p)
            if xy is not None:
                canvas.marker(*xy, "point input", f"{name}{i + 1}")
    for i, p in enumerate(cpts):
        xy = _affine_or_none(p)
        if xy is not None:
            canvas.marker(*xy, "point pappus", f"c{i + 1}")
        else:
            canvas.note(f"c{i + 1} is at infinity")
    return canvas.render()


def tomihisa_incidence(points=None) -> str:
    pts = [pj.ProjPoint(v) for v in (points or DEFAULT_TOMIHISA)]
    lines = ids.tomihisa_geometric_objects(pts)
    residual = pj.concurrent(*lines)
    common = pj.meet(lines[0], lines[1])
    inner = []
    for a, c, e in ((0, 2, 4), (2, 4, 0), (4, 0, 2)):
        l1, l2 = pj.join(pts[1], pts[c]), pj.join(pts[3], pts[e])
        inner.append((l1, l2, pj.meet(l1, l2)))
    finite = [xy for xy in (_affine_or_none(p) for p in pts + [q for *_, q in inner] + [common]) if xy is not None]
    canvas = Canvas.fit(finite, "Homogeneous reading of Tomihisa's identity for five points")
    canvas.note(f"concurrency residual {residual!r}")
    for l1, l2, _ in inner:
        canvas.line(l1.covector, "line")
        canvas.line(l2.covector, "line")
    for l in lines:
        canvas.line(l.covector, "line tomihisa")
    for i, p in enumerate(pts):
        xy = _affine_or_none(p)
        if xy is not None:
            canvas.marker(*xy, "point input", str(i + 1))
    for *_, q in inner:
        xy = _affine_or_none(q)
        if xy is not None:
            canvas.marker(*xy, "point")
    xy = _affine_or_none(common)
    if xy is not None:
        canvas.marker(*xy, "concurrency")
    return canvas.render()


def render_figure(name: str, data=None) -> str:
    """Render one of :data:`FIGURES`; ``data`` is the decoded JSON geometry or None."""
    if name == "spherical-altitudes":
        return spherical_altitudes(data)
    if name == "disc-altitudes":
        return disc_altitudes(data)
    if name == "eh-duality":
        return eh_duality(data)
    if name == "pappus":
        return pappus(data)
    if name == "tomihisa-incidence":
        return tomihisa_incidence(data)
    raise UsageError(f"unknown figure {name!r}")


__all__ = ["FIGURES", "render_figure", "stereographic", "great_circle_image", "DegenerateInputError"]
