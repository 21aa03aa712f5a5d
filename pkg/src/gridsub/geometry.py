"""Exact integer plane geometry for lattice point configurations.

Everything here works on integer coordinates. Slopes are never divided out;
every predicate is a sign test on a cross or dot product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cmp_to_key
from math import gcd
from typing import Iterable, NamedTuple


class Point(NamedTuple):
    x: int
    y: int


class Edge(NamedTuple):
    """A segment between two distinct lattice points, stored with ``a < b``."""

    a: Point
    b: Point

    @classmethod
    def between(cls, p, q) -> "Edge":
        p, q = Point(*p), Point(*q)
        if p == q:
            raise ValueError(f"degenerate edge at {p}")
        return cls(p, q) if p < q else cls(q, p)

    @property
    def delta(self) -> tuple[int, int]:
        return self.b.x - self.a.x, self.b.y - self.a.y

    @property
    def length2(self) -> int:
        dx, dy = self.delta
        return dx * dx + dy * dy

    def is_primitive(self) -> bool:
        dx, dy = self.delta
        return gcd(dx, dy) == 1

    def other(self, p: Point) -> Point:
        return self.b if p == self.a else self.a

    def __str__(self) -> str:
        return f"({self.a.x},{self.a.y})-({self.b.x},{self.b.y})"


class SlopeClass(str, Enum):
    VERTICAL = "vertical"
    NONNEGATIVE = "nonnegative"
    NEGATIVE = "negative"


class Interaction(str, Enum):
    DISJOINT = "disjoint"
    SHARED_ENDPOINT = "shared-endpoint"
    CONFLICT = "conflict"


def cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v) -> int:
    return u[0] * v[0] + u[1] * v[1]


def orient(p, q, r) -> int:
    """Sign of the turn p -> q -> r: 1 for left, -1 for right, 0 if collinear."""
    c = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (c > 0) - (c < 0)


def on_segment(p, a, b) -> bool:
    """True if ``p`` lies on the closed segment ``ab``."""
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def slope_class(e: Edge) -> SlopeClass:
    dx, dy = e.delta
    if dx == 0:
        return SlopeClass.VERTICAL
    if dx * dy >= 0:
        return SlopeClass.NONNEGATIVE
    return SlopeClass.NEGATIVE


def is_bimonotone(e: Edge) -> bool:
    return slope_class(e) is not SlopeClass.NEGATIVE


def interact(e1: Edge, e2: Edge) -> Interaction:
    """Classify how two closed segments meet.

    Only a single common point that is an endpoint of both segments is
    harmless. Crossings, T-junctions and collinear overlaps are conflicts.
    """
    a1, b1 = e1
    a2, b2 = e2
    o1 = orient(a1, b1, a2)
    o2 = orient(a1, b1, b2)
    o3 = orient(a2, b2, a1)
    o4 = orient(a2, b2, b1)
    if o1 == o2 == o3 == o4 == 0:
        # Collinear: compare the parameter intervals along the common line.
        axis = 0 if a1[0] != b1[0] else 1
        lo = max(a1[axis], a2[axis])
        hi = min(b1[axis], b2[axis])
        if lo > hi:
            return Interaction.DISJOINT
        if lo == hi:
            return Interaction.SHARED_ENDPOINT
        return Interaction.CONFLICT
    if o1 * o2 > 0 or o3 * o4 > 0:
        return Interaction.DISJOINT
    if a1 in (a2, b2) or b1 in (a2, b2):
        return Interaction.SHARED_ENDPOINT
    return Interaction.CONFLICT


def intersection_point(e1: Edge, e2: Edge):
    """Exact intersection of two non-parallel segments as ``(xnum, ynum, den)``.

    Returns None when the segments do not meet or are parallel.
    """
    (x1, y1), (x2, y2) = e1
    (x3, y3), (x4, y4) = e2
    den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    if den == 0:
        return None
    if orient(*e1, e2.a) * orient(*e1, e2.b) > 0 or orient(*e2, e1.a) * orient(*e2, e1.b) > 0:
        return None
    t = (x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)
    xn = x1 * den + t * (x2 - x1)
    yn = y1 * den + t * (y2 - y1)
    if den < 0:
        xn, yn, den = -xn, -yn, -den
    return xn, yn, den


def literal_compatible(e1: Edge, e2: Edge, points: frozenset) -> bool:
    """Permissive rule: two edges clash only if they meet at a non-grid point."""
    kind = interact(e1, e2)
    if kind is not Interaction.CONFLICT:
        return True
    hit = intersection_point(e1, e2)
    if hit is None:
        # Collinear overlap of positive length always contains off-grid points.
        return False
    xn, yn, den = hit
    if xn % den or yn % den:
        return False
    return Point(xn // den, yn // den) in points


def primitive_direction(p, q) -> tuple[int, int]:
    dx, dy = q[0] - p[0], q[1] - p[1]
    g = gcd(dx, dy)
    return dx // g, dy // g


def _half(v) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(u, v) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = cross(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


angle_key = cmp_to_key(_angle_cmp)


def gap_at_most_pi(u, v) -> bool:
    """Whether the counter-clockwise turn from direction u to direction v is <= pi."""
    c = cross(u, v)
    return c > 0 or (c == 0 and dot(u, v) < 0)


def convex_hull(points: Iterable) -> list[Point]:
    """Strict convex hull in counter-clockwise order (monotone chain)."""
    pts = sorted(set(Point(*p) for p in points))
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class Configuration:
    """A grid ``cols x rows`` or a two-row configuration ``P(top, bottom)``."""

    kind: str
    dims: tuple[int, int]
    points: tuple[Point, ...] = field(init=False, repr=False, compare=False)
    hull: tuple[Point, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        a, b = self.dims
        if a < 1 or b < 1:
            raise ValueError(f"configuration sizes must be positive, got {self.dims}")
        if self.kind == "grid":
            pts = [Point(x, y) for y in range(b) for x in range(a)]
        elif self.kind == "two-row":
            pts = [Point(x, 0) for x in range(b)] + [Point(x, 1) for x in range(a)]
        else:
            raise ValueError(f"unknown configuration kind {self.kind!r}")
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "hull", tuple(convex_hull(pts)))

    @classmethod
    def grid(cls, cols: int, rows: int) -> "Configuration":
        return cls("grid", (cols, rows))

    @classmethod
    def two_row(cls, top: int, bottom: int) -> "Configuration":
        return cls("two-row", (top, bottom))

    def describe(self) -> str:
        if self.kind == "grid":
            return f"grid({self.dims[0]}x{self.dims[1]})"
        return f"two-row(top={self.dims[0]},bottom={self.dims[1]})"

    @property
    def is_full_dimensional(self) -> bool:
        return len(self.hull) >= 3

    def hull_edges(self) -> list[Edge]:
        h = self.hull
        return [Edge.between(h[i], h[(i + 1) % len(h)]) for i in range(len(h))]

    def hull_side(self, p) -> int | None:
        """Index i of a hull side ``hull[i] -> hull[i+1]`` containing p, or None."""
        h = self.hull
        for i in range(len(h)):
            if on_segment(p, h[i], h[(i + 1) % len(h)]):
                return i
        return None

    def on_boundary(self, p) -> bool:
        return self.hull_side(p) is not None

    def is_corner(self, p) -> bool:
        return Point(*p) in self.hull

    def on_hull_boundary(self, e: Edge) -> bool:
        """Whether the whole segment lies inside one side of the hull."""
        h = self.hull
        for i in range(len(h)):
            u, v = h[i], h[(i + 1) % len(h)]
            if on_segment(e.a, u, v) and on_segment(e.b, u, v):
                return True
        return False

    def boundary_directions(self, p) -> tuple[tuple[int, int], tuple[int, int]] | None:
        """Primitive directions (forward, backward) along the hull at p.

        ``forward`` follows the counter-clockwise traversal; the hull interior is
        swept counter-clockwise from ``forward`` to ``backward``.
        """
        h = self.hull
        p = Point(*p)
        if p in h:
            i = h.index(p)
            nxt, prv = h[(i + 1) % len(h)], h[i - 1]
            return primitive_direction(p, nxt), primitive_direction(p, prv)
        i = self.hull_side(p)
        if i is None:
            return None
        u, v = h[i], h[(i + 1) % len(h)]
        return primitive_direction(p, v), primitive_direction(p, u)

    def hull_points(self) -> list[Point]:
        return [p for p in self.points if self.on_boundary(p)]


def candidate_edges(cfg: Configuration, bimonotone_only: bool = False,
                    primitive_only: bool = False) -> list[Edge]:
    """Internal candidate edges of a configuration in lexicographic order."""
    pts = sorted(cfg.points)
    out = []
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            e = Edge(p, q)
            if cfg.on_hull_boundary(e):
                continue
            if bimonotone_only and not is_bimonotone(e):
                continue
            if primitive_only and not e.is_primitive():
                continue
            out.append(e)
    return out


def directions_ok(dirs, boundary=None) -> bool:
    """Angular-gap test for a set of primitive directions around one point.

    ``boundary`` is the (forward, backward) hull direction pair when the point
    lies on the hull; the exterior gap from ``backward`` to ``forward`` is not
    a face angle and is skipped.
    """
    dirs = set(dirs)
    if not dirs:
        return True
    if boundary is not None:
        dirs.update(boundary)
    ordered = sorted(dirs, key=angle_key)
    k = len(ordered)
    for i in range(k):
        u, v = ordered[i], ordered[(i + 1) % k]
        if boundary is not None and u == boundary[1] and v == boundary[0]:
            continue
        if not gap_at_most_pi(u, v):
            return False
    return True


def local_convexity_ok(cfg: Configuration, edges: Iterable[Edge], p) -> bool:
    """Every face angle at p is at most pi (points without incident edges pass)."""
    p = Point(*p)
    dirs = [primitive_direction(p, e.other(p)) for e in edges if p in (e.a, e.b)]
    if not dirs:
        return True
    return directions_ok(dirs, cfg.boundary_directions(p))
