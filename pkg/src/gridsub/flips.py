"""Full-point triangulations of grids, diagonal flips and flip-graph search.

A triangulation stores its complete edge set, unit hull edges included. All
triangulations here use every grid point, so every triangle is unimodular
(doubled area 1) and the edge and triangle counts are fixed by the grid size.
"""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .enumeration import BudgetExceeded, Subdivision, boundary_unit_edges, default_node_budget
from .geometry import Configuration, Edge, Point, is_bimonotone, orient

log = logging.getLogger(__name__)


class InvalidFlip(ValueError):
    pass


class DescentViolation(AssertionError):
    """A step of the longest-diagonal descent broke one of its guarantees."""


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


@dataclass(frozen=True)
class Flip:
    removed: Edge
    inserted: Edge
    quad: tuple[Point, Point, Point, Point]  # removed.a, c, removed.b, d

    def inverse(self) -> "Flip":
        a, c, b, d = self.quad
        return Flip(self.inserted, self.removed, (c, b, d, a))


@dataclass(frozen=True)
class Triangulation:
    cfg: Configuration
    edges: frozenset[Edge]

    @classmethod
    def from_edges(cls, cfg: Configuration, edges: Iterable) -> "Triangulation":
        return cls(cfg, frozenset(Edge.between(*e) for e in edges))

    @classmethod
    def from_subdivision(cls, sub: Subdivision) -> "Triangulation":
        return cls(sub.cfg, frozenset(sub.edges) | frozenset(boundary_unit_edges(sub.cfg)))

    @cached_property
    def key(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def neighbors(self) -> dict[Point, frozenset[Point]]:
        adj: dict[Point, set[Point]] = {p: set() for p in self.cfg.points}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {p: frozenset(s) for p, s in adj.items()}

    def internal_edges(self) -> list[Edge]:
        return sorted(e for e in self.edges if not self.cfg.on_hull_boundary(e))

    def apexes(self, e: Edge) -> tuple[Point | None, Point | None]:
        """Third vertices of the unimodular triangles left and right of ``e``."""
        left = right = None
        nb = self.neighbors
        for c in nb[e.a] & nb[e.b]:
            s = _cross(e.a, e.b, c)
            if s == 1:
                left = c
            elif s == -1:
                right = c
        return left, right

    def triangles(self) -> list[tuple[Point, Point, Point]]:
        tris = set()
        for e in self.edges:
            for c in self.apexes(e):
                if c is not None:
                    tris.add(tuple(sorted((e.a, e.b, c))))
        return sorted(tris)

    def is_bimonotone(self) -> bool:
        return all(is_bimonotone(e) for e in self.edges)

    def invariant_errors(self) -> list[str]:
        cols, rows = self.cfg.dims
        errors = []
        want_e = 3 * cols * rows - 2 * cols - 2 * rows + 1
        want_t = 2 * (cols - 1) * (rows - 1)
        if len(self.edges) != want_e:
            errors.append(f"{len(self.edges)} edges, expected {want_e}")
        tris = self.triangles()
        if len(tris) != want_t:
            errors.append(f"{len(tris)} unimodular triangles, expected {want_t}")
        for p, nb in self.neighbors.items():
            if len(nb) < 2:
                errors.append(f"point {p} has degree {len(nb)}")
        return errors

    def __len__(self) -> int:
        return len(self.edges)


def canonical_triangulation(cols: int, rows: int) -> Triangulation:
    """Unit horizontal and vertical edges plus every diagonal (i,j)-(i+1,j+1)."""
    if cols < 2 or rows < 2:
        raise ValueError("canonical triangulation needs at least a 2x2 grid")
    cfg = Configuration.grid(cols, rows)
    edges = set()
    for x in range(cols):
        for y in range(rows):
            if x + 1 < cols:
                edges.add(Edge(Point(x, y), Point(x + 1, y)))
            if y + 1 < rows:
                edges.add(Edge(Point(x, y), Point(x, y + 1)))
            if x + 1 < cols and y + 1 < rows:
                edges.add(Edge(Point(x, y), Point(x + 1, y + 1)))
    return Triangulation(cfg, frozenset(edges))


def flip_for_edge(t: Triangulation, e: Edge) -> Flip | None:
    """The flip removing ``e``, or None if its quadrilateral is not strictly convex."""
    if e not in t.edges or t.cfg.on_hull_boundary(e):
        return None
    c, d = t.apexes(e)
    if c is None or d is None:
        return None
    # Strict convexity: the endpoints of e lie strictly on opposite sides of cd.
    if orient(c, d, e.a) * orient(c, d, e.b) >= 0:
        return None
    return Flip(e, Edge.between(c, d), (e.a, c, e.b, d))


def available_flips(t: Triangulation, bimonotone_only: bool = False) -> list[Flip]:
    out = []
    for e in t.internal_edges():
        f = flip_for_edge(t, e)
        if f is None:
            continue
        if bimonotone_only and not is_bimonotone(f.inserted):
            continue
        out.append(f)
    return out


def apply_flip(t: Triangulation, f: Flip) -> Triangulation:
    current = flip_for_edge(t, f.removed)
    if current is None or current.inserted != f.inserted:
        raise InvalidFlip(f"{f.removed} -> {f.inserted} is not available")
    return Triangulation(t.cfg, (t.edges - {f.removed}) | {f.inserted})


def _neighbors_of(args) -> list[tuple[Edge, ...]]:
    cfg, key, bimonotone_only = args
    t = Triangulation(cfg, frozenset(key))
    return [apply_flip(t, f).key for f in available_flips(t, bimonotone_only)]


def bfs(cols: int, rows: int, bimonotone_only: bool = False, budget: int | None = None,
        threads: int = 1) -> set[tuple[Edge, ...]]:
    """Visited set of the flip-graph search started at the canonical triangulation.

    Keys are full sorted edge tuples, so distinct triangulations never collide.
    With ``threads > 1`` each BFS level is expanded by a process pool and merged
    in frontier order; the visited set does not depend on scheduling.
    """
    budget = default_node_budget() if budget is None else budget
    start = canonical_triangulation(cols, rows)
    cfg = start.cfg
    seen = {start.key}
    if threads == 1:
        queue = deque([start])
        while queue:
            t = queue.popleft()
            for f in available_flips(t, bimonotone_only):
                nxt = apply_flip(t, f)
                if nxt.key not in seen:
                    seen.add(nxt.key)
                    if len(seen) > budget:
                        raise BudgetExceeded(f"visited-set budget {budget} exhausted")
                    queue.append(nxt)
        return seen
    frontier = [start.key]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        while frontier:
            jobs = [(cfg, k, bimonotone_only) for k in frontier]
            nxt_frontier = []
            chunk = max(1, len(jobs) // (4 * threads))
            for result in pool.map(_neighbors_of, jobs, chunksize=chunk):
                for k in result:
                    if k not in seen:
                        seen.add(k)
                        nxt_frontier.append(k)
            if len(seen) > budget:
                raise BudgetExceeded(f"visited-set budget {budget} exhausted")
            log.debug("bfs level: %d new, %d total", len(nxt_frontier), len(seen))
            frontier = nxt_frontier
    return seen


def bfs_count(cols: int, rows: int, bimonotone_only: bool = False, budget: int | None = None,
              threads: int = 1) -> int:
    return len(bfs(cols, rows, bimonotone_only, budget, threads))


def _is_canonical_edge(e: Edge) -> bool:
    return e.delta in ((1, 0), (0, 1), (1, 1))


def canonicalize_by_longest_diagonal(t: Triangulation) -> list[Flip]:
    """Flip the longest non-canonical diagonal until the canonical triangulation.

    Each step checks that the two triangles on the chosen diagonal form a
    parallelogram and that the replacement diagonal is bimonotone and strictly
    shorter; any failure raises :class:`DescentViolation`.
    """
    if not t.is_bimonotone():
        raise ValueError("descent needs a bimonotone triangulation")
    cols, rows = t.cfg.dims
    target = canonical_triangulation(cols, rows)
    steps: list[Flip] = []
    limit = len(t.edges) * (cols * cols + rows * rows)
    while True:
        long_edges = [e for e in t.edges if not _is_canonical_edge(e)]
        if not long_edges:
            break
        if len(steps) > limit:
            raise DescentViolation("descent did not terminate")
        # Longest first; ties go to the lexicographically smallest edge.
        e = min(long_edges, key=lambda e: (-e.length2, e))
        c, d = t.apexes(e)
        if c is None or d is None:
            raise DescentViolation(f"{e} is not flanked by two unimodular triangles")
        if (e.a.x + e.b.x, e.a.y + e.b.y) != (c.x + d.x, c.y + d.y):
            raise DescentViolation(f"quadrilateral around {e} is not a parallelogram")
        f = flip_for_edge(t, e)
        if f is None:
            raise DescentViolation(f"{e} cannot be flipped")
        if not is_bimonotone(f.inserted):
            raise DescentViolation(f"flipping {e} inserts non-bimonotone {f.inserted}")
        if f.inserted.length2 >= e.length2:
            raise DescentViolation(f"flipping {e} does not shorten it")
        t = apply_flip(t, f)
        steps.append(f)
    if t.edges != target.edges:
        raise DescentViolation("descent stopped away from the canonical triangulation")
    return steps
