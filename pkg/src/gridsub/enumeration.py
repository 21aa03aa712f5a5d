"""Counting subdivisions by pruned backtracking over internal edge subsets.

A subdivision is represented by its set of internal edges (hull sides are
implicit). The search walks the candidate edges in lexicographic order and
decides membership of one edge per level. Pairwise conflicts are pruned with
per-edge bitmasks; the angular-gap test at a point runs as soon as the last
candidate incident to that point has been decided.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator

from .geometry import (
    Configuration,
    Edge,
    Interaction,
    Point,
    angle_key,
    candidate_edges,
    gap_at_most_pi,
    interact,
    is_bimonotone,
    literal_compatible,
    local_convexity_ok,
    on_segment,
    primitive_direction,
)

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10**10
BUDGET_ENV = "GRIDSUB_BUDGET_NODES"

STRICT = "strict"
PAPER_LITERAL = "paper-literal"
ALL_PAIRS = "all-pairs"
PRIMITIVE_ONLY = "primitive-only"


class BudgetExceeded(RuntimeError):
    """The search hit its node or time budget before finishing."""


def default_node_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class Options:
    edge_interaction: str = STRICT
    candidates: str = PRIMITIVE_ONLY
    node_budget: int | None = None
    time_budget: float | None = None
    threads: int = 1
    split_depth: int = 12

    def __post_init__(self):
        if self.edge_interaction not in (STRICT, PAPER_LITERAL):
            raise ValueError(f"unknown edge interaction rule {self.edge_interaction!r}")
        if self.candidates not in (ALL_PAIRS, PRIMITIVE_ONLY):
            raise ValueError(f"unknown candidate set {self.candidates!r}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @property
    def budget(self) -> int:
        return self.node_budget if self.node_budget is not None else default_node_budget()

    def conventions(self) -> dict:
        return {"edge_interaction": self.edge_interaction, "candidates": self.candidates}


@dataclass(frozen=True)
class Subdivision:
    cfg: Configuration
    edges: tuple[Edge, ...]

    def used_points(self) -> set[Point]:
        used = set(self.cfg.hull)
        for e in self.edges:
            used.update(e)
        return used

    def is_valid(self) -> bool:
        """From-scratch check: pairwise interaction plus the gap test everywhere."""
        for e1, e2 in combinations(self.edges, 2):
            if interact(e1, e2) is Interaction.CONFLICT:
                return False
        return all(local_convexity_ok(self.cfg, self.edges, p) for p in self.cfg.points)


@dataclass
class ConflictTable:
    edges: list[Edge]
    masks: list[int]

    @classmethod
    def build(cls, cfg: Configuration, edges: list[Edge], rule: str = STRICT) -> "ConflictTable":
        pts = frozenset(cfg.points)
        masks = [0] * len(edges)
        for i, j in combinations(range(len(edges)), 2):
            if rule == STRICT:
                clash = interact(edges[i], edges[j]) is Interaction.CONFLICT
            else:
                clash = not literal_compatible(edges[i], edges[j], pts)
            if clash:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
        return cls(edges, masks)

    def is_symmetric(self) -> bool:
        for i, m in enumerate(self.masks):
            if m >> i & 1:
                return False
            for j in range(len(self.masks)):
                if (m >> j & 1) != (self.masks[j] >> i & 1):
                    return False
        return True


@dataclass
class _PointCheck:
    """Pre-sorted directions at one point; answers the gap test for a submask."""

    ordered: list  # (bit or 0 for hull direction, direction) in angular order
    exterior: tuple | None
    memo: dict = field(default_factory=dict)

    def ok(self, sub: int) -> bool:
        hit = self.memo.get(sub)
        if hit is not None:
            return hit
        if sub == 0:
            res = True
        else:
            dirs = [d for bit, d in self.ordered if bit == 0 or sub & bit]
            k = len(dirs)
            res = True
            for i in range(k):
                u, v = dirs[i], dirs[(i + 1) % k]
                if self.exterior is not None and (u, v) == self.exterior:
                    continue
                if not gap_at_most_pi(u, v):
                    res = False
                    break
        self.memo[sub] = res
        return res


class SearchContext:
    """Everything the backtracking needs for one (configuration, mode, options)."""

    def __init__(self, cfg: Configuration, bimonotone_only: bool, options: Options = Options()):
        if not cfg.is_full_dimensional:
            raise ValueError(f"{cfg.describe()} has a degenerate convex hull")
        self.cfg = cfg
        self.bimonotone_only = bimonotone_only
        self.options = options
        # A negative hull side already breaks bimonotonicity for every subdivision.
        self.hull_ok = not bimonotone_only or all(is_bimonotone(e) for e in cfg.hull_edges())
        self.edges = candidate_edges(cfg, bimonotone_only, options.candidates == PRIMITIVE_ONLY)
        self.conflicts = ConflictTable.build(cfg, self.edges, options.edge_interaction)
        n = len(self.edges)
        self.incident: dict[Point, int] = {p: 0 for p in cfg.points}
        last: dict[Point, int] = {}
        for i, e in enumerate(self.edges):
            for p in e:
                self.incident[p] |= 1 << i
                last[p] = i
        self.checks: dict[Point, _PointCheck] = {}
        self.closes: list[list[tuple[int, _PointCheck]]] = [[] for _ in range(n)]
        for p, i in last.items():
            check = self._point_check(p)
            self.checks[p] = check
            self.closes[i].append((self.incident[p], check))

    def _point_check(self, p: Point) -> _PointCheck:
        items = []
        for i, e in enumerate(self.edges):
            if p in e:
                items.append((1 << i, primitive_direction(p, e.other(p))))
        boundary = self.cfg.boundary_directions(p)
        exterior = None
        if boundary is not None:
            fwd, bwd = boundary
            items += [(0, fwd), (0, bwd)]
            exterior = (bwd, fwd)
        items.sort(key=lambda it: angle_key(it[1]))
        return _PointCheck(items, exterior)

    def closure_ok(self, i: int, chosen: int) -> bool:
        for inc, check in self.closes[i]:
            if not check.ok(chosen & inc):
                return False
        return True

    # -- counting -----------------------------------------------------------

    def prefixes(self, depth: int) -> list[tuple[int, int, int]]:
        """All surviving (next index, chosen, forbidden) states after ``depth`` levels."""
        depth = min(depth, len(self.edges))
        out: list[tuple[int, int, int]] = []
        masks = self.conflicts.masks

        def walk(i, chosen, forbidden):
            if i == depth:
                out.append((i, chosen, forbidden))
                return
            bit = 1 << i
            if not forbidden & bit:
                c = chosen | bit
                if self.closure_ok(i, c):
                    walk(i + 1, c, forbidden | masks[i])
            if self.closure_ok(i, chosen):
                walk(i + 1, chosen, forbidden)

        walk(0, 0, 0)
        return out

    def count_from(self, start: int, chosen: int, forbidden: int, budget: int,
                   deadline: float | None = None,
                   visit: Callable[[int], None] | None = None) -> tuple[int, int]:
        """Count completions of a partial assignment; returns (count, nodes)."""
        n = len(self.edges)
        masks = self.conflicts.masks
        closes = self.closes
        nodes = 0

        def rec(i, chosen, forbidden):
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"node budget {budget} exhausted")
            if deadline is not None and not nodes & 0xFFFF and time.monotonic() > deadline:
                raise BudgetExceeded("time budget exhausted")
            if i == n:
                if visit is not None:
                    visit(chosen)
                return 1
            total = 0
            bit = 1 << i
            closing = closes[i]
            if not forbidden & bit:
                c = chosen | bit
                for inc, check in closing:
                    if not check.ok(c & inc):
                        break
                else:
                    total += rec(i + 1, c, forbidden | masks[i])
            for inc, check in closing:
                if not check.ok(chosen & inc):
                    break
            else:
                total += rec(i + 1, chosen, forbidden)
            return total

        return rec(start, chosen, forbidden), nodes

    def edge_set(self, chosen: int) -> tuple[Edge, ...]:
        return tuple(e for i, e in enumerate(self.edges) if chosen >> i & 1)

    # -- listing in lexicographic edge-set order ------------------------------

    def iter_lex(self) -> Iterator[int]:
        n = len(self.edges)
        masks = self.conflicts.masks

        def rec(pos, chosen, forbidden):
            # Emit ``chosen`` itself if excluding every remaining edge is valid.
            if all(self.closure_ok(i, chosen) for i in range(pos, n)):
                yield chosen
            for k in range(pos, n):
                if k > pos and not self.closure_ok(k - 1, chosen):
                    break
                bit = 1 << k
                if forbidden & bit:
                    continue
                c = chosen | bit
                if self.closure_ok(k, c):
                    yield from rec(k + 1, c, forbidden | masks[k])

        if self.hull_ok:
            yield from rec(0, 0, 0)


@lru_cache(maxsize=32)
def _context(cfg: Configuration, bimonotone_only: bool, options: Options) -> SearchContext:
    return SearchContext(cfg, bimonotone_only, replace(options, threads=1))


def _run_task(args):
    cfg, bimonotone_only, options, start, chosen, forbidden, budget, deadline = args
    ctx = _context(cfg, bimonotone_only, options)
    return ctx.count_from(start, chosen, forbidden, budget, deadline)


def count_subdivisions_with_stats(cfg: Configuration, bimonotone_only: bool = False,
                                  options: Options = Options()) -> tuple[int, int]:
    """Like :func:`count_subdivisions` but also returns the number of search nodes."""
    key_opts = replace(options, threads=1)
    ctx = _context(cfg, bimonotone_only, key_opts)
    if not ctx.hull_ok:
        return 0, 0
    budget = options.budget
    deadline = time.monotonic() + options.time_budget if options.time_budget else None
    if options.threads == 1:
        return ctx.count_from(0, 0, 0, budget, deadline)
    tasks = ctx.prefixes(options.split_depth)
    prefix_nodes = len(tasks)
    jobs = [(cfg, bimonotone_only, key_opts, i, c, f, budget, deadline) for i, c, f in tasks]
    log.debug("split %s into %d tasks over %d workers", cfg.describe(), len(jobs), options.threads)
    with ProcessPoolExecutor(max_workers=options.threads) as pool:
        results = list(pool.map(_run_task, jobs, chunksize=max(1, len(jobs) // (8 * options.threads))))
    count = sum(r[0] for r in results)
    nodes = prefix_nodes + sum(r[1] for r in results)
    if nodes > budget:
        raise BudgetExceeded(f"node budget {budget} exhausted")
    return count, nodes


def count_subdivisions(cfg: Configuration, bimonotone_only: bool = False,
                       options: Options = Options()) -> int:
    """Exact number of (bimonotone) subdivisions of ``cfg``.

    Raises :class:`BudgetExceeded` instead of returning a partial count.
    """
    return count_subdivisions_with_stats(cfg, bimonotone_only, options)[0]


def list_subdivisions(cfg: Configuration, bimonotone_only: bool = False,
                      limit: int | None = None, options: Options = Options()) -> Iterator[Subdivision]:
    """Yield every subdivision once, ordered by its sorted edge tuple."""
    ctx = _context(cfg, bimonotone_only, replace(options, threads=1))
    for k, chosen in enumerate(ctx.iter_lex()):
        if limit is not None and k >= limit:
            return
        yield Subdivision(cfg, ctx.edge_set(chosen))


def _unimodular_triangles(cfg: Configuration, edges) -> list[tuple[Point, Point, Point]]:
    adj: dict[Point, set[Point]] = {p: set() for p in cfg.points}
    for e in edges:
        adj[e.a].add(e.b)
        adj[e.b].add(e.a)
    tris = []
    for a in cfg.points:
        for b in adj[a]:
            if b <= a:
                continue
            for c in adj[a] & adj[b]:
                if c <= b:
                    continue
                area2 = abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))
                if area2 == 1:
                    tris.append((a, b, c))
    return tris


def full_triangulations(cfg: Configuration, bimonotone_only: bool = False) -> list[Subdivision]:
    """Brute-force list of triangulations that use every point of ``cfg``.

    Filters the subdivision enumeration: every point used, and the maximal
    internal edge count ``3V - 3 - 2h`` so that every face is a triangle.
    Unimodularity of all triangles is then checked, not assumed.
    """
    v = len(cfg.points)
    h = len(cfg.hull_points())
    want = 3 * v - 3 - 2 * h
    doubled_area = _doubled_hull_area(cfg)
    out = []
    for sub in list_subdivisions(cfg, bimonotone_only):
        if len(sub.edges) != want or len(sub.used_points()) != v:
            continue
        boundary = boundary_unit_edges(cfg)
        tris = _unimodular_triangles(cfg, list(sub.edges) + boundary)
        if len(tris) != doubled_area:
            raise AssertionError(f"non-unimodular triangulation {sub.edges}")
        out.append(sub)
    return out


def count_full_triangulations(cfg: Configuration, bimonotone_only: bool = False) -> int:
    return len(full_triangulations(cfg, bimonotone_only))


def _doubled_hull_area(cfg: Configuration) -> int:
    h = cfg.hull
    return abs(sum(h[i].x * h[(i + 1) % len(h)].y - h[(i + 1) % len(h)].x * h[i].y
                   for i in range(len(h))))


def boundary_unit_edges(cfg: Configuration) -> list[Edge]:
    """Hull sides split at every configuration point they contain."""
    out = []
    for side in cfg.hull_edges():
        on = sorted(p for p in cfg.points if on_segment(p, side.a, side.b))
        out += [Edge(on[i], on[i + 1]) for i in range(len(on) - 1)]
    return out
