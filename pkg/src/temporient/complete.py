"""Temporal transitive completion: add as few time-edges as possible.

For an oriented graph, T[u, w] is the largest last label over tail-heavy
(u, w)-paths of length >= 2 (paths whose last edge carries the maximum
label).  Every such pair must end up joined by u->w with a label at least
T[u, w], so the pairs of T that are non-edges are exactly the edges to add.
"""
from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .core import DirectedTimeEdge, Orientation, TemporalGraph, Variant


@dataclass
class TailHeavyTable:
    """T values per ordered pair; absent pairs are bottom.

    `required(u, w)` is the label the closing edge must reach: T itself, or
    T + 1 for the strong variants.
    """

    values: dict[tuple[int, int], int]
    variant: Variant
    diverged: bool = False

    def get(self, u: int, w: int) -> Optional[int]:
        return self.values.get((u, w))

    def required(self, u: int, w: int) -> Optional[int]:
        t = self.values.get((u, w))
        if t is None:
            return None
        return t + 1 if self.variant.strong else t


@dataclass
class CompletionResult:
    yes: bool
    added: tuple[DirectedTimeEdge, ...] = ()
    orientation: Optional[Orientation] = None
    reason: Optional[str] = None
    table: Optional[TailHeavyTable] = None
    stats: dict = field(default_factory=dict)

    @property
    def answer(self) -> str:
        return "YES" if self.yes else "NO"


def _in_lists(g: TemporalGraph, arcs) -> list[list[int]]:
    inn: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in sorted(arcs):
        inn[v].append(u)
    return inn


def tail_heavy_table(g: TemporalGraph, f: Orientation, variant: Variant) -> TailHeavyTable:
    """T via one backward search per arc v->w.

    The search runs from v after deleting w and every arc whose label exceeds
    lambda(v, w) (or reaches it, for strict variants); each vertex it reaches
    has a tail-heavy path to w ending with v->w.  Strong variants use the
    fixpoint in `requirement_table` instead, since their added edges carry
    larger labels than the paths that force them.
    """
    if variant.strong:
        return requirement_table(g, f, variant)
    inn: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for u, v in sorted(f.arcs):
        inn[v].append((u, g.label(u, v)))
    strict = variant.strict
    T: dict[tuple[int, int], int] = {}
    for v, w in sorted(f.arcs):
        top = g.label(v, w)
        seen = {v, w}
        stack = [v]
        while stack:
            x = stack.pop()
            for y, lab in inn[x]:
                if y in seen or lab > top or (strict and lab == top):
                    continue
                seen.add(y)
                stack.append(y)
        seen.discard(w)
        for u in seen:
            if u != v and T.get((u, w), 0) < top:
                T[(u, w)] = top
    return TailHeavyTable(T, variant)


def requirement_table(g: TemporalGraph, f: Orientation, variant: Variant) -> TailHeavyTable:
    """Lower bounds on every forced closing edge, by fixpoint iteration.

    An arc u->v followed by a (present or required) u->w ... v->w label e
    with a premise forces u->w with label at least e (+1 if strong).  Works
    for partial orientations too: unoriented edges simply contribute nothing
    until oriented, so the bounds only grow as more of f is fixed.
    """
    delta = 1 if variant.strong else 0
    arcs = f.arcs
    inn = _in_lists(g, arcs)
    T: dict[tuple[int, int], int] = {}
    cap = max(g.labels(), default=0) + g.n * g.n + 2
    queue: deque = deque()

    def relax(u: int, w: int, e: int):
        if u != w and T.get((u, w), 0) < e:
            T[(u, w)] = e
            if (u, w) not in arcs:
                queue.append((u, w))

    for v, w in sorted(arcs):
        e = g.label(v, w)
        for u in inn[v]:
            if variant.premise(g.label(u, v), e):
                relax(u, w, e)
    while queue:
        v, w = queue.popleft()
        e = T[(v, w)] + delta  # label the added edge v->w would carry
        if e > cap:
            return TailHeavyTable(T, variant, diverged=True)
        for u in inn[v]:
            if variant.premise(g.label(u, v), e):
                relax(u, w, e)
    return TailHeavyTable(T, variant)


def completion_set(g: TemporalGraph, f: Orientation, variant: Variant):
    """(X, Y): X maps each pair with a T value to its required label; Y keeps the non-edges."""
    table = tail_heavy_table(g, f, variant)
    X = {p: table.required(*p) for p in table.values}
    Y = {p: t for p, t in X.items() if not g.has_edge(*p)}
    return X, Y, table


def _clear_no(g: TemporalGraph, arcs, X: dict) -> Optional[str]:
    for (u, w), req in sorted(X.items()):
        if (w, u) in X:
            return "both-directions"
        if (w, u) in arcs:
            return "reversed-edge"
        if (u, w) in arcs and g.label(u, w) < req:
            return "label-too-small"
    return None


def solve_ttc_oriented(g: TemporalGraph, f: Orientation, k: int, variant: Variant) -> CompletionResult:
    if not f.is_proper(g):
        raise ValueError("solve_ttc_oriented needs every edge oriented")
    X, Y, table = completion_set(g, f, variant)
    if table.diverged:
        return CompletionResult(False, reason="unbounded-labels", orientation=f, table=table)
    reason = _clear_no(g, f.arcs, X)
    if reason is None and len(Y) > k:
        reason = "budget"
    if reason is not None:
        return CompletionResult(False, orientation=f, reason=reason, table=table)
    added = tuple(DirectedTimeEdge(u, w, t) for (u, w), t in sorted(Y.items()))
    return CompletionResult(True, added, f, table=table)


def _partial_state(g: TemporalGraph, arcs: frozenset, k: int, variant: Variant):
    """Prune test for a partial orientation: None if no extension can succeed,
    else the arcs that every successful extension must contain."""
    table = requirement_table(g, Orientation(arcs), variant)
    if table.diverged:
        return None
    forced = set()
    extra = 0
    for (u, w) in table.values:
        req = table.required(u, w)
        if (w, u) in table.values or (w, u) in arcs:
            return None
        if g.has_edge(u, w):
            if g.label(u, w) < req:
                return None
            if (u, w) not in arcs:
                forced.add((u, w))
        else:
            extra += 1
    if extra > k:
        return None
    return forced


def _search(g: TemporalGraph, arcs: frozenset, free: list, k: int, variant: Variant,
            stats: dict) -> Optional[CompletionResult]:
    """Depth-first over the free edges, smaller-index tail first, with pruning.

    Pruning only discards subtrees in which every extension fails, and
    forced arcs have a single viable direction, so the first success is the
    lexicographically least successful extension.
    """
    stats["nodes"] = stats.get("nodes", 0) + 1
    while True:
        forced = _partial_state(g, arcs, k, variant)
        if forced is None:
            return None
        if not forced:
            break
        arcs = arcs | forced
    rest = [(u, v) for u, v in free if (u, v) not in arcs and (v, u) not in arcs]
    if not rest:
        res = solve_ttc_oriented(g, Orientation(arcs), k, variant)
        return res if res.yes else None
    u, v = rest[0]
    for arc in ((u, v), (v, u)):
        res = _search(g, arcs | {arc}, rest[1:], k, variant, stats)
        if res is not None:
            return res
    return None


def _search_job(args):
    g, arcs, free, k, variant = args
    stats: dict = {}
    return _search(g, arcs, free, k, variant, stats), stats


def solve_ttc_fpt(g: TemporalGraph, f: Orientation, k: int, variant: Variant,
                  jobs: int = 1) -> CompletionResult:
    """Exact completion for a partial orientation by searching its extensions.

    Equivalent to trying all 2^q extensions (q unoriented edges) with the
    oriented solver, with subtrees cut as soon as they provably fail.  With
    jobs > 1 the first few free edges are split across worker processes; the
    reported extension is the same as in the sequential run.
    """
    if not f.is_partial_of(g):
        raise ValueError("f is not a partial orientation of g")
    free = f.unoriented(g)
    stats: dict = {"free": len(free)}
    if jobs <= 1 or len(free) < 2:
        res = _search(g, f.arcs, free, k, variant, stats)
    else:
        depth = min(len(free), max(1, math.ceil(math.log2(jobs))))
        tasks = []
        for mask in range(1 << depth):
            pre = [(u, v) if not (mask >> (depth - 1 - i)) & 1 else (v, u)
                   for i, (u, v) in enumerate(free[:depth])]
            tasks.append((g, f.arcs | frozenset(pre), free[depth:], k, variant))
        res = None
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for out, st in pool.map(_search_job, tasks):
                stats["nodes"] = stats.get("nodes", 0) + st.get("nodes", 0)
                if res is None and out is not None:
                    res = out
    if res is None:
        return CompletionResult(False, reason="no-extension", stats=stats)
    res.stats = stats
    return res
