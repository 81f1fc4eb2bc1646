"""Brute-force ground truth for recognition, completion and forcing classes.

All orientation searches evaluate the transitivity definitions directly on
vertex triples, vectorized with numpy over every candidate at once (one row
per orientation / label choice).  Nothing here shares code with the solvers.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np

from .core import MultiLabelTemporalGraph, Orientation, TemporalGraph, Variant
from .implication import ClassPartition

ENV_BUDGET = "TEMPORIENT_ORACLE_BUDGET"


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_edges: int = 16
    max_additions: int = 3
    max_nonedges: int = 12
    max_free: int = 12  # unoriented edges in completion searches
    labels: Optional[tuple[int, ...]] = None

    @classmethod
    def from_env(cls) -> "OracleBudget":
        """Defaults, overridden by e.g. TEMPORIENT_ORACLE_BUDGET="edges=20,additions=4"."""
        spec = os.environ.get(ENV_BUDGET, "").strip()
        b = cls()
        if not spec:
            return b
        if spec.isdigit():
            return replace(b, max_edges=int(spec))
        names = {"edges": "max_edges", "additions": "max_additions",
                 "nonedges": "max_nonedges", "free": "max_free"}
        for item in spec.split(","):
            key, _, val = item.partition("=")
            if key.strip() not in names or not val.strip().isdigit():
                raise ValueError(f"bad {ENV_BUDGET} entry {item!r}")
            b = replace(b, **{names[key.strip()]: int(val)})
        return b


def _budget(b: Optional[OracleBudget]) -> OracleBudget:
    return b if b is not None else OracleBudget.from_env()


# A pair state holds, for an unordered vertex pair (u < v), three values that
# are either scalars or arrays over candidates: edge present, arc points u->v,
# and label.

YES = np.bool_(True)
NO = np.bool_(False)


def _arc(state, a: int, b: int):
    present, fwd, _ = state[(a, b) if a < b else (b, a)]
    fwd = np.asarray(fwd, dtype=bool)
    return present & (fwd if a < b else ~fwd)


def _violations(n: int, state: dict, variant: Variant, size: int) -> np.ndarray:
    """Rows where some directed 2-path (ab,t1),(bc,t2) with a premise lacks a good a->c."""
    bad = np.zeros(size, dtype=bool)
    for b in range(n):
        nb = [a for a in range(n) if a != b and ((a, b) if a < b else (b, a)) in state]
        for a in nb:
            for c in nb:
                if a == c:
                    continue
                t1 = state[(a, b) if a < b else (b, a)][2]
                t2 = state[(b, c) if b < c else (c, b)][2]
                path = _arc(state, a, b) & _arc(state, b, c) & np.asarray(variant.premise(t1, t2))
                key = (a, c) if a < c else (c, a)
                if key in state:
                    ok = _arc(state, a, c) & np.asarray(variant.closes(t2, state[key][2]))
                else:
                    ok = NO
                bad |= path & ~ok
    return bad


def _bits(count: int, width: int, offset: int = 0) -> list[np.ndarray]:
    idx = np.arange(count, dtype=np.int64)
    return [((idx >> (offset + i)) & 1).astype(bool) for i in range(width)]


def oracle_recognize(g: TemporalGraph, variant: Variant,
                     budget: Optional[OracleBudget] = None) -> Optional[Orientation]:
    """A transitive orientation found by exhaustive search, or None if none exists.

    Row r orients edge i (u < v) as u->v iff bit i of r is set; the returned
    witness is the lowest such row.
    """
    return oracle_recognize_all(g, (variant,), budget)[variant]


def oracle_recognize_all(g: TemporalGraph, variants=tuple(Variant),
                         budget: Optional[OracleBudget] = None) -> dict:
    b = _budget(budget)
    if g.m > b.max_edges:
        raise BudgetExceeded(f"{g.m} edges > oracle budget {b.max_edges}")
    size = 1 << g.m
    bits = _bits(size, g.m)
    state = {(u, v): (YES, bits[i], t) for i, (u, v, t) in enumerate(g.edges)}
    out = {}
    for var in variants:
        good = np.flatnonzero(~_violations(g.n, state, var, size))
        if len(good) == 0:
            out[var] = None
        else:
            r = int(good[0])
            out[var] = Orientation.of((u, v) if (r >> i) & 1 else (v, u)
                                      for i, (u, v) in enumerate(g.pairs))
    return out


def oracle_multilayer(g: MultiLabelTemporalGraph,
                      budget: Optional[OracleBudget] = None) -> Optional[Orientation]:
    b = _budget(budget)
    if g.m > b.max_edges:
        raise BudgetExceeded(f"{g.m} edges > oracle budget {b.max_edges}")
    size = 1 << g.m
    bits = _bits(size, g.m)
    fwd = {p: bits[i] for i, p in enumerate(g.pairs)}
    bad = np.zeros(size, dtype=bool)
    for t, pairs in g.layers().items():
        layer = {p: (YES, fwd[p], t) for p in pairs}
        # inside one layer every label is t, so the TTO check is plain static transitivity
        bad |= _violations(g.n, layer, Variant.TTO, size)
    good = np.flatnonzero(~bad)
    if len(good) == 0:
        return None
    r = int(good[0])
    return Orientation.of((u, v) if (r >> i) & 1 else (v, u) for i, (u, v) in enumerate(g.pairs))


def candidate_labels(g: TemporalGraph, k: int) -> tuple[int, ...]:
    """Every label within distance k of an existing label.

    Enough for any completion with at most k added edges: only the order of
    labels matters, and the added labels lying between two consecutive
    existing labels (or beyond the extremes) can be renumbered
    consecutively without changing any comparison.
    """
    labs = {x for t in g.labels() for x in range(max(1, t - k), t + k + 1)}
    return tuple(sorted(labs)) or tuple(range(1, k + 2))


def oracle_complete(g: TemporalGraph, f: Orientation, k: int, variant: Variant,
                    budget: Optional[OracleBudget] = None,
                    labels: Optional[tuple[int, ...]] = None) -> Optional[int]:
    """Minimum number of added time-edges (<= k) that makes some extension of f transitive."""
    return oracle_complete_witness(g, f, k, variant, budget, labels)[0]


def oracle_complete_witness(g: TemporalGraph, f: Orientation, k: int, variant: Variant,
                            budget: Optional[OracleBudget] = None,
                            labels: Optional[tuple[int, ...]] = None):
    """(size, full orientation, added time-edges) of a minimum completion, or (None, None, None)."""
    b = _budget(budget)
    if not f.is_partial_of(g):
        raise ValueError("f is not a partial orientation of g")
    free = f.unoriented(g)
    nonedges = g.non_edges()
    labels = tuple(labels or b.labels or candidate_labels(g, k))
    if k > b.max_additions or len(nonedges) > b.max_nonedges or len(free) > b.max_free:
        raise BudgetExceeded("completion instance exceeds oracle budget")
    q, L = len(free), len(labels)
    lab_arr = np.array(labels, dtype=np.int64)
    for s in range(min(k, len(nonedges)) + 1):
        size = (1 << q) * (L ** s) * (1 << s)
        idx = np.arange(size, dtype=np.int64)
        ext = idx % (1 << q)
        rest = idx >> q
        dirs = rest % (1 << s)
        lab_code = rest >> s
        base = {}
        for u, v, t in g.edges:
            if (u, v) in f.arcs:
                base[(u, v)] = (YES, YES, t)
            elif (v, u) in f.arcs:
                base[(u, v)] = (YES, NO, t)
        for i, (u, v) in enumerate(free):
            base[(u, v)] = (YES, ((ext >> i) & 1).astype(bool), g.label(u, v))
        for chosen in itertools.combinations(nonedges, s):
            state = dict(base)
            code = lab_code
            for j, (u, v) in enumerate(chosen):
                state[(u, v)] = (YES, ((dirs >> j) & 1).astype(bool), lab_arr[code % L])
                code = code // L
            good = np.flatnonzero(~_violations(g.n, state, variant, size))
            if len(good):
                r = int(good[0])
                e, rr = r % (1 << q), r >> q
                d, c = rr % (1 << s), rr >> s
                arcs = set(f.arcs)
                arcs |= {(u, v) if (e >> i) & 1 else (v, u) for i, (u, v) in enumerate(free)}
                added = []
                for j, (u, v) in enumerate(chosen):
                    t = labels[c % L]
                    c //= L
                    added.append((u, v, t) if (d >> j) & 1 else (v, u, t))
                return s, Orientation.of(arcs), added
    return None, None, None


def _related(g: TemporalGraph, d1, d2) -> bool:
    """The forcing relation, written out case by case from its definition."""
    (u, v), (x, y) = d1, d2
    t = g.label(u, v)
    if t != g.label(x, y):
        return False
    if d1 == d2:
        return True
    cases = []
    if u == x and v != y:
        cases.append(not g.has_edge(v, y))
        cases.append(g.has_edge(v, y) and g.label(v, y) < t)
    if v == y and u != x:
        cases.append(not g.has_edge(u, x))
        cases.append(g.has_edge(u, x) and g.label(u, x) < t)
    return any(cases)


def oracle_lambda_classes(g: TemporalGraph, budget: Optional[OracleBudget] = None) -> ClassPartition:
    """Forcing classes by repeated full scans over all directed-edge pairs.

    Numbering follows lexicographic seeds, as in the fast implementation, so
    the two partitions can be compared directly.  Nothing stops at an
    improper class here; `improper` is the first one in seed order.
    """
    b = _budget(budget)
    if g.m > max(b.max_edges, 40):
        raise BudgetExceeded("too many edges for the naive closure")
    darcs = [(u, v) for u, v in g.pairs] + [(v, u) for u, v in g.pairs]
    parent = {d: d for d in darcs}

    def find(d):
        while parent[d] != d:
            parent[d] = parent[parent[d]]
            d = parent[d]
        return d

    changed = True
    while changed:
        changed = False
        for d1 in darcs:
            for d2 in darcs:
                if _related(g, d1, d2) and find(d1) != find(d2):
                    parent[find(d1)] = find(d2)
                    changed = True
    groups: dict = {}
    for d in darcs:
        groups.setdefault(find(d), set()).add(d)
    part = ClassPartition()
    for u, v in g.pairs:
        if (u, v) in part.literal_of:
            continue
        cls = frozenset(groups[find((u, v))])
        part.classes.append(cls)
        if (v, u) in cls:
            part.improper = part.improper or cls
            for a, c in cls:
                part.literal_of.setdefault((a, c), 0)
            continue
        s = len(part.classes)
        for a, c in cls:
            part.literal_of[(a, c)] = s
            part.literal_of[(c, a)] = -s
    return part


def oracle_answer(g: Union[TemporalGraph, MultiLabelTemporalGraph], variant: Optional[Variant]) -> bool:
    if isinstance(g, MultiLabelTemporalGraph):
        return oracle_multilayer(g) is not None
    return oracle_recognize(g, variant) is not None
