"""Random instance families shared by the acceptance suite and scripts/."""
from __future__ import annotations

import random

from temporient.complete import solve_ttc_oriented
from temporient.core import Orientation, TemporalGraph, Variant
from temporient.reductions import CnfFormula, CnfKind


def random_sat34(rng: random.Random, n: int) -> CnfFormula:
    """Random (3,4)-SAT formula; 4n literal slots, so n must be a multiple of 3."""
    slots = [x for x in range(1, n + 1) for _ in range(4)]
    rng.shuffle(slots)
    lits = [x if rng.random() < 0.5 else -x for x in slots]
    return CnfFormula(n, tuple(tuple(lits[i:i + 3]) for i in range(0, len(lits), 3)), CnfKind.SAT34)


def random_impl2(rng: random.Random, n: int, m: int) -> CnfFormula:
    clauses = []
    for _ in range(m):
        a, b = rng.sample(range(1, n + 1), 2)
        clauses.append((a * rng.choice((1, -1)), b * rng.choice((1, -1))))
    return CnfFormula(n, tuple(clauses), CnfKind.IMPL2)


def random_nae(rng: random.Random, n: int, m: int) -> CnfFormula:
    """Monotone NAE formula with three distinct variables per clause."""
    return CnfFormula(n, tuple(tuple(rng.sample(range(1, n + 1), 3)) for _ in range(m)), CnfKind.MONO_NAE3)


def random_oriented(rng: random.Random, n: int, p: float, max_label: int = 5):
    """G(n, p) with uniform labels and a uniformly random orientation."""
    edges, arcs = [], []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                edges.append((str(a), str(b), rng.randint(1, max_label)))
                arcs.append((a, b) if rng.random() < 0.5 else (b, a))
    g = TemporalGraph(edges, vertices=[str(i) for i in range(n)])
    return g, Orientation.of((g.index[str(a)], g.index[str(b)]) for a, b in arcs)


def closed_graph(rng: random.Random, n: int, m: int, buckets: int = 8) -> TemporalGraph:
    """A temporally transitive graph with roughly m edges before closing.

    Edges run from lower to higher index with a label growing with the head,
    then the completion of that orientation is added, so the result always
    has a transitive orientation.
    """
    pairs = set()
    while len(pairs) < m:
        a, b = sorted(rng.sample(range(n), 2))
        pairs.add((a, b))
    size = max(1, n // buckets)
    edges = [(str(a), str(b), 1 + b // size) for a, b in sorted(pairs)]
    g = TemporalGraph(edges, vertices=[str(i) for i in range(n)])
    f = Orientation.of((g.index[str(a)], g.index[str(b)]) for a, b in sorted(pairs))
    res = solve_ttc_oriented(g, f, g.n * g.n, Variant.TTO)
    assert res.yes
    return g.with_edges([(e.tail, e.head, e.label) for e in res.added])
