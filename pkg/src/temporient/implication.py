"""Forcing relation between equal-label directed edges and its implication classes.

Two directed edges with the same label t force each other when they share
their tail (or their head) and the other two endpoints are either
non-adjacent or joined by an edge with label < t.  The closure of this
relation groups directed edges into classes that must be oriented together.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import TemporalGraph

Arc = tuple[int, int]


@dataclass
class ClassPartition:
    """Classes A_1..A_s of directed edges and the signed literal of every directed edge.

    literal_of[(u, v)] = +i if uv is in A_i and -i if uv is in the reverse of A_i.
    When `improper` is set, the closure of some seed contained both directions
    of an edge and the graph admits no orientation (classes are then partial).
    """

    classes: list[frozenset] = field(default_factory=list)
    literal_of: dict[Arc, int] = field(default_factory=dict)
    improper: Optional[frozenset] = None

    @property
    def orientable(self) -> bool:
        return self.improper is None

    @property
    def size(self) -> int:
        return len(self.classes)

    def literal(self, u: int, v: int) -> int:
        return self.literal_of[(u, v)]

    def all_classes(self) -> set[frozenset]:
        """Every class together with its reverse."""
        out = set()
        for c in self.classes:
            out.add(c)
            out.add(frozenset((b, a) for a, b in c))
        return out

    @classmethod
    def per_edge(cls, g: TemporalGraph) -> "ClassPartition":
        """One singleton class per edge, oriented from the smaller index."""
        lit = {}
        for i, (u, v) in enumerate(g.pairs, start=1):
            lit[(u, v)] = i
            lit[(v, u)] = -i
        return cls([frozenset([p]) for p in g.pairs], lit)


def lambda_related(g: TemporalGraph, d1: Arc, d2: Arc) -> bool:
    (u, v), (u2, v2) = d1, d2
    t = g.label(u, v)
    if t is None or g.label(u2, v2) != t:
        return False
    if d1 == d2:
        return True
    if u == u2 and v != v2:
        s = g.label(v, v2)
    elif v == v2 and u != u2:
        s = g.label(u, u2)
    else:
        return False
    return s is None or s < t


def lambda_neighbors(g: TemporalGraph, d: Arc) -> Iterable[Arc]:
    u, v = d
    t = g.label(u, v)
    for v2 in g.adj[u]:
        if v2 != v and g.label(u, v2) == t:
            s = g.label(v, v2)
            if s is None or s < t:
                yield (u, v2)
    for u2 in g.adj[v]:
        if u2 != u and g.label(u2, v) == t:
            s = g.label(u, u2)
            if s is None or s < t:
                yield (u2, v)


def lambda_closure(g: TemporalGraph, seed: Arc) -> set[Arc]:
    seen = {seed}
    queue = deque([seed])
    while queue:
        d = queue.popleft()
        for e in lambda_neighbors(g, d):
            if e not in seen:
                seen.add(e)
                queue.append(e)
    return seen


def build_implication_classes(g: TemporalGraph) -> ClassPartition:
    """Classes seeded in lexicographic edge order; stops at the first improper class."""
    part = ClassPartition()
    for p, q in g.pairs:
        if (p, q) in part.literal_of:
            continue
        cls = lambda_closure(g, (p, q))
        if (q, p) in cls:
            part.classes.append(frozenset(cls))
            part.improper = part.classes[-1]
            return part
        s = len(part.classes) + 1
        for a, b in cls:
            part.literal_of[(a, b)] = s
            part.literal_of[(b, a)] = -s
        part.classes.append(frozenset(cls))
    return part


def gamma_classes(names: Iterable[str], pairs: Iterable[Arc]) -> ClassPartition:
    """Static forcing classes of one layer, given as index pairs over `names`.

    This is the temporal machinery with every label equal.  Indices are
    preserved because vertex order only depends on the name set.
    """
    names = tuple(names)
    layer = TemporalGraph([(names[u], names[v], 1) for u, v in pairs], vertices=names)
    return build_implication_classes(layer)
