"""Temporal graph types, instance file I/O and constraint-site enumeration.

Vertices carry string names externally.  Internally they are dense indices
assigned in sorted-name order, so two files describing the same graph
always produce the same indexing.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

MAX_LABEL = 2**32 - 1


class Variant(enum.Enum):
    """The four temporal transitivity definitions."""

    TTO = "tto"
    STRICT = "strict"
    STRONG = "strong"
    STRONG_STRICT = "strong-strict"

    @property
    def strict(self) -> bool:
        return self in (Variant.STRICT, Variant.STRONG_STRICT)

    @property
    def strong(self) -> bool:
        return self in (Variant.STRONG, Variant.STRONG_STRICT)

    def premise(self, t1, t2):
        """Does the 2-path (uv,t1),(vw,t2) trigger the closure requirement?"""
        return t2 > t1 if self.strict else t2 >= t1

    def closes(self, t2, t3):
        """Is a closing edge with label t3 good enough after a t2 edge?"""
        return t3 > t2 if self.strong else t3 >= t2


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class DirectedTimeEdge(NamedTuple):
    tail: int
    head: int
    label: int


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _check_label(t) -> int:
    if not isinstance(t, int) or isinstance(t, bool) or not 1 <= t <= MAX_LABEL:
        raise ValueError(f"label {t!r} outside 1..{MAX_LABEL}")
    return t


class _GraphBase:
    """Shared vertex bookkeeping and adjacency for both graph types."""

    def __init__(self, names: Iterable[str], data: dict[tuple[str, str], object]):
        names = set(names)
        for a, b in data:
            names.add(a)
            names.add(b)
        for nm in names:
            if not nm or any(ch.isspace() for ch in nm):
                raise ValueError(f"invalid vertex name {nm!r}")
        self.names: tuple[str, ...] = tuple(sorted(names))
        self.index: dict[str, int] = {nm: i for i, nm in enumerate(self.names)}
        self._data: dict[tuple[int, int], object] = {}
        adj: list[list[int]] = [[] for _ in self.names]
        for (a, b), val in data.items():
            u, v = self.index[a], self.index[b]
            if u == v:
                raise ValueError(f"self-loop at {a}")
            key = _pair(u, v)
            if key in self._data:
                raise ValueError(f"duplicate edge {a} {b}")
            self._data[key] = val
            adj[u].append(v)
            adj[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(x)) for x in adj)
        self.adjset: tuple[frozenset, ...] = tuple(frozenset(x) for x in adj)
        self.pairs: tuple[tuple[int, int], ...] = tuple(sorted(self._data))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self._data)

    def vertex(self, name: str) -> int:
        return self.index[name]

    def has_edge(self, u: int, v: int) -> bool:
        return _pair(u, v) in self._data

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if (u, v) not in self._data]

    def __eq__(self, other):
        return (type(self) is type(other) and self.names == other.names
                and self._data == other._data)

    def __hash__(self):
        return hash((self.names, tuple(sorted(self._data.items()))))


class TemporalGraph(_GraphBase):
    """Simple undirected graph with exactly one time label per edge."""

    def __init__(self, edges: Iterable[tuple[str, str, int]] = (), vertices: Iterable[str] = ()):
        data = {}
        for a, b, t in edges:
            key = (a, b)
            if key in data or (b, a) in data:
                raise ValueError(f"duplicate edge {a} {b}")
            data[key] = _check_label(t)
        super().__init__(vertices, data)
        self.edges: tuple[tuple[int, int, int], ...] = tuple(
            (u, v, self._data[(u, v)]) for u, v in self.pairs)
        self.edge_id: dict[tuple[int, int], int] = {}
        for i, (u, v) in enumerate(self.pairs):
            self.edge_id[(u, v)] = i
            self.edge_id[(v, u)] = i

    def label(self, u: int, v: int) -> Optional[int]:
        return self._data.get(_pair(u, v))

    def labels(self) -> list[int]:
        return sorted({t for _, _, t in self.edges})

    def named_edges(self) -> list[tuple[str, str, int]]:
        return [(self.names[u], self.names[v], t) for u, v, t in self.edges]

    def with_edges(self, extra: Iterable[tuple[int, int, int]]) -> "TemporalGraph":
        """Copy with additional edges between existing vertices (indices are preserved)."""
        nm = self.names
        edges = self.named_edges() + [(nm[u], nm[v], t) for u, v, t in extra]
        return TemporalGraph(edges, vertices=nm)

    def __repr__(self):
        return f"TemporalGraph(n={self.n}, m={self.m})"


class MultiLabelTemporalGraph(_GraphBase):
    """Undirected graph where each edge carries a non-empty set of labels."""

    def __init__(self, edges: Iterable[tuple[str, str, Iterable[int]]] = (),
                 vertices: Iterable[str] = ()):
        data = {}
        for a, b, ts in edges:
            if (a, b) in data or (b, a) in data:
                raise ValueError(f"duplicate edge {a} {b}")
            ts = list(ts)
            if not ts:
                raise ValueError(f"edge {a} {b} has no labels")
            if len(set(ts)) != len(ts):
                raise ValueError(f"edge {a} {b} repeats a label")
            data[(a, b)] = tuple(sorted(_check_label(t) for t in ts))
        super().__init__(vertices, data)
        self.edges: tuple[tuple[int, int, tuple[int, ...]], ...] = tuple(
            (u, v, self._data[(u, v)]) for u, v in self.pairs)

    def label_set(self, u: int, v: int) -> tuple[int, ...]:
        return self._data.get(_pair(u, v), ())

    def layers(self) -> dict[int, list[tuple[int, int]]]:
        """Label -> list of (u, v) pairs (u < v) carrying that label."""
        out: dict[int, list[tuple[int, int]]] = {}
        for u, v, ts in self.edges:
            for t in ts:
                out.setdefault(t, []).append((u, v))
        return dict(sorted(out.items()))

    def named_edges(self) -> list[tuple[str, str, tuple[int, ...]]]:
        return [(self.names[u], self.names[v], ts) for u, v, ts in self.edges]

    def __repr__(self):
        return f"MultiLabelTemporalGraph(n={self.n}, m={self.m})"


AnyGraph = Union[TemporalGraph, MultiLabelTemporalGraph]


@dataclass(frozen=True)
class Orientation:
    """A set of directed edges (tail, head) over the vertex indices of a graph."""

    arcs: frozenset

    @classmethod
    def of(cls, arcs: Iterable[tuple[int, int]]) -> "Orientation":
        return cls(frozenset((int(u), int(v)) for u, v in arcs))

    @classmethod
    def from_names(cls, g: _GraphBase, pairs: Iterable[tuple[str, str]]) -> "Orientation":
        return cls.of((g.index[a], g.index[b]) for a, b in pairs)

    def __contains__(self, arc) -> bool:
        return tuple(arc) in self.arcs

    def __len__(self):
        return len(self.arcs)

    def __iter__(self):
        return iter(sorted(self.arcs))

    def union(self, arcs: Iterable[tuple[int, int]]) -> "Orientation":
        return Orientation(self.arcs | frozenset(arcs))

    def unoriented(self, g: _GraphBase) -> list[tuple[int, int]]:
        return [(u, v) for u, v in g.pairs if (u, v) not in self.arcs and (v, u) not in self.arcs]

    def is_partial_of(self, g: _GraphBase) -> bool:
        """Every arc is an edge of g and no edge is oriented both ways."""
        return all(g.has_edge(u, v) and (v, u) not in self.arcs for u, v in self.arcs)

    def is_proper(self, g: _GraphBase) -> bool:
        return self.is_partial_of(g) and len(self.arcs) == g.m

    def time_edges(self, g: TemporalGraph) -> list[DirectedTimeEdge]:
        return [DirectedTimeEdge(u, v, g.label(u, v)) for u, v in sorted(self.arcs)]

    def out_lists(self, n: int) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(n)]
        for u, v in sorted(self.arcs):
            out[u].append(v)
        return out


@dataclass(frozen=True)
class Instance:
    """A parsed instance file: a graph plus the arcs given by `o` lines, if any."""

    graph: AnyGraph
    oriented: Optional[Orientation] = None

    @property
    def kind(self) -> str:
        if isinstance(self.graph, MultiLabelTemporalGraph):
            return "multi"
        return "partial" if self.oriented is not None else "plain"


def _parse_label(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise ParseError(lineno, f"bad label {tok!r}")
    t = int(tok)
    if not 1 <= t <= MAX_LABEL:
        raise ParseError(lineno, f"label {t} outside 1..{MAX_LABEL}")
    return t


def parse_instance(text: Union[str, bytes]) -> Instance:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    vertices: list[str] = []
    single: dict[frozenset, tuple[str, str, int, int]] = {}
    multi: dict[frozenset, tuple[str, str, tuple[int, ...], int]] = {}
    arcs: list[tuple[str, str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        kind, args = tok[0], tok[1:]
        if kind == "v":
            if len(args) != 1:
                raise ParseError(lineno, "expected 'v NAME'")
            vertices.append(args[0])
            continue
        if kind not in ("e", "em", "o"):
            raise ParseError(lineno, f"unknown directive {kind!r}")
        if len(args) != 3:
            raise ParseError(lineno, f"expected '{kind} U V LABEL'")
        a, b = args[0], args[1]
        if a == b:
            raise ParseError(lineno, f"self-loop at {a}")
        key = frozenset((a, b))
        if kind == "o":
            arcs.append((a, b, _parse_label(args[2], lineno), lineno))
            continue
        if key in single or key in multi:
            raise ParseError(lineno, f"duplicate edge {a} {b}")
        if kind == "e":
            single[key] = (a, b, _parse_label(args[2], lineno), lineno)
        else:
            ts = tuple(_parse_label(x, lineno) for x in args[2].split(","))
            if len(set(ts)) != len(ts):
                raise ParseError(lineno, "repeated label in 'em' line")
            multi[key] = (a, b, ts, lineno)
    if single and multi:
        line = max(min(x[3] for x in single.values()), min(x[3] for x in multi.values()))
        raise ParseError(line, "cannot mix 'e' and 'em' edges")
    if multi:
        if arcs:
            raise ParseError(arcs[0][3], "'o' lines are not supported with 'em' edges")
        g = MultiLabelTemporalGraph([x[:3] for x in multi.values()], vertices=vertices)
        return Instance(g)
    g = TemporalGraph([x[:3] for x in single.values()], vertices=vertices)
    if not arcs:
        return Instance(g)
    seen = set()
    for a, b, t, lineno in arcs:
        known = single.get(frozenset((a, b)))
        if known is None or known[2] != t:
            raise ParseError(lineno, f"'o {a} {b} {t}' has no matching 'e' line")
        if frozenset((a, b)) in seen:
            raise ParseError(lineno, f"edge {a} {b} oriented twice")
        seen.add(frozenset((a, b)))
    return Instance(g, Orientation.from_names(g, [(a, b) for a, b, _, _ in arcs]))


def serialize_instance(inst: Union[Instance, AnyGraph]) -> str:
    if not isinstance(inst, Instance):
        inst = Instance(inst)
    g = inst.graph
    lines = [f"v {nm}" for nm in g.names]
    if isinstance(g, MultiLabelTemporalGraph):
        for a, b, ts in g.named_edges():
            lines.append(f"em {a} {b} " + ",".join(map(str, ts)))
    else:
        for a, b, t in g.named_edges():
            lines.append(f"e {a} {b} {t}")
        if inst.oriented is not None:
            for u, v in inst.oriented:
                lines.append(f"o {g.names[u]} {g.names[v]} {g.label(u, v)}")
    return "\n".join(lines) + "\n"


def format_orientation(g: TemporalGraph, f: Orientation,
                       added: Iterable[DirectedTimeEdge] = ()) -> str:
    """Orientation dump as `-> U V L` lines, then completion edges as `+ U V L`."""
    nm = g.names
    lines = [f"-> {nm[u]} {nm[v]} {lab}" for u, v, lab in f.time_edges(g)]
    lines += [f"+ {nm[u]} {nm[v]} {lab}" for u, v, lab in sorted(added)]
    return "\n".join(lines) + ("\n" if lines else "")


def format_multilayer_orientation(g: MultiLabelTemporalGraph, f: Orientation) -> str:
    nm = g.names
    lines = [f"-> {nm[u]} {nm[v]} " + ",".join(map(str, g.label_set(u, v))) for u, v in f]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_orientation(text: Union[str, bytes], g: AnyGraph
                      ) -> tuple[Orientation, list[DirectedTimeEdge]]:
    """Read `-> U V L` and `+ U V L` lines against graph g.

    Lines starting with YES or NO (solver output headers) and comments are
    skipped, so solver output can be fed back in directly.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    arcs, added = [], []
    multi = isinstance(g, MultiLabelTemporalGraph)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.split()[0] in ("YES", "NO"):
            continue
        tok = line.split()
        if tok[0] not in ("->", "+") or len(tok) != 4:
            raise ParseError(lineno, f"expected '-> U V LABEL' or '+ U V LABEL', got {line!r}")
        a, b = tok[1], tok[2]
        if a not in g.index or b not in g.index:
            raise ParseError(lineno, f"unknown vertex in {line!r}")
        u, v = g.index[a], g.index[b]
        if tok[0] == "+":
            if multi:
                raise ParseError(lineno, "completion edges need a single-label graph")
            if u == v or g.has_edge(u, v):
                raise ParseError(lineno, f"added edge {a} {b} is not a non-edge")
            added.append(DirectedTimeEdge(u, v, _parse_label(tok[3], lineno)))
            continue
        if not g.has_edge(u, v):
            raise ParseError(lineno, f"no edge {a} {b}")
        if multi:
            ts = tuple(sorted(_parse_label(x, lineno) for x in tok[3].split(",")))
            ok = ts == g.label_set(u, v)
        else:
            ok = _parse_label(tok[3], lineno) == g.label(u, v)
        if not ok:
            raise ParseError(lineno, f"label mismatch on {a} {b}")
        arcs.append((u, v))
    return Orientation.of(arcs), added


class SiteKind(enum.Enum):
    TRIANGLE = "triangle"
    PATH2 = "path2"


@dataclass(frozen=True)
class ConstraintSite:
    """A triangle or induced 2-path, with vertices named as in the orientation table.

    TRIANGLE (u, v, w): lambda(u,v) <= lambda(v,w) <= lambda(w,u).
    PATH2 (u, v, w): center v, lambda(u,v) <= lambda(v,w), u and w non-adjacent.
    """

    kind: SiteKind
    vertices: tuple[int, int, int]
    labels: tuple[int, ...]


def _normalize_triangle(g: TemporalGraph, a: int, b: int, c: int) -> ConstraintSite:
    best = None
    for u, v, w in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
        t1, t2, t3 = g.label(u, v), g.label(v, w), g.label(w, u)
        if t1 <= t2 <= t3 and (best is None or (u, v, w) < best[0]):
            best = ((u, v, w), (t1, t2, t3))
    return ConstraintSite(SiteKind.TRIANGLE, *best)


def enumerate_constraint_sites(g: TemporalGraph) -> list[ConstraintSite]:
    sites = []
    for v in range(g.n):
        nb = g.adj[v]
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                if g.has_edge(a, b):
                    if v < a:  # count each triangle once, from its smallest vertex
                        sites.append(_normalize_triangle(g, v, a, b))
                    continue
                ta, tb = g.label(a, v), g.label(v, b)
                u, w = (a, b) if ta <= tb else (b, a)
                sites.append(ConstraintSite(SiteKind.PATH2, (u, v, w), (min(ta, tb), max(ta, tb))))
    return sites
