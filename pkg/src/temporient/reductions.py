"""Instance generators for the three hardness constructions, plus decoders.

* (3,4)-SAT  ->  strict temporal transitive orientation
* MAX2SAT (implicative clauses a => b)  ->  temporal transitive completion
* monotone NAE-3SAT  ->  multilayer transitive orientation
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import MultiLabelTemporalGraph, Orientation, TemporalGraph
from .verify import verify_multilayer


class CnfKind(enum.Enum):
    SAT34 = "sat34"          # 3 literals per clause, every variable in exactly 4 literal slots
    IMPL2 = "impl2"          # 2 literals (l1 or l2), read as (-l1 => l2)
    MONO_NAE3 = "mono-nae3"  # 3 positive literals, not-all-equal semantics


@dataclass(frozen=True)
class CnfFormula:
    n_vars: int
    clauses: tuple[tuple[int, ...], ...]
    kind: CnfKind

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if any(x == 0 or abs(x) > self.n_vars for x in c):
                raise ValueError(f"literal out of range in clause {c}")
        if self.kind is CnfKind.SAT34:
            for c in self.clauses:
                if len(c) != 3:
                    raise ValueError(f"(3,4)-SAT clause needs 3 literals: {c}")
            occ = Counter(abs(x) for c in self.clauses for x in c)
            bad = [v for v in range(1, self.n_vars + 1) if occ[v] != 4]
            if bad:
                raise ValueError(f"variables {bad} do not occur exactly 4 times")
        elif self.kind is CnfKind.IMPL2:
            for c in self.clauses:
                if len(c) != 2 or abs(c[0]) == abs(c[1]):
                    raise ValueError(f"2-clause needs 2 distinct variables: {c}")
        else:
            for c in self.clauses:
                if len(c) != 3 or min(c) < 1:
                    raise ValueError(f"monotone NAE clause needs 3 positive literals: {c}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def implications(self) -> list[tuple[int, int]]:
        """IMPL2 clauses as (a, b) meaning a => b."""
        return [(-c[0], c[1]) for c in self.clauses]


def parse_dimacs(text: Union[str, bytes], kind: CnfKind) -> CnfFormula:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n_vars = n_clauses = None
    clauses, cur = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c%":
            continue
        if line.startswith("p"):
            tok = line.split()
            if len(tok) != 4 or tok[1] != "cnf":
                raise ValueError(f"line {lineno}: bad header {line!r}")
            n_vars, n_clauses = int(tok[2]), int(tok[3])
            continue
        if n_vars is None:
            raise ValueError(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            x = int(tok)
            if x == 0:
                clauses.append(tuple(cur))
                cur = []
            else:
                cur.append(x)
    if cur:
        clauses.append(tuple(cur))
    if n_vars is None:
        raise ValueError("missing 'p cnf' header")
    if len(clauses) != n_clauses:
        raise ValueError(f"header announces {n_clauses} clauses, found {len(clauses)}")
    return CnfFormula(n_vars, tuple(clauses), kind)


def to_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.n_vars} {f.m}"]
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


# -- truth tables --------------------------------------------------------------

def _truth_table(n: int) -> np.ndarray:
    """Row r is the assignment with x_i = bit (i-1) of r."""
    if n > 22:
        raise ValueError("truth table limited to 22 variables")
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(bool)


def _lit(tt: np.ndarray, x: int) -> np.ndarray:
    col = tt[:, abs(x) - 1]
    return col if x > 0 else ~col


def satisfied_counts(f: CnfFormula) -> np.ndarray:
    """Number of satisfied clauses for every assignment."""
    tt = _truth_table(f.n_vars)
    count = np.zeros(len(tt), dtype=np.int64)
    for c in f.clauses:
        vals = [_lit(tt, x) for x in c]
        if f.kind is CnfKind.MONO_NAE3:
            sat = ~(vals[0] & vals[1] & vals[2]) & (vals[0] | vals[1] | vals[2])
        else:
            sat = np.logical_or.reduce(vals)
        count += sat
    return count


def is_satisfiable(f: CnfFormula) -> bool:
    return bool((satisfied_counts(f) == f.m).any())


def max_satisfied(f: CnfFormula) -> int:
    return int(satisfied_counts(f).max())


def count_satisfied(f: CnfFormula, assignment: dict[int, bool]) -> int:
    count = 0
    for c in f.clauses:
        vals = [assignment[abs(x)] == (x > 0) for x in c]
        if f.kind is CnfKind.MONO_NAE3:
            count += len(set(vals)) == 2
        else:
            count += any(vals)
    return count


# -- (3,4)-SAT -> strict TTO ---------------------------------------------------

_CYCLE = "abcd"


def _vx(i: int, letter: str, prime: bool = False) -> str:
    return f"x{i}{letter}{'_' if prime else ''}"


def _cl(j: int, letter: str, prime: bool = False) -> str:
    return f"c{j}{letter}{'_' if prime else ''}"


def gen_strict_tto(f: CnfFormula) -> TemporalGraph:
    """Variable gadgets are 8-cycles a a' b b' c c' d d' (labels 1,2 alternating);
    clause gadgets are 6-vertex graphs on u v w u' v' w'; label-4 connectors
    join the i-th occurrence pair of a variable to the j-th literal slot."""
    if f.kind is not CnfKind.SAT34:
        raise ValueError("gen_strict_tto needs a (3,4)-SAT formula")
    edges = []
    for i in range(1, f.n_vars + 1):
        for p, letter in enumerate(_CYCLE):
            nxt = _CYCLE[(p + 1) % 4]
            edges.append((_vx(i, letter), _vx(i, letter, True), 1))
            edges.append((_vx(i, letter, True), _vx(i, nxt), 2))
    occurrence = Counter()
    for j, clause in enumerate(f.clauses, start=1):
        u, v, w = _cl(j, "u"), _cl(j, "v"), _cl(j, "w")
        u_, v_, w_ = _cl(j, "u", True), _cl(j, "v", True), _cl(j, "w", True)
        edges += [(u, u_, 2), (v, v_, 1), (w, w_, 2), (u, v, 2), (v, w, 3), (w, u, 3),
                  (w_, u, 3), (w, v_, 3)]
        for pos, lit in enumerate(clause):
            x = abs(lit)
            letter = _CYCLE[occurrence[x]]
            occurrence[x] += 1
            slot = _cl(j, "uvw"[pos], True)
            edges.append((_vx(x, letter, prime=lit < 0), slot, 4))
    g = TemporalGraph(edges)
    assert g.n == 8 * f.n_vars + 6 * f.m and g.m == 8 * f.n_vars + 11 * f.m
    return g


def decode_strict_tto(f: CnfFormula, g: TemporalGraph, orient: Orientation) -> dict[int, bool]:
    """x is true iff its gadget edge runs a_x -> a'_x."""
    return {i: (g.index[_vx(i, "a")], g.index[_vx(i, "a", True)]) in orient.arcs
            for i in range(1, f.n_vars + 1)}


# -- MAX2SAT -> TTC ------------------------------------------------------------

def _lv(lit: int, copy: int = 0) -> str:
    base = f"p{lit}" if lit > 0 else f"n{-lit}"
    return f"{base}^{copy}" if copy else base


def gen_ttc(f: CnfFormula, k: int) -> tuple[TemporalGraph, Orientation, int]:
    """Hub edge v_x v_-x (label 1) plus m-k+1 alternating 1/4 four-cycles per
    variable; clause a => b becomes a vertex w joined to v_a (2) and v_b (3).
    Returns the graph, the empty orientation and the budget m-k."""
    if f.kind is not CnfKind.IMPL2:
        raise ValueError("gen_ttc needs an implicative 2-CNF formula")
    if not 0 <= k <= f.m:
        raise ValueError("k must lie in 0..m")
    copies = f.m - k + 1
    edges = []
    vertices = []
    for x in range(1, f.n_vars + 1):
        vertices += [_lv(x), _lv(-x)]
        edges.append((_lv(x), _lv(-x), 1))
        for i in range(1, copies + 1):
            edges.append((_lv(x, i), _lv(-x, i), 1))
            edges.append((_lv(x, i), _lv(-x), 4))
            edges.append((_lv(-x, i), _lv(x), 4))
    for j, (a, b) in enumerate(f.implications(), start=1):
        edges.append((f"w{j}", _lv(a), 2))
        edges.append((f"w{j}", _lv(b), 3))
    g = TemporalGraph(edges, vertices=vertices)
    assert g.n == f.n_vars * (2 + 2 * copies) + f.m
    return g, Orientation(frozenset()), f.m - k


def decode_ttc(f: CnfFormula, g: TemporalGraph, orient: Orientation) -> dict[int, bool]:
    """x is true iff the hub edge points towards v_-x."""
    return {x: (g.index[_lv(x)], g.index[_lv(-x)]) in orient.arcs for x in range(1, f.n_vars + 1)}


# -- monotone NAE-3SAT -> MTO --------------------------------------------------

def gen_mto(f: CnfFormula) -> MultiLabelTemporalGraph:
    """Clause i becomes a triangle t_i.0 t_i.1 t_i.2 labelled n+1; its j-th edge
    (t_i.j, t_i.j+1) attaches at its clockwise end t_i.j+1 and also carries
    the label of its variable, with a connector from the attachment vertex
    to the hub v_x of that label."""
    if f.kind is not CnfKind.MONO_NAE3:
        raise ValueError("gen_mto needs a monotone NAE-3SAT formula")
    top = f.n_vars + 1
    edges = []
    for i, clause in enumerate(f.clauses, start=1):
        for j, x in enumerate(clause):
            p, q = f"t{i}.{j}", f"t{i}.{(j + 1) % 3}"
            edges.append((p, q, (x, top)))
            edges.append((q, f"v{x}", (x,)))
    g = MultiLabelTemporalGraph(edges, vertices=[f"v{x}" for x in range(1, f.n_vars + 1)])
    assert g.n == 3 * f.m + f.n_vars and g.m == 6 * f.m
    return g


def mto_orientation(f: CnfFormula, g: MultiLabelTemporalGraph, assignment: dict[int, bool]) -> Orientation:
    """Hub edges point away from v_x when x is true; clause edges point to
    their attachment vertex exactly when their literal is true."""
    arcs = []
    for i, clause in enumerate(f.clauses, start=1):
        for j, x in enumerate(clause):
            p, q = g.index[f"t{i}.{j}"], g.index[f"t{i}.{(j + 1) % 3}"]
            hub = g.index[f"v{x}"]
            val = assignment[x]
            arcs.append((p, q) if val else (q, p))
            arcs.append((hub, q) if val else (q, hub))
    return Orientation.of(arcs)


def decode_mto(f: CnfFormula, g: MultiLabelTemporalGraph, orient: Orientation) -> dict[int, bool]:
    """x is true iff the hub edges point away from v_x (read off the first connector)."""
    if verify_multilayer(g, orient) is not None:
        raise ValueError("orientation is not a multilayer witness")
    out = {}
    for x in range(1, f.n_vars + 1):
        hub = g.index[f"v{x}"]
        nb = g.adj[hub]
        out[x] = bool(nb) and (hub, nb[0]) in orient.arcs
    return out


def decode_assignment(kind: CnfKind, f: CnfFormula, g, orient: Orientation) -> dict[int, bool]:
    if kind is CnfKind.SAT34:
        return decode_strict_tto(f, g, orient)
    if kind is CnfKind.IMPL2:
        return decode_ttc(f, g, orient)
    return decode_mto(f, g, orient)
