"""Recognition of temporally transitive orientations for all four variants.

* Strong and strong-strict: every cell of the orientation table is a 2-clause,
  so a strongly-connected-component 2-SAT solve decides the instance.
* TTO: the forcing procedure over implication classes (initial forcing,
  Boolean forcing, then a greedy pass over the remaining variables).
* Strict and multilayer: exact branching search with propagation (both
  problems are NP-complete, so the worst case is exponential).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .constraints import (NEW_ONLY, ConstraintSystem, NaeClause, TwoSatFormula, Unsat,
                          build_formulas)
from .core import MultiLabelTemporalGraph, Orientation, TemporalGraph, Variant
from .implication import ClassPartition, build_implication_classes, gamma_classes
from .verify import verify_multilayer, verify_orientation


@dataclass
class RecognitionResult:
    yes: bool
    orientation: Optional[Orientation] = None
    reason: Optional[str] = None
    stats: dict = field(default_factory=dict)

    @property
    def answer(self) -> str:
        return "YES" if self.yes else "NO"


def _no(reason: str, stats: dict) -> RecognitionResult:
    return RecognitionResult(False, None, reason, stats)


# -- 2-SAT -------------------------------------------------------------------

def _tarjan(nodes, succ) -> dict[int, int]:
    """Component id per node; ids come out in reverse topological order."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    comp: dict[int, int] = {}
    stack: list[int] = []
    on_stack: set[int] = set()
    counter = 0
    n_comp = 0
    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(sorted(succ.get(root, ()))))]
        while work:
            v, it = work[-1]
            descended = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(succ.get(w, ())))))
                    descended = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = n_comp
                    if w == v:
                        break
                n_comp += 1
    return comp


def solve_two_sat(f: TwoSatFormula) -> Optional[dict[int, bool]]:
    """Complete the partial assignment of f, or None if the clauses are unsatisfiable.

    Variables that occur nowhere default to True.
    """
    lits = sorted(f.literals() | {-x for x in f.literals()})
    comp = _tarjan(lits, f.succ)
    out = {i: True for i in range(1, f.n_vars + 1)}
    out.update(f.value)
    for x in lits:
        if x < 0:
            continue
        if comp[x] == comp[-x]:
            return None
        out[x] = comp[x] < comp[-x]
    return out


def _orientation(g: TemporalGraph, p: ClassPartition, values: dict[int, bool]) -> Orientation:
    arcs = []
    for u, v in g.pairs:
        lit = p.literal_of[(u, v)]
        val = values.get(abs(lit), True)
        arcs.append((u, v) if val == (lit > 0) else (v, u))
    return Orientation.of(arcs)


def _checked(g: TemporalGraph, f: Orientation, variant: Variant, stats: dict) -> RecognitionResult:
    bad = verify_orientation(g, f, variant)
    if bad is not None:
        raise RuntimeError(f"internal error: produced orientation fails {variant.value}: {bad}")
    return RecognitionResult(True, f, None, stats)


def recognize_strong(g: TemporalGraph, variant: Variant = Variant.STRONG) -> RecognitionResult:
    if not variant.strong:
        raise ValueError("recognize_strong handles the strong variants only")
    stats: dict = {}
    p = ClassPartition.per_edge(g)
    system = build_formulas(g, p, variant)
    if isinstance(system, Unsat):
        return _no(f"UNSAT: {system.reason}", stats)
    values = solve_two_sat(system.formula)
    if values is None:
        return _no("UNSAT: 2sat", stats)
    return _checked(g, _orientation(g, p, values), variant, stats)


# -- NAE handling shared by forcing and the exact search ---------------------

def _nae_values(s: ConstraintSystem, new: bool) -> Optional[bool]:
    """Drop NAE clauses with a valued literal, emitting what they still require.

    One valued literal leaves a 2-clause on the other two; two equal values
    force the third; three equal values are a contradiction.  Returns None on
    conflict, otherwise whether anything changed.
    """
    f = s.formula
    changed = False
    for c in sorted(s.nae):
        vals = [f.lit_value(x) for x in c.lits]
        known = [x for x in vals if x is not None]
        if not known:
            continue
        s.nae.discard(c)
        changed = True
        if len(known) == 3:
            if known[0] == known[1] == known[2]:
                return None
        elif len(known) == 2:
            if known[0] == known[1]:
                free = c.lits[vals.index(None)]
                if not f.assign(-free if known[0] else free):
                    return None
        else:
            a, b, d = next(r for r in c.rotations() if f.lit_value(r[0]) is not None)
            ok = f.add_clause(-b, -d, new) if f.lit_value(a) else f.add_clause(b, d, new)
            if not ok:
                return None
    return changed


def _nae_implied(s: ConstraintSystem, new: bool) -> Optional[bool]:
    """If x_uv =>* x_vw, replace NAE(x_uv,x_vw,x_wu) by (x_vu|x_uw) & (x_wu|x_vw)."""
    f = s.formula
    changed = False
    for c in sorted(s.nae):
        if c not in s.nae:
            continue
        for a, b, d in c.rotations():
            if f.implies_star(a, b):
                s.nae.discard(c)
                changed = True
                if not (f.add_clause(-a, -d, new) and f.add_clause(d, b, new)):
                    return None
                break
    return changed


# -- TTO forcing -------------------------------------------------------------

def boolean_forcing(system: ConstraintSystem, var: int, value: bool) -> Optional[ConstraintSystem]:
    """Set var and apply the forcing rules to a fixpoint; None if that contradicts."""
    s = system.copy()
    f = s.formula
    f.mark_all_old()  # only clauses created from here on count as "new"
    if not f.assign(var if value else -var):
        return None
    while True:
        before = (f.version, len(s.nae))
        tails = sorted({-a for (a, b), new in f.clauses.items() if new}
                       | {-b for (a, b), new in f.clauses.items() if new})
        for lit in tails:
            if f.lit_value(lit) is None and f.implies_star(lit, -lit, NEW_ONLY):
                if not f.assign(-lit):
                    return None
        if _nae_values(s, True) is None or _nae_implied(s, True) is None:
            return None
        if (f.version, len(s.nae)) == before:
            return s


def _ancestors(f: TwoSatFormula, a: int) -> set[int]:
    # l =>* a iff -a =>* -l, since arcs are closed under contraposition
    return {-y for y in f.reach(-a)}


def initial_forcing(system: ConstraintSystem, stats: Optional[dict] = None) -> Optional[ConstraintSystem]:
    stats = stats if stats is not None else {}
    s = system.copy()
    while True:
        stats["forcing_rounds"] = stats.get("forcing_rounds", 0) + 1
        changed = False
        for var in sorted(s.variables()):
            if var in s.formula.value:
                continue
            one = boolean_forcing(s, var, True)
            zero = boolean_forcing(s, var, False)
            stats["branches"] = stats.get("branches", 0) + 2
            if one is None and zero is None:
                return None
            if one is None or zero is None:
                s = one or zero
                s.formula.mark_all_old()
                changed = True
        f = s.formula
        before = (f.version, len(s.nae))
        for c in sorted(s.nae):
            if c not in s.nae:
                continue
            for a, b, d in c.rotations():
                for lit in sorted(_ancestors(f, a) & _ancestors(f, b)):
                    if not f.add_clause(-lit, -d):
                        return None
        if _nae_values(s, False) is None:
            return None
        changed |= (f.version, len(s.nae)) != before
        if not changed:
            return s


def recognize_tto(g: TemporalGraph) -> RecognitionResult:
    stats = {"iterations": 0, "branches": 0, "forcing_rounds": 0}
    p = build_implication_classes(g)
    stats["classes"] = p.size
    if not p.orientable:
        return _no("improper-class", stats)
    system = build_formulas(g, p, Variant.TTO)
    if isinstance(system, Unsat):
        return _no(f"UNSAT: {system.reason}", stats)
    s = initial_forcing(system, stats)
    if s is None:
        return _no("initial-forcing", stats)
    while True:
        free = s.variables()
        if not free:
            break
        var = min(free)
        stats["iterations"] += 1
        stats["branches"] += 1
        nxt = boolean_forcing(s, var, True)
        if nxt is None:
            stats["branches"] += 1
            nxt = boolean_forcing(s, var, False)
        if nxt is None:
            return _no("forcing", stats)
        s = nxt
    return _checked(g, _orientation(g, p, s.formula.value), Variant.TTO, stats)


# -- exact search for the NP-complete variants -------------------------------

def _propagate(s: ConstraintSystem) -> bool:
    while True:
        r = _nae_values(s, False)
        if r is None:
            return False
        if not r:
            return True


def _nae_ok(c: NaeClause, values: dict[int, bool]) -> bool:
    vals = {values[abs(x)] == (x > 0) for x in c.lits}
    return len(vals) == 2


def exact_search(system: ConstraintSystem, stats: dict) -> Optional[dict[int, bool]]:
    """Depth-first search over NAE variables with 2-SAT propagation.

    Each node propagates NAE consequences, checks that the 2-clauses alone are
    satisfiable, and stops early if that 2-SAT model happens to satisfy every
    remaining NAE clause.  Branches on the variable in the most NAE clauses.
    """
    stack = [system.copy()]
    stats.setdefault("nodes", 0)
    stats.setdefault("branches", 0)
    while stack:
        s = stack.pop()
        stats["nodes"] += 1
        if not _propagate(s):
            continue
        model = solve_two_sat(s.formula)
        if model is None:
            continue
        if all(_nae_ok(c, model) for c in s.nae):
            return model
        count: dict[int, int] = {}
        for c in s.nae:
            for x in c.lits:
                if s.formula.lit_value(x) is None:
                    count[abs(x)] = count.get(abs(x), 0) + 1
        var = min(count, key=lambda x: (-count[x], x))
        stats["branches"] += 1
        for lit in (-var, var):  # pushed last is explored first
            child = s.copy()
            if child.formula.assign(lit):
                stack.append(child)
    return None


def recognize_strict(g: TemporalGraph) -> RecognitionResult:
    stats: dict = {}
    p = ClassPartition.per_edge(g)
    system = build_formulas(g, p, Variant.STRICT)
    if isinstance(system, Unsat):
        return _no(f"UNSAT: {system.reason}", stats)
    stats["nae"] = len(system.nae)
    values = exact_search(system, stats)
    if values is None:
        return _no("search-exhausted", stats)
    return _checked(g, _orientation(g, p, values), Variant.STRICT, stats)


def recognize(g: TemporalGraph, variant: Variant) -> RecognitionResult:
    if variant is Variant.TTO:
        return recognize_tto(g)
    if variant is Variant.STRICT:
        return recognize_strict(g)
    return recognize_strong(g, variant)


def solve_multilayer(g: MultiLabelTemporalGraph) -> RecognitionResult:
    """One orientation per edge so that every label layer is transitively oriented.

    Variable i+1 is true when the i-th underlying edge points from its smaller
    index.  Static forcing classes of each layer become equalities; layer
    triangles become NAE clauses (no directed 3-cycles).
    """
    stats: dict = {}
    lit_of = {}
    for i, (u, v) in enumerate(g.pairs, start=1):
        lit_of[(u, v)] = i
        lit_of[(v, u)] = -i
    f = TwoSatFormula(g.m)
    nae: set[NaeClause] = set()
    for t, pairs in g.layers().items():
        part = gamma_classes(g.names, pairs)
        if not part.orientable:
            return _no(f"improper-class layer={t}", stats)
        for cls in part.classes:
            arcs = sorted(cls)
            first = lit_of[arcs[0]]
            for arc in arcs[1:]:
                f.add_implication(first, lit_of[arc])
                f.add_implication(lit_of[arc], first)
        adj: dict[int, set[int]] = {}
        for u, v in pairs:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        for u, v in pairs:
            for w in sorted(adj[u] & adj[v]):
                if w > v:
                    lits = (lit_of[(u, v)], lit_of[(v, w)], lit_of[(w, u)])
                    nae.add(NaeClause(lits, (u, v, w)))
    system = ConstraintSystem(f, nae, ClassPartition())
    stats["nae"] = len(nae)
    values = exact_search(system, stats)
    if values is None:
        return _no("search-exhausted", stats)
    arcs = [(u, v) if values.get(i, True) else (v, u) for i, (u, v) in enumerate(g.pairs, start=1)]
    orient = Orientation.of(arcs)
    bad = verify_multilayer(g, orient)
    if bad is not None:
        raise RuntimeError(f"internal error: multilayer orientation fails at layer {bad[0]}")
    return RecognitionResult(True, orient, None, stats)
