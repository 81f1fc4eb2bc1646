"""2-clause and not-all-equal constraint systems over edge-class literals.

A literal is a signed class index: +i means "class A_i is oriented as
computed", -i means "reversed".  A directed edge uv maps to a literal via
ClassPartition.literal_of, so x_vu = -x_uv by construction.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .core import SiteKind, TemporalGraph, Variant, enumerate_constraint_sites
from .implication import ClassPartition

ALL = "all"
NEW_ONLY = "new"


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


class TwoSatFormula:
    """2-clauses stored as implication arcs, plus a partial assignment.

    A clause (a or b) gives arcs -a -> b and -b -> a.  Each clause carries a
    flag telling whether it was added in the current forcing call ("new").
    Clauses with a valued literal are removed as soon as the value is known,
    so every stored clause only mentions unvalued variables.
    """

    def __init__(self, n_vars: int = 0):
        self.n_vars = n_vars
        self.clauses: dict[tuple[int, int], bool] = {}
        self.succ: defaultdict[int, set[int]] = defaultdict(set)
        self.value: dict[int, bool] = {}
        self.version = 0  # bumped on every change, lets callers detect progress
        self._reach: dict[tuple[int, str], set[int]] = {}

    def copy(self) -> "TwoSatFormula":
        f = TwoSatFormula.__new__(TwoSatFormula)
        f.n_vars = self.n_vars
        f.clauses = dict(self.clauses)
        f.succ = defaultdict(set, {k: set(v) for k, v in self.succ.items() if v})
        f.value = dict(self.value)
        f.version = self.version
        f._reach = {}
        return f

    def lit_value(self, lit: int) -> Optional[bool]:
        v = self.value.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else not v

    def _store(self, a: int, b: int, new: bool):
        key = _key(a, b)
        if key in self.clauses:
            self.clauses[key] = self.clauses[key] and new
            return
        self.clauses[key] = new
        self.succ[-a].add(b)
        self.succ[-b].add(a)
        self.version += 1
        self._reach.clear()

    def _remove(self, key: tuple[int, int]):
        a, b = key
        del self.clauses[key]
        self.succ[-a].discard(b)
        self.succ[-b].discard(a)
        self.version += 1
        self._reach.clear()

    def add_clause(self, a: int, b: int, new: bool = False) -> bool:
        """Add (a or b); valued literals are simplified away.  False on conflict."""
        if a == -b:
            return True
        va, vb = self.lit_value(a), self.lit_value(b)
        if va or vb:
            return True
        if va is False and vb is False:
            return False
        if va is False:
            return self.assign(b)
        if vb is False or a == b:
            return self.assign(a)
        self._store(a, b, new)
        return True

    def add_implication(self, a: int, b: int, new: bool = False) -> bool:
        return self.add_clause(-a, b, new)

    def assign(self, lit: int) -> bool:
        """Make lit true and unit-propagate to a fixpoint.  False on conflict."""
        cur = self.lit_value(lit)
        if cur is not None:
            return cur
        self.value[abs(lit)] = lit > 0
        self.version += 1
        queue = [lit]
        while queue:
            x = queue.pop()
            for y in list(self.succ.get(-x, ())):
                self._remove(_key(x, y))  # (x or y) is satisfied
            for y in list(self.succ.get(x, ())):
                self._remove(_key(-x, y))  # (-x or y) now forces y
                vy = self.lit_value(y)
                if vy is False:
                    return False
                if vy is None:
                    self.value[abs(y)] = y > 0
                    queue.append(y)
        return True

    def reach(self, a: int, scope: str = ALL) -> set[int]:
        """Literals reachable from a (a itself included)."""
        key = (a, scope)
        r = self._reach.get(key)
        if r is None:
            r = {a}
            stack = [a]
            while stack:
                x = stack.pop()
                for y in self.succ.get(x, ()):
                    if y in r or (scope == NEW_ONLY and not self.clauses[_key(-x, y)]):
                        continue
                    r.add(y)
                    stack.append(y)
            self._reach[key] = r
        return r

    def implies_star(self, a: int, b: int, scope: str = ALL) -> bool:
        return a == b or b in self.reach(a, scope)

    def mark_all_old(self):
        for k in self.clauses:
            self.clauses[k] = False
        self._reach.clear()

    def arcs(self) -> Iterator[tuple[int, int, bool]]:
        for (a, b), new in self.clauses.items():
            yield -a, b, new
            yield -b, a, new

    def literals(self) -> set[int]:
        """Literals occurring in some stored clause."""
        return {x for k in self.clauses for x in k}


def implies_star(f: TwoSatFormula, a: int, b: int, scope: str = ALL) -> bool:
    return f.implies_star(a, b, scope)


def assign_and_close(f: TwoSatFormula, lit: int, value: bool = True) -> Optional[TwoSatFormula]:
    """Copy of f with lit set to value and propagated, or None on conflict."""
    g = f.copy()
    return g if g.assign(lit if value else -lit) else None


@dataclass(frozen=True, order=True)
class NaeClause:
    """NAE(x_uv, x_vw, x_wu) for the triangle (u, v, w)."""

    lits: tuple[int, int, int]
    triangle: tuple[int, int, int]

    def rotations(self) -> list[tuple[int, int, int]]:
        a, b, c = self.lits
        return [(a, b, c), (b, c, a), (c, a, b)]


@dataclass
class ConstraintSystem:
    formula: TwoSatFormula
    nae: set[NaeClause]
    partition: ClassPartition

    def copy(self) -> "ConstraintSystem":
        return ConstraintSystem(self.formula.copy(), set(self.nae), self.partition)

    def variables(self) -> set[int]:
        """Unvalued variables still occurring in some clause."""
        out = {abs(x) for x in self.formula.literals()}
        for c in self.nae:
            out.update(abs(x) for x in c.lits)
        return {x for x in out if x not in self.formula.value}

    def dump(self) -> str:
        lines = [f"IMP {a} {b} {'new' if new else 'old'}" for a, b, new in sorted(self.formula.arcs())]
        lines += ["NAE %d %d %d" % c.lits for c in sorted(self.nae)]
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class Unsat:
    reason: str


def build_formulas(g: TemporalGraph, p: ClassPartition, variant: Variant
                   ) -> Union[ConstraintSystem, Unsat]:
    """Clauses of the orientation table for every triangle and induced 2-path."""
    f = TwoSatFormula(p.size)
    nae: set[NaeClause] = set()
    ok = True
    x = p.literal_of

    for site in enumerate_constraint_sites(g):
        u, v, w = site.vertices
        if site.kind is SiteKind.PATH2:
            t1, t2 = site.labels
            if t1 < t2:
                ok &= f.add_implication(x[u, v], x[w, v])
            elif not variant.strict:  # uv = wv
                ok &= f.add_implication(x[u, v], x[w, v])
                ok &= f.add_implication(x[w, v], x[u, v])
            continue

        t1, t2, t3 = site.labels
        a, b, c = x[u, v], x[v, w], x[w, u]
        if t2 < t3:
            ok &= f.add_implication(x[v, w], x[u, w])
            ok &= f.add_implication(x[v, u], x[w, u])
        elif t1 < t2:  # t1 < t2 = t3
            if variant is Variant.STRONG:
                ok &= f.assign(x[w, u]) and f.assign(x[w, v])
            elif variant is Variant.STRONG_STRICT:
                # the definition allows four orientations here, not only w->u, w->v
                ok &= f.add_implication(x[u, v], x[w, v])
                ok &= f.add_implication(x[v, u], x[w, u])
            elif variant is Variant.TTO:
                ok &= f.add_implication(x[w, u], x[w, v])
                ok &= f.add_implication(x[w, v], x[w, u])
            else:
                nae.add(NaeClause((a, b, c), (u, v, w)))
        else:  # synchronous
            if variant is Variant.STRONG:
                return Unsat("bottom-triangle")
            if variant is Variant.TTO and a != -b and b != -c and c != -a:
                nae.add(NaeClause((a, b, c), (u, v, w)))
        if not ok:
            return Unsat("conflict")
    if not ok:
        return Unsat("conflict")
    return ConstraintSystem(f, nae, p)
