"""Definition-level checkers for temporal and per-layer transitivity."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .core import (DirectedTimeEdge, MultiLabelTemporalGraph, Orientation,
                   TemporalGraph, Variant)

__all__ = ["Variant", "Reason", "Violation", "ImproperOrientation",
           "verify_orientation", "verify_multilayer"]


class ImproperOrientation(ValueError):
    """Raised when an orientation does not pick exactly one direction per edge."""


class Reason(enum.Enum):
    MISSING_EDGE = "missing-edge"
    WRONG_DIRECTION = "wrong-direction"
    LABEL_TOO_SMALL = "label-too-small"


@dataclass(frozen=True)
class Violation:
    """Directed 2-path (uv,t1),(vw,t2) that lacks a closing edge u->w.

    `bound` is the smallest label the closing edge would need.
    """

    first: DirectedTimeEdge
    second: DirectedTimeEdge
    reason: Reason
    bound: int

    def describe(self, g) -> str:
        nm = g.names
        a, b = self.first, self.second
        return (f"({nm[a.tail]}{nm[a.head]},{a.label}) ({nm[b.tail]}{nm[b.head]},{b.label}) "
                f"{self.reason.value} need {nm[a.tail]}->{nm[b.head]} label>={self.bound}")


def _require_proper(g, f: Orientation):
    if not f.is_proper(g):
        raise ImproperOrientation("orientation must orient every edge exactly once")


def verify_orientation(g: TemporalGraph, f: Orientation, variant: Variant) -> Optional[Violation]:
    """Return None if f is temporally transitive for the variant, else the first violation.

    Witnesses are ordered by (u, v, w) index, so the answer is deterministic.
    """
    _require_proper(g, f)
    out = f.out_lists(g.n)
    for u in range(g.n):
        for v in out[u]:
            t1 = g.label(u, v)
            for w in out[v]:
                if w == u:
                    continue
                t2 = g.label(v, w)
                if not variant.premise(t1, t2):
                    continue
                t3 = g.label(u, w)
                bound = t2 + 1 if variant.strong else t2
                if t3 is None:
                    reason = Reason.MISSING_EDGE
                elif (u, w) not in f.arcs:
                    reason = Reason.WRONG_DIRECTION
                elif not variant.closes(t2, t3):
                    reason = Reason.LABEL_TOO_SMALL
                else:
                    continue
                return Violation(DirectedTimeEdge(u, v, t1), DirectedTimeEdge(v, w, t2), reason, bound)
    return None


def verify_multilayer(g: MultiLabelTemporalGraph, f: Orientation) -> Optional[tuple[int, Violation]]:
    """Check that every label layer is transitively oriented in the static sense."""
    _require_proper(g, f)
    for t, pairs in g.layers().items():
        out: dict[int, list[int]] = {}
        for u, v in pairs:
            a, b = (u, v) if (u, v) in f.arcs else (v, u)
            out.setdefault(a, []).append(b)
        for u in sorted(out):
            for v in sorted(out[u]):
                for w in sorted(out.get(v, ())):
                    if w == u:
                        continue
                    if t not in g.label_set(u, w):
                        reason = Reason.MISSING_EDGE
                    elif (u, w) not in f.arcs:
                        reason = Reason.WRONG_DIRECTION
                    else:
                        continue
                    return t, Violation(DirectedTimeEdge(u, v, t), DirectedTimeEdge(v, w, t), reason, t)
    return None
