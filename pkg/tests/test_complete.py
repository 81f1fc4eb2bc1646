import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import oriented_graphs, orient, random_graph
from temporient.complete import completion_set, solve_ttc_fpt, solve_ttc_oriented, tail_heavy_table
from temporient.core import Orientation, TemporalGraph, Variant
from temporient.oracle import oracle_complete, oracle_complete_witness
from temporient.verify import verify_orientation


def dip_path():
    g = TemporalGraph([("a", "b", 2), ("b", "c", 1), ("c", "d", 3)])
    return g, orient(g, "ab", "bc", "cd")


def named(g, table):
    return {g.names[u] + g.names[w]: t for (u, w), t in table.items()}


def apply(g, f, added):
    g2 = g.with_edges([(a.tail, a.head, a.label) for a in added])
    f2 = f.union(Orientation.of((a.tail, a.head) for a in added))
    return g2, f2


def test_dip_path_table():
    g, f = dip_path()
    table = tail_heavy_table(g, f, Variant.TTO)
    assert named(g, table.values) == {"ad": 3, "bd": 3}
    assert table.get(g.index["a"], g.index["c"]) is None


def test_single_arcs_never_enter_the_table():
    g = TemporalGraph([("a", "b", 1), ("c", "d", 2)])
    f = orient(g, "ab", "cd")
    X, Y, _ = completion_set(g, f, Variant.TTO)
    assert not X and not Y


def test_dip_path_completion_set():
    g, f = dip_path()
    X, Y, _ = completion_set(g, f, Variant.TTO)
    assert named(g, X) == named(g, Y) == {"ad": 3, "bd": 3}


def test_transitive_digraph_has_empty_y():
    g = TemporalGraph([("u", "v", 1), ("v", "w", 2), ("u", "w", 2)])
    f = orient(g, "uv", "vw", "uw")
    X, Y, _ = completion_set(g, f, Variant.TTO)
    assert named(g, X) == {"uw": 2} and not Y
    res = solve_ttc_oriented(g, f, 0, Variant.TTO)
    assert res.yes and not res.added


def test_dip_path_decision():
    g, f = dip_path()
    res = solve_ttc_oriented(g, f, 2, Variant.TTO)
    assert res.yes
    assert {(g.names[a.tail], g.names[a.head], a.label) for a in res.added} == {("a", "d", 3), ("b", "d", 3)}
    assert solve_ttc_oriented(g, f, 1, Variant.TTO).reason == "budget"
    assert oracle_complete(g, f, 3, Variant.TTO) == 2
    g2, f2 = apply(g, f, res.added)
    assert verify_orientation(g2, f2, Variant.TTO) is None


def test_cyclic_triangle_is_no():
    g = TemporalGraph([("u", "v", 1), ("v", "w", 2), ("w", "u", 1)])
    f = orient(g, "uv", "vw", "wu")
    res = solve_ttc_oriented(g, f, 3, Variant.TTO)
    assert not res.yes and res.reason in ("reversed-edge", "both-directions")
    for k in range(4):
        assert oracle_complete(g, f, k, Variant.TTO) is None


def test_oriented_solver_needs_a_full_orientation():
    g, _ = dip_path()
    with pytest.raises(ValueError):
        solve_ttc_oriented(g, orient(g, "ab"), 2, Variant.TTO)


def test_fpt_isolated_edge_either_way():
    g = TemporalGraph([("a", "b", 1)])
    res = solve_ttc_fpt(g, Orientation.of([]), 0, Variant.TTO)
    assert res.yes and not res.added


def test_fpt_parallel_matches_sequential():
    rng = random.Random(3)
    for _ in range(10):
        g = random_graph(rng, 6, 8)
        seq = solve_ttc_fpt(g, Orientation.of([]), 2, Variant.TTO)
        par = solve_ttc_fpt(g, Orientation.of([]), 2, Variant.TTO, jobs=4)
        assert (seq.yes, seq.added, seq.orientation) == (par.yes, par.added, par.orientation)


@pytest.mark.parametrize("variant", list(Variant), ids=lambda v: v.value)
@given(gf=oriented_graphs(max_n=5, max_label=3), k=st.integers(0, 3))
def test_oriented_matches_oracle(variant, gf, k):
    g, f = gf
    res = solve_ttc_oriented(g, f, k, variant)
    best = oracle_complete(g, f, k, variant)
    assert res.yes == (best is not None)
    if res.yes:
        assert len(res.added) == best
        g2, f2 = apply(g, f, res.added)
        assert verify_orientation(g2, f2, variant) is None


@given(gf=oriented_graphs(max_n=5, max_label=3), k=st.integers(0, 3))
def test_fpt_with_nothing_free_equals_oriented(gf, k):
    g, f = gf
    for v in Variant:
        a, b = solve_ttc_oriented(g, f, k, v), solve_ttc_fpt(g, f, k, v)
        assert a.yes == b.yes and a.added == b.added


def _first_success_by_enumeration(g, f, k, variant):
    free = f.unoriented(g)
    for bits in itertools.product((0, 1), repeat=len(free)):
        arcs = f.arcs | {(u, v) if not b else (v, u) for (u, v), b in zip(free, bits)}
        res = solve_ttc_oriented(g, Orientation.of(arcs), k, variant)
        if res.yes:
            return res
    return None


@settings(max_examples=80)
@given(gf=oriented_graphs(max_n=5, max_label=3), keep=st.integers(0, 100), k=st.integers(0, 2))
def test_fpt_returns_lexicographically_first_extension(gf, keep, k):
    g, full = gf
    rng = random.Random(keep)
    f = Orientation.of(a for a in sorted(full.arcs) if rng.random() < 0.4)
    for v in Variant:
        want = _first_success_by_enumeration(g, f, k, v)
        got = solve_ttc_fpt(g, f, k, v)
        assert got.yes == (want is not None)
        if want is not None:
            assert got.orientation == want.orientation and got.added == want.added


@settings(max_examples=60)
@given(gf=oriented_graphs(max_n=5, max_label=3), keep=st.integers(0, 100), k=st.integers(0, 2))
def test_fpt_matches_oracle_on_partial(gf, keep, k):
    g, full = gf
    rng = random.Random(keep)
    f = Orientation.of(a for a in sorted(full.arcs) if rng.random() < 0.5)
    best = oracle_complete(g, f, k, Variant.TTO)
    res = solve_ttc_fpt(g, f, k, Variant.TTO)
    assert res.yes == (best is not None)
    if res.yes:
        g2, f2 = apply(g, res.orientation, res.added)
        assert verify_orientation(g2, f2, Variant.TTO) is None


@given(gf=oriented_graphs(max_n=5, max_label=3), k=st.integers(0, 3))
def test_every_completion_needs_the_table(gf, k):
    # the oracle's minimum completion, found without T, still has u->w with label >= T[u, w]
    g, f = gf
    for v in Variant:
        size, full, added = oracle_complete_witness(g, f, k, v)
        if size is None:
            continue
        g2 = g.with_edges(added)
        f2 = full.union(Orientation.of((u, w) for u, w, _ in added))
        table = tail_heavy_table(g, f, v)
        for u, w in table.values:
            assert (u, w) in f2.arcs and g2.label(u, w) >= table.required(u, w)


@settings(max_examples=40)
@given(gf=oriented_graphs(max_n=4, max_label=2), k=st.integers(1, 2))
def test_candidate_labels_are_enough(gf, k):
    g, f = gf
    wide = tuple(range(1, max(g.labels(), default=0) + k + 2))
    for v in Variant:
        assert oracle_complete(g, f, k, v) == oracle_complete(g, f, k, v, labels=wide)
