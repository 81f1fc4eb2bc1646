import os
import random
import string
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from temporient.core import MultiLabelTemporalGraph, Orientation, TemporalGraph

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=1500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


def vname(i: int) -> str:
    return string.ascii_lowercase[i] if i < 26 else f"v{i}"


@st.composite
def temporal_graphs(draw, min_n=1, max_n=7, max_label=3, max_m=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_m)) if pairs else []
    edges = [(vname(a), vname(b), draw(st.integers(1, max_label))) for a, b in chosen]
    return TemporalGraph(edges, vertices=[vname(i) for i in range(n)])


@st.composite
def oriented_graphs(draw, **kw):
    g = draw(temporal_graphs(**kw))
    bits = draw(st.lists(st.booleans(), min_size=g.m, max_size=g.m))
    f = Orientation.of((u, v) if b else (v, u) for (u, v), b in zip(g.pairs, bits))
    return g, f


@st.composite
def multilabel_graphs(draw, max_n=6, max_label=3, max_m=10):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_m)) if pairs else []
    edges = []
    for a, b in chosen:
        labels = draw(st.lists(st.integers(1, max_label), min_size=1, max_size=2, unique=True))
        edges.append((vname(a), vname(b), tuple(labels)))
    return MultiLabelTemporalGraph(edges, vertices=[vname(i) for i in range(n)])


def random_graph(rng: random.Random, n: int, m: int, max_label: int = 3) -> TemporalGraph:
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = rng.sample(pairs, min(m, len(pairs)))
    return TemporalGraph([(vname(a), vname(b), rng.randint(1, max_label)) for a, b in chosen],
                         vertices=[vname(i) for i in range(n)])


def triangle(t_uv: int, t_vw: int, t_wu: int) -> TemporalGraph:
    return TemporalGraph([("u", "v", t_uv), ("v", "w", t_vw), ("w", "u", t_wu)])


def path2(t_uv: int, t_vw: int) -> TemporalGraph:
    return TemporalGraph([("u", "v", t_uv), ("v", "w", t_vw)])


def orient(g, *pairs: str) -> Orientation:
    """Orientation from 'uv'-style two-letter names."""
    return Orientation.from_names(g, [(p[0], p[1]) for p in pairs])


_CRITERIA: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        crit = name.split("_")[2]
        if hasattr(report, "wasxfail"):
            outcome = "xfail" if report.skipped else "XPASS"
        else:
            outcome = report.outcome
        _CRITERIA.setdefault(crit, []).append(f"{name}={outcome}")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_CRITERIA, key=int):
        results = _CRITERIA[crit]
        ok = all(r.endswith(("=passed", "=xfail")) for r in results)
        terminalreporter.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}  ({', '.join(results)})")
