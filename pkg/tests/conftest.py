import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st
from networkx.generators.atlas import graph_atlas_g

sys.path.insert(0, str(Path(__file__).parent))

from dichro.graphs import Digraph, UndirectedGraph  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return UndirectedGraph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


@st.composite
def oriented_graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    choice = draw(st.lists(st.integers(0, 2), min_size=len(pairs), max_size=len(pairs)))
    arcs = [(i, j) if c == 1 else (j, i) for (i, j), c in zip(pairs, choice) if c]
    return Digraph.from_arcs(n, arcs)


@st.composite
def digraphs(draw, min_n=0, max_n=6):
    """Digraphs that may contain digons."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Digraph.from_arcs(n, [p for p, c in zip(pairs, chosen) if c])


@pytest.fixture(scope="session")
def atlas():
    return graph_atlas_g()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "ACCEPTANCE_RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=lambda k: (int(k.rstrip("b")), k)):
        status, detail = results[key]
        terminalreporter.write_line(f"Criterion {key}: {status} {detail}")
