import random

import pytest
from hypothesis import strategies as st

from immersion.multidigraph import MultiDigraph


def random_multidigraph(rng: random.Random, n: int, m: int, max_mult: int | None = None) -> MultiDigraph:
    g = MultiDigraph(n)
    counts: dict[tuple[int, int], int] = {}
    attempts = 0
    while g.m < m and attempts < 50 * m + 50:
        attempts += 1
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        if max_mult is not None and counts.get((u, v), 0) >= max_mult:
            continue
        counts[(u, v)] = counts.get((u, v), 0) + 1
        g.add_arc(u, v)
    return g


@st.composite
def multidigraphs(draw, max_vertices=8, max_arcs=20, max_mult=3):
    n = draw(st.integers(2, max_vertices))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])
    arcs = draw(st.lists(pairs, max_size=max_arcs))
    g = MultiDigraph(n)
    counts: dict = {}
    for u, v in arcs:
        if counts.get((u, v), 0) < max_mult:
            counts[(u, v)] = counts.get((u, v), 0) + 1
            g.add_arc(u, v)
    return g


def all_simple_paths(g: MultiDigraph, s: int, t: int, blocked=frozenset()):
    """Every vertex-simple s -> t path as a tuple of arc ids (plain recursive enumeration)."""
    out = []

    def rec(u, seen, acc):
        if u == t:
            out.append(tuple(acc))
            return
        for a, _, h in list(g.arcs()):
            if g.tail(a) == u and a not in blocked and h not in seen:
                rec(h, seen | {h}, acc + [a])

    rec(s, {s}, [])
    return out


# -- acceptance reporting ----------------------------------------------------

_ACCEPTANCE: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if not item.module.__name__.endswith("test_acceptance"):
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        title = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _ACCEPTANCE.append((item.name, "PASS" if report.passed else "FAIL", title))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, title in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {name}: {title}")
