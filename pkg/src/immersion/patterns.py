"""Pattern digraphs F(k, l) and TT_k, and the closed-form degree bounds.

Every bound takes the induction *target* ``K`` (the pattern being built),
so ``bound_c1(K, l)`` is the number of low-outdegree vertices tolerated
while searching for F(K, l).  All arithmetic uses Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import OutOfRange
from .multidigraph import MultiDigraph

F = "f"
TT = "tt"
GRAPH = "graph"


def _check_int(name: str, value: int, low: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise OutOfRange(f"{name} must be an integer, got {value!r}")
    if value < low:
        raise OutOfRange(f"{name} must be >= {low}, got {value}")


def bound_f(k: int, l: int) -> int:
    """Outdegree threshold 2 k^3 l^2 above which F(k, l) is forced."""
    _check_int("k", k, 1)
    _check_int("l", l, 1)
    return 2 * k**3 * l**2


def bound_c1(K: int, l: int) -> int:
    """Number of exceptional (outdegree 0) vertices allowed for target K."""
    _check_int("K", K, 2)
    _check_int("l", l, 1)
    return (K - 1) + K * l


def bound_dprime(K: int, l: int) -> int:
    """Guaranteed outdegree after dropping exceptional vertices and excess parallel arcs."""
    _check_int("K", K, 2)
    _check_int("l", l, 1)
    f = bound_f(K, l)
    q, r = divmod(f, K)
    assert r == 0
    return f - bound_c1(K, l) * K * l - q


def tt_chain_width(k: int) -> int:
    """Width l of the chain F(k, l) that hosts TT_k: max(2, C(k, 2))."""
    _check_int("k", k, 1)
    return max(2, comb(k, 2))


@dataclass
class Pattern:
    """A pattern digraph together with how it was built.

    For F patterns ``level[a] = i`` when arc ``a`` runs from x_i to x_{i+1}
    (0-based).  Arc ``i * l + c`` is copy ``c`` of level ``i``.
    """

    kind: str
    k: int
    l: int
    graph: MultiDigraph
    level: dict[int, int] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.graph.n


def build_f(k: int, l: int) -> Pattern:
    _check_int("k", k, 1)
    _check_int("l", l, 1)
    g = MultiDigraph(k)
    level = {}
    for i in range(k - 1):
        for _ in range(l):
            level[g.add_arc(i, i + 1)] = i
    return Pattern(F, k, l, g, level)


def build_tt(k: int) -> Pattern:
    _check_int("k", k, 1)
    g = MultiDigraph(k)
    for i in range(k):
        for j in range(i + 1, k):
            g.add_arc(i, j)
    return Pattern(TT, k, 0, g)


def build_pattern(kind: str, k: int, l: int | None = None) -> Pattern:
    if kind == F:
        if l is None:
            raise OutOfRange("F pattern needs l")
        return build_f(k, l)
    if kind == TT:
        return build_tt(k)
    raise OutOfRange(f"unknown pattern kind {kind!r}")


def graph_pattern(g: MultiDigraph) -> Pattern:
    """Wrap an arbitrary digraph as a pattern (used for identity certificates and composition)."""
    return Pattern(GRAPH, g.n, 0, g)
