"""Seeded instance generators and reduction-branch fixtures.

``gen_out_regular`` algorithm (pinned for reproducibility)::

    rng = numpy.random.Generator(numpy.random.PCG64(seed))
    for v in 0 .. n-1:
        keys = rng.random(n - 1)                  # one float64 per other vertex
        picks = argsort(keys, stable)[:d]         # d smallest keys
        heads = sorted(p if p < v else p + 1 for p in picks)
        add arcs (v, h) for h in heads, in that order

So arc ids run vertex by vertex, heads ascending.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .certify import ImmersionCertificate
from .errors import OutOfRange, UnknownFixture
from .multidigraph import MultiDigraph
from .patterns import build_f


def gen_out_regular(n: int, d: int, seed: int) -> MultiDigraph:
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise OutOfRange(f"n must be an integer >= 2, got {n!r}")
    if isinstance(d, bool) or not isinstance(d, int) or not 1 <= d <= n - 1:
        raise OutOfRange(f"d must satisfy 1 <= d <= n-1, got {d!r}")
    if not 0 <= seed < 2**64:
        raise OutOfRange("seed must be a 64-bit unsigned integer")
    rng = np.random.Generator(np.random.PCG64(seed))
    g = MultiDigraph(n)
    for v in range(n):
        keys = rng.random(n - 1)
        picks = np.argsort(keys, kind="stable")[:d]
        picks = np.where(picks < v, picks, picks + 1)
        for h in np.sort(picks).tolist():
            g.add_arc(v, h)
    return g


@dataclass
class ReductionFixture:
    """Small graph whose planted F(K-1, l) tip is a bottleneck.

    ``expected`` pins the reduction mechanics: the cover ``Y``, private sets
    ``S``, chosen ``ystar``, R arc count, number of shortcut arcs and their
    segment lengths, and the branch vertices of the final certificate.
    """

    name: str
    graph: MultiDigraph
    inner: ImmersionCertificate
    K: int
    l: int
    expected: dict = field(default_factory=dict)


def _complete(g: MultiDigraph, vs, skip=()) -> None:
    for u in vs:
        for v in vs:
            if u != v and (u, v) not in skip:
                g.add_arc(u, v)


def _bottleneck_1() -> ReductionFixture:
    # tip 0 has the single out-arc 0->1; A={1,2,3} and B={4,5,6} complete
    g = MultiDigraph(7)
    g.add_arc(0, 1)
    _complete(g, (1, 2, 3))
    _complete(g, (4, 5, 6))
    inner = ImmersionCertificate(build_f(1, 2), g, {0: 0}, {})
    expected = {
        "Y": [1, 4],
        "S": {1: [1, 2, 3], 4: [4, 5, 6]},
        "ystar": 1,
        "max_cut": 1,
        "R_arcs": 0,
        "shortcut_segments": [],
        "H_vertices": [0, 1, 2, 3],
        "branch": [1, 2],
    }
    return ReductionFixture("bottleneck-1", g, inner, 2, 2, expected)


def _two_covers() -> ReductionFixture:
    # tip 0 -> {1, 2} (two arcs, l = 3); 1 <-> 2; 1 -> 3; B={3,4,5,6} complete
    g = MultiDigraph(7)
    g.add_arc(0, 1)
    g.add_arc(0, 2)
    g.add_arc(1, 2)
    g.add_arc(2, 1)
    g.add_arc(1, 3)
    _complete(g, (3, 4, 5, 6))
    inner = ImmersionCertificate(build_f(1, 3), g, {0: 0}, {})
    expected = {
        "Y": [1, 3],
        "S": {1: [1, 2], 3: [3, 4, 5, 6]},
        "ystar": 3,
        "max_cut": 2,
        "R_arcs": 1,
        "shortcut_segments": [],
        "H_vertices": [0, 3, 4, 5, 6],
        "branch": [3, 4],
    }
    return ReductionFixture("two-covers", g, inner, 2, 3, expected)


def _shortcut_cascade() -> ReductionFixture:
    # planted F(2,2): x1=0, x2=1 via 0->1 and 0->4->2->3->5->1.
    # W={4,5,6,7} is complete except 4->5, so 4 and 5 sit three arcs apart
    # on the second path; V={8,9,10,11} hangs off the tip's only arc 1->8.
    g = MultiDigraph(12)
    p1 = [g.add_arc(0, 1)]
    p2 = [g.add_arc(0, 4), g.add_arc(4, 2), g.add_arc(2, 3), g.add_arc(3, 5), g.add_arc(5, 1)]
    g.add_arc(1, 8)
    g.add_arc(2, 8)
    g.add_arc(3, 8)
    _complete(g, (4, 5, 6, 7), skip={(4, 5)})
    g.add_arc(6, 1)
    g.add_arc(7, 1)
    _complete(g, (8, 9, 10, 11))
    inner = ImmersionCertificate(build_f(2, 2), g, {0: 0, 1: 1}, {0: p1, 1: p2})
    expected = {
        "Y": [4, 8],
        "S": {4: [4, 5, 6, 7], 8: [2, 3, 8, 9, 10, 11]},
        "ystar": 4,
        "max_cut": 1,
        "R_arcs": 0,
        "shortcut_segments": [3],
        "H_vertices": [0, 1, 4, 5, 6, 7],
        "branch": [4, 5, 1],
    }
    return ReductionFixture("shortcut-cascade", g, inner, 3, 2, expected)


FIXTURES = {
    "bottleneck-1": _bottleneck_1,
    "two-covers": _two_covers,
    "shortcut-cascade": _shortcut_cascade,
}


def gen_reduction_fixture(name: str) -> ReductionFixture:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
