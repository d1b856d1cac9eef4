"""Directed multigraph with stable arc identifiers.

Vertices and arcs are identified by dense non-negative integers handed out
in creation order.  Ids are never reused inside one graph, and copies carry
the id counters along, so an arc id keeps its meaning across every subgraph
derived from the same original.  That is what lets certificates refer to
parallel arcs unambiguously.

Text format::

    # comment
    p dgr <n> <m>
    a <tail> <head>      (exactly m lines; arc id = 0-based line order)
"""

from __future__ import annotations

from collections import Counter, deque
from collections.abc import Iterable, Iterator
from typing import TextIO

from .errors import FormatError, LoopArc, UnknownId


class MultiDigraph:
    """Loop-free directed multigraph.

    ``_out[v]`` maps arc id -> head for arcs leaving ``v``; ``_in[v]`` maps
    arc id -> tail for arcs entering ``v``.  Both dicts are kept in ascending
    arc id order because new ids always exceed every existing id.
    """

    __slots__ = ("_arcs", "_out", "_in", "_next_vertex", "_next_arc")

    def __init__(self, n: int = 0):
        self._arcs: dict[int, tuple[int, int]] = {}
        self._out: dict[int, dict[int, int]] = {}
        self._in: dict[int, dict[int, int]] = {}
        self._next_vertex = 0
        self._next_arc = 0
        self.add_vertices(n)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> MultiDigraph:
        g = cls(n)
        for u, v in arcs:
            g.add_arc(u, v)
        return g

    def add_vertex(self) -> int:
        v = self._next_vertex
        self._next_vertex += 1
        self._out[v] = {}
        self._in[v] = {}
        return v

    def add_vertices(self, count: int) -> range:
        start = self._next_vertex
        for _ in range(count):
            self.add_vertex()
        return range(start, self._next_vertex)

    def add_arc(self, tail: int, head: int) -> int:
        if tail not in self._out:
            raise UnknownId(f"vertex {tail}")
        if head not in self._out:
            raise UnknownId(f"vertex {head}")
        if tail == head:
            raise LoopArc(f"loop at vertex {tail}")
        a = self._next_arc
        self._next_arc += 1
        self._arcs[a] = (tail, head)
        self._out[tail][a] = head
        self._in[head][a] = tail
        return a

    def remove_arcs(self, arcs: Iterable[int]) -> None:
        arcs = list(arcs)
        for a in arcs:
            if a not in self._arcs:
                raise UnknownId(f"arc {a}")
        for a in arcs:
            # tolerate duplicates in the request
            ends = self._arcs.pop(a, None)
            if ends is None:
                continue
            u, v = ends
            del self._out[u][a]
            del self._in[v][a]

    def remove_vertices(self, vertices: Iterable[int]) -> None:
        vertices = set(vertices)
        for v in vertices:
            if v not in self._out:
                raise UnknownId(f"vertex {v}")
        doomed = set()
        for v in vertices:
            doomed.update(self._out[v])
            doomed.update(self._in[v])
        self.remove_arcs(doomed)
        for v in vertices:
            del self._out[v]
            del self._in[v]

    def copy(self) -> MultiDigraph:
        g = MultiDigraph.__new__(MultiDigraph)
        g._arcs = dict(self._arcs)
        g._out = {v: dict(d) for v, d in self._out.items()}
        g._in = {v: dict(d) for v, d in self._in.items()}
        g._next_vertex = self._next_vertex
        g._next_arc = self._next_arc
        return g

    def induced(self, vertices: Iterable[int]) -> MultiDigraph:
        """Subgraph on ``vertices`` keeping every arc with both ends inside.

        Vertex and arc ids are preserved.
        """
        keep = set(vertices)
        for v in keep:
            if v not in self._out:
                raise UnknownId(f"vertex {v}")
        g = MultiDigraph.__new__(MultiDigraph)
        g._next_vertex = self._next_vertex
        g._next_arc = self._next_arc
        g._out = {}
        g._in = {}
        for v in self._out:
            if v in keep:
                g._out[v] = {a: h for a, h in self._out[v].items() if h in keep}
                g._in[v] = {a: t for a, t in self._in[v].items() if t in keep}
        g._arcs = {a: e for a, e in self._arcs.items() if e[0] in keep and e[1] in keep}
        return g

    def without_arcs(self, arcs: Iterable[int]) -> MultiDigraph:
        g = self.copy()
        g.remove_arcs(arcs)
        return g

    # -- queries ----------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._out)

    @property
    def m(self) -> int:
        return len(self._arcs)

    @property
    def next_arc_id(self) -> int:
        return self._next_arc

    def vertices(self) -> list[int]:
        return list(self._out)

    def arc_ids(self) -> list[int]:
        return list(self._arcs)

    def arcs(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(arc_id, tail, head)`` in ascending arc id order."""
        for a, (u, v) in self._arcs.items():
            yield a, u, v

    def has_vertex(self, v: int) -> bool:
        return v in self._out

    def has_arc(self, a: int) -> bool:
        return a in self._arcs

    def endpoints(self, a: int) -> tuple[int, int]:
        try:
            return self._arcs[a]
        except KeyError:
            raise UnknownId(f"arc {a}") from None

    def tail(self, a: int) -> int:
        return self.endpoints(a)[0]

    def head(self, a: int) -> int:
        return self.endpoints(a)[1]

    def _check_vertex(self, v: int) -> None:
        if v not in self._out:
            raise UnknownId(f"vertex {v}")

    def out_arcs(self, v: int) -> list[int]:
        self._check_vertex(v)
        return list(self._out[v])

    def in_arcs(self, v: int) -> list[int]:
        self._check_vertex(v)
        return list(self._in[v])

    def out_items(self, v: int):
        """``(arc_id, head)`` pairs leaving ``v``, ascending arc id."""
        self._check_vertex(v)
        return self._out[v].items()

    def in_items(self, v: int):
        """``(arc_id, tail)`` pairs entering ``v``, ascending arc id."""
        self._check_vertex(v)
        return self._in[v].items()

    def out_degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._in[v])

    def arcs_between(self, u: int, v: int) -> list[int]:
        self._check_vertex(u)
        self._check_vertex(v)
        return [a for a, h in self._out[u].items() if h == v]

    def multiplicity(self, u: int, v: int) -> int:
        return len(self.arcs_between(u, v))

    def min_out_degree(self) -> int:
        if not self._out:
            raise ValueError("min_out_degree of an empty digraph")
        return min(len(d) for d in self._out.values())

    def max_out_degree(self) -> int:
        if not self._out:
            raise ValueError("max_out_degree of an empty digraph")
        return max(len(d) for d in self._out.values())

    def pair_counts(self) -> Counter:
        return Counter(self._arcs.values())

    def max_multiplicity(self) -> int:
        counts = self.pair_counts()
        return max(counts.values()) if counts else 0

    def is_simple(self) -> bool:
        return self.max_multiplicity() <= 1

    def same_structure(self, other: MultiDigraph) -> bool:
        """Same vertex ids and same arc id -> endpoints map."""
        return list(self._out) == list(other._out) and self._arcs == other._arcs

    # -- reachability -----------------------------------------------------

    def reach_to(self, target: int, forbidden: Iterable[int] = ()) -> set[int]:
        """Vertices with a directed path to ``target`` avoiding ``forbidden`` arcs."""
        self._check_vertex(target)
        return self._bfs(target, self._in, set(forbidden))

    def reach_from(self, source: int, forbidden: Iterable[int] = ()) -> set[int]:
        """Vertices reachable from ``source`` avoiding ``forbidden`` arcs."""
        self._check_vertex(source)
        return self._bfs(source, self._out, set(forbidden))

    @staticmethod
    def _bfs(start: int, adj: dict[int, dict[int, int]], forbidden: set[int]) -> set[int]:
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for a, w in adj[u].items():
                if w not in seen and a not in forbidden:
                    seen.add(w)
                    queue.append(w)
        return seen

    # -- consistency ------------------------------------------------------

    def check_consistency(self) -> None:
        """Full rescan of the indexes against the arc map; raises AssertionError."""
        assert set(self._out) == set(self._in), "vertex sets of indexes differ"
        out_seen = 0
        for v, d in self._out.items():
            for a, h in d.items():
                assert self._arcs.get(a) == (v, h), f"out index wrong for arc {a}"
                out_seen += 1
            assert list(d) == sorted(d), f"out index of {v} not in id order"
        in_seen = 0
        for v, d in self._in.items():
            for a, t in d.items():
                assert self._arcs.get(a) == (t, v), f"in index wrong for arc {a}"
                in_seen += 1
        assert out_seen == in_seen == len(self._arcs), "arc counts disagree"
        for a, (u, v) in self._arcs.items():
            assert u != v, f"loop arc {a}"
            assert a < self._next_arc
        for v in self._out:
            assert v < self._next_vertex

    def __repr__(self) -> str:
        return f"MultiDigraph(n={self.n}, m={self.m})"


# -- text format ------------------------------------------------------------


def format_digraph(g: MultiDigraph) -> str:
    """Serialize ``g``.

    Graphs whose ids have gaps (after deletions) are written with
    ``n = max vertex id + 1`` and arcs renumbered densely in id order.
    """
    verts = g.vertices()
    n = (max(verts) + 1) if verts else 0
    lines = [f"p dgr {n} {g.m}"]
    lines.extend(f"a {u} {v}" for _, u, v in g.arcs())
    return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> MultiDigraph:
    header = None
    arcs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "dgr":
                raise FormatError(f"line {lineno}: expected 'p dgr <n> <m>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormatError(f"line {lineno}: bad header counts") from None
            continue
        if len(parts) != 3 or parts[0] != "a":
            raise FormatError(f"line {lineno}: expected 'a <tail> <head>'")
        try:
            arcs.append((int(parts[1]), int(parts[2])))
        except ValueError:
            raise FormatError(f"line {lineno}: bad vertex index") from None
    if header is None:
        raise FormatError("missing 'p dgr' header")
    n, m = header
    if n < 0 or m < 0:
        raise FormatError("negative counts in header")
    if len(arcs) != m:
        raise FormatError(f"header announces {m} arcs, found {len(arcs)}")
    g = MultiDigraph(n)
    for i, (u, v) in enumerate(arcs):
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"arc {i}: vertex index out of range")
        if u == v:
            raise FormatError(f"arc {i}: loop at vertex {u}")
        g.add_arc(u, v)
    return g


def read_digraph(source: str | TextIO) -> MultiDigraph:
    if isinstance(source, str):
        with open(source, encoding="ascii") as fh:
            return parse_digraph(fh.read())
    return parse_digraph(source.read())


def write_digraph(g: MultiDigraph, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_digraph(g))
