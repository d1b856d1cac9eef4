"""Exhaustive immersion search for desk-scale hosts.

Complete by construction: every injective vertex map is tried, and for
each map every combination of arc-disjoint vertex-simple routes.  Searching
simple paths only loses nothing because any walk contains a simple path
between its ends on a subset of its arcs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certify import ImmersionCertificate
from .errors import ResourceExceeded
from .multidigraph import MultiDigraph
from .patterns import Pattern, graph_pattern


@dataclass(frozen=True)
class SearchLimits:
    max_host_vertices: int = 12
    max_host_arcs: int = 40
    node_budget: int = 10**7


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise ResourceExceeded(f"node budget {self.limit} exhausted")


def _simple_paths(host: MultiDigraph, s: int, t: int, blocked: set[int], budget: _Budget):
    """Yield vertex-simple s -> t paths (arc id lists) avoiding ``blocked``, DFS in arc id order."""
    path: list[int] = []
    on_path = {s}

    def dfs(u):
        budget.tick()
        for a, w in host.out_items(u):
            if a in blocked or w in on_path:
                continue
            path.append(a)
            if w == t:
                yield list(path)
            else:
                on_path.add(w)
                yield from dfs(w)
                on_path.discard(w)
            path.pop()

    yield from dfs(s)


def exhaustive_immersion(host: MultiDigraph, pattern: Pattern | MultiDigraph,
                         limits: SearchLimits = SearchLimits()) -> ImmersionCertificate | None:
    """Return an immersion certificate of ``pattern`` in ``host``, or None if none exists.

    Raises ResourceExceeded if the host is too large or the node budget runs out.
    """
    if isinstance(pattern, MultiDigraph):
        pattern = graph_pattern(pattern)
    if host.n > limits.max_host_vertices or host.m > limits.max_host_arcs:
        raise ResourceExceeded(
            f"host has {host.n} vertices / {host.m} arcs; limits are "
            f"{limits.max_host_vertices} / {limits.max_host_arcs}")
    pg = pattern.graph
    budget = _Budget(limits.node_budget)
    order = sorted(pg.vertices(), key=lambda p: (-(pg.out_degree(p) + pg.in_degree(p)), p))
    hverts = host.vertices()
    parcs = list(pg.arcs())
    vmap: dict[int, int] = {}
    taken: set[int] = set()

    def route(pending, blocked, paths):
        if not pending:
            return paths
        pa, pu, pv = pending[0]
        for path in _simple_paths(host, vmap[pu], vmap[pv], blocked, budget):
            paths[pa] = path
            found = route(pending[1:], blocked | set(path), paths)
            if found is not None:
                return found
            del paths[pa]
        return None

    def assign(i):
        budget.tick()
        if i == len(order):
            # arcs whose images are already adjacent first
            pending = sorted(parcs, key=lambda e: (host.multiplicity(vmap[e[1]], vmap[e[2]]) == 0, e[0]))
            return route(pending, set(), {})
        p = order[i]
        for h in hverts:
            if h in taken:
                continue
            if host.out_degree(h) < pg.out_degree(p) or host.in_degree(h) < pg.in_degree(p):
                continue
            vmap[p] = h
            taken.add(h)
            found = assign(i + 1)
            if found is not None:
                return found
            taken.discard(h)
            del vmap[p]
        return None

    paths = assign(0)
    if paths is None:
        return None
    return ImmersionCertificate(pattern, host, dict(vmap), dict(paths))


def is_immersion(host: MultiDigraph, cert: ImmersionCertificate) -> bool:
    """Minimal yes/no validity check written independently of ``certify.verify``."""
    pg = cert.pattern.graph
    vmap = cert.vertex_map
    if sorted(vmap) != sorted(pg.vertices()):
        return False
    if len(set(vmap.values())) != len(vmap) or any(not host.has_vertex(h) for h in vmap.values()):
        return False
    if sorted(cert.arc_paths) != sorted(pg.arc_ids()):
        return False
    everything = [a for p in cert.arc_paths.values() for a in p]
    if len(everything) != len(set(everything)) or any(not host.has_arc(a) for a in everything):
        return False
    for pa, pu, pv in pg.arcs():
        path = cert.arc_paths[pa]
        if not path:
            return False
        current = vmap[pu]
        visited = {current}
        for a in path:
            t, h = host.endpoints(a)
            if t != current or h in visited:
                return False
            visited.add(h)
            current = h
        if current != vmap[pv]:
            return False
    return True
