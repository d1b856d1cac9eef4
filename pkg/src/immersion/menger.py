"""Arc-disjoint path packing versus small arc cut (Menger duality).

``paths_or_cut(g, s, t, l)`` returns either ``l`` pairwise arc-disjoint
s -> t paths or an arc set ``E`` with ``|E| < l`` meeting every s -> t path,
together with ``C = {v : v reaches t in g - E}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._core import get_backend
from .errors import InternalInvariantBroken, OutOfRange, SameEndpoints, UnknownId
from .multidigraph import MultiDigraph


@dataclass(frozen=True)
class CutCertificate:
    source: int
    target: int
    demand: int
    paths: tuple[tuple[int, ...], ...] = ()
    cut: tuple[int, ...] = ()
    component: frozenset[int] = field(default_factory=frozenset)

    @property
    def is_paths(self) -> bool:
        return len(self.paths) >= self.demand

    @property
    def value(self) -> int:
        """Packing size certified by this outcome (capped at the demand)."""
        return self.demand if self.is_paths else len(self.cut)


def _as_list(values) -> list:
    return values.tolist() if hasattr(values, "tolist") else list(values)


class FlowNetwork:
    """Immutable compressed snapshot of a MultiDigraph for repeated flow queries."""

    def __init__(self, g: MultiDigraph, backend: str | None = None):
        self.kernels = get_backend(backend)
        self.vertex_ids = g.vertices()
        self.arc_ids = g.arc_ids()
        vindex = {v: i for i, v in enumerate(self.vertex_ids)}
        aindex = {a: i for i, a in enumerate(self.arc_ids)}
        self.vindex = vindex
        tail = []
        head = []
        for _, u, v in g.arcs():
            tail.append(vindex[u])
            head.append(vindex[v])
        out_start = [0]
        out_arc: list[int] = []
        in_start = [0]
        in_arc: list[int] = []
        for v in self.vertex_ids:
            out_arc.extend(aindex[a] for a in g.out_arcs(v))
            out_start.append(len(out_arc))
            in_arc.extend(aindex[a] for a in g.in_arcs(v))
            in_start.append(len(in_arc))
        k = self.kernels
        self.tail = k.index_array(tail)
        self.head = k.index_array(head)
        self.out_start = k.index_array(out_start)
        self.out_arc = k.index_array(out_arc)
        self.in_start = k.index_array(in_start)
        self.in_arc = k.index_array(in_arc)
        self._tail_list = tail
        self._head_list = head
        self._out_start_list = out_start
        self._out_arc_list = out_arc

    @property
    def n(self) -> int:
        return len(self.vertex_ids)

    @property
    def m(self) -> int:
        return len(self.arc_ids)

    def _local(self, v: int) -> int:
        try:
            return self.vindex[v]
        except KeyError:
            raise UnknownId(f"vertex {v}") from None

    def max_flow(self, s: int, t: int, limit: int):
        """Run the augmenting kernel; returns ``(value, flow)`` on local arc indices."""
        ls, lt = self._local(s), self._local(t)
        flow = self.kernels.zeros(self.m)
        value = self.kernels.augment(self.out_start, self.out_arc, self.in_start, self.in_arc,
                                     self.tail, self.head, flow, ls, lt, limit)
        return int(value), flow

    def query(self, s: int, t: int, l: int) -> CutCertificate:
        if s == t:
            raise SameEndpoints(f"source and target are both {s}")
        if isinstance(l, bool) or not isinstance(l, int) or l < 1:
            raise OutOfRange(f"demand must be an integer >= 1, got {l!r}")
        value, flow = self.max_flow(s, t, l)
        if value >= l:
            paths = self._decompose(self._local(s), self._local(t), flow, l)
            return CutCertificate(s, t, l, paths=paths)
        return self._cut(s, t, l, value, flow)

    def _decompose(self, ls: int, lt: int, flow, count: int) -> tuple[tuple[int, ...], ...]:
        out_start, out_arc = self._out_start_list, self._out_arc_list
        head, tail = self._head_list, self._tail_list
        # read the kernel's array in place; copying all m entries dominates small queries
        pointer: dict[int, int] = {}
        paths = []
        for _ in range(count):
            walk = []
            u = ls
            while u != lt:
                i = pointer.get(u, out_start[u])
                while not flow[out_arc[i]]:
                    i += 1
                a = out_arc[i]
                pointer[u] = i + 1
                walk.append(a)
                u = head[a]
            # excise flow cycles
            path: list[int] = []
            pos = {ls: 0}
            stack = [ls]
            for a in walk:
                v = head[a]
                if v in pos:
                    j = pos[v]
                    for w in stack[j + 1:]:
                        del pos[w]
                    del stack[j + 1:]
                    del path[j:]
                else:
                    path.append(a)
                    stack.append(v)
                    pos[v] = len(stack) - 1
            assert tail[path[0]] == ls and head[path[-1]] == lt
            paths.append(tuple(self.arc_ids[a] for a in path))
        return tuple(paths)

    def _cut(self, s: int, t: int, l: int, value: int, flow) -> CutCertificate:
        k = self.kernels
        side = k.residual_reach(self.out_start, self.out_arc, self.in_start, self.in_arc,
                                self.tail, self.head, flow, self._local(s))
        side = _as_list(side)
        out_start, out_arc, head = self._out_start_list, self._out_arc_list, self._head_list
        cut_local = []
        for u in range(self.n):
            if side[u]:
                for i in range(out_start[u], out_start[u + 1]):
                    a = out_arc[i]
                    if not side[head[a]]:
                        cut_local.append(a)
        cut_local.sort()
        blocked = k.zeros(self.m)
        for a in cut_local:
            blocked[a] = 1
        lt = self._local(t)
        to_t = _as_list(k.reach(self.in_start, self.in_arc, self.tail, blocked, lt))
        component = frozenset(self.vertex_ids[v] for v in range(self.n) if to_t[v])
        # the residual frontier and the reverse closure are computed independently
        if len(cut_local) != value:
            raise InternalInvariantBroken(
                f"cut size {len(cut_local)} differs from flow value {value} ({s}->{t})")
        if any(side[v] and to_t[v] for v in range(self.n)):
            raise InternalInvariantBroken(f"cut for {s}->{t} does not separate")
        return CutCertificate(s, t, l, cut=tuple(self.arc_ids[a] for a in cut_local),
                              component=component)


def paths_or_cut(g: MultiDigraph, s: int, t: int, l: int,
                 backend: str | None = None) -> CutCertificate:
    if not g.has_vertex(s):
        raise UnknownId(f"vertex {s}")
    if not g.has_vertex(t):
        raise UnknownId(f"vertex {t}")
    if s == t:
        raise SameEndpoints(f"source and target are both {s}")
    return FlowNetwork(g, backend).query(s, t, l)


def check_cut_certificate(g: MultiDigraph, cert: CutCertificate) -> list[str]:
    """Independent re-check of a CutCertificate against ``g``; returns problems found."""
    problems = []
    s, t = cert.source, cert.target
    if cert.is_paths:
        used: set[int] = set()
        for path in cert.paths[: cert.demand]:
            if not path:
                problems.append("empty path")
                continue
            if any(not g.has_arc(a) for a in path):
                problems.append("path uses unknown arc")
                continue
            if g.tail(path[0]) != s or g.head(path[-1]) != t:
                problems.append("path endpoints wrong")
            verts = [g.tail(path[0])]
            for i, a in enumerate(path):
                if i and g.tail(a) != g.head(path[i - 1]):
                    problems.append("path not chained")
                verts.append(g.head(a))
            if len(set(verts)) != len(verts):
                problems.append("path repeats a vertex")
            if used & set(path):
                problems.append("paths share an arc")
            used |= set(path)
    else:
        if len(cert.cut) >= cert.demand:
            problems.append("cut not smaller than demand")
        if t in g.reach_from(s, cert.cut):
            problems.append("cut does not separate")
        if set(cert.component) != g.reach_to(t, cert.cut):
            problems.append("component is not the reverse closure of the target")
        if s in cert.component:
            problems.append("source inside component")
    return problems
