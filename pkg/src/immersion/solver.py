"""Constructive search for F(K, l) and TT_k immersions.

The search follows the induction on K.  At level K the input is trimmed so
every vertex has outdegree exactly f(K, l) or 0 (the zero set is ``T``), an
F(K-1, l) immersion is found recursively in what remains after dropping
``T`` and excess parallel arcs, and the tip of that immersion is extended
by l arc-disjoint paths to some new branch vertex y.

If no y admits l arc-disjoint paths, every candidate has a small arc cut.
The cuts are turned into a strictly smaller instance H (private side of
one cut plus the old branch vertices, with path segments contracted to
shortcut arcs), the search recurses on H, and the answer is lifted back by
expanding shortcut arcs.

Modes:

``strict``
    min outdegree > f(K, l) is required on entry.
``relaxed``
    all but at most c1(K, l) vertices have outdegree >= f(K, l); used
    internally for every recursive call.
``fixture``
    degree hypotheses waived so reduction mechanics can be exercised on
    tiny hand-built graphs.  Structural invariants stay asserted.
"""

from __future__ import annotations

import logging
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .certify import (
    ImmersionCertificate,
    compose,
    format_certificate,
    route_tt_in_f,
    simplify_walk,
    verify,
)
from .errors import (
    InsufficientOutdegree,
    InternalInvariantBroken,
    LiftCollision,
    NotSimple,
    OutOfRange,
    PreconditionViolated,
    SearchFailed,
)
from .menger import CutCertificate, FlowNetwork
from .multidigraph import MultiDigraph, format_digraph
from .patterns import bound_c1, bound_dprime, bound_f, build_f, build_tt, tt_chain_width

log = logging.getLogger(__name__)

STRICT = "strict"
RELAXED = "relaxed"
FIXTURE = "fixture"
MODES = (STRICT, RELAXED, FIXTURE)


@dataclass
class NormalizedDigraph:
    graph: MultiDigraph
    T: frozenset[int]
    removed_arcs: tuple[int, ...] = ()


@dataclass
class Extended:
    y: int
    result: CutCertificate


@dataclass
class AllCuts:
    cuts: dict[int, CutCertificate]


@dataclass
class ReductionState:
    K: int
    l: int
    mode: str
    T: frozenset[int]
    X: list[int]
    paths: dict[int, list[int]]
    dprime: MultiDigraph
    cuts: dict[int, CutCertificate]
    Y: list[int] = field(default_factory=list)
    S: dict[int, frozenset[int]] = field(default_factory=dict)
    R_arcs: list[tuple[int, int, int]] = field(default_factory=list)
    r_in: Counter = field(default_factory=Counter)
    r_out: Counter = field(default_factory=Counter)
    ystar: int | None = None
    H: MultiDigraph | None = None
    shortcut_map: dict[int, tuple[int, tuple[int, ...]]] = field(default_factory=dict)

    @property
    def tip(self) -> int:
        return self.X[-1]

    def C(self, y: int) -> frozenset[int]:
        return self.cuts[y].component

    def E(self, y: int) -> tuple[int, ...]:
        return self.cuts[y].cut

    def dump_lines(self) -> list[str]:
        lines = [f"K {self.K}", f"l {self.l}", f"mode {self.mode}",
                 "T " + " ".join(map(str, sorted(self.T))),
                 "X " + " ".join(map(str, self.X)),
                 "Y " + " ".join(map(str, self.Y))]
        for y in sorted(self.cuts):
            lines.append(f"cut {y} {len(self.E(y))} {len(self.C(y))}")
        for y in self.Y:
            if y in self.S:
                lines.append(f"S {y} {len(self.S[y])}")
        for y in self.Y:
            lines.append(f"R {y} {self.r_in[y]} {self.r_out[y]}")
        lines.append(f"ystar {'' if self.ystar is None else self.ystar}".rstrip())
        if self.H is not None:
            lines.append(f"H {self.H.n} {self.H.m} {len(self.shortcut_map)}")
        return lines


@dataclass
class TraceEvent:
    depth: int
    K: int
    n: int
    m: int
    branch: str

    def __str__(self) -> str:
        return f"{'  ' * self.depth}K={self.K} n={self.n} m={self.m} branch={self.branch}"


def _broken(msg: str, *, graph=None, cert=None, state=None) -> InternalInvariantBroken:
    return InternalInvariantBroken(msg, graph=graph, certificate=cert, state=state)


def _low_vertices(g: MultiDigraph, threshold: int) -> list[int]:
    return [v for v in g.vertices() if g.out_degree(v) < threshold]


# -- normalization ----------------------------------------------------------


def normalize(D: MultiDigraph, K: int, l: int, mode: str = RELAXED) -> NormalizedDigraph:
    """Trim every vertex to outdegree exactly f(K, l), or 0 if it had fewer."""
    if mode == FIXTURE:
        T = frozenset(v for v in D.vertices() if D.out_degree(v) == 0)
        return NormalizedDigraph(D.copy(), T)
    f = bound_f(K, l)
    T = _low_vertices(D, f)
    if K >= 2 and len(T) > bound_c1(K, l):
        raise PreconditionViolated(
            f"{len(T)} vertices have outdegree < {f}; at most {bound_c1(K, l)} allowed "
            f"(first: {T[0]})")
    low = set(T)
    removed: list[int] = []
    for v in D.vertices():
        arcs = D.out_arcs(v)
        if v in low:
            removed.extend(arcs)
        elif len(arcs) > f:
            removed.extend(arcs[f:])
    g = D.copy()
    g.remove_arcs(removed)
    return NormalizedDigraph(g, frozenset(T), tuple(removed))


def reduce_for_induction(nd: NormalizedDigraph, K: int, l: int, mode: str = RELAXED) -> MultiDigraph:
    """Drop T and cut every parallel class down to (K-1) l arcs, highest ids first."""
    g = nd.graph.copy()
    g.remove_vertices(nd.T)
    cap = (K - 1) * l
    excess: list[int] = []
    for v in g.vertices():
        by_head: dict[int, list[int]] = {}
        for a, h in g.out_items(v):
            by_head.setdefault(h, []).append(a)
        for arcs in by_head.values():
            if len(arcs) > cap:
                excess.extend(arcs[cap:])
    g.remove_arcs(excess)
    if g.max_multiplicity() > cap:
        raise _broken(f"multiplicity above {cap} after trimming", graph=g)
    if mode != FIXTURE:
        dp = bound_dprime(K, l)
        fk = bound_f(K - 1, l)
        if dp < fk:
            raise _broken(f"induction inequality fails: d'={dp} < f({K - 1},{l})={fk}")
        if g.n == 0:
            raise _broken("reduced digraph is empty", graph=nd.graph)
        md = g.min_out_degree()
        if md < dp:
            raise _broken(f"reduced min outdegree {md} below d'={dp}", graph=g)
        if md < fk:
            raise _broken(f"reduced min outdegree {md} below f({K - 1},{l})={fk}", graph=g)
    return g


# -- immersion minimality ---------------------------------------------------


def minimize_cert(D: MultiDigraph, cert: ImmersionCertificate) -> ImmersionCertificate:
    """Shortcut paths through unused direct arcs until no shortcut applies.

    At the fixpoint no path travels from x to y indirectly while an arc
    (x, y) of D is unused by every path.  Each step strictly lowers the
    total number of path arcs.
    """
    paths = {pa: list(p) for pa, p in cert.arc_paths.items()}
    used = {a for p in paths.values() for a in p}
    changed = True
    while changed:
        changed = False
        for pa in sorted(paths):
            path = paths[pa]
            verts = [D.tail(path[0])] + [D.head(a) for a in path]
            pos = {v: i for i, v in enumerate(verts)}
            for i, x in enumerate(verts[:-2]):
                best = None
                for a, h in D.out_items(x):
                    j = pos.get(h)
                    if j is None or j < i + 2 or a in used:
                        continue
                    if best is None or j > best[0]:
                        best = (j, a)
                if best is not None:
                    j, a = best
                    for old in path[i:j]:
                        used.discard(old)
                    used.add(a)
                    paths[pa] = path[:i] + [a] + path[j:]
                    changed = True
                    break
            if changed:
                break
    return ImmersionCertificate(cert.pattern, D, dict(cert.vertex_map), paths)


def shortcut_available(D: MultiDigraph, cert: ImmersionCertificate) -> list[tuple[int, int, int]]:
    """All ``(pattern_arc, x, y)`` where a path goes x -> ... -> y indirectly and an unused (x, y) arc exists."""
    used = cert.used_arcs()
    found = []
    for pa in sorted(cert.arc_paths):
        path = cert.arc_paths[pa]
        verts = [D.tail(path[0])] + [D.head(a) for a in path]
        for i in range(len(verts)):
            for j in range(i + 2, len(verts)):
                if any(a not in used for a in D.arcs_between(verts[i], verts[j])):
                    found.append((pa, verts[i], verts[j]))
    return found


# -- extension or cuts ------------------------------------------------------


def build_dprime(Dn: MultiDigraph, inner: ImmersionCertificate) -> MultiDigraph:
    """Normalized graph minus all path arcs and all branch vertices but the tip."""
    g = Dn.copy()
    g.remove_arcs(inner.used_arcs())
    g.remove_vertices(inner.branch_vertices()[:-1])
    return g


def _queries(net: FlowNetwork, tip: int, candidates: list[int], l: int, jobs: int):
    if jobs <= 1:
        for y in candidates:
            yield y, net.query(tip, y, l)
        return
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for start in range(0, len(candidates), jobs):
            window = candidates[start:start + jobs]
            futures = [pool.submit(net.query, tip, y, l) for y in window]
            for y, fut in zip(window, futures):
                yield y, fut.result()


def extend_or_cuts(dprime: MultiDigraph, tip: int, l: int, jobs: int = 1,
                   backend: str | None = None) -> Extended | AllCuts:
    candidates = [v for v in dprime.vertices() if v != tip]
    if not candidates:
        raise _broken("EmptyCandidateSet: no vertex besides the tip", graph=dprime)
    net = FlowNetwork(dprime, backend)
    cuts: dict[int, CutCertificate] = {}
    for y, res in _queries(net, tip, candidates, l, jobs):
        if res.is_paths:
            return Extended(y, res)
        cuts[y] = res
    return AllCuts(cuts)


def assemble_extension(inner: ImmersionCertificate, ext: Extended, K: int, l: int,
                       host: MultiDigraph) -> ImmersionCertificate:
    pattern = build_f(K, l)
    vmap = dict(inner.vertex_map)
    vmap[K - 1] = ext.y
    paths = {pa: list(p) for pa, p in inner.arc_paths.items()}
    for j, p in enumerate(ext.result.paths[:l]):
        paths[(K - 2) * l + j] = list(p)
    return ImmersionCertificate(pattern, host, vmap, paths)


# -- reduction --------------------------------------------------------------


def greedy_cover(universe: set[int], sets: dict[int, frozenset[int]]) -> list[int]:
    """Greedy cover (largest new coverage, ties by lowest id), pruned to inclusion-minimality."""
    uncovered = set(universe)
    chosen: list[int] = []
    keys = sorted(sets)
    while uncovered:
        best, gain = None, 0
        for y in keys:
            g = len(sets[y] & uncovered)
            if g > gain:
                best, gain = y, g
        if best is None:
            raise ValueError("sets do not cover the universe")
        chosen.append(best)
        uncovered -= sets[best]
    chosen.sort()
    for y in list(chosen):
        rest = [z for z in chosen if z != y]
        covered = set().union(*(sets[z] for z in rest)) if rest else set()
        if universe <= covered:
            chosen = rest
    return chosen


def build_reduction(cuts: dict[int, CutCertificate], nd: NormalizedDigraph, dprime: MultiDigraph,
                    inner: ImmersionCertificate, K: int, l: int,
                    mode: str = RELAXED) -> ReductionState:
    X = inner.branch_vertices()
    rs = ReductionState(K, l, mode, nd.T, X, {pa: list(p) for pa, p in inner.arc_paths.items()},
                        dprime, cuts)

    def fail(msg):
        return _broken(msg, graph=nd.graph, cert=inner, state=rs)

    tip = rs.tip
    universe = set(dprime.vertices()) - {tip}
    if set(cuts) != universe:
        raise fail("cuts missing for some candidate vertices")
    for y, c in cuts.items():
        if c.is_paths:
            raise fail(f"vertex {y} has {l} arc-disjoint paths; no cut")
        if len(c.cut) >= l:
            raise fail(f"|E_{y}| = {len(c.cut)} not below l = {l}")
        if y not in c.component:
            raise fail(f"{y} not in its own C_y")
        if tip in c.component:
            raise fail(f"tip {tip} inside C_{y}")

    comps = {y: c.component for y, c in cuts.items()}
    Y = greedy_cover(universe, comps)
    rs.Y = Y
    for y in Y:
        others = set().union(*(comps[z] for z in Y if z != y)) if len(Y) > 1 else set()
        rs.S[y] = frozenset(comps[y] - others)
    covered = set().union(*(comps[y] for y in Y))
    if not universe <= covered:
        raise fail("Y does not cover D' minus the tip")
    if any(not rs.S[y] for y in Y):
        raise fail("Y is not inclusion-minimal (empty private set)")
    seen: set[int] = set()
    for y in Y:
        if seen & rs.S[y]:
            raise fail("private sets overlap")
        seen |= rs.S[y]
    if mode != FIXTURE and not nd.T <= universe:
        raise fail("T meets the branch vertices")
    if not (nd.T & universe) <= set(Y):
        raise fail("T not contained in Y")
    for y in Y:
        if y not in nd.T and rs.S[y] & nd.T:
            raise fail(f"S_{y} contains a vertex of T")

    Yset = set(Y)
    for y in Y:
        for u in sorted(rs.S[y]):
            for a, h in dprime.out_items(u):
                for y2 in Y:
                    if y2 != y and h in comps[y2]:
                        rs.R_arcs.append((y, y2, a))
                        rs.r_out[y] += 1
                        rs.r_in[y2] += 1
    for y, y2, a in rs.R_arcs:
        if a not in cuts[y2].cut:
            raise fail(f"arc {a} enters C_{y2} from S_{y} but is not in E_{y2}")
    for y in Y:
        if rs.r_in[y] > len(cuts[y].cut) or len(cuts[y].cut) > l:
            raise fail(f"R indegree of {y} is {rs.r_in[y]} > |E_y| = {len(cuts[y].cut)}")

    if mode != FIXTURE:
        c1 = bound_c1(K, l)
        if len(Y) < 2 * c1:
            raise fail(f"|Y| = {len(Y)} < 2 c1 = {2 * c1}")
    free = sorted(Yset - nd.T)
    if not free:
        raise fail("Y consists of T only")
    rs.ystar = min(free, key=lambda y: (rs.r_out[y], y))
    if mode != FIXTURE and rs.r_out[rs.ystar] > 2 * l:
        raise fail(f"R outdegree of y* = {rs.r_out[rs.ystar]} exceeds 2l = {2 * l}")
    return rs


def build_h(rs: ReductionState, Dn: MultiDigraph, inner: ImmersionCertificate,
            K: int, l: int, mode: str = RELAXED):
    """Reduced instance on S_{y*} plus the branch vertices, with shortcut arcs along paths."""
    S = rs.S[rs.ystar]
    X = rs.X
    used = inner.used_arcs()
    H = Dn.induced(S | set(X))
    H.remove_arcs([a for a, u, v in H.arcs() if a in used or u not in S])
    smap: dict[int, tuple[int, tuple[int, ...]]] = {}
    for pa in sorted(inner.arc_paths):
        path = inner.arc_paths[pa]
        verts = [Dn.tail(path[0])] + [Dn.head(a) for a in path]
        zs = [i for i, v in enumerate(verts) if v in S]
        for i, j in zip(zs, zs[1:]):
            sid = H.add_arc(verts[i], verts[j])
            smap[sid] = (pa, tuple(path[i:j]))
    rs.H = H
    rs.shortcut_map = smap

    def fail(msg):
        return _broken(msg, graph=Dn, cert=inner, state=rs)

    if H.max_multiplicity() > K * l:
        raise fail(f"H multiplicity {H.max_multiplicity()} exceeds K l = {K * l}")
    if H.n >= Dn.n:
        raise fail(f"H has {H.n} vertices, not fewer than {Dn.n}")
    if mode != FIXTURE:
        low = _low_vertices(H, bound_f(K, l))
        if len(low) > bound_c1(K, l):
            raise fail(f"{len(low)} vertices of H below f(K,l), budget {bound_c1(K, l)}")
    return H, smap


def lift(cert_h: ImmersionCertificate, shortcut_map: dict[int, tuple[int, tuple[int, ...]]],
         D: MultiDigraph) -> ImmersionCertificate:
    """Expand shortcut arcs into their path segments; result lives in ``D``."""
    paths: dict[int, list[int]] = {}
    owner: dict[int, int] = {}
    for pa, path in cert_h.arc_paths.items():
        walk: list[int] = []
        for a in path:
            if a in shortcut_map:
                walk.extend(shortcut_map[a][1])
            else:
                walk.append(a)
        p = simplify_walk(D, walk)
        for a in p:
            if a in owner:
                raise LiftCollision(f"arc {a} claimed by pattern arcs {owner[a]} and {pa}",
                                    graph=D, certificate=cert_h)
            owner[a] = pa
        paths[pa] = p
    cert = ImmersionCertificate(cert_h.pattern, D, dict(cert_h.vertex_map), paths)
    bad = verify(D, cert)
    if bad:
        raise _broken("lifted certificate does not verify: " + "; ".join(map(str, bad[:5])),
                      graph=D, cert=cert)
    return cert


# -- drivers ----------------------------------------------------------------


def _check_entry(D: MultiDigraph, K: int, l: int, mode: str) -> None:
    if mode not in MODES:
        raise OutOfRange(f"unknown mode {mode!r}")
    for name, val, low in (("K", K, 1), ("l", l, 2)):
        if isinstance(val, bool) or not isinstance(val, int) or val < low:
            raise PreconditionViolated(f"{name} must be an integer >= {low}, got {val!r}")
    if D.n == 0:
        raise PreconditionViolated("empty digraph")
    counts = D.pair_counts()
    if counts:
        (u, v), mult = max(counts.items(), key=lambda kv: kv[1])
        if mult > K * l:
            raise PreconditionViolated(
                f"multiplicity {mult} of pair ({u},{v}) exceeds K l = {K * l}")
    if mode == STRICT:
        f = bound_f(K, l)
        v = min(D.vertices(), key=lambda x: (D.out_degree(x), x))
        if D.out_degree(v) <= f:
            raise InsufficientOutdegree(D.out_degree(v), f, v)
    elif mode == RELAXED and K >= 2:
        low = _low_vertices(D, bound_f(K, l))
        if len(low) > bound_c1(K, l):
            raise PreconditionViolated(
                f"{len(low)} vertices below outdegree {bound_f(K, l)}, "
                f"at most {bound_c1(K, l)} allowed (first: {low[0]})")


def find_f(D: MultiDigraph, K: int, l: int, mode: str = STRICT, *,
           inner: ImmersionCertificate | None = None, trace: list | None = None,
           jobs: int = 1, backend: str | None = None, states: list | None = None,
           _depth: int = 0, _parent: tuple[int, int] | None = None) -> ImmersionCertificate:
    """Immersion of F(K, l) in ``D``.

    ``inner`` optionally supplies the F(K-1, l) immersion to extend (fixture
    use); otherwise it is found recursively.  ``trace`` collects one
    TraceEvent per level and ``states`` every ReductionState built.
    """
    _check_entry(D, K, l, mode)
    if _parent is not None and (K, D.n) >= _parent:
        raise _broken(f"recursion does not decrease: {(K, D.n)} after {_parent}", graph=D)
    cert = _find_f(D, K, l, mode, inner, trace, jobs, backend, states, _depth)
    bad = verify(D, cert)
    if bad:
        raise _broken("result does not verify: " + "; ".join(map(str, bad[:5])),
                      graph=D, cert=cert)
    return cert


def _find_f(D, K, l, mode, inner, trace, jobs, backend, states, depth):
    def note(branch):
        if trace is not None:
            trace.append(TraceEvent(depth, K, D.n, D.m, branch))
        log.debug("K=%d n=%d m=%d: %s", K, D.n, D.m, branch)

    if K == 1:
        note("base")
        return ImmersionCertificate(build_f(1, l), D, {0: min(D.vertices())}, {})

    sub = RELAXED if mode != FIXTURE else FIXTURE
    nd = normalize(D, K, l, mode)
    if inner is None:
        reduced = reduce_for_induction(nd, K, l, mode)
        note("induct")
        inner = find_f(reduced, K - 1, l, sub, trace=trace, jobs=jobs, backend=backend,
                       states=states, _depth=depth + 1, _parent=(K, D.n))
    else:
        note("induct(planted)")
        if inner.pattern.kind != "f" or inner.pattern.k != K - 1 or inner.pattern.l != l:
            raise PreconditionViolated("planted certificate is not an F(K-1, l) immersion")
        bad = verify(nd.graph, inner)
        if bad:
            raise PreconditionViolated("planted certificate does not verify: " + str(bad[0]))
    inner = minimize_cert(nd.graph, inner.with_host(nd.graph))
    tip = inner.branch_vertices()[-1]
    dprime = build_dprime(nd.graph, inner)
    outcome = extend_or_cuts(dprime, tip, l, jobs, backend)
    if isinstance(outcome, Extended):
        note(f"extend(y={outcome.y})")
        return assemble_extension(inner, outcome, K, l, D)

    rs = build_reduction(outcome.cuts, nd, dprime, inner, K, l, mode)
    H, smap = build_h(rs, nd.graph, inner, K, l, mode)
    if states is not None:
        states.append(rs)
    note(f"reduce(|Y|={len(rs.Y)}, y*={rs.ystar}, |H|={H.n}, shortcuts={len(smap)})")
    cert_h = find_f(H, K, l, sub, trace=trace, jobs=jobs, backend=backend, states=states,
                    _depth=depth + 1, _parent=(K, D.n))
    return lift(cert_h, smap, D)


def find_tt(D: MultiDigraph, k: int, *, force: bool = False, trace: list | None = None,
            jobs: int = 1, backend: str | None = None) -> ImmersionCertificate:
    """Immersion of the transitive tournament TT_k in the simple digraph ``D``."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise OutOfRange(f"k must be an integer >= 1, got {k!r}")
    if not D.is_simple():
        raise NotSimple("input digraph has parallel arcs")
    if D.n == 0:
        raise PreconditionViolated("empty digraph")
    if k == 1:
        return ImmersionCertificate(build_tt(1), D, {0: min(D.vertices())}, {})
    if k == 2:
        ids = D.arc_ids()
        if not ids:
            raise SearchFailed("digraph has no arc")
        u, v = D.endpoints(ids[0])
        return ImmersionCertificate(build_tt(2), D, {0: u, 1: v}, {0: [ids[0]]})
    l = tt_chain_width(k)
    required = bound_f(k, l)
    v = min(D.vertices(), key=lambda x: (D.out_degree(x), x))
    if D.out_degree(v) <= required and not force:
        raise InsufficientOutdegree(D.out_degree(v), required, v)
    if force:
        try:
            fcert = find_f(D, k, l, RELAXED, trace=trace, jobs=jobs, backend=backend)
        except (PreconditionViolated, InternalInvariantBroken) as exc:
            raise SearchFailed(f"forced search failed: {exc}") from exc
    else:
        fcert = find_f(D, k, l, STRICT, trace=trace, jobs=jobs, backend=backend)
    cert = compose(fcert, route_tt_in_f(k))
    bad = verify(D, cert)
    if bad:
        raise _broken("composed TT certificate does not verify", graph=D, cert=cert)
    return cert


def write_dump(err: InternalInvariantBroken, directory: str) -> list[str]:
    """Write ``digraph.txt``, ``certificate.txt`` and ``reduction.dump`` where available."""
    os.makedirs(directory, exist_ok=True)
    written = []
    with open(os.path.join(directory, "error.txt"), "w") as fh:
        fh.write(str(err) + "\n")
    written.append("error.txt")
    if err.graph is not None:
        with open(os.path.join(directory, "digraph.txt"), "w") as fh:
            fh.write(format_digraph(err.graph))
        written.append("digraph.txt")
    if err.certificate is not None:
        try:
            text = format_certificate(err.certificate)
        except Exception:
            text = None
        if text is not None:
            with open(os.path.join(directory, "certificate.txt"), "w") as fh:
                fh.write(text)
            written.append("certificate.txt")
    if isinstance(err.state, ReductionState):
        with open(os.path.join(directory, "reduction.dump"), "w") as fh:
            fh.write("\n".join(err.state.dump_lines()) + "\n")
        written.append("reduction.dump")
    return written
