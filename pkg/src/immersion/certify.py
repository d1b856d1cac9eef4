"""Immersion certificates: verification, composition, TT_k routing, text format.

A certificate maps every pattern vertex to a distinct host vertex and every
pattern arc to a vertex-simple host path, given as a list of host arc ids.
No host arc id may appear twice across all paths.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import ComposeOverlap, FormatError, HostMismatch, OutOfRange
from .multidigraph import MultiDigraph
from .patterns import F, TT, Pattern, build_f, build_pattern, build_tt, graph_pattern, tt_chain_width


@dataclass
class ImmersionCertificate:
    pattern: Pattern
    host: MultiDigraph
    vertex_map: dict[int, int]
    arc_paths: dict[int, list[int]] = field(default_factory=dict)

    def branch_vertices(self) -> list[int]:
        """Host images of the pattern vertices, in pattern vertex order."""
        return [self.vertex_map[v] for v in self.pattern.graph.vertices()]

    def used_arcs(self) -> set[int]:
        return {a for path in self.arc_paths.values() for a in path}

    def size(self) -> int:
        return sum(len(p) for p in self.arc_paths.values())

    def with_host(self, host: MultiDigraph) -> ImmersionCertificate:
        return ImmersionCertificate(
            self.pattern, host, dict(self.vertex_map),
            {a: list(p) for a, p in self.arc_paths.items()},
        )


class ViolationKind(enum.Enum):
    NOT_INJECTIVE = "NotInjective"
    BROKEN_PATH = "BrokenPath"
    VERTEX_REPEAT = "VertexRepeat"
    DUPLICATE_ARC = "DuplicateArc"
    MISSING_ARC = "MissingArc"
    ENDPOINT_MISMATCH = "EndpointMismatch"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    detail: tuple

    def __str__(self) -> str:
        return f"{self.kind.value} {' '.join(map(str, self.detail))}"


def verify(host: MultiDigraph, cert: ImmersionCertificate) -> list[Violation]:
    """Check ``cert`` against ``host``; an empty list means the certificate is valid."""
    out: list[Violation] = []
    pg = cert.pattern.graph
    vmap = cert.vertex_map

    seen_images: dict[int, int] = {}
    for p in pg.vertices():
        if p not in vmap:
            out.append(Violation(ViolationKind.NOT_INJECTIVE, ("unmapped", p)))
            continue
        h = vmap[p]
        if not host.has_vertex(h):
            out.append(Violation(ViolationKind.NOT_INJECTIVE, ("absent", p, h)))
            continue
        if h in seen_images:
            out.append(Violation(ViolationKind.NOT_INJECTIVE, (seen_images[h], p, h)))
        else:
            seen_images[h] = p

    owner: dict[int, int] = {}
    for pa, pu, pv in pg.arcs():
        path = cert.arc_paths.get(pa)
        if path is None:
            out.append(Violation(ViolationKind.MISSING_ARC, ("no-path", pa)))
            continue
        for a in path:
            if a in owner:
                out.append(Violation(ViolationKind.DUPLICATE_ARC, (a, owner[a], pa)))
            else:
                owner[a] = pa
        if not path:
            out.append(Violation(ViolationKind.ENDPOINT_MISMATCH, ("empty", pa)))
            continue
        absent = [a for a in path if not host.has_arc(a)]
        if absent:
            out.extend(Violation(ViolationKind.MISSING_ARC, (pa, a)) for a in absent)
            continue
        ends = [host.endpoints(a) for a in path]
        broken = False
        for i in range(len(ends) - 1):
            if ends[i][1] != ends[i + 1][0]:
                out.append(Violation(ViolationKind.BROKEN_PATH, (pa, path[i], path[i + 1])))
                broken = True
        if ends[0][0] != vmap.get(pu) or ends[-1][1] != vmap.get(pv):
            out.append(Violation(ViolationKind.ENDPOINT_MISMATCH,
                                 (pa, ends[0][0], ends[-1][1])))
        if not broken:
            walk = [ends[0][0]] + [e[1] for e in ends]
            if len(set(walk)) != len(walk):
                out.append(Violation(ViolationKind.VERTEX_REPEAT, (pa,)))

    extra = set(cert.arc_paths) - set(pg.arc_ids())
    for pa in sorted(extra):
        out.append(Violation(ViolationKind.MISSING_ARC, ("unknown-pattern-arc", pa)))
    return out


def simplify_walk(host: MultiDigraph, walk: list[int]) -> list[int]:
    """Excise cycles from an arc walk so no vertex repeats."""
    arcs: list[int] = []
    pos: dict[int, int] = {}
    if not walk:
        return arcs
    stack = [host.tail(walk[0])]
    pos[stack[0]] = 0
    for a in walk:
        v = host.head(a)
        if v in pos:
            i = pos[v]
            for w in stack[i + 1:]:
                del pos[w]
            del stack[i + 1:]
            del arcs[i:]
        else:
            arcs.append(a)
            stack.append(v)
            pos[v] = len(stack) - 1
    return arcs


def identity_certificate(g: MultiDigraph) -> ImmersionCertificate:
    return ImmersionCertificate(
        graph_pattern(g), g, {v: v for v in g.vertices()},
        {a: [a] for a in g.arc_ids()},
    )


def compose(outer: ImmersionCertificate, inner: ImmersionCertificate) -> ImmersionCertificate:
    """Immersion of ``inner.pattern`` in ``outer.host`` via ``outer.pattern``."""
    if not inner.host.same_structure(outer.pattern.graph):
        raise HostMismatch("inner certificate's host is not the outer pattern")
    host = outer.host
    vmap = {p: outer.vertex_map[q] for p, q in inner.vertex_map.items()}
    paths: dict[int, list[int]] = {}
    owner: dict[int, int] = {}
    for pa, qpath in inner.arc_paths.items():
        walk = [a for q in qpath for a in outer.arc_paths[q]]
        path = simplify_walk(host, walk)
        for a in path:
            if a in owner:
                raise ComposeOverlap(f"host arc {a} used by pattern arcs {owner[a]} and {pa}")
            owner[a] = pa
        paths[pa] = path
    return ImmersionCertificate(inner.pattern, host, vmap, paths)


def level_load(k: int, t: int) -> int:
    """Number of TT_k arcs crossing chain level t (1-based: the step from x_t to x_{t+1})."""
    return t * (k - t)


def route_tt_in_f(k: int) -> ImmersionCertificate:
    """TT_k immersed in F(k, max(2, C(k, 2))).

    TT arc (i, j) follows the chain through levels i..j-1; at every level it
    takes the lowest copy not yet taken.  Arcs are processed in lexicographic
    order, which is also TT arc id order.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise OutOfRange(f"k must be an integer >= 1, got {k!r}")
    l = tt_chain_width(k)
    host = build_f(k, l)
    tt = build_tt(k)
    next_copy = [0] * max(k - 1, 0)
    paths = {}
    for a, i, j in tt.graph.arcs():
        path = []
        for t in range(i, j):
            c = next_copy[t]
            assert c < l, "level overloaded"
            next_copy[t] += 1
            path.append(t * l + c)
        paths[a] = path
    return ImmersionCertificate(tt, host.graph, {v: v for v in range(k)}, paths)


# -- text format ------------------------------------------------------------


def format_certificate(cert: ImmersionCertificate) -> str:
    pat = cert.pattern
    if pat.kind not in (F, TT):
        raise FormatError(f"cannot serialize pattern kind {pat.kind!r}")
    lines = [f"c immersion {pat.kind} {pat.k} {pat.l}"]
    for v in pat.graph.vertices():
        lines.append(f"v {v} {cert.vertex_map[v]}")
    for a in pat.graph.arc_ids():
        ids = " ".join(str(x) for x in cert.arc_paths.get(a, []))
        lines.append(f"p {a} {ids}".rstrip())
    return "\n".join(lines) + "\n"


def parse_certificate(text: str, host: MultiDigraph) -> ImmersionCertificate:
    pattern = None
    vmap: dict[int, int] = {}
    paths: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if pattern is None:
                if len(parts) != 5 or parts[:2] != ["c", "immersion"]:
                    raise FormatError(f"line {lineno}: expected 'c immersion <kind> <k> <l>'")
                kind, k, l = parts[2], int(parts[3]), int(parts[4])
                if kind == TT:
                    pattern = build_tt(k)
                elif kind == F:
                    pattern = build_pattern(F, k, l)
                else:
                    raise FormatError(f"line {lineno}: unknown pattern kind {kind!r}")
            elif parts[0] == "v" and len(parts) == 3:
                vmap[int(parts[1])] = int(parts[2])
            elif parts[0] == "p" and len(parts) >= 2:
                paths[int(parts[1])] = [int(x) for x in parts[2:]]
            else:
                raise FormatError(f"line {lineno}: unrecognized record")
        except OutOfRange as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        except ValueError:
            raise FormatError(f"line {lineno}: bad integer") from None
    if pattern is None:
        raise FormatError("missing 'c immersion' header")
    return ImmersionCertificate(pattern, host, vmap, paths)


def read_certificate(path: str, host: MultiDigraph) -> ImmersionCertificate:
    with open(path, encoding="ascii") as fh:
        return parse_certificate(fh.read(), host)


def write_certificate(cert: ImmersionCertificate, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_certificate(cert))


_PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal")


def to_dot(host: MultiDigraph, cert: ImmersionCertificate | None = None) -> str:
    """Graphviz rendering of ``host``; certificate paths are coloured, branch vertices boxed."""
    colour: dict[int, str] = {}
    branch: set[int] = set()
    if cert is not None:
        branch = set(cert.vertex_map.values())
        for i, pa in enumerate(sorted(cert.arc_paths)):
            for a in cert.arc_paths[pa]:
                colour[a] = _PALETTE[i % len(_PALETTE)]
    lines = ["digraph G {"]
    for v in host.vertices():
        attrs = ' [shape=box, style=bold]' if v in branch else ""
        lines.append(f"  {v}{attrs};")
    for a, u, v in host.arcs():
        if a in colour:
            lines.append(f'  {u} -> {v} [label="{a}", color={colour[a]}, penwidth=2];')
        else:
            lines.append(f'  {u} -> {v} [label="{a}", color=gray];')
    lines.append("}")
    return "\n".join(lines) + "\n"
