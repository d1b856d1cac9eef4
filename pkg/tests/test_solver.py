import itertools
import os
import random

import pytest

from immersion.certify import ImmersionCertificate, verify
from immersion.errors import (
    InsufficientOutdegree,
    InternalInvariantBroken,
    LiftCollision,
    NotSimple,
    PreconditionViolated,
)
from immersion.gen import FIXTURES, gen_reduction_fixture
from immersion.multidigraph import MultiDigraph
from immersion.patterns import bound_f, build_f
from immersion.solver import (
    FIXTURE,
    AllCuts,
    Extended,
    NormalizedDigraph,
    build_dprime,
    build_reduction,
    extend_or_cuts,
    find_f,
    find_tt,
    greedy_cover,
    lift,
    minimize_cert,
    normalize,
    reduce_for_induction,
    shortcut_available,
    write_dump,
)


def complete(n, mult=1):
    g = MultiDigraph(n)
    for u in range(n):
        for v in range(n):
            if u != v:
                for _ in range(mult):
                    g.add_arc(u, v)
    return g


def test_normalize_trims_to_exact_outdegree():
    # f(2,2) = 64; vertex 0 gets 70 arcs, vertex 1 only 3
    g = complete(72)
    g.remove_arcs(g.out_arcs(1)[3:])
    nd = normalize(g, 2, 2)
    assert nd.T == {1}
    assert nd.graph.out_degree(1) == 0
    assert {nd.graph.out_degree(v) for v in nd.graph.vertices() if v != 1} == {64}
    # highest ids go first
    assert nd.graph.out_arcs(0) == g.out_arcs(0)[:64]


def test_normalize_rejects_too_many_low_vertices():
    g = complete(10)
    with pytest.raises(PreconditionViolated):
        normalize(g, 2, 2)


def test_normalize_fixture_mode_keeps_graph():
    g = MultiDigraph.from_arcs(3, [(0, 1), (1, 0)])
    nd = normalize(g, 2, 2, FIXTURE)
    assert nd.T == {2}
    assert nd.graph.same_structure(g)


def test_reduce_caps_parallel_classes():
    g = MultiDigraph(3)
    for _ in range(5):
        g.add_arc(0, 1)
    g.add_arc(1, 2)
    nd = NormalizedDigraph(g, frozenset({2}))
    r = reduce_for_induction(nd, 2, 2, FIXTURE)
    assert r.vertices() == [0, 1]
    assert r.arc_ids() == [0, 1]


def test_minimize_takes_farthest_shortcut():
    # path 0->1->2->3->4->5 with spare arcs 0->2 and 0->4
    g = MultiDigraph.from_arcs(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 2), (0, 4)])
    cert = ImmersionCertificate(build_f(2, 1), g, {0: 0, 1: 5}, {0: [0, 1, 2, 3, 4]})
    out = minimize_cert(g, cert)
    assert out.arc_paths[0] == [6, 4]
    assert shortcut_available(g, out) == []
    assert verify(g, out) == []


def test_minimize_chains_shortcuts():
    # 0->1->2->3->4->5 with spare arcs 1->3 and 3->5, and a parallel 0->1
    g = MultiDigraph.from_arcs(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 3), (3, 5), (0, 1)])
    cert = ImmersionCertificate(build_f(2, 1), g, {0: 0, 1: 5}, {0: [0, 1, 2, 3, 4]})
    out = minimize_cert(g, cert)
    assert out.arc_paths[0] == [0, 5, 6]
    assert shortcut_available(g, out) == []


def test_minimize_respects_used_parallel_arcs():
    # the only direct arc 0->2 is already someone else's path
    g = MultiDigraph.from_arcs(3, [(0, 1), (1, 2), (0, 2), (0, 2)])
    pattern = build_f(2, 2)
    cert = ImmersionCertificate(pattern, g, {0: 0, 1: 2}, {0: [0, 1], 1: [2]})
    out = minimize_cert(g, cert)
    assert out.arc_paths == {0: [3], 1: [2]}
    g.remove_arcs([3])
    cert = ImmersionCertificate(pattern, g, {0: 0, 1: 2}, {0: [0, 1], 1: [2]})
    assert minimize_cert(g, cert).arc_paths == {0: [0, 1], 1: [2]}


@pytest.mark.parametrize("seed", range(30))
def test_minimize_fixpoint_random(seed):
    rng = random.Random(seed)
    g = complete(7)
    extra = [(rng.randrange(7), rng.randrange(7)) for _ in range(10)]
    for u, v in extra:
        if u != v:
            g.add_arc(u, v)
    # one long path through every vertex
    order = rng.sample(range(7), 7)
    path = [g.arcs_between(u, v)[0] for u, v in zip(order, order[1:])]
    cert = ImmersionCertificate(build_f(2, 1), g, {0: order[0], 1: order[-1]}, {0: path})
    out = minimize_cert(g, cert)
    assert out.size() <= cert.size()
    assert shortcut_available(g, out) == []
    assert verify(g, out) == []


def test_build_dprime_drops_paths_and_old_branches():
    g = build_f(3, 2).graph
    inner = ImmersionCertificate(build_f(2, 2), g, {0: 0, 1: 1}, {0: [0], 1: [1]})
    dp = build_dprime(g, inner)
    assert dp.vertices() == [1, 2]
    assert dp.arc_ids() == [2, 3]


def test_extend_or_cuts_both_outcomes():
    g = build_f(2, 3).graph
    out = extend_or_cuts(g, 0, 3)
    assert isinstance(out, Extended) and out.y == 1
    out = extend_or_cuts(g, 0, 4)
    assert isinstance(out, AllCuts)
    assert len(out.cuts[1].cut) == 3


def test_extend_or_cuts_threaded_matches_serial():
    rng = random.Random(5)
    g = MultiDigraph(12)
    for _ in range(40):
        u, v = rng.sample(range(12), 2)
        g.add_arc(u, v)
    assert extend_or_cuts(g, 0, 5) == extend_or_cuts(g, 0, 5, jobs=3)


def test_extend_or_cuts_needs_a_candidate():
    with pytest.raises(InternalInvariantBroken):
        extend_or_cuts(MultiDigraph(1), 0, 2)


@pytest.mark.parametrize("seed", range(50))
def test_greedy_cover_is_an_inclusion_minimal_cover(seed):
    rng = random.Random(seed)
    universe = set(range(rng.randint(1, 7)))
    sets = {y: frozenset({y} | set(rng.sample(sorted(universe), rng.randint(0, len(universe)))))
            for y in universe}
    chosen = greedy_cover(universe, sets)
    assert set().union(*(sets[y] for y in chosen)) >= universe
    for y in chosen:
        rest = [z for z in chosen if z != y]
        assert not universe <= set().union(*(sets[z] for z in rest)) if rest else True
    # exhaustive enumeration of all inclusion-minimal covers
    minimal = [c for r in range(1, len(sets) + 1) for c in itertools.combinations(sorted(sets), r)
               if universe <= set().union(*(sets[z] for z in c))
               and all(not universe <= set().union(*(sets[z] for z in c if z != w)) for w in c)]
    assert tuple(chosen) in minimal


def _run_fixture(name):
    fx = gen_reduction_fixture(name)
    states = []
    cert = find_f(fx.graph, fx.K, fx.l, FIXTURE, inner=fx.inner, states=states)
    return fx, states, cert


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_expectations(name):
    fx, states, cert = _run_fixture(name)
    rs = states[0]
    exp = fx.expected
    assert rs.Y == exp["Y"]
    assert {y: sorted(s) for y, s in rs.S.items()} == exp["S"]
    assert rs.ystar == exp["ystar"]
    assert max(len(c.cut) for c in rs.cuts.values()) == exp["max_cut"]
    assert len(rs.R_arcs) == exp["R_arcs"]
    assert sorted(len(seg) for _, seg in rs.shortcut_map.values()) == exp["shortcut_segments"]
    assert rs.H.vertices() == exp["H_vertices"]
    assert cert.branch_vertices() == exp["branch"]
    assert verify(fx.graph, cert) == []


def test_single_cover_reduction():
    # tip 0 reaches {1,2,3} only through 0->1; every C_y is {1,2,3}
    g = MultiDigraph.from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 1)])
    nd = normalize(g, 2, 2, FIXTURE)
    inner = ImmersionCertificate(build_f(1, 2), g, {0: 0}, {})
    dp = build_dprime(g, inner)
    out = extend_or_cuts(dp, 0, 2)
    rs = build_reduction(out.cuts, nd, dp, inner, 2, 2, FIXTURE)
    assert len(rs.Y) == 1
    assert rs.S[rs.Y[0]] == {1, 2, 3}
    assert rs.R_arcs == []


def test_lift_expands_shortcut_segment():
    g = MultiDigraph.from_arcs(4, [(0, 1), (1, 2), (2, 3)])
    H = MultiDigraph.from_arcs(4, [])
    H.remove_vertices([1, 2])
    sid = H.add_arc(0, 3)
    assert sid == 0
    smap = {sid: (0, (0, 1, 2))}
    cert_h = ImmersionCertificate(build_f(2, 1), H, {0: 0, 1: 3}, {0: [sid]})
    out = lift(cert_h, smap, g)
    assert out.arc_paths == {0: [0, 1, 2]}


def test_lift_two_shortcuts_from_one_path():
    g = MultiDigraph.from_arcs(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    smap = {10: (0, (0, 1)), 11: (0, (2, 3))}
    H = MultiDigraph(5)
    cert_h = ImmersionCertificate(build_f(2, 1), H, {0: 0, 1: 4}, {0: [10, 11]})
    assert lift(cert_h, smap, g).arc_paths == {0: [0, 1, 2, 3]}


def test_lift_collision():
    g = MultiDigraph.from_arcs(3, [(0, 1), (1, 2), (0, 2)])
    smap = {10: (0, (0, 1)), 11: (0, (0, 1))}
    cert_h = ImmersionCertificate(build_f(2, 2), MultiDigraph(3), {0: 0, 1: 2}, {0: [10], 1: [11]})
    with pytest.raises(LiftCollision):
        lift(cert_h, smap, g)


def test_find_f_base_case():
    g = MultiDigraph.from_arcs(3, [(2, 1)])
    cert = find_f(g, 1, 2, "relaxed")
    assert cert.vertex_map == {0: 0}


def test_find_f_complete_66():
    g = complete(66)
    trace = []
    cert = find_f(g, 2, 2, trace=trace)
    assert verify(g, cert) == []
    assert [e.branch for e in trace] == ["induct", "base", "extend(y=1)"]


def test_find_f_strict_needs_outdegree():
    with pytest.raises(InsufficientOutdegree) as info:
        find_f(complete(65), 2, 2)
    assert info.value.required == bound_f(2, 2)


def test_find_f_rejects_high_multiplicity():
    with pytest.raises(PreconditionViolated):
        find_f(complete(5, mult=5), 2, 2, FIXTURE)


def test_find_tt_small_k():
    g = MultiDigraph.from_arcs(3, [(1, 2)])
    assert find_tt(g, 1).vertex_map == {0: 0}
    cert = find_tt(g, 2)
    assert cert.vertex_map == {0: 1, 1: 2}
    assert verify(g, cert) == []


def test_find_tt_errors():
    with pytest.raises(NotSimple):
        find_tt(MultiDigraph.from_arcs(2, [(0, 1), (0, 1)]), 3)
    with pytest.raises(InsufficientOutdegree) as info:
        find_tt(complete(10), 3)
    assert info.value.required == 486
    assert "486" in str(info.value)


def test_write_dump(tmp_path):
    fx = gen_reduction_fixture("two-covers")
    states = []
    find_f(fx.graph, fx.K, fx.l, FIXTURE, inner=fx.inner, states=states)
    err = InternalInvariantBroken("synthetic", graph=fx.graph, certificate=fx.inner, state=states[0])
    written = write_dump(err, str(tmp_path / "dump"))
    assert written == ["error.txt", "digraph.txt", "certificate.txt", "reduction.dump"]
    dump = (tmp_path / "dump" / "reduction.dump").read_text().splitlines()
    assert dump[:3] == ["K 2", "l 3", "mode fixture"]
    assert "Y 1 3" in dump and "ystar 3" in dump
    assert os.path.getsize(tmp_path / "dump" / "digraph.txt") > 0
