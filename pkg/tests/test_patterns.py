import pytest

from immersion.errors import OutOfRange
from immersion.patterns import bound_c1, bound_dprime, bound_f, build_pattern


@pytest.mark.parametrize("k,l,expected", [(3, 3, 486), (1, 2, 8), (2, 2, 64)])
def test_bound_f(k, l, expected):
    assert bound_f(k, l) == expected


@pytest.mark.parametrize("K,l,expected", [(3, 2, 8), (3, 3, 11), (2, 1, 3)])
def test_bound_c1(K, l, expected):
    assert bound_c1(K, l) == expected


@pytest.mark.parametrize("K,l,expected,lower", [(3, 3, 225, 144), (2, 2, 12, 8), (3, 1, 21, 16)])
def test_bound_dprime(K, l, expected, lower):
    # f(K,l) - c1(K,l) K l - f(K,l)/K, by hand
    assert expected == bound_f(K, l) - bound_c1(K, l) * K * l - bound_f(K, l) // K
    assert bound_dprime(K, l) == expected
    assert expected >= lower == bound_f(K - 1, l)


def test_bounds_reject_out_of_range():
    for call in (lambda: bound_f(0, 2), lambda: bound_f(2, 0), lambda: bound_c1(1, 2),
                 lambda: bound_dprime(1, 3), lambda: bound_f(2.0, 2), lambda: bound_f(True, 2)):
        with pytest.raises(OutOfRange):
            call()


def test_bounds_are_exact_for_large_arguments():
    k, l = 10**6, 10**5
    assert bound_f(k, l) == 2 * 10**28
    assert isinstance(bound_dprime(k, l), int)


def test_induction_inequality_small_sweep():
    for k in range(1, 10):
        for l in range(2, 13):
            assert bound_dprime(k + 1, l) >= bound_f(k, l)


def test_f_patterns():
    p = build_pattern("f", 1, 5)
    assert (p.graph.n, p.graph.m) == (1, 0)
    p = build_pattern("f", 3, 2)
    assert (p.graph.n, p.graph.m, p.graph.max_multiplicity()) == (3, 4, 2)
    assert [p.level[a] for a in p.graph.arc_ids()] == [0, 0, 1, 1]
    assert list(p.graph.arcs()) == [(0, 0, 1), (1, 0, 1), (2, 1, 2), (3, 1, 2)]


def test_tt_patterns():
    p = build_pattern("tt", 4)
    assert (p.graph.n, p.graph.m) == (4, 6)
    assert p.graph.is_simple()
    assert [(u, v) for _, u, v in p.graph.arcs()] == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_build_pattern_deterministic():
    a, b = build_pattern("f", 4, 3), build_pattern("f", 4, 3)
    assert list(a.graph.arcs()) == list(b.graph.arcs())


def test_build_pattern_errors():
    with pytest.raises(OutOfRange):
        build_pattern("f", 0, 2)
    with pytest.raises(OutOfRange):
        build_pattern("f", 2)
    with pytest.raises(OutOfRange):
        build_pattern("xx", 2, 2)
