"""Distance axioms, known inequalities, and ball enumeration."""

from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localbribery.metrics import (
    BallTooLarge,
    FOOTRULE,
    MAXDISP,
    METRICS,
    SWAP,
    ball,
    ball_size_bound,
    distance,
    footrule_distance,
    iter_ball,
    maxdisp_distance,
    swap_distance,
)
from localbribery.core import Preference


def all_prefs(m):
    return [Preference(p) for p in permutations(range(m))]


@pytest.mark.parametrize("metric", METRICS)
@pytest.mark.parametrize("m", [2, 3, 4])
def test_axioms_exhaustive_pairs(metric, m):
    prefs = all_prefs(m)
    for p in prefs:
        assert distance(metric, p, p) == 0
        for q in prefs:
            d = distance(metric, p, q)
            assert d >= 0
            assert (d == 0) == (p == q)
            assert d == distance(metric, q, p)


@pytest.mark.parametrize("metric", METRICS)
def test_triangle_exhaustive_m4(metric):
    prefs = all_prefs(4)
    d = {
        (p.order, q.order): distance(metric, p, q)
        for p in prefs
        for q in prefs
    }
    for p in prefs:
        for q in prefs:
            for r in prefs:
                assert (
                    d[(p.order, r.order)]
                    <= d[(p.order, q.order)] + d[(q.order, r.order)]
                )


@given(
    st.permutations(list(range(7))),
    st.permutations(list(range(7))),
    st.permutations(list(range(7))),
)
@settings(max_examples=300, deadline=None)
def test_triangle_random_m7(a, b, c):
    p, q, r = Preference(tuple(a)), Preference(tuple(b)), Preference(tuple(c))
    for metric in METRICS:
        assert distance(metric, p, r) <= distance(metric, p, q) + distance(
            metric, q, r
        )


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_footrule_always_even(m):
    prefs = all_prefs(m)
    for p in prefs:
        for q in prefs:
            assert footrule_distance(p, q) % 2 == 0


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_swap_footrule_sandwich(m):
    # d_swap <= d_footrule <= 2 * d_swap, exhaustively.
    prefs = all_prefs(m)
    for p in prefs:
        for q in prefs:
            s = swap_distance(p, q)
            f = footrule_distance(p, q)
            assert s <= f <= 2 * s


def test_known_values():
    p = Preference((0, 1, 2))
    rev = Preference((2, 1, 0))
    assert swap_distance(p, rev) == 3
    assert footrule_distance(p, rev) == 4
    assert maxdisp_distance(p, rev) == 2
    q = Preference((0, 2, 1))
    assert swap_distance(p, q) == 1
    assert footrule_distance(p, q) == 2
    assert maxdisp_distance(p, q) == 1


def test_adjacent_transposition_is_footrule_two():
    # A single adjacent exchange is exactly swap 1 / footrule 2 / maxdisp 1.
    for m in (4, 6):
        base = Preference(tuple(range(m)))
        for i in range(m - 1):
            o = list(range(m))
            o[i], o[i + 1] = o[i + 1], o[i]
            q = Preference(tuple(o))
            assert swap_distance(base, q) == 1
            assert footrule_distance(base, q) == 2
            assert maxdisp_distance(base, q) == 1


def test_swap_distance_large_is_fast_and_right():
    m = 2000
    p = Preference(tuple(range(m)))
    q = Preference(tuple(reversed(range(m))))
    assert swap_distance(p, q) == m * (m - 1) // 2
    # local change deep inside a long shared prefix/suffix
    o = list(range(m))
    o[1000], o[1001] = o[1001], o[1000]
    assert swap_distance(p, Preference(tuple(o))) == 1


@pytest.mark.parametrize("metric", METRICS)
@pytest.mark.parametrize("m,radius", [(3, 1), (4, 2), (5, 2), (5, 4)])
def test_ball_equals_filter(metric, m, radius):
    for start in (
        Preference(tuple(range(m))),
        Preference(tuple(reversed(range(m)))),
    ):
        got = ball(start, metric, radius)
        want = [
            q
            for q in sorted(all_prefs(m), key=lambda p: p.order)
            if distance(metric, start, q) <= radius
        ]
        assert got == want
        assert len(got) <= ball_size_bound(m, metric, radius)


@pytest.mark.parametrize("metric", METRICS)
def test_ball_generators_match_filter_above_cutover(metric):
    # m=9 exercises the metric-specific generators instead of the
    # filter-the-whole-group path.
    start = Preference((3, 1, 4, 0, 5, 2, 8, 6, 7))
    for radius in (0, 1, 2):
        got = list(iter_ball(start, metric, radius))
        for q in got:
            assert distance(metric, start, q) <= radius
        assert got == sorted(got, key=lambda p: p.order)
        assert len(set(got)) == len(got)
        assert start in got
    # radius-1 balls have closed forms: identity plus single adjacent
    # exchanges for swap; products of disjoint adjacent exchanges for
    # maxdisp (a Fibonacci count); only the identity for footrule (all
    # footrule distances are even).
    r1 = len(list(iter_ball(start, metric, 1)))
    if metric == FOOTRULE:
        assert r1 == 1
    elif metric == SWAP:
        assert r1 == 9  # identity + 8 adjacent exchanges
    else:
        assert r1 == 55  # Fibonacci(10)


def test_ball_cap_raises():
    start = Preference(tuple(range(6)))
    with pytest.raises(BallTooLarge):
        ball(start, SWAP, 15, cap=10)


def test_distance_rejects_mismatched_sizes():
    with pytest.raises(ValueError):
        swap_distance(Preference((0, 1)), Preference((0, 1, 2)))
    with pytest.raises(ValueError):
        distance("nosuch", Preference((0, 1)), Preference((0, 1)))


@pytest.mark.parametrize("metric", METRICS)
def test_right_invariance_m5(metric):
    # Relabeling alternatives by a common permutation preserves distances.
    prefs = all_prefs(4)
    relabel = (2, 0, 3, 1)
    for p in prefs:
        for q in prefs:
            rp = Preference(tuple(relabel[a] for a in p.order))
            rq = Preference(tuple(relabel[a] for a in q.order))
            assert distance(metric, p, q) == distance(metric, rp, rq)
