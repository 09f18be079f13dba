"""The three rank distances and radius-bounded neighborhood enumeration."""

from __future__ import annotations

import math
from itertools import permutations
from typing import Iterator

from .core import Preference

SWAP = "swap"
FOOTRULE = "footrule"
MAXDISP = "maxdisp"

METRICS = (SWAP, FOOTRULE, MAXDISP)

# Above this many alternatives, ball() switches from filtering the whole
# symmetric group to metric-specific generators.
_FILTER_LIMIT = 8

DEFAULT_BALL_CAP = 10**6


class BallTooLarge(Exception):
    """Raised when a ball would exceed the configured element cap."""


def _check_pair(p1: Preference, p2: Preference) -> None:
    if p1.m != p2.m:
        raise ValueError("preferences are over different alternative sets")


def swap_distance(p1: Preference, p2: Preference) -> int:
    """Kendall tau: the number of oppositely ordered pairs."""
    _check_pair(p1, p2)
    # A shared elementwise prefix or suffix contributes no inverted pairs,
    # so trim both before counting; witness checks compare preferences that
    # differ only in a small window.
    lo, hi = 0, p1.m
    o1, o2 = p1.order, p2.order
    while lo < hi and o1[lo] == o2[lo]:
        lo += 1
    while hi > lo and o1[hi - 1] == o2[hi - 1]:
        hi -= 1
    rank2 = {a: i for i, a in enumerate(o2[lo:hi])}
    seq = [rank2[a] for a in o1[lo:hi]]
    return _inversions(seq)


def _inversions(seq: list[int]) -> int:
    # Merge-sort inversion count; the SAT-reduction instances are large
    # enough that the quadratic count is too slow.
    if len(seq) < 2:
        return 0
    mid = len(seq) // 2
    left, right = seq[:mid], seq[mid:]
    count = _inversions(left) + _inversions(right)
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
            count += len(left) - i
    merged.extend(left[i:])
    merged.extend(right[j:])
    seq[:] = merged
    return count


def footrule_distance(p1: Preference, p2: Preference) -> int:
    _check_pair(p1, p2)
    rank2 = {a: i for i, a in enumerate(p2.order)}
    return sum(abs(i - rank2[a]) for i, a in enumerate(p1.order))


def maxdisp_distance(p1: Preference, p2: Preference) -> int:
    _check_pair(p1, p2)
    rank2 = {a: i for i, a in enumerate(p2.order)}
    return max(abs(i - rank2[a]) for i, a in enumerate(p1.order))


_DISTANCE = {
    SWAP: swap_distance,
    FOOTRULE: footrule_distance,
    MAXDISP: maxdisp_distance,
}


def distance(metric: str, p1: Preference, p2: Preference) -> int:
    try:
        fn = _DISTANCE[metric]
    except KeyError:
        raise ValueError(f"unknown metric {metric!r}") from None
    return fn(p1, p2)


def ball_size_bound(m: int, metric: str, radius: int) -> int:
    """Cheap over-estimate of the ball size, used to refuse huge runs."""
    if radius < 0:
        return 0
    full = math.factorial(m)
    if metric == SWAP:
        # At most C(m(m-1)/2 + r, r) sequences of adjacent transpositions,
        # capped at m!.
        return min(full, math.comb(m * (m - 1) // 2 + radius, radius) * 2**radius)
    if metric == MAXDISP:
        # Each alternative can land in a window of 2*radius+1 positions.
        return min(full, (2 * radius + 1) ** m)
    if metric == FOOTRULE:
        return min(full, (radius + 1) ** m)
    raise ValueError(f"unknown metric {metric!r}")


def _ball_maxdisp(pref: Preference, radius: int) -> Iterator[tuple[int, ...]]:
    """Backtracking with per-position candidate windows, lexicographic order."""
    m = pref.m
    home = {a: i for i, a in enumerate(pref.order)}
    used = [False] * m
    out: list[int] = []

    def rec(pos: int) -> Iterator[tuple[int, ...]]:
        if pos == m:
            yield tuple(out)
            return
        for a in range(m):
            if not used[a] and abs(home[a] - pos) <= radius:
                used[a] = True
                out.append(a)
                yield from rec(pos + 1)
                out.pop()
                used[a] = False

    return rec(0)


def _ball_footrule(pref: Preference, radius: int) -> Iterator[tuple[int, ...]]:
    """Backtracking with a running displacement budget, lexicographic order."""
    m = pref.m
    home = {a: i for i, a in enumerate(pref.order)}
    used = [False] * m
    out: list[int] = []

    def rec(pos: int, budget: int) -> Iterator[tuple[int, ...]]:
        if pos == m:
            if budget >= 0:
                yield tuple(out)
            return
        for a in range(m):
            if used[a]:
                continue
            cost = abs(home[a] - pos)
            if cost <= budget:
                used[a] = True
                out.append(a)
                yield from rec(pos + 1, budget - cost)
                out.pop()
                used[a] = False

    return rec(0, radius)


def _ball_swap(pref: Preference, radius: int) -> Iterator[tuple[int, ...]]:
    """Backtracking over orders, pruning by inversions already committed.

    Choosing alternative a at the current position inverts a pair with every
    not-yet-placed alternative that pref ranks above a; that count is a lower
    bound on the final swap distance, so the budget prunes exactly.
    """
    m = pref.m
    home = {a: i for i, a in enumerate(pref.order)}
    used = [False] * m
    out: list[int] = []

    def rec(pos: int, budget: int) -> Iterator[tuple[int, ...]]:
        if pos == m:
            yield tuple(out)
            return
        for a in range(m):
            if used[a]:
                continue
            cost = sum(
                1 for b in range(m) if not used[b] and b != a and home[b] < home[a]
            )
            if cost <= budget:
                used[a] = True
                out.append(a)
                yield from rec(pos + 1, budget - cost)
                out.pop()
                used[a] = False

    return rec(0, radius)


def iter_ball(pref: Preference, metric: str, radius: int) -> Iterator[Preference]:
    """All preferences within `radius` of pref, in lexicographic order."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    m = pref.m
    if m <= _FILTER_LIMIT:
        for order in permutations(range(m)):
            q = Preference(order)
            if distance(metric, pref, q) <= radius:
                yield q
        return
    if metric == SWAP:
        gen = _ball_swap(pref, radius)
    elif metric == FOOTRULE:
        gen = _ball_footrule(pref, radius)
    elif metric == MAXDISP:
        gen = _ball_maxdisp(pref, radius)
    else:
        raise ValueError(f"unknown metric {metric!r}")
    for order in gen:
        yield Preference(order)


def ball(
    pref: Preference, metric: str, radius: int, cap: int = DEFAULT_BALL_CAP
) -> list[Preference]:
    """Materialized ball; refuses to exceed `cap` elements."""
    result = []
    for q in iter_ball(pref, metric, radius):
        result.append(q)
        if len(result) > cap:
            raise BallTooLarge(
                f"ball(metric={metric}, radius={radius}) exceeds cap {cap}"
            )
    return result
