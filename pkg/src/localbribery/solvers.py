"""Polynomial-time bribery solvers built on min-cost flow.

Covers: plurality and veto with prices under all three metrics,
k-approval and simplified Bucklin with prices at small radius, and the
unpriced uniform-radius max-displacement algorithms for k-approval and
simplified Bucklin.  Every YES passes through the independent witness
verifier before being returned.
"""

from __future__ import annotations

from .core import (
    KAPPROVAL,
    PLURALITY,
    SBUCKLIN,
    VETO,
    Preference,
    Profile,
    approval_vector,
    is_unique_winner,
    positional_scores,
)
from .flow import FlowNetwork, max_flow_with_arcs, min_cost_flow_with_demands
from .metrics import FOOTRULE, MAXDISP, SWAP
from .problem import BriberyInstance, BriberyOutcome, verified_yes


class UnsupportedParameters(Exception):
    """The instance falls outside this solver's polynomial domain."""


def top_window(delta: int, metric: str) -> int:
    """Number of leading positions whose alternative can reach position 1.

    Swap and max-displacement: delta+1.  Footrule: moving up j places costs
    2j, so floor(delta/2)+1.
    """
    if metric in (SWAP, MAXDISP):
        return delta + 1
    if metric == FOOTRULE:
        return delta // 2 + 1
    raise ValueError(f"unknown metric {metric!r}")


def top_reachable(pref: Preference, delta: int, metric: str) -> set[int]:
    return set(pref.order[: top_window(delta, metric)])


def bottom_reachable(pref: Preference, delta: int, metric: str) -> set[int]:
    w = top_window(delta, metric)
    return set(pref.order[-w:])


def _move_to_front(pref: Preference, a: int) -> Preference:
    if pref.order[0] == a:
        return pref
    rest = [b for b in pref.order if b != a]
    return Preference((a, *rest))


def _move_to_back(pref: Preference, a: int) -> Preference:
    if pref.order[-1] == a:
        return pref
    rest = [b for b in pref.order if b != a]
    return Preference((*rest, a))


def solve_plurality(instance: BriberyInstance) -> BriberyOutcome:
    """Guess the target's final plurality score, solve a min-cost flow.

    One unit per voter not already ranking the target first; the unit picks
    which alternative ends up at that voter's top.
    """
    if instance.rule.tag != PLURALITY:
        raise UnsupportedParameters("solve_plurality requires the plurality rule")
    profile, c = instance.profile, instance.target
    n, m = instance.n, instance.m
    if m == 1:
        return verified_yes(instance, profile)
    q_voters = [i for i in range(n) if profile.prefs[i].order[0] != c]
    s_c = n - len(q_voters)
    if not q_voters:
        return verified_yes(instance, profile)

    best = None  # (cost, guess, per-voter chosen alternative)
    reach = {
        i: top_reachable(profile.prefs[i], instance.deltas[i], instance.metric)
        for i in q_voters
    }
    for guess in range(max(s_c, 1), n + 1):
        # Nodes: 0 = source, 1 = sink, 2..m+1 = alternatives, then voters.
        net = FlowNetwork(2 + m + len(q_voters), 0, 1)
        v_alt = lambda a: 2 + a
        choice_edges = []
        for idx, i in enumerate(q_voters):
            u = 2 + m + idx
            net.add_edge(0, u, 0, 1, 0)
            first = profile.prefs[i].order[0]
            for a in sorted(reach[i]):
                cost = 0 if a == first else instance.prices[i]
                e = net.add_edge(u, v_alt(a), 0, 1, cost)
                choice_edges.append((e, i, a))
        need_c = guess - s_c
        net.add_edge(v_alt(c), 1, need_c, need_c, 0)
        for a in range(m):
            if a != c:
                net.add_edge(v_alt(a), 1, 0, guess - 1, 0)
        res = min_cost_flow_with_demands(net, len(q_voters))
        if res.feasible and res.total_cost <= instance.budget:
            if best is None or res.total_cost < best[0]:
                chosen = {
                    i: a for e, i, a in choice_edges if res.edge_flow[e] == 1
                }
                best = (res.total_cost, guess, chosen)
    if best is None:
        return BriberyOutcome.no()
    _, _, chosen = best
    witness = profile
    for i, a in chosen.items():
        witness = witness.replace(i, _move_to_front(profile.prefs[i], a))
    return verified_yes(instance, witness)


def solve_veto(instance: BriberyInstance) -> BriberyOutcome:
    """Guess the target's final veto count; every voter routes one unit to
    the alternative it ends up vetoing."""
    if instance.rule.tag != VETO:
        raise UnsupportedParameters("solve_veto requires the veto rule")
    profile, c = instance.profile, instance.target
    n, m = instance.n, instance.m
    if m == 1:
        return verified_yes(instance, profile)
    reach = [
        bottom_reachable(profile.prefs[i], instance.deltas[i], instance.metric)
        for i in range(n)
    ]
    best = None
    for guess in range(0, n + 1):
        if (m - 1) * (guess + 1) > n:
            continue
        net = FlowNetwork(2 + m + n, 0, 1)
        v_alt = lambda a: 2 + a
        choice_edges = []
        for i in range(n):
            u = 2 + m + i
            net.add_edge(0, u, 0, 1, 0)
            last = profile.prefs[i].order[-1]
            for a in sorted(reach[i]):
                cost = 0 if a == last else instance.prices[i]
                e = net.add_edge(u, v_alt(a), 0, 1, cost)
                choice_edges.append((e, i, a))
        net.add_edge(v_alt(c), 1, 0, guess, 0)
        for a in range(m):
            if a != c:
                net.add_edge(v_alt(a), 1, guess + 1, n, 0)
        res = min_cost_flow_with_demands(net, n)
        if res.feasible and res.total_cost <= instance.budget:
            if best is None or res.total_cost < best[0]:
                chosen = {
                    i: a for e, i, a in choice_edges if res.edge_flow[e] == 1
                }
                best = (res.total_cost, guess, chosen)
    if best is None:
        return BriberyOutcome.no()
    _, _, chosen = best
    witness = profile
    for i, a in chosen.items():
        witness = witness.replace(i, _move_to_back(profile.prefs[i], a))
    return verified_yes(instance, witness)


def _toggle_radius(delta: int, metric: str) -> int:
    """Effective swap radius for the small-radius solvers: 1 if the voter
    may exchange one adjacent pair, else 0.

    Footrule radius 2 or 3 buys exactly one adjacent exchange (the footrule
    ball of radius 3 equals the swap ball of radius 1); radius 0 or 1 buys
    nothing since footrule distances are even.
    """
    if metric in (SWAP, MAXDISP):
        return min(delta, 1)
    if metric == FOOTRULE:
        return 1 if delta >= 2 else 0
    raise ValueError(f"unknown metric {metric!r}")


def _check_small_radius(instance: BriberyInstance) -> None:
    if instance.metric in (SWAP, MAXDISP):
        if any(d > 1 for d in instance.deltas):
            raise UnsupportedParameters(
                "small-radius solver needs delta <= 1 under swap/maxdisp"
            )
    else:
        if any(d > 3 for d in instance.deltas):
            raise UnsupportedParameters(
                "small-radius solver needs delta <= 3 under footrule"
            )


def _boundary_toggle_solve(
    instance: BriberyInstance, k: int, c_floor: int, rival_cap_fn
) -> tuple[int, list[int]] | None:
    """Shared core of the small-radius solvers.

    At radius 1 the only change that moves k-approval (or level-k) scores is
    exchanging the alternatives at positions k and k+1; any other radius-1
    change can be dropped without raising cost or altering level-k scores.
    Each togglable voter becomes a unit edge moving one point of score from
    its boundary loser to its boundary gainer.  `c_floor` is the exact final
    level-k score demanded for the target, `rival_cap_fn(y)` the maximum
    allowed final score of rival y.  Returns (cost, toggled voters) for the
    cheapest feasible selection, or None.
    """
    profile, c = instance.profile, instance.target
    n, m = instance.n, instance.m
    alpha = approval_vector(m, k)
    s0 = positional_scores(profile, alpha)
    if c_floor < s0[c]:
        return None  # the target can only gain at the boundary
    for y in range(m):
        if y != c and rival_cap_fn(y) < 0:
            return None
    # Nodes: 0 = super source, 1 = super sink, 2..m+1 = alternatives.
    net = FlowNetwork(2 + m, 0, 1)
    v_alt = lambda a: 2 + a
    toggle_edges = []
    for i in range(n):
        if _toggle_radius(instance.deltas[i], instance.metric) == 0:
            continue
        out = profile.prefs[i].order[k - 1]
        into = profile.prefs[i].order[k]
        if out == c:
            continue  # demoting the target is never useful
        e = net.add_edge(v_alt(out), v_alt(into), 0, 1, instance.prices[i])
        toggle_edges.append((e, i))
    need_c = c_floor - s0[c]
    net.add_edge(v_alt(c), 1, need_c, need_c, 0)
    for y in range(m):
        if y == c:
            continue
        cap = rival_cap_fn(y)
        gain_room = max(0, cap - s0[y])
        forced_loss = max(0, s0[y] - cap)
        net.add_edge(v_alt(y), 1, 0, gain_room, 0)
        net.add_edge(0, v_alt(y), forced_loss, n, 0)
    # Close the circulation so the super nodes conserve flow too.
    net.add_edge(1, 0, 0, n * m + 1, 0)
    res = min_cost_flow_with_demands(net, 0)
    if not res.feasible or res.total_cost > instance.budget:
        return None
    toggled = [i for e, i in toggle_edges if res.edge_flow[e] == 1]
    return res.total_cost, toggled


def _apply_toggles(profile: Profile, k: int, voters: list[int]) -> Profile:
    for i in voters:
        order = list(profile.prefs[i].order)
        order[k - 1], order[k] = order[k], order[k - 1]
        profile = profile.replace(i, Preference(tuple(order)))
    return profile


def solve_kapproval_small_radius(instance: BriberyInstance) -> BriberyOutcome:
    if instance.rule.tag != KAPPROVAL:
        raise UnsupportedParameters("this solver requires the k-approval rule")
    _check_small_radius(instance)
    k = instance.rule.k
    n = instance.n
    best = None
    for guess in range(0, n + 1):
        got = _boundary_toggle_solve(instance, k, guess, lambda y: guess - 1)
        if got is not None and (best is None or got[0] < best[0]):
            best = got
    if best is None:
        return BriberyOutcome.no()
    witness = _apply_toggles(instance.profile, k, best[1])
    return verified_yes(instance, witness)


def solve_sbucklin_small_radius(instance: BriberyInstance) -> BriberyOutcome:
    """Guess the level at which the target reaches a strict majority while
    every rival stays at or below half."""
    if instance.rule.tag != SBUCKLIN:
        raise UnsupportedParameters("this solver requires simplified Bucklin")
    _check_small_radius(instance)
    n, m = instance.n, instance.m
    if m == 1:
        return verified_yes(instance, instance.profile)
    majority = n // 2 + 1
    best = None
    # Guess the level at which the target holds a strict majority while
    # every rival stays at or below half; counts are monotone in the level,
    # so capping rivals at the guessed level also covers all lower levels.
    # The target's exact final count is swept too, because a toggle that
    # raises the target also lowers the rival at the boundary.
    for level in range(1, m):
        for count in range(majority, n + 1):
            got = _boundary_toggle_solve(
                instance, level, count, lambda y: majority - 1
            )
            if got is not None and (best is None or got[0] < best[0]):
                best = (got[0], got[1], level)
    if best is None:
        return BriberyOutcome.no()
    cost, toggled, level = best
    witness = _apply_toggles(instance.profile, level, toggled)
    return verified_yes(instance, witness)


def solve_kapproval_maxdisp(instance: BriberyInstance) -> BriberyOutcome:
    """Unpriced uniform-radius k-approval under max-displacement.

    The target is pulled into the top k wherever it sits within k+delta;
    a max-flow then decides which window alternatives fill the remaining
    top-k slots so no rival's final score reaches the target's.
    """
    if instance.rule.tag != KAPPROVAL:
        raise UnsupportedParameters("this solver requires the k-approval rule")
    if instance.metric != MAXDISP:
        raise UnsupportedParameters("this solver requires max-displacement")
    if not instance.is_unpriced_uniform():
        raise UnsupportedParameters(
            "priced or non-uniform instances are outside this solver's domain"
        )
    k = instance.rule.k
    delta = instance.deltas[0]
    got = _windowed_maxdisp_solve(
        instance, k, x_pin=None, rival_cap_base=None, delta=delta
    )
    if got is None:
        return BriberyOutcome.no()
    return verified_yes(instance, got)


def solve_sbucklin_maxdisp(instance: BriberyInstance) -> BriberyOutcome:
    """Unpriced uniform-radius simplified Bucklin under max-displacement.

    The target wins uniquely iff at some level k it sits in the top k in a
    strict majority of preferences while every rival does not.  Guess k and
    solve the same windowed exchange flow as for k-approval, with the
    target's top-k count as an edge demand instead of a cap.  Shifting the
    target maximally left first (as one might expect) can block a rival's
    only exit slot, so the target is placed by the flow like everyone else.
    """
    if instance.rule.tag != SBUCKLIN:
        raise UnsupportedParameters("this solver requires simplified Bucklin")
    if instance.metric != MAXDISP:
        raise UnsupportedParameters("this solver requires max-displacement")
    if not instance.is_unpriced_uniform():
        raise UnsupportedParameters(
            "priced or non-uniform instances are outside this solver's domain"
        )
    profile = instance.profile
    m = instance.m
    delta = instance.deltas[0]
    if m == 1:
        return verified_yes(instance, profile)
    for level in range(1, m):
        got = _windowed_maxdisp_solve(
            instance,
            level,
            x_pin=None,
            rival_cap_base=instance.n // 2,
            delta=delta,
        )
        if got is not None:
            return verified_yes(instance, got)
    return BriberyOutcome.no()


def _windowed_maxdisp_solve(
    instance: BriberyInstance,
    k: int,
    x_pin: None,
    rival_cap_base: int | None,
    delta: int,
) -> Profile | None:
    """Shared windowed flow for the two max-displacement algorithms.

    Per preference, alternatives at positions <= k-delta cannot leave the
    top k (stuck) and those above k+delta cannot enter; the rest form the
    exchange window.  One flow unit = one window alternative granted a
    top-k slot.

    k-approval mode (`rival_cap_base is None`): the target is put into the
    top k in exactly the preferences that can reach it, and each rival may
    end with at most (target score - 1) approvals; decided by max flow.
    Simplified Bucklin mode: `k` is a guessed majority level, the target
    competes for slots like everyone else but its sink edge carries a
    lower bound of a strict majority, and rivals are capped at
    `rival_cap_base`; decided by a feasible flow with demands.
    """
    del x_pin
    profile, c = instance.profile, instance.target
    n, m = instance.n, instance.m
    if m == 1:
        return profile
    if delta == 0:
        return profile if is_unique_winner(profile, instance.rule, c) else None

    stuck_limit = max(0, k - delta)  # positions <= this cannot leave the top k
    win_hi = min(k + delta, m)
    sbucklin_mode = rival_cap_base is not None

    # Forced top-k appearances, the target's included.
    ell = [0] * m
    for pref in profile.prefs:
        for a in pref.order[:stuck_limit]:
            ell[a] += 1

    if sbucklin_mode:
        rival_base = rival_cap_base
        c_lb = max(0, n // 2 + 1 - ell[c])
    else:
        ell_x = sum(
            1 for pref in profile.prefs if pref.position(c) <= k + delta
        )
        rival_base = ell_x - 1
    if any(rival_base - ell[y] < 0 for y in range(m) if y != c):
        return None

    # Nodes: 0 source, 1 sink, 2..m+1 alternatives, then one per preference.
    net = FlowNetwork(2 + m + n, 0, 1)
    v_alt = lambda a: 2 + a
    pick_edges = []
    source_caps = []
    for i, pref in enumerate(profile.prefs):
        u = 2 + m + i
        stuck = pref.order[:stuck_limit]
        slots = k - len(stuck)
        if not sbucklin_mode and c not in stuck and pref.position(c) <= k + delta:
            slots -= 1  # the target takes one free slot in this preference
        net.add_edge(0, u, 0, slots, 0)
        source_caps.append(slots)
        for a in pref.order[stuck_limit:win_hi]:
            if sbucklin_mode or a != c:
                e = net.add_edge(u, v_alt(a), 0, 1, 0)
                pick_edges.append((e, i, a))
    for y in range(m):
        if y == c:
            if sbucklin_mode:
                net.add_edge(v_alt(c), 1, c_lb, n, 0)
        else:
            net.add_edge(v_alt(y), 1, 0, rival_base - ell[y], 0)
    need = sum(source_caps)
    if sbucklin_mode:
        res = min_cost_flow_with_demands(net, need)
        if not res.feasible:
            return None
        flows = res.edge_flow
    else:
        value, flows = max_flow_with_arcs(net)
        if value != need:
            return None

    picked: list[list[int]] = [[] for _ in range(n)]
    for e, i, a in pick_edges:
        if flows[e] == 1:
            picked[i].append(a)

    out_profile = profile
    for i, pref in enumerate(profile.prefs):
        top = list(pref.order[:stuck_limit]) + picked[i]
        if not sbucklin_mode and c not in top and pref.position(c) <= k + delta:
            top.append(c)
        new_pref = _assemble_maxdisp_pref(pref, top)
        if new_pref != pref:
            out_profile = out_profile.replace(i, new_pref)
    return out_profile


def _assemble_maxdisp_pref(pref: Preference, top_set: list[int]) -> Preference:
    """Rebuild a preference from its chosen top-k set.

    Both the top set and its complement keep their original relative order;
    for top members drawn from the first k+delta positions and excluded
    members from below position k-delta this stays within displacement
    delta of the original.
    """
    home = {a: i for i, a in enumerate(pref.order)}
    chosen = set(top_set)
    top = sorted(top_set, key=home.get)
    rest = sorted((a for a in pref.order if a not in chosen), key=home.get)
    return Preference(tuple(top + rest))
