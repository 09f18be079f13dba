"""Polynomial solvers against the exhaustive solver on small instances.

The full acceptance sweeps live in test_acceptance.py; these are quicker
spot checks plus domain-boundary behavior.
"""

import random

import pytest

from localbribery.core import VotingRule
from localbribery.metrics import FOOTRULE, MAXDISP, METRICS, SWAP
from localbribery.oracle import solve_exhaustive
from localbribery.problem import check_witness
from localbribery.solvers import (
    UnsupportedParameters,
    solve_kapproval_maxdisp,
    solve_kapproval_small_radius,
    solve_plurality,
    solve_sbucklin_maxdisp,
    solve_sbucklin_small_radius,
    solve_veto,
    top_window,
)
from conftest import random_instance


def agree_with_oracle(solver, instances):
    yes = 0
    for inst in instances:
        got = solver(inst)
        want = solve_exhaustive(inst)
        assert got.decision == want.decision, inst
        if got.decision:
            assert got.total_price == want.total_price, inst
            ok, reason, _, _ = check_witness(inst, got.witness)
            assert ok, reason
            yes += 1
    return yes


@pytest.mark.parametrize("metric", METRICS)
def test_plurality_spot(metric):
    rng = random.Random(hash(metric) % 10000)
    insts = [
        random_instance(rng, VotingRule("plurality"), metric)
        for _ in range(60)
    ]
    assert agree_with_oracle(solve_plurality, insts) > 5


@pytest.mark.parametrize("metric", METRICS)
def test_veto_spot(metric):
    rng = random.Random(hash("v" + metric) % 10000)
    insts = [
        random_instance(rng, VotingRule("veto"), metric) for _ in range(60)
    ]
    assert agree_with_oracle(solve_veto, insts) > 5


@pytest.mark.parametrize(
    "metric,deltas", [(SWAP, (0, 1)), (MAXDISP, (0, 1)), (FOOTRULE, (0, 1, 2, 3))]
)
def test_kapproval_small_radius_spot(metric, deltas):
    rng = random.Random(13)
    insts = [
        random_instance(
            rng,
            VotingRule("kapproval", k=rng.choice((2, 3))),
            metric,
            delta_choices=deltas,
        )
        for _ in range(60)
    ]
    agree_with_oracle(solve_kapproval_small_radius, insts)


@pytest.mark.parametrize(
    "metric,deltas", [(SWAP, (0, 1)), (MAXDISP, (0, 1)), (FOOTRULE, (0, 1, 2, 3))]
)
def test_sbucklin_small_radius_spot(metric, deltas):
    rng = random.Random(14)
    insts = [
        random_instance(
            rng, VotingRule("sbucklin"), metric, delta_choices=deltas
        )
        for _ in range(60)
    ]
    agree_with_oracle(solve_sbucklin_small_radius, insts)


def test_kapproval_maxdisp_spot():
    rng = random.Random(15)
    insts = [
        random_instance(
            rng,
            VotingRule("kapproval", k=rng.choice((2, 3))),
            MAXDISP,
            delta_choices=(1, 2, 3),
            unpriced_uniform=True,
        )
        for _ in range(80)
    ]
    agree_with_oracle(solve_kapproval_maxdisp, insts)


def test_sbucklin_maxdisp_spot():
    rng = random.Random(16)
    insts = [
        random_instance(
            rng,
            VotingRule("sbucklin"),
            MAXDISP,
            delta_choices=(1, 2, 3),
            unpriced_uniform=True,
        )
        for _ in range(80)
    ]
    agree_with_oracle(solve_sbucklin_maxdisp, insts)


def test_top_window_values():
    assert top_window(0, SWAP) == 1
    assert top_window(2, SWAP) == 3
    assert top_window(2, MAXDISP) == 3
    assert top_window(2, FOOTRULE) == 2
    assert top_window(3, FOOTRULE) == 2
    assert top_window(4, FOOTRULE) == 3


def test_domain_rejections():
    rng = random.Random(17)
    swap2 = random_instance(
        rng, VotingRule("kapproval", k=2), SWAP, delta_choices=(2,)
    )
    with pytest.raises(UnsupportedParameters):
        solve_kapproval_small_radius(swap2)
    priced = random_instance(
        rng,
        VotingRule("kapproval", k=2),
        MAXDISP,
        delta_choices=(2,),
        price_choices=(1,),
        budget_range=(1, 3),
    )
    with pytest.raises(UnsupportedParameters):
        solve_kapproval_maxdisp(priced)
    with pytest.raises(UnsupportedParameters):
        solve_plurality(
            random_instance(rng, VotingRule("veto"), SWAP)
        )
    with pytest.raises(UnsupportedParameters):
        solve_sbucklin_maxdisp(
            random_instance(
                rng, VotingRule("sbucklin"), SWAP, unpriced_uniform=True
            )
        )
