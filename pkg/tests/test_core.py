"""Winner determination for all eight rules on hand-computed profiles."""

from fractions import Fraction

import pytest

from localbribery.core import (
    AlternativeSet,
    Preference,
    Profile,
    ScoreVector,
    VotingRule,
    approval_vector,
    borda_vector,
    is_unique_winner,
    positional_scores,
    sbucklin_scores,
    weighted_majority_graph,
    winners,
)
from conftest import make_profile

# a=0 b=1 c=2; plurality counts a:2 b:1; borda a:4 b:3 c:2.
PROFILE = make_profile(
    [
        (0, 1, 2),
        (1, 2, 0),
        (0, 2, 1),
    ]
)


def test_positional_rules():
    assert winners(PROFILE, VotingRule("plurality")) == {0}
    assert winners(PROFILE, VotingRule("borda")) == {0}
    # veto: last places are c, a, b -> each vetoed once, all tie at 2.
    assert winners(PROFILE, VotingRule("veto")) == {0, 1, 2}
    # 2-approval: every alternative is in exactly two top-2 sets.
    assert winners(PROFILE, VotingRule("kapproval", k=2)) == {0, 1, 2}
    alpha = ScoreVector((3, 1, 0))
    assert winners(PROFILE, VotingRule("positional", alpha=alpha)) == {0}


def test_positional_scores_values():
    assert positional_scores(PROFILE, borda_vector(3)) == [4, 3, 2]
    assert positional_scores(PROFILE, approval_vector(3, 1)) == [2, 1, 0]
    assert positional_scores(PROFILE, approval_vector(3, 2)) == [2, 2, 2]


def test_weighted_majority_graph():
    wmg = weighted_majority_graph(PROFILE)
    # a vs b: voters 0,2 prefer a -> margin +1; b vs c: voters 0,1 -> +1.
    assert wmg[(0, 1)] == 1 and wmg[(1, 0)] == -1
    assert wmg[(1, 2)] == 1
    assert wmg[(0, 2)] == 1
    assert wmg[(0, 0)] == 0


def test_maximin():
    # maximin scores: a: min(1,1)=1, b: min(-1,1)=-1, c: min(-1,-1)=-1.
    assert winners(PROFILE, VotingRule("maximin")) == {0}


def test_copeland_alpha():
    # a beats b and c, b beats c -> copeland a=2, b=1, c=0 at any alpha.
    assert winners(PROFILE, VotingRule("copeland")) == {0}
    tie_profile = make_profile([(0, 1), (1, 0)])
    # tied pair: both get alpha; winners = both for any alpha.
    for alpha in (Fraction(0), Fraction(1, 2), Fraction(1)):
        assert winners(
            tie_profile, VotingRule("copeland", copeland_alpha=alpha)
        ) == {0, 1}


def test_sbucklin_and_bucklin():
    # n=3, strict majority = 2.  Top-1 counts: a:2 -> a reaches a strict
    # majority at level 1.
    assert sbucklin_scores(PROFILE) == [1, 2, 2]
    assert winners(PROFILE, VotingRule("sbucklin")) == {0}
    assert winners(PROFILE, VotingRule("bucklin")) == {0}
    # Even split: no strict majority at level 1; both reach it at level 2.
    even = make_profile([(0, 1), (1, 0)])
    assert sbucklin_scores(even) == [2, 2]
    assert winners(even, VotingRule("sbucklin")) == {0, 1}


def test_is_unique_winner():
    assert is_unique_winner(PROFILE, VotingRule("plurality"), 0)
    assert not is_unique_winner(PROFILE, VotingRule("plurality"), 1)
    assert not is_unique_winner(PROFILE, VotingRule("veto"), 0)


def test_validation_errors():
    with pytest.raises(ValueError):
        Preference((0, 0, 1))
    with pytest.raises(ValueError):
        AlternativeSet(("a", "a"))
    with pytest.raises(ValueError):
        ScoreVector((1, 2))  # increasing
    with pytest.raises(ValueError):
        ScoreVector((1, 1))  # top == bottom
    with pytest.raises(ValueError):
        VotingRule("kapproval")  # missing k
    with pytest.raises(ValueError):
        VotingRule("copeland", copeland_alpha=Fraction(3, 2))
    with pytest.raises(ValueError):
        VotingRule("kapproval", k=3).validate_for(3)
    with pytest.raises(ValueError):
        Profile(
            AlternativeSet(("a", "b")),
            (Preference((0, 1, 2)),),
        )


def test_profile_replace():
    p2 = PROFILE.replace(1, Preference((2, 1, 0)))
    assert p2.prefs[1].order == (2, 1, 0)
    assert PROFILE.prefs[1].order == (1, 2, 0)  # original untouched
