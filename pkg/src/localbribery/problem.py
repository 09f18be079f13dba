"""Bribery instances, outcomes, and the independent witness verifier."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Profile, VotingRule, is_unique_winner
from .metrics import METRICS, distance


@dataclass(frozen=True)
class BriberyInstance:
    profile: Profile
    target: int
    deltas: tuple[int, ...]
    prices: tuple[int, ...]
    budget: int
    rule: VotingRule
    metric: str

    def __post_init__(self):
        n = self.profile.n
        if len(self.deltas) != n or len(self.prices) != n:
            raise ValueError("deltas and prices must have one entry per voter")
        if any(d < 0 for d in self.deltas) or any(p < 0 for p in self.prices):
            raise ValueError("deltas and prices must be non-negative")
        if self.budget < 0:
            raise ValueError("budget must be non-negative")
        if not 0 <= self.target < self.profile.m:
            raise ValueError("target out of range")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")
        self.rule.validate_for(self.profile.m)

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def m(self) -> int:
        return self.profile.m

    def is_unpriced_uniform(self) -> bool:
        """True for the plain distance-constrained form: uniform delta,
        all prices zero, zero budget."""
        return (
            len(set(self.deltas)) == 1
            and all(p == 0 for p in self.prices)
            and self.budget == 0
        )


@dataclass(frozen=True)
class BriberyOutcome:
    decision: bool
    witness: Profile | None = None
    bribed: frozenset[int] | None = None
    total_price: int | None = None

    @staticmethod
    def no() -> "BriberyOutcome":
        return BriberyOutcome(False)


class WitnessError(Exception):
    """A solver produced a witness that fails verification; internal bug."""


def check_witness(
    instance: BriberyInstance, witness: Profile
) -> tuple[bool, str, frozenset[int], int]:
    """Verify a proposed bribed profile against all four conditions.

    Returns (ok, reason, bribed set, total price).  The bribed set is taken
    to be exactly the voters whose preference changed.
    """
    if witness.n != instance.n or witness.m != instance.m:
        return False, "witness has the wrong shape", frozenset(), 0
    bribed = frozenset(
        i
        for i in range(instance.n)
        if witness.prefs[i] != instance.profile.prefs[i]
    )
    for i in bribed:
        d = distance(instance.metric, instance.profile.prefs[i], witness.prefs[i])
        if d > instance.deltas[i]:
            return (
                False,
                f"voter {i} moved distance {d} > delta {instance.deltas[i]}",
                bribed,
                0,
            )
    price = sum(instance.prices[i] for i in bribed)
    if price > instance.budget:
        return False, f"price {price} exceeds budget {instance.budget}", bribed, price
    if not is_unique_winner(witness, instance.rule, instance.target):
        return False, "target is not the unique winner", bribed, price
    return True, "", bribed, price


def verified_yes(instance: BriberyInstance, witness: Profile) -> BriberyOutcome:
    """Gate for every solver YES: verify or die."""
    ok, reason, bribed, price = check_witness(instance, witness)
    if not ok:
        raise WitnessError(reason)
    return BriberyOutcome(True, witness, bribed, price)
