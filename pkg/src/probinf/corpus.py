"""Probabilistic acceptance.

A :class:`Corpus` pairs a credal evidence base with an acceptance level
``t``.  A proposition is accepted when its *lower* probability strictly
exceeds ``t``.  Nothing is cached: the accepted statements are recomputed
from the evidence, so updating the evidence can retract an acceptance.

Because lower probability is monotone under set inclusion, the accepted
propositions are closed under single-premise consequence but not under
conjunction, which is what produces the lottery paradox.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Mapping, NamedTuple

import numpy as np

from .algebra import Proposition, WorldSpace, check_space
from .credal import CredalSet, Distribution, ProbabilityInterval, _mass, prob_interval
from .errors import EnumerationLimitError, InvariantError
from .rational import format_fraction, to_fraction

__all__ = [
    "Corpus",
    "StakesContext",
    "Verdict",
    "QueryAnswer",
    "Consistent",
    "JointlyInconsistent",
    "Lottery",
    "TakeBet",
    "RefuseBet",
    "RefusalReason",
    "MAX_ENUMERATION_ATOMS",
    "threshold_from_stakes",
    "max_meaningful_odds",
    "is_accepted",
    "accepted_set",
    "query",
    "joint_consistency",
    "build_lottery",
    "direct_inference",
    "bet_advice",
]

MAX_ENUMERATION_ATOMS = 20


@dataclass(frozen=True)
class Corpus:
    evidence: CredalSet
    acceptance_level: Fraction

    def __post_init__(self):
        t = to_fraction(self.acceptance_level)
        object.__setattr__(self, "acceptance_level", t)
        if not Fraction(1, 2) <= t < 1:
            raise InvariantError(f"acceptance level must lie in [1/2, 1), got {t}")

    @property
    def space(self) -> WorldSpace:
        return self.evidence.space

    def with_evidence(self, evidence: CredalSet) -> Corpus:
        return Corpus(evidence, self.acceptance_level)

    def to_json(self) -> dict:
        return {
            "atoms": list(self.space.atoms),
            "credal": self.evidence.to_json(),
            "acceptance_level": format_fraction(self.acceptance_level),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Corpus:
        space = WorldSpace.from_json(data)
        for key in ("credal", "acceptance_level"):
            if key not in data:
                raise InvariantError(f"corpus JSON is missing {key!r}")
        evidence = CredalSet.from_json(data["credal"])
        check_space(space, evidence.space)
        return cls(evidence, data["acceptance_level"])


@dataclass(frozen=True)
class StakesContext:
    """Odds of ``max_odds``:1 are the largest stakes under consideration."""

    max_odds: Fraction

    def __post_init__(self):
        o = to_fraction(self.max_odds)
        object.__setattr__(self, "max_odds", o)
        if o < 1:
            raise InvariantError(f"maximum odds must be at least 1, got {o}")


def threshold_from_stakes(ctx: StakesContext | object) -> Fraction:
    """Acceptance level O/(O+1) for stakes capped at O:1.

    Above it, no bet within the contemplated range distinguishes the
    probability from 1.

    >>> threshold_from_stakes(StakesContext(10))
    Fraction(10, 11)
    """
    if not isinstance(ctx, StakesContext):
        ctx = StakesContext(ctx)
    o = ctx.max_odds
    return o / (o + 1)


def max_meaningful_odds(c: Corpus) -> Fraction:
    """Largest odds O with O/(O+1) <= t, i.e. t/(1-t)."""
    t = c.acceptance_level
    return t / (1 - t)


def _exceeds(c: Corpus, a: Proposition) -> bool:
    t = c.acceptance_level
    return all(_mass(g, a) * t.denominator > t.numerator * g._den for g in c.evidence.generators)


def is_accepted(c: Corpus, a: Proposition) -> bool:
    """Lower probability of ``a`` strictly exceeds the acceptance level."""
    check_space(c.space, a.space)
    return _exceeds(c, a)


def _subset_sums(g: Distribution, dtype) -> np.ndarray:
    sums = np.zeros(1, dtype=dtype)
    for w in g._nums:
        sums = np.concatenate([sums, sums + w])
    return sums


def accepted_set(c: Corpus) -> list[Proposition]:
    """Every accepted proposition, by exhaustive enumeration, ordered by bitmask."""
    n = len(c.space)
    if n > MAX_ENUMERATION_ATOMS:
        raise EnumerationLimitError(
            f"{n} atoms exceeds the enumeration limit of {MAX_ENUMERATION_ATOMS}; use is_accepted"
        )
    t = c.acceptance_level
    accepted = np.ones(1 << n, dtype=bool)
    for g in c.evidence.generators:
        fits = g._den * max(t.numerator, t.denominator) < 2**62
        dtype = np.int64 if fits else object
        sums = _subset_sums(g, dtype)
        accepted &= np.asarray(sums * t.denominator > t.numerator * g._den, dtype=bool)
    return [Proposition(c.space, int(mask)) for mask in np.flatnonzero(accepted)]


class Verdict(enum.Enum):
    ACCEPTED = "Accepted"
    REJECTED_NEGATION_ACCEPTED = "RejectedNegationAccepted"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


class QueryAnswer(NamedTuple):
    verdict: Verdict
    interval: ProbabilityInterval


def query(c: Corpus, a: Proposition) -> QueryAnswer:
    """Categorical answer where the corpus licenses one, else the interval."""
    interval = prob_interval(c.evidence, a)
    t = c.acceptance_level
    if interval.lower > t:
        verdict = Verdict.ACCEPTED
    elif interval.upper < 1 - t:
        verdict = Verdict.REJECTED_NEGATION_ACCEPTED
    else:
        verdict = Verdict.UNKNOWN
    return QueryAnswer(verdict, interval)


@dataclass(frozen=True)
class Consistent:
    common: Proposition  # atoms belonging to every accepted proposition


@dataclass(frozen=True)
class JointlyInconsistent:
    witness: tuple[Proposition, ...]


def joint_consistency(c: Corpus) -> Consistent | JointlyInconsistent:
    """Check whether all accepted propositions share an atom.

    Accepted sets are upward closed, so an atom lies outside some accepted
    proposition exactly when its complement ``space - {atom}`` is accepted.
    This needs one test per atom instead of enumerating subsets.  The
    witness is those complements, greedily pruned while their intersection
    stays empty; it is minimal under single deletions, not globally.
    """
    space = c.space
    full = space.full_mask
    excluded = []
    common = 0
    for i in range(len(space)):
        co = Proposition(space, full ^ (1 << i))
        if _exceeds(c, co):
            excluded.append(co)
        else:
            common |= 1 << i
    if common:
        return Consistent(Proposition(space, common))
    witness = list(excluded)
    i = 0
    while i < len(witness):
        rest = witness[:i] + witness[i + 1 :]
        if reduce(operator.and_, (p.mask for p in rest), full) == 0:
            witness = rest
        else:
            i += 1
    return JointlyInconsistent(tuple(witness))


class Lottery(NamedTuple):
    corpus: Corpus
    propositions: dict[str, Proposition]


def build_lottery(n: int, t) -> Lottery:
    """Fair ``n``-ticket lottery with exactly one winner.

    Atoms ``t1..tn`` say which ticket wins.  Named propositions:
    ``wins_i``, ``loses_i``, ``some_wins`` (the full set) and ``all_lose``
    (the conjunction of every ``loses_i``, which is empty).
    """
    if not isinstance(n, int) or n < 2:
        raise InvariantError(f"a lottery needs at least 2 tickets, got {n}")
    space = WorldSpace(tuple(f"t{i}" for i in range(1, n + 1)))
    corpus = Corpus(CredalSet(space, (Distribution.uniform(space),)), t)
    full = space.full_mask
    props: dict[str, Proposition] = {}
    for i in range(1, n + 1):
        bit = 1 << (i - 1)
        props[f"wins_{i}"] = Proposition(space, bit, name=f"wins_{i}")
        props[f"loses_{i}"] = Proposition(space, full ^ bit, name=f"loses_{i}")
    props["some_wins"] = Proposition(space, full, name="some_wins")
    props["all_lose"] = Proposition(space, 0, name="all_lose")
    return Lottery(corpus, props)


def direct_inference(c: Corpus, accepted_frequency: ProbabilityInterval) -> ProbabilityInterval:
    """Probability of one trial's outcome from an accepted frequency interval.

    The caller vouches that the frequency statement is accepted in ``c``;
    the reference class is taken as given.
    """
    if not isinstance(accepted_frequency, ProbabilityInterval):
        accepted_frequency = ProbabilityInterval(*accepted_frequency)
    return ProbabilityInterval(accepted_frequency.lower, accepted_frequency.upper)


class RefusalReason(enum.Enum):
    BEYOND_SIGNIFICANCE = "BeyondSignificance"
    UNFAVORABLE_ODDS = "UnfavorableOdds"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TakeBet:
    pass


@dataclass(frozen=True)
class RefuseBet:
    reason: RefusalReason


def bet_advice(c: Corpus, event_interval: ProbabilityInterval, offered_odds) -> TakeBet | RefuseBet:
    """Advise on laying ``offered_odds``:1 on the event (risk O to win 1).

    Such a bet pays off in expectation only if P(event) > O/(O+1).  When
    that break-even probability lies above the acceptance level the bet is
    refused outright: probabilities that high carry no meaning relative to
    the evidence.  Otherwise the bet is taken iff every member of the
    evidence clears the break-even point.
    """
    o = to_fraction(offered_odds)
    if o <= 0:
        raise InvariantError(f"odds must be positive, got {o}")
    if not isinstance(event_interval, ProbabilityInterval):
        event_interval = ProbabilityInterval(*event_interval)
    required = o / (o + 1)
    if required > c.acceptance_level:
        return RefuseBet(RefusalReason.BEYOND_SIGNIFICANCE)
    if event_interval.lower > required:
        return TakeBet()
    return RefuseBet(RefusalReason.UNFAVORABLE_ODDS)
