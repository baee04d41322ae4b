"""Revising distributions and credal sets on evidence.

Bayesian conditioning treats the evidence as learned with certainty; Jeffrey
conditioning moves the probability of the evidence to a new value and keeps
the conditional probabilities on either side of it fixed.  Credal versions
apply the rule to every generator.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Proposition, check_space
from .credal import CredalSet, Distribution, probability
from .errors import InvariantError, ZeroProbabilityError
from .rational import to_fraction

__all__ = ["bayes_condition", "jeffrey_condition", "credal_condition", "credal_jeffrey"]


def bayes_condition(d: Distribution, e: Proposition) -> Distribution:
    """Condition ``d`` on ``e``: weights outside ``e`` drop to zero and the
    rest are renormalised.

    >>> from probinf.algebra import make_space
    >>> s = make_space("abc")
    >>> d = Distribution(s, ("3/10", "3/10", "2/5"))
    >>> bayes_condition(d, s.proposition("ab")).weights
    (Fraction(1, 2), Fraction(1, 2), Fraction(0, 1))
    """
    check_space(d.space, e.space)
    pe = probability(d, e)
    if pe == 0:
        raise ZeroProbabilityError("evidence has probability zero")
    mask = e.mask
    return Distribution(
        d.space,
        tuple(w / pe if mask >> i & 1 else Fraction(0) for i, w in enumerate(d.weights)),
    )


def jeffrey_condition(d: Distribution, e: Proposition, new_pe) -> Distribution:
    """Shift the probability of ``e`` to ``new_pe``.

    Each side of the partition {e, not e} is rescaled so that probabilities
    conditional on that side are unchanged.  A side with zero prior weight
    cannot receive positive new weight.
    """
    check_space(d.space, e.space)
    new_pe = to_fraction(new_pe)
    if not 0 <= new_pe <= 1:
        raise InvariantError(f"new probability {new_pe} outside [0, 1]")
    pe = probability(d, e)
    pne = 1 - pe
    if pe == 0 and new_pe > 0:
        raise ZeroProbabilityError("evidence has probability zero but is to receive positive weight")
    if pne == 0 and new_pe < 1:
        raise ZeroProbabilityError(
            "negated evidence has probability zero but is to receive positive weight"
        )
    inside = new_pe / pe if pe else Fraction(0)
    outside = (1 - new_pe) / pne if pne else Fraction(0)
    mask = e.mask
    return Distribution(
        d.space,
        tuple(w * (inside if mask >> i & 1 else outside) for i, w in enumerate(d.weights)),
    )


def credal_condition(k: CredalSet, e: Proposition) -> CredalSet:
    """Condition every generator that gives ``e`` positive probability.

    Generators assigning ``e`` probability zero are dropped and counted in
    ``discarded``; at least one must survive.
    """
    check_space(k.space, e.space)
    kept = [bayes_condition(g, e) for g in k.generators if probability(g, e) > 0]
    if not kept:
        raise ZeroProbabilityError("evidence has zero probability on all members")
    return CredalSet(k.space, tuple(kept), discarded=len(k.generators) - len(kept))


def credal_jeffrey(k: CredalSet, e: Proposition, new_pe) -> CredalSet:
    check_space(k.space, e.space)
    kept = []
    for g in k.generators:
        try:
            kept.append(jeffrey_condition(g, e, new_pe))
        except ZeroProbabilityError:
            continue
    if not kept:
        raise ZeroProbabilityError("Jeffrey update is undefined on all members")
    return CredalSet(k.space, tuple(kept), discarded=len(k.generators) - len(kept))
