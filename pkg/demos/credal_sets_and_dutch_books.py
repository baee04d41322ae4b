"""
Credal sets and Dutch books
===========================

Interval-valued belief from a few generator distributions, and a sure-loss
betting book against incoherent quotients.
"""

# %%
from fractions import Fraction

from probinf.algebra import make_space, parse_formula
from probinf.credal import (
    BettingQuotients,
    CredalSet,
    Distribution,
    UtilityFunction,
    bet_payoff,
    coherence_check,
    expected_utility_interval,
    prob_interval,
    probability,
)
from probinf.updating import credal_condition

space = make_space(["a", "b", "c"])
k = CredalSet.of(Distribution(space, ("1/2", "3/10", "1/5")), Distribution(space, ("1/5", "3/10", "1/2")))
a_or_b = parse_formula("a | b", space)

lo, hi = prob_interval(k, space.atom("a"))
print(f"P(a) in [{lo}, {hi}]")

# %%
post = credal_condition(k, a_or_b)
lo, hi = prob_interval(post, space.atom("a"))
print(f"P(a | a or b) in [{lo}, {hi}]")

u = UtilityFunction(space, (10, 0, -5))
print("expected utility in", tuple(str(x) for x in expected_utility_interval(k, u)))

# %%
# someone prices both a and not-a at 3/5
q = BettingQuotients.of([(space.atom("a"), Fraction(3, 5)), (~space.atom("a"), Fraction(3, 5))])
result = coherence_check(q)
print("stakes", [str(x) for x in result.stakes], "sure loss", result.guaranteed_loss)
for i, atom in enumerate(space.atoms):
    print(f"  world {atom}: net {bet_payoff(q, result.stakes, i)}")

# %%
# prices read off a real distribution can never be booked
d = Distribution(space, ("1/6", "1/3", "1/2"))
fair = BettingQuotients.of([(a_or_b, probability(d, a_or_b)), (space.atom("c"), probability(d, space.atom("c")))])
witness = coherence_check(fair).witness
print("coherent, witnessed by", [str(w) for w in witness.weights])
