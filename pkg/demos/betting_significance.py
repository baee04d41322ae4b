"""
How long may the odds get?
==========================

Probabilities finer than the acceptance level carry no meaning, so neither
do bets that would hinge on them.
"""

# %%
from fractions import Fraction

from probinf.algebra import make_space
from probinf.corpus import Corpus, StakesContext, bet_advice, direct_inference, max_meaningful_odds, threshold_from_stakes
from probinf.credal import CredalSet, Distribution, ProbabilityInterval

space = make_space(["x"])
corpus = Corpus(CredalSet.of(Distribution.uniform(space)), Fraction(99, 100))
print("longest meaningful odds:", max_meaningful_odds(corpus))
print("level for stakes of 10:1:", threshold_from_stakes(StakesContext(10)))

# %%
# the coin lands heads with a frequency we accept to lie in [0.48, 0.52]
heads = direct_inference(corpus, ProbabilityInterval(Fraction(12, 25), Fraction(13, 25)))
event = ProbabilityInterval(1 - heads.upper**12, 1 - heads.lower**12)
print(f"P(no run of 12 heads) in [{float(event.lower):.6f}, {float(event.upper):.6f}]")

for odds in (10, 99, 1000):
    print(f"laying {odds}:1 ->", bet_advice(corpus, event, odds))
