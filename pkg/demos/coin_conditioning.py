"""
Conditioning on coin tosses
===========================

Exact Bayes and Jeffrey updates on a small space of toss outcomes.
"""

# %%
from fractions import Fraction

from probinf.algebra import make_space, parse_formula
from probinf.credal import Distribution, probability
from probinf.updating import bayes_condition, jeffrey_condition

space = make_space(["HH", "HT", "TH", "TT"])
prior = Distribution.uniform(space)
first_heads = parse_formula("HH | HT", space)
second_heads = parse_formula("HH | TH", space)

print("P(second heads)              =", probability(prior, second_heads))

# %%
# learning the first toss tells us nothing about the second
post = bayes_condition(prior, first_heads)
print("P(second heads | first heads) =", probability(post, second_heads))
print("posterior weights:", [str(w) for w in post.weights])

# %%
# a glimpse through fog: first toss now looks heads with probability 3/4
foggy = jeffrey_condition(prior, first_heads, Fraction(3, 4))
print("after Jeffrey shift:", [str(w) for w in foggy.weights])
assert jeffrey_condition(prior, first_heads, 1) == post
assert jeffrey_condition(prior, first_heads, probability(prior, first_heads)) == prior

# %%
# three tosses, every sequence equally likely
three = make_space(["HHH", "HHT", "HTH", "HTT", "THH", "THT", "TTH", "TTT"])
print("P(HHH) =", probability(Distribution.uniform(three), three.atom("HHH")))
