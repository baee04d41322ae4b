"""
The lottery paradox
===================

Accept whatever is probable enough.  Each ticket losing is probable enough,
yet the accepted statements cannot all be true together.
"""

# %%
from fractions import Fraction

from probinf.corpus import accepted_set, build_lottery, is_accepted, joint_consistency, query
from probinf.updating import credal_condition

corpus, names = build_lottery(1000, Fraction(99, 100))
answer = query(corpus, names["loses_7"])
print("ticket 7 loses:", answer.verdict, answer.interval.lower)
print("every ticket loses accepted:", all(is_accepted(corpus, names[f"loses_{i}"]) for i in range(1, 1001)))
print("some ticket wins accepted:", is_accepted(corpus, names["some_wins"]))
print("they all lose accepted:", is_accepted(corpus, names["all_lose"]))
verdict = joint_consistency(corpus)
print(type(verdict).__name__, "with", len(verdict.witness), "statements in the witness")

# %%
# a smaller lottery gives three kinds of answer
corpus, names = build_lottery(11, Fraction(9, 10))
for formula in (names["loses_3"], names["wins_3"], names["wins_3"] | names["wins_4"]):
    answer = query(corpus, formula)
    print(f"{formula.name or 'wins_3 | wins_4':16s} {answer.verdict}  [{answer.interval.lower}, {answer.interval.upper}]")

# %%
# acceptance is not monotone: learning that 3 or 4 won retracts "3 loses"
after = corpus.with_evidence(credal_condition(corpus.evidence, names["wins_3"] | names["wins_4"]))
print("before:", query(corpus, names["loses_3"]).verdict, " after:", query(after, names["loses_3"]).verdict)

# %%
small, _ = build_lottery(4, Fraction(1, 2))
print([sorted(p.labels) for p in accepted_set(small)])
