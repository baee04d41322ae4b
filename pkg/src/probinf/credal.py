"""Probability functions, credal sets and betting coherence.

All arithmetic is exact (``fractions.Fraction``).  A credal set is kept as a
finite list of generator distributions standing for their convex hull; since
probability and expectation are linear in the distribution, every lower and
upper value over the hull is attained at a generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .algebra import Proposition, WorldSpace, check_space
from .errors import InvariantError, ZeroProbabilityError
from .rational import format_fraction, to_fraction
from .simplex import find_feasible, solve_lp

__all__ = [
    "Distribution",
    "CredalSet",
    "ProbabilityInterval",
    "Interval",
    "UtilityFunction",
    "BettingQuotients",
    "Coherent",
    "DutchBook",
    "probability",
    "conditional",
    "prob_interval",
    "expected_utility_interval",
    "coherence_check",
    "bet_payoff",
]


class Interval(NamedTuple):
    lower: object
    upper: object


@dataclass(frozen=True)
class Distribution:
    """Exact weights over the atoms of ``space``, non-negative and summing to 1."""

    space: WorldSpace
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        weights = tuple(to_fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if len(weights) != len(self.space):
            raise InvariantError(
                f"distribution has {len(weights)} weights for {len(self.space)} atoms"
            )
        for label, w in zip(self.space.atoms, weights):
            if w < 0:
                raise InvariantError(f"negative weight {w} on atom {label!r}")
        total = sum(weights, Fraction(0))
        if total != 1:
            raise InvariantError(f"weights sum to {total}, not 1")
        # common-denominator integer form: probabilities become integer sums
        den = math.lcm(*(w.denominator for w in weights))
        nums = tuple(w.numerator * (den // w.denominator) for w in weights)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_nums", nums)
        object.__setattr__(self, "_uniform", len(set(nums)) == 1)

    @classmethod
    def uniform(cls, space: WorldSpace) -> Distribution:
        w = Fraction(1, len(space))
        return cls(space, (w,) * len(space))

    @classmethod
    def point_mass(cls, space: WorldSpace, label: str) -> Distribution:
        i = space.index(label)
        return cls(space, tuple(Fraction(int(j == i)) for j in range(len(space))))

    @classmethod
    def from_mapping(cls, space: WorldSpace, weights: Mapping[str, object]) -> Distribution:
        """Weights keyed by atom label; unlisted atoms get 0."""
        ws = [Fraction(0)] * len(space)
        for label, w in weights.items():
            ws[space.index(label)] = to_fraction(w)
        return cls(space, tuple(ws))

    def weight(self, label: str) -> Fraction:
        return self.weights[self.space.index(label)]

    def support(self) -> Proposition:
        return self.space.from_indices(i for i, n in enumerate(self._nums) if n)

    def to_json(self) -> dict:
        return {"atoms": list(self.space.atoms), "weights": [format_fraction(w) for w in self.weights]}

    @classmethod
    def from_json(cls, data: Mapping) -> Distribution:
        space = WorldSpace.from_json(data)
        if "weights" not in data:
            raise InvariantError("distribution JSON needs a 'weights' list")
        return cls(space, tuple(data["weights"]))


def _mass(d: Distribution, a: Proposition) -> int:
    """Numerator of P(a) over the distribution's common denominator."""
    if d._uniform:
        return d._nums[0] * len(a)
    nums = d._nums
    return sum(nums[i] for i in a.members)


def probability(d: Distribution, a: Proposition) -> Fraction:
    check_space(d.space, a.space)
    return Fraction(_mass(d, a), d._den)


def conditional(d: Distribution, h: Proposition, e: Proposition) -> Fraction:
    """P(h | e) = P(h & e) / P(e)."""
    check_space(d.space, h.space, e.space)
    pe = _mass(d, e)
    if pe == 0:
        raise ZeroProbabilityError("conditioning event has probability zero")
    return Fraction(_mass(d, h & e), pe)


@dataclass(frozen=True)
class ProbabilityInterval:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        lo, hi = to_fraction(self.lower), to_fraction(self.upper)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if not 0 <= lo <= hi <= 1:
            raise InvariantError(f"need 0 <= lower <= upper <= 1, got [{lo}, {hi}]")

    def __iter__(self):
        yield self.lower
        yield self.upper

    def contains(self, p) -> bool:
        return self.lower <= p <= self.upper

    @property
    def is_degenerate(self) -> bool:
        return self.lower == self.upper

    def to_json(self) -> dict:
        return {"lower": format_fraction(self.lower), "upper": format_fraction(self.upper)}

    def __str__(self):
        return f"[{self.lower}, {self.upper}]"


@dataclass(frozen=True)
class CredalSet:
    """Convex hull of ``generators``.

    ``discarded`` counts generators dropped by an update that left them
    undefined; it is metadata and takes no part in equality.
    """

    space: WorldSpace
    generators: tuple[Distribution, ...]
    discarded: int = field(default=0, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise InvariantError("a credal set needs at least one generator")
        check_space(self.space, *(g.space for g in gens))

    @classmethod
    def of(cls, *generators: Distribution) -> CredalSet:
        return cls(generators[0].space, generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def to_json(self) -> dict:
        return {
            "atoms": list(self.space.atoms),
            "points": [[format_fraction(w) for w in g.weights] for g in self.generators],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> CredalSet:
        space = WorldSpace.from_json(data)
        points = data.get("points")
        if not isinstance(points, list):
            raise InvariantError("credal set JSON needs a 'points' list")
        return cls(space, tuple(Distribution(space, tuple(p)) for p in points))


def prob_interval(k: CredalSet, a: Proposition) -> ProbabilityInterval:
    """Lower and upper probability of ``a`` over the hull of ``k``."""
    check_space(k.space, a.space)
    values = [probability(g, a) for g in k.generators]
    return ProbabilityInterval(min(values), max(values))


@dataclass(frozen=True)
class UtilityFunction:
    space: WorldSpace
    values: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(to_fraction(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != len(self.space):
            raise InvariantError(f"utility has {len(values)} values for {len(self.space)} atoms")


def expected_utility_interval(k: CredalSet, u: UtilityFunction) -> Interval:
    check_space(k.space, u.space)
    values = [sum((w * x for w, x in zip(g.weights, u.values)), Fraction(0)) for g in k.generators]
    return Interval(min(values), max(values))


# --- coherence ------------------------------------------------------------


@dataclass(frozen=True)
class BettingQuotients:
    """Prices at which an agent will buy or sell a unit bet on each proposition."""

    space: WorldSpace
    entries: tuple[tuple[Proposition, Fraction], ...]

    def __post_init__(self):
        entries = tuple((a, to_fraction(q)) for a, q in self.entries)
        object.__setattr__(self, "entries", entries)
        for a, q in entries:
            check_space(self.space, a.space)
            if not 0 <= q <= 1:
                raise InvariantError(f"betting quotient {q} outside [0, 1]")

    @classmethod
    def of(cls, entries: Iterable[tuple[Proposition, object]]) -> BettingQuotients:
        entries = tuple(entries)
        if not entries:
            raise InvariantError("betting quotients need at least one entry")
        return cls(entries[0][0].space, entries)


@dataclass(frozen=True)
class Coherent:
    witness: Distribution


@dataclass(frozen=True)
class DutchBook:
    """Stakes ``s[i]`` (positive: buy ``s[i]`` units of the bet on entry i at
    its quotient; negative: sell) losing at least ``guaranteed_loss`` in
    every atom."""

    stakes: tuple[Fraction, ...]
    guaranteed_loss: Fraction


def bet_payoff(q: BettingQuotients, stakes: Sequence, atom: int) -> Fraction:
    """Net gain of the bettor holding ``stakes`` if ``atom`` obtains."""
    total = Fraction(0)
    for (a, price), s in zip(q.entries, stakes):
        total += s * ((a.mask >> atom & 1) - price)
    return total


def coherence_check(q: BettingQuotients) -> Coherent | DutchBook:
    """Decide whether some distribution matches every quotient exactly.

    Atoms with the same membership pattern across the entries are pooled,
    so the linear programs have at most ``min(len(space), 2**len(entries))``
    columns.  On failure the stakes come from the betting LP (the dual of the
    feasibility problem) normalised to ``|stake| <= 1``, maximising the
    sure loss.
    """
    if not q.entries:
        raise InvariantError("betting quotients need at least one entry")
    n = len(q.space)
    classes: dict[tuple[int, ...], list[int]] = {}
    for atom in range(n):
        sig = tuple(a.mask >> atom & 1 for a, _ in q.entries)
        classes.setdefault(sig, []).append(atom)
    sigs = list(classes)
    m = len(q.entries)

    A = [[1] * len(sigs)] + [[sig[j] for sig in sigs] for j in range(m)]
    b = [1] + [price for _, price in q.entries]
    x = find_feasible(A, b)
    if x is not None:
        weights = [Fraction(0)] * n
        for sig, mass in zip(sigs, x):
            atoms = classes[sig]
            for atom in atoms:
                weights[atom] = mass / len(atoms)
        return Coherent(Distribution(q.space, tuple(weights)))

    # variables: buy[m], sell[m], loss, slack[K], buy_cap[m], sell_cap[m]
    K = len(sigs)
    width = 4 * m + 1 + K
    rows, rhs = [], []
    for c, sig in enumerate(sigs):
        row = [Fraction(0)] * width
        for j, (_, price) in enumerate(q.entries):
            coef = sig[j] - price
            row[j] = coef
            row[m + j] = -coef
        row[2 * m] = Fraction(1)
        row[2 * m + 1 + c] = Fraction(1)
        rows.append(row)
        rhs.append(0)
    for j in range(m):
        for offset, cap in ((0, 2 * m + 1 + K), (m, 3 * m + 1 + K)):
            row = [Fraction(0)] * width
            row[offset + j] = Fraction(1)
            row[cap + j] = Fraction(1)
            rows.append(row)
            rhs.append(1)
    cost = [0] * width
    cost[2 * m] = -1
    res = solve_lp(cost, rows, rhs)
    assert res.status == "optimal" and res.x[2 * m] > 0, "Farkas alternative violated"
    stakes = tuple(res.x[j] - res.x[m + j] for j in range(m))
    loss = -max(bet_payoff(q, stakes, classes[sig][0]) for sig in sigs)
    return DutchBook(stakes, loss)
