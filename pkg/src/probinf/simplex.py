"""Exact two-phase simplex over ``Fraction`` with Bland's anti-cycling rule.

Solves ``minimize c @ x  subject to  A @ x == b, x >= 0``.  Problems here
are small (at most a few thousand columns, a hundred or so rows), so a dense
tableau of rationals is adequate and keeps every comparison exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPResult", "solve_lp", "find_feasible"]


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows  # list of lists of Fraction
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, col, z):
        prow = self.rows[r]
        piv = prow[col]
        if piv != 1:
            prow[:] = [a / piv for a in prow]
            self.rhs[r] /= piv
        nz = [j for j, a in enumerate(prow) if a]
        for k, row in enumerate(self.rows):
            if k == r:
                continue
            f = row[col]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                self.rhs[k] -= f * self.rhs[r]
        f = z[0][col]
        if f:
            zrow = z[0]
            for j in nz:
                zrow[j] -= f * prow[j]
            z[1] -= f * self.rhs[r]
        self.basis[r] = col

    def run(self, z, allowed):
        """Iterate to optimality under reduced-cost row ``z``; False if unbounded."""
        while True:
            zrow = z[0]
            col = next((j for j in allowed if zrow[j] < 0), None)
            if col is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], col, z)


def _phase_one(A, b):
    m = len(A)
    n = len(A[0]) if m else 0
    rows, rhs = [], []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        rows.append(row + [Fraction(int(k == i)) for k in range(m)])
        rhs.append(bi)
    tab = _Tableau(rows, rhs, list(range(n, n + m)))
    # reduced costs of the artificial objective sum(artificials)
    zrow = [-sum((rows[i][j] for i in range(m)), Fraction(0)) for j in range(n)] + [Fraction(0)] * m
    z = [zrow, -sum(rhs, Fraction(0))]
    tab.run(z, range(n))
    if -z[1] != 0:
        return None, n
    # pivot remaining artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n:
            col = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if col is None:
                del tab.rows[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, col, [[Fraction(0)] * (n + m), Fraction(0)])
        i += 1
    for row in tab.rows:
        del row[n:]
    return tab, n


def _solution(tab, n):
    x = [Fraction(0)] * n
    for i, j in enumerate(tab.basis):
        x[j] = tab.rhs[i]
    return tuple(x)


def find_feasible(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Return a basic feasible ``x >= 0`` with ``A @ x == b``, or None."""
    tab, n = _phase_one(A, b)
    if tab is None:
        return None
    return _solution(tab, n)


def solve_lp(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    tab, n = _phase_one(A, b)
    if tab is None:
        return LPResult("infeasible")
    c = [Fraction(v) for v in c]
    zrow = list(c)
    zval = Fraction(0)
    for i, j in enumerate(tab.basis):
        cb = c[j]
        if cb:
            row = tab.rows[i]
            for k in range(n):
                zrow[k] -= cb * row[k]
            zval -= cb * tab.rhs[i]
    z = [zrow, zval]
    if not tab.run(z, range(n)):
        return LPResult("unbounded")
    x = _solution(tab, n)
    return LPResult("optimal", x, sum((ci * xi for ci, xi in zip(c, x)), Fraction(0)))
