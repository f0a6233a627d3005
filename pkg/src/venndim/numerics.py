"""Exact arithmetic for the conjectured edge bound and its companion identities.

The bound for dimension ``m`` is ``B(m, n) = m 2^n + a_0 + a_1 n + ... +
a_{m-2} n^{m-2}``, where the coefficients are pinned by requiring
``B(m, k) = k 2^{k-1}`` for ``k = 2..m``.  Everything here stays in
:class:`fractions.Fraction` or Python integers; no floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def vandermonde_system(m: int) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Rows ``[1, k, ..., k^(m-2)]`` and right sides ``k 2^(k-1) - m 2^k`` for k = 2..m."""
    if m < 2:
        raise ValueError("dimension must be at least 2")
    ks = range(2, m + 1)
    rows = [[Fraction(k) ** j for j in range(m - 1)] for k in ks]
    rhs = [Fraction(k * 2 ** (k - 1) - m * 2**k) for k in ks]
    return rows, rhs


def solve_exact(rows, rhs, pivot_order: str = "forward") -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals.

    ``pivot_order`` picks the column sweep: ``"forward"`` eliminates columns
    left to right, ``"reverse"`` right to left.  Both must give the same
    answer; running both is a cheap self-check of the arithmetic.
    """
    n = len(rows)
    a = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    cols = list(range(n)) if pivot_order == "forward" else list(range(n - 1, -1, -1))
    used = set()
    where = {}
    for col in cols:
        piv = next((r for r in range(n) if r not in used and a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        used.add(piv)
        where[col] = piv
        p = a[piv][col]
        a[piv] = [x / p for x in a[piv]]
        for r in range(n):
            if r != piv and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[piv])]
    return [a[where[c]][n] for c in range(n)]


@dataclass(frozen=True)
class BoundTable:
    m: int
    coefficients: tuple[Fraction, ...]

    def __call__(self, n: int) -> Fraction:
        return self.m * Fraction(2) ** n + sum(a * Fraction(n) ** j for j, a in enumerate(self.coefficients))


def conj3_coefficients(m: int, pivot_order: str = "forward") -> BoundTable:
    rows, rhs = vandermonde_system(m)
    return BoundTable(m, tuple(solve_exact(rows, rhs, pivot_order)))


def conj3_bound(m: int, n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    value = conj3_coefficients(m)(n)
    if value.denominator != 1:
        raise ArithmeticError(f"B({m},{n}) = {value} is not an integer")
    return int(value)


def bound_consistency(m: int) -> bool:
    """``B(m, n) = n 2^(n-1)`` for every ``2 <= n <= m + 1``."""
    table = conj3_coefficients(m)
    return all(table(n) == n * 2 ** (n - 1) for n in range(2, m + 2))


def bareiss_det(matrix) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(map(int, r)) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class DetIdentity:
    m: int
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def det_identity_check(m: int) -> DetIdentity:
    """Compare ``det[1, k, .., k^(m-3), k 2^(k-1)]`` with ``2(m-1) det[1, k, .., k^(m-3), 2^(k-1)]``, k = 2..m."""
    if m < 3:
        raise ValueError("the identity needs m >= 3")
    ks = range(2, m + 1)
    powers = [[k**j for j in range(m - 2)] for k in ks]
    lhs = bareiss_det([p + [k * 2 ** (k - 1)] for p, k in zip(powers, ks)])
    rhs = 2 * (m - 1) * bareiss_det([p + [2 ** (k - 1)] for p, k in zip(powers, ks)])
    return DetIdentity(m, lhs, rhs)


def recurrence_edges(m: int, n: int) -> int:
    """Edge count predicted by ``e(m, n) = e(m, n-1) + e(m-1, n-1) + 2^(n-1)``.

    Bases: ``e(m, 2) = 4`` and ``e(2, n) = 2^(n+1) - 4``.
    """
    if m < 2 or n < 2:
        raise ValueError("need m >= 2 and n >= 2")
    table: dict[tuple[int, int], int] = {}
    for mm in range(2, m + 1):
        for nn in range(2, n + 1):
            if nn == 2:
                table[mm, nn] = 4
            elif mm == 2:
                table[mm, nn] = 2 ** (nn + 1) - 4
            else:
                table[mm, nn] = table[mm, nn - 1] + table[mm - 1, nn - 1] + 2 ** (nn - 1)
    return table[m, n]


def in_proven_regime(m: int, n: int) -> bool:
    """Whether ``n <= m + 1``, where the coefficients were fitted."""
    return n <= m + 1
