"""Bases and super-rank formulas for graded pieces of free supermodules.

For a free supermodule of rank (a|b) the wedge-degree-p, symmetric-
degree-q piece has a monomial basis: dx/dt words of wedge degree p
tensored with x/t words of degree q.  The parity-split counts are what
every cohomology table in this package ultimately reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple

from skos.super_poly import GeneratorSet, SuperMonomial


class SuperDim(NamedTuple):
    """A parity-split rank (even | odd)."""

    even: int
    odd: int

    @property
    def total(self) -> int:
        return self.even + self.odd

    def __add__(self, other: "SuperDim") -> "SuperDim":  # type: ignore[override]
        return SuperDim(self.even + other.even, self.odd + other.odd)

    def flip(self, times: int = 1) -> "SuperDim":
        """Parity swap applied ``times`` times."""
        return SuperDim(self.odd, self.even) if times & 1 else self

    def __str__(self) -> str:
        return f"({self.even}|{self.odd})"


ZERO_DIM = SuperDim(0, 0)


@dataclass(frozen=True)
class FreeBasis:
    """Ordered monomial basis of one graded piece.

    Entries are pairwise distinct canonical monomials, sorted
    lexicographically on (dxs, dt_pow, x_pow, thetas) so that all
    differential matrices are reproducible bit for bit.
    """

    gens: GeneratorSet
    entries: tuple[SuperMonomial, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def dims(self) -> SuperDim:
        odd = sum(m.parity for m in self.entries)
        return SuperDim(len(self.entries) - odd, odd)

    def parity_indices(self, parity: int) -> list[int]:
        return [i for i, m in enumerate(self.entries) if m.parity == parity]

    def index(self) -> dict[SuperMonomial, int]:
        return {m: i for i, m in enumerate(self.entries)}


def _compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``slots`` nonnegative integers summing to ``total``."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def iter_sym_monomials(a: int, b: int, q: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (x_pow, thetas) with |x_pow| + |S| = q over a even / b odd slots."""
    for k in range(min(b, q) + 1):
        for thetas in combinations(range(1, b + 1), k):
            for x_pow in _compositions(q - k, a):
                yield x_pow, thetas


def iter_wedge_monomials(a: int, b: int, p: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (dxs, dt_pow) with |E| + |beta| = p over a dx / b dt slots."""
    for k in range(min(a, p) + 1):
        for dxs in combinations(range(a), k):
            for dt_pow in _compositions(p - k, b):
                yield dxs, dt_pow


def basis_wedge_sym(a: int, b: int, p: int, q: int) -> FreeBasis:
    """Monomial basis of the wedge-degree-p, symmetric-degree-q piece.

    dx_i squares to zero and dt_j has free powers, mirroring t_j / x_i
    on the symmetric side; the enumeration order is the deterministic
    lexicographic one documented on :class:`FreeBasis`.
    """
    if min(a, b, p, q) < 0:
        raise ValueError("a, b, p, q must be nonnegative")
    gens = GeneratorSet(a, b)
    entries = [
        SuperMonomial(x_pow, thetas, dxs, dt_pow)
        for dxs, dt_pow in iter_wedge_monomials(a, b, p)
        for x_pow, thetas in iter_sym_monomials(a, b, q)
    ]
    entries.sort(key=SuperMonomial.sort_key)
    return FreeBasis(gens, tuple(entries))


def binom(a: int, k: int) -> int:
    """Binomial coefficient under the conventions used throughout:

    C(a, k) = 0 whenever k < 0 or a < k != 0, and C(a, 0) = 1 for any a
    (negative upper index included).
    """
    if k < 0:
        return 0
    if k == 0:
        return 1
    if a < k:
        return 0
    return math.comb(a, k)


def wedge_rank(p: int, a: int, b: int) -> SuperDim:
    """Parity-split rank of the p-th wedge power of a rank (a|b) module.

    Closed form: sum over i of C(a, p-i) * C(b+i-1, i), split by the
    parity of i (the number of odd factors).  Nonzero for every p as
    soon as b >= 1; vanishes for p > a when b = 0.
    """
    if p < 0:
        raise ValueError("p must be nonnegative")
    even = odd = 0
    for i in range(p + 1):
        count = binom(a, p - i) * binom(b + i - 1, i)
        if i & 1:
            odd += count
        else:
            even += count
    return SuperDim(even, odd)


def sym_rank(k: int, a: int, b: int) -> SuperDim:
    """Parity-split count of x^alpha * t_S monomials of degree k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    even = odd = 0
    for i in range(min(b, k) + 1):
        j = k - i
        count = math.comb(b, i) * (math.comb(a + j - 1, j) if a > 0 else (1 if j == 0 else 0))
        if i & 1:
            odd += count
        else:
            even += count
    return SuperDim(even, odd)


def super_product(u: SuperDim, v: SuperDim) -> SuperDim:
    """Rank of a tensor product of parity-split free modules."""
    return SuperDim(u.even * v.even + u.odd * v.odd, u.even * v.odd + u.odd * v.even)
