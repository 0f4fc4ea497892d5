"""Kernel for the supercommutative bigraded polynomial algebra.

The algebra is generated, over an exact coefficient ring (arbitrary
precision integers or rationals), by four families:

    x0..x{a-1}    even polynomial generators   (weight 1, wedge degree 0)
    t1..t{b}      odd polynomial generators    (weight 1, wedge degree 0)
    dx0..dx{a-1}  differentials of the x_i     (weight 1, wedge degree 1)
    dt1..dt{b}    differentials of the t_j     (weight 1, wedge degree 1)

Two homogeneous elements of wedge degrees (p, q) and parities (s, u)
commute up to the sign (-1)**(p*q + s*u).  In particular every t_j and
every dx_i squares to zero, while x_i and dt_j admit free powers.  The
canonical written form of a monomial is

    x^alpha * t_S * dx_E * dt^beta

with the index sets S, E strictly increasing.  Every operation here is
pure and every value immutable, so everything is safe to share across
threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple
import re

# Generator kinds, ordered as written in a canonical monomial.
X, THETA, DX, DTHETA = 0, 1, 2, 3

_KIND_BY_NAME = {"x": X, "t": THETA, "dx": DX, "dt": DTHETA}
_NAME_BY_KIND = {v: k for k, v in _KIND_BY_NAME.items()}

Coeff = int | Fraction


def _lam(kind: int) -> int:
    """Wedge degree contributed by a single generator."""
    return kind >> 1


def _par(kind: int) -> int:
    """Parity contributed by a single generator."""
    return kind & 1


class GeneratorSet(NamedTuple):
    """Counts of even (x) and odd (t) polynomial generators."""

    even: int
    odd: int

    def check(self) -> None:
        if self.even < 0 or self.odd < 0:
            raise ValueError(f"negative generator count: {self}")


class SuperMonomial(NamedTuple):
    """Canonical monomial x^alpha * t_S * dx_E * dt^beta.

    ``x_pow`` and ``dt_pow`` are dense exponent tuples; ``thetas`` and
    ``dxs`` are strictly increasing index tuples (t indices start at 1,
    dx indices at 0).
    """

    x_pow: tuple[int, ...]
    thetas: tuple[int, ...]
    dxs: tuple[int, ...]
    dt_pow: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.x_pow) + len(self.thetas) + len(self.dxs) + sum(self.dt_pow)

    @property
    def wedge_degree(self) -> int:
        return len(self.dxs) + sum(self.dt_pow)

    @property
    def parity(self) -> int:
        return (len(self.thetas) + sum(self.dt_pow)) & 1

    def singles(self) -> Iterator[tuple[int, int]]:
        """Expand into single generators, in canonical order."""
        for i, e in enumerate(self.x_pow):
            for _ in range(e):
                yield (X, i)
        for j in self.thetas:
            yield (THETA, j)
        for i in self.dxs:
            yield (DX, i)
        for j, e in enumerate(self.dt_pow):
            for _ in range(e):
                yield (DTHETA, j + 1)

    def sort_key(self):
        """Deterministic basis order: lexicographic on (E, beta, alpha, S)."""
        return (self.dxs, self.dt_pow, self.x_pow, self.thetas)

    def __str__(self) -> str:
        parts = []
        for kind, idx, exp in self._grouped():
            name = f"{_NAME_BY_KIND[kind]}{idx}"
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return "*".join(parts) if parts else "1"

    def _grouped(self) -> Iterator[tuple[int, int, int]]:
        for i, e in enumerate(self.x_pow):
            if e:
                yield (X, i, e)
        for j in self.thetas:
            yield (THETA, j, 1)
        for i in self.dxs:
            yield (DX, i, 1)
        for j, e in enumerate(self.dt_pow):
            if e:
                yield (DTHETA, j + 1, e)


def _swap_sign(u: tuple[int, int], v: tuple[int, int]) -> int:
    ku, kv = u[0], v[0]
    return -1 if ((_lam(ku) & _lam(kv)) ^ (_par(ku) & _par(kv))) else 1


def _normalize_singles(
    gens: GeneratorSet, singles: list[tuple[int, int]]
) -> tuple[int, SuperMonomial] | None:
    """Sort a word of single generators into canonical form.

    Returns ``(sign, monomial)`` or ``None`` when the word vanishes
    because a square-zero generator repeats.
    """
    a, b = gens
    for kind, idx in singles:
        if kind in (X, DX):
            if not 0 <= idx < a:
                raise ValueError(f"generator index out of range: {_NAME_BY_KIND[kind]}{idx}")
        else:
            if not 1 <= idx <= b:
                raise ValueError(f"generator index out of range: {_NAME_BY_KIND[kind]}{idx}")

    arr = list(singles)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j] < arr[j - 1]:
            sign *= _swap_sign(arr[j - 1], arr[j])
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            j -= 1

    x_pow = [0] * a
    dt_pow = [0] * b
    thetas: list[int] = []
    dxs: list[int] = []
    prev = None
    for single in arr:
        kind, idx = single
        if single == prev and (_lam(kind) ^ _par(kind)):
            return None  # t_j or dx_i squared
        prev = single
        if kind == X:
            x_pow[idx] += 1
        elif kind == THETA:
            thetas.append(idx)
        elif kind == DX:
            dxs.append(idx)
        else:
            dt_pow[idx - 1] += 1
    mono = SuperMonomial(tuple(x_pow), tuple(thetas), tuple(dxs), tuple(dt_pow))
    return sign, mono


class SuperPolynomial:
    """Finite sum of canonical monomials with nonzero exact coefficients.

    Zero coefficients are never stored; the zero polynomial has an empty
    term map.  Instances are immutable.
    """

    __slots__ = ("gens", "terms")

    def __init__(self, gens: GeneratorSet, terms: dict[SuperMonomial, Coeff]):
        gens = GeneratorSet(*gens)
        gens.check()
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "terms", {m: c for m, c in terms.items() if c})

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("SuperPolynomial is immutable")

    @classmethod
    def zero(cls, gens: GeneratorSet) -> "SuperPolynomial":
        return cls(gens, {})

    @classmethod
    def one(cls, gens: GeneratorSet) -> "SuperPolynomial":
        return cls(gens, {unit_monomial(gens): 1})

    @classmethod
    def single(cls, gens: GeneratorSet, mono: SuperMonomial, coeff: Coeff = 1) -> "SuperPolynomial":
        return cls(gens, {mono: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: "SuperPolynomial") -> None:
        if self.gens != other.gens:
            raise ValueError(f"mismatched generator sets: {self.gens} vs {other.gens}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def __add__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SuperPolynomial(self.gens, out)

    def __neg__(self) -> "SuperPolynomial":
        return SuperPolynomial(self.gens, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        return self + (-other)

    def scale(self, c: Coeff) -> "SuperPolynomial":
        return SuperPolynomial(self.gens, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> "SuperPolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mul(self, other)

    __rmul__ = __mul__

    def sorted_terms(self) -> list[tuple[SuperMonomial, Coeff]]:
        return sorted(
            self.terms.items(),
            key=lambda mc: (mc[0].weight, mc[0].wedge_degree, mc[0].sort_key()),
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            ms = str(mono)
            if ms == "1":
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(ms)
            elif coeff == -1:
                parts.append(f"-{ms}")
            else:
                parts.append(f"{coeff}*{ms}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SuperPolynomial({self.gens.even},{self.gens.odd}: {self})"


def unit_monomial(gens: GeneratorSet) -> SuperMonomial:
    return SuperMonomial((0,) * gens[0], (), (), (0,) * gens[1])


Word = Iterable[tuple]


def _expand_word(word: Word) -> list[tuple[int, int]]:
    singles: list[tuple[int, int]] = []
    for factor in word:
        if len(factor) == 2:
            kind, idx = factor
            exp = 1
        else:
            kind, idx, exp = factor
        if isinstance(kind, str):
            if kind not in _KIND_BY_NAME:
                raise ValueError(f"unknown generator kind {kind!r}")
            kind = _KIND_BY_NAME[kind]
        elif kind not in (X, THETA, DX, DTHETA):
            raise ValueError(f"unknown generator kind {kind!r}")
        if exp < 0:
            raise ValueError("negative exponent in word")
        singles.extend([(kind, idx)] * exp)
    return singles


def normalize(gens: GeneratorSet, word: Word, coeff: Coeff = 1) -> SuperPolynomial:
    """Canonicalize a product of generators into a single-term polynomial.

    ``word`` is a sequence of ``(kind, index)`` or ``(kind, index, exp)``
    factors, with ``kind`` one of ``"x"``, ``"t"``, ``"dx"``, ``"dt"``
    (or the numeric constants).  The result is ``+-coeff`` times the
    canonical monomial, or zero when a square-zero generator repeats.
    """
    gens = GeneratorSet(*gens)
    res = _normalize_singles(gens, _expand_word(word))
    if res is None or coeff == 0:
        return SuperPolynomial.zero(gens)
    sign, mono = res
    return SuperPolynomial.single(gens, mono, sign * coeff)


def mul(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """Supercommutative product, bilinear over the term maps."""
    f._check_compatible(g)
    out: dict[SuperMonomial, Coeff] = {}
    for m1, c1 in f.terms.items():
        s1 = list(m1.singles())
        for m2, c2 in g.terms.items():
            res = _normalize_singles(f.gens, s1 + list(m2.singles()))
            if res is None:
                continue
            sign, mono = res
            out[mono] = out.get(mono, 0) + sign * c1 * c2
    return SuperPolynomial(f.gens, out)


def _antiderivation(f: SuperPolynomial, source_kinds: tuple[int, int], shift: int) -> SuperPolynomial:
    """Apply the degree +-1 antiderivation replacing one generator per term.

    The Leibniz sign for skipping a prefix is (-1)**(wedge degree of the
    prefix); ``shift`` maps a generator kind to its replacement kind.
    """
    out: dict[SuperMonomial, Coeff] = {}
    for mono, coeff in f.terms.items():
        singles = list(mono.singles())
        prefix_wedge = 0
        for j, (kind, idx) in enumerate(singles):
            if kind in source_kinds:
                word = singles[:j] + [(kind + shift, idx)] + singles[j + 1 :]
                res = _normalize_singles(f.gens, word)
                if res is not None:
                    sign, new_mono = res
                    if prefix_wedge & 1:
                        sign = -sign
                    out[new_mono] = out.get(new_mono, 0) + sign * coeff
            prefix_wedge += _lam(kind)
    return SuperPolynomial(f.gens, out)


def contract_euler(f: SuperPolynomial) -> SuperPolynomial:
    """Interior product with the Euler field: dx_i -> x_i, dt_j -> t_j.

    B-linear antiderivation of wedge degree -1; preserves weight and
    parity, squares to zero.
    """
    return _antiderivation(f, (DX, DTHETA), -2)


def exterior_d(f: SuperPolynomial) -> SuperPolynomial:
    """Exterior differential: x_i -> dx_i, t_j -> dt_j.

    A-linear antiderivation of wedge degree +1; preserves weight and
    parity, squares to zero.  Together with :func:`contract_euler` it
    satisfies the Cartan identity: on weight-n elements the
    anticommutator is multiplication by n.
    """
    return _antiderivation(f, (X, THETA), 2)


def weight_component(f: SuperPolynomial, weight: int, wedge_degree: int) -> SuperPolynomial:
    """Project onto the terms of the given weight and wedge degree."""
    return SuperPolynomial(
        f.gens,
        {
            m: c
            for m, c in f.terms.items()
            if m.weight == weight and m.wedge_degree == wedge_degree
        },
    )


_FACTOR_RE = re.compile(r"^(x|t|dx|dt)(\d+)(?:\^(\d+))?$")
_NUM_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_monomial(gens: GeneratorSet, text: str) -> SuperMonomial:
    """Parse a bare monomial string such as ``x0^2*t1*dx0``."""
    poly = parse_poly(gens, text)
    if len(poly.terms) != 1:
        raise ValueError(f"not a single monomial: {text!r}")
    ((mono, coeff),) = poly.terms.items()
    if coeff != 1:
        raise ValueError(f"not a bare monomial: {text!r}")
    return mono


def parse_poly(gens: GeneratorSet, text: str) -> SuperPolynomial:
    """Parse the textual polynomial format.

    Terms are joined by ``+``; each term is a ``*``-separated product of
    an optional rational coefficient and generator powers, e.g.
    ``-3*x0^2*t1*dx0*dt2^3``.  Generators may appear in any order; the
    result is normalized.
    """
    gens = GeneratorSet(*gens)
    text = text.strip()
    if text == "0" or not text:
        return SuperPolynomial.zero(gens)
    total = SuperPolynomial.zero(gens)
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty term in {text!r}")
        coeff: Coeff = 1
        if chunk.startswith("-") and not _NUM_RE.match(chunk.split("*", 1)[0]):
            coeff = -1
            chunk = chunk[1:].strip()
        word = []
        for factor in chunk.split("*"):
            factor = factor.strip()
            if _NUM_RE.match(factor):
                q = Fraction(factor)
                coeff = coeff * (int(q) if q.denominator == 1 else q)
                continue
            m = _FACTOR_RE.match(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r}")
            kind, idx, exp = m.group(1), int(m.group(2)), int(m.group(3) or 1)
            word.append((kind, idx, exp))
        total = total + normalize(gens, word, coeff)
    return total
