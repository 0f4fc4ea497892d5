"""Supermatrices over Grassmann coefficient rings and the Berezin determinant.

The coefficient ring is Q[t1..tg] with anticommuting generators t_i and
exact rational scalars (integers embed).  An even supermatrix in block
form (X Y; Z T) is invertible exactly when the bodies of X and T are
invertible, and then

    ber(M) = det(X - Y T^-1 Z) * det(T)^-1
           = det(X) * det(T - Z X^-1 Y)^-1

both closed forms are evaluated and compared as a built-in self check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from skos.multilinear import SuperDim

Scalar = Fraction


def _merge_sign(left: tuple[int, ...], right: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    """Sorted merge of two theta index tuples with the anticommutation sign.

    Returns None when an index repeats (theta squared is zero).
    """
    if set(left) & set(right):
        return None
    sign = 1
    merged = list(left)
    for t in right:
        pos = len(merged)
        while pos > 0 and merged[pos - 1] > t:
            pos -= 1
        # t moves left across len(merged) - pos odd generators
        if (len(merged) - pos) & 1:
            sign = -sign
        merged.insert(pos, t)
    return sign, tuple(merged)


@dataclass(frozen=True)
class GrassmannElement:
    """Element of the Grassmann algebra on ``gens`` anticommuting generators.

    ``terms`` maps ascending theta index tuples to nonzero rationals;
    the body is the coefficient of the empty tuple.
    """

    gens: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def make(cls, gens: int, terms: dict[tuple[int, ...], Fraction | int]) -> "GrassmannElement":
        clean: dict[tuple[int, ...], Fraction] = {}
        for thetas, coeff in terms.items():
            thetas = tuple(thetas)
            if any(not 1 <= t <= gens for t in thetas):
                raise ValueError(f"theta index out of range in {thetas}")
            if tuple(sorted(set(thetas))) != thetas:
                raise ValueError(f"theta indices must be strictly increasing: {thetas}")
            c = Fraction(coeff)
            if c:
                clean[thetas] = clean.get(thetas, Fraction(0)) + c
        return cls(gens, tuple(sorted((k, v) for k, v in clean.items() if v)))

    @classmethod
    def scalar(cls, gens: int, value: Fraction | int) -> "GrassmannElement":
        return cls.make(gens, {(): Fraction(value)})

    @classmethod
    def zero(cls, gens: int) -> "GrassmannElement":
        return cls.make(gens, {})

    def term_map(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    @property
    def body(self) -> Fraction:
        for thetas, coeff in self.terms:
            if not thetas:
                return coeff
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements, None for mixed ones."""
        if not self.terms:
            return 0
        parities = {len(thetas) & 1 for thetas, _ in self.terms}
        return parities.pop() if len(parities) == 1 else None

    def _binary(self, other, fn) -> "GrassmannElement":
        if not isinstance(other, GrassmannElement):
            other = GrassmannElement.scalar(self.gens, other)
        if self.gens != other.gens:
            raise ValueError("mismatched Grassmann generator counts")
        out = self.term_map()
        for thetas, coeff in other.terms:
            out[thetas] = out.get(thetas, Fraction(0)) + fn(coeff)
        return GrassmannElement.make(self.gens, out)

    def __add__(self, other) -> "GrassmannElement":
        return self._binary(other, lambda c: c)

    __radd__ = __add__

    def __sub__(self, other) -> "GrassmannElement":
        return self._binary(other, lambda c: -c)

    def __neg__(self) -> "GrassmannElement":
        return GrassmannElement(self.gens, tuple((t, -c) for t, c in self.terms))

    def __mul__(self, other) -> "GrassmannElement":
        if isinstance(other, (int, Fraction)):
            return GrassmannElement.make(self.gens, {t: c * other for t, c in self.terms})
        if self.gens != other.gens:
            raise ValueError("mismatched Grassmann generator counts")
        out: dict[tuple[int, ...], Fraction] = {}
        for t1, c1 in self.terms:
            for t2, c2 in other.terms:
                merged = _merge_sign(t1, t2)
                if merged is None:
                    continue
                sign, thetas = merged
                out[thetas] = out.get(thetas, Fraction(0)) + sign * c1 * c2
        return GrassmannElement.make(self.gens, out)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for thetas, coeff in sorted(self.terms, key=lambda tc: (len(tc[0]), tc[0])):
            mono = "*".join(f"t{i}" for i in thetas)
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts)

    def to_record(self) -> list[dict]:
        return [{"coeff": str(c), "thetas": list(t)} for t, c in self.terms]


def invert_unit(u: GrassmannElement) -> GrassmannElement:
    """Exact inverse of an even unit: a finite geometric series.

    With u = body + n (n nilpotent, even), the inverse is
    body^-1 * sum_k (-n/body)^k; the sum stops at k = gens // 2 since
    every even nilpotent term carries at least two generators.
    """
    if u.parity() != 0:
        raise ValueError("only even elements can be inverted here")
    body = u.body
    if body == 0:
        raise ZeroDivisionError("zero body: not a unit")
    nil = u - GrassmannElement.scalar(u.gens, body)
    ratio = nil * (-1 / body)
    total = GrassmannElement.scalar(u.gens, 1)
    power = GrassmannElement.scalar(u.gens, 1)
    for _ in range(u.gens // 2):
        power = power * ratio
        if power.is_zero():
            break
        total = total + power
    return total * (1 / body)


Matrix = tuple[tuple[GrassmannElement, ...], ...]


def _as_matrix(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def det_even(M) -> GrassmannElement:
    """Determinant of a square matrix with even (hence commuting) entries."""
    M = _as_matrix(M)
    n = len(M)
    if n == 0:
        raise ValueError("det_even of an empty matrix is ambiguous; handle 0x0 blocks upstream")
    gens = M[0][0].gens
    for row in M:
        if len(row) != n:
            raise ValueError("det_even requires a square matrix")
        for e in row:
            if e.parity() != 0:
                raise ValueError("odd entry present in det_even")
    total = GrassmannElement.zero(gens)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        prod = GrassmannElement.scalar(gens, sign)
        for i in range(n):
            prod = prod * M[i][perm[i]]
            if prod.is_zero():
                break
        total = total + prod
    return total


def _matmul(A: Matrix, B: Matrix, gens: int) -> Matrix:
    rows = len(A)
    inner = len(B)
    cols = len(B[0]) if inner else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = GrassmannElement.zero(gens)
            for k in range(inner):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _inverse_even(M: Matrix, gens: int) -> Matrix:
    """Inverse via adjugate over the commutative even subring."""
    n = len(M)
    d_inv = invert_unit(det_even(M))
    if n == 1:
        return ((d_inv,),)
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(
                tuple(M[r][c] for c in range(n) if c != i) for r in range(n) if r != j
            )
            cof = det_even(minor)
            if (i + j) & 1:
                cof = -cof
            row.append(cof * d_inv)
        adj.append(tuple(row))
    return tuple(adj)


@dataclass(frozen=True)
class SuperMatrix:
    """Even block supermatrix (X Y; Z T) over a Grassmann coefficient ring.

    X is p x p and T is q x q with even entries; Y (p x q) and Z (q x p)
    have odd entries.
    """

    p: int
    q: int
    gens: int
    X: Matrix
    Y: Matrix
    Z: Matrix
    T: Matrix

    @classmethod
    def from_blocks(cls, p: int, q: int, gens: int, X, Y, Z, T) -> "SuperMatrix":
        X, Y, Z, T = _as_matrix(X), _as_matrix(Y), _as_matrix(Z), _as_matrix(T)
        for block, rows, cols, want in (
            (X, p, p, 0),
            (Y, p, q, 1),
            (Z, q, p, 1),
            (T, q, q, 0),
        ):
            if len(block) != rows or any(len(r) != cols for r in block):
                raise ValueError("block shape mismatch")
            for row in block:
                for e in row:
                    if e.gens != gens:
                        raise ValueError("mismatched Grassmann generator counts")
                    par = e.parity()
                    if par is not None and par != want and not e.is_zero():
                        raise ValueError(
                            f"entry parity violates even supermatrix structure: {e}"
                        )
                    if par is None:
                        raise ValueError(f"inhomogeneous entry: {e}")
        return cls(p, q, gens, X, Y, Z, T)

    @classmethod
    def identity(cls, p: int, q: int, gens: int) -> "SuperMatrix":
        one = GrassmannElement.scalar(gens, 1)
        zero = GrassmannElement.zero(gens)

        def eye(n):
            return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))

        def zeros(r, c):
            return tuple(tuple(zero for _ in range(c)) for _ in range(r))

        return cls(p, q, gens, eye(p), zeros(p, q), zeros(q, p), eye(q))

    def full_rows(self) -> Matrix:
        top = tuple(self.X[i] + self.Y[i] for i in range(self.p))
        bottom = tuple(self.Z[i] + self.T[i] for i in range(self.q))
        return top + bottom

    @classmethod
    def from_full(cls, p: int, q: int, gens: int, rows) -> "SuperMatrix":
        rows = _as_matrix(rows)
        if len(rows) != p + q or any(len(r) != p + q for r in rows):
            raise ValueError("full matrix shape mismatch")
        X = tuple(r[:p] for r in rows[:p])
        Y = tuple(r[p:] for r in rows[:p])
        Z = tuple(r[:p] for r in rows[p:])
        T = tuple(r[p:] for r in rows[p:])
        return cls.from_blocks(p, q, gens, X, Y, Z, T)

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        if (self.p, self.q, self.gens) != (other.p, other.q, other.gens):
            raise ValueError("supermatrix shape mismatch")
        prod = _matmul(self.full_rows(), other.full_rows(), self.gens)
        return SuperMatrix.from_full(self.p, self.q, self.gens, prod)

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "grassmann_gens": self.gens,
            "entries": [e.to_record() for row in self.full_rows() for e in row],
        }

    @classmethod
    def from_record(cls, record: dict) -> "SuperMatrix":
        p, q, gens = int(record["p"]), int(record["q"]), int(record["grassmann_gens"])
        flat = record["entries"]
        n = p + q
        if len(flat) != n * n:
            raise ValueError(f"expected {n * n} entries, got {len(flat)}")
        elems = []
        for entry in flat:
            terms: dict[tuple[int, ...], Fraction] = {}
            for t in entry:
                key = tuple(int(i) for i in t["thetas"])
                terms[key] = terms.get(key, Fraction(0)) + Fraction(str(t["coeff"]))
            elems.append(GrassmannElement.make(gens, terms))
        rows = tuple(tuple(elems[i * n : (i + 1) * n]) for i in range(n))
        return cls.from_full(p, q, gens, rows)


def is_invertible(M: SuperMatrix) -> bool:
    """True iff the bodies of both diagonal blocks are invertible."""
    body_ok = True
    for block, n in ((M.X, M.p), (M.T, M.q)):
        if n == 0:
            continue
        body = [[Fraction(e.body) for e in row] for row in block]
        body_ok = body_ok and _rational_det(body) != 0
    return body_ok


def _rational_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    rows = [r[:] for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col]:
                f = rows[r][col] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return det


def ber(M: SuperMatrix) -> GrassmannElement:
    """Berezin determinant of an invertible even supermatrix.

    Both closed forms are evaluated; a mismatch would indicate an
    internal arithmetic error and raises.
    """
    if not is_invertible(M):
        raise ValueError("supermatrix is not invertible (a diagonal block body is singular)")
    gens = M.gens
    one = GrassmannElement.scalar(gens, 1)
    if M.q == 0:
        return det_even(M.X) if M.p else one
    if M.p == 0:
        return invert_unit(det_even(M.T))

    T_inv = _inverse_even(M.T, gens)
    schur_x = _sub(M.X, _matmul(_matmul(M.Y, T_inv, gens), M.Z, gens), gens)
    first = det_even(schur_x) * invert_unit(det_even(M.T))

    X_inv = _inverse_even(M.X, gens)
    schur_t = _sub(M.T, _matmul(_matmul(M.Z, X_inv, gens), M.Y, gens), gens)
    second = det_even(M.X) * invert_unit(det_even(schur_t))

    if first != second:
        raise ArithmeticError("internal error: the two Berezin determinant forms disagree")
    return first


def _sub(A: Matrix, B: Matrix, gens: int) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def random_grassmann(rng, gens: int, parity: int, bound: int = 3, term_chance: float = 0.5) -> GrassmannElement:
    """Random homogeneous element with small rational coefficients."""
    from itertools import combinations

    terms: dict[tuple[int, ...], Fraction] = {}
    for size in range(parity, gens + 1, 2):
        for subset in combinations(range(1, gens + 1), size):
            if rng.random() < term_chance:
                num = rng.randint(-bound, bound)
                if num:
                    terms[subset] = Fraction(num, rng.randint(1, 2))
    return GrassmannElement.make(gens, terms)


def random_invertible_supermatrix(rng, p: int, q: int, gens: int, bound: int = 3) -> SuperMatrix:
    """Seeded random even supermatrix with invertible diagonal-block bodies."""
    while True:
        def block(rows, cols, parity):
            return [
                [random_grassmann(rng, gens, parity, bound) for _ in range(cols)]
                for _ in range(rows)
            ]

        X = block(p, p, 0)
        T = block(q, q, 0)
        for i in range(p):
            X[i][i] = X[i][i] + GrassmannElement.scalar(gens, rng.choice([1, -1, 2]))
        for i in range(q):
            T[i][i] = T[i][i] + GrassmannElement.scalar(gens, rng.choice([1, -1, 2]))
        M = SuperMatrix.from_blocks(p, q, gens, X, block(p, q, 1), block(q, p, 1), T)
        if is_invertible(M):
            return M


def berezinian_module_rank(p: int, q: int) -> tuple[SuperDim, int]:
    """Rank and homological degree of the Berezinian module of A^{p|q}.

    The dual of the contraction complex of a rank (p|q) free module has
    one-dimensional cohomology at position p: even when q is even, odd
    when q is odd.
    """
    if p < 0 or q < 0:
        raise ValueError("p, q must be nonnegative")
    return (SuperDim(1, 0) if q % 2 == 0 else SuperDim(0, 1), p)
