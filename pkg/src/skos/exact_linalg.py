"""Exact linear algebra over Z, Q and prime fields.

All matrices carry arbitrary-precision integer entries; base change to
Q or F_p happens here, at rank-computation time.  Homology of a graded
complex is reported per parity block: free ranks always, invariant
factors of the torsion when the base is Z.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable

from skos.multilinear import SuperDim

if TYPE_CHECKING:  # pragma: no cover
    from skos.complexes import GradedComplex


# ---------------------------------------------------------------------------
# base rings

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def parse_base(base) -> tuple[str, int | None]:
    """Normalize a base-ring descriptor: "Z", "Q" or "Fp:<prime>"."""
    if isinstance(base, tuple) and len(base) == 2:
        kind, p = base
    else:
        s = str(base).strip()
        if s in ("Z", "ZZ"):
            return ("Z", None)
        if s in ("Q", "QQ"):
            return ("Q", None)
        if s.startswith("Fp:"):
            kind, p = "Fp", int(s[3:])
        else:
            raise ValueError(f"unknown base ring {base!r} (expected Z, Q or Fp:<prime>)")
    if kind in ("Z", "Q"):
        return (kind, None)
    if kind != "Fp":
        raise ValueError(f"unknown base ring {base!r}")
    if not is_prime(p):
        raise ValueError(f"composite modulus rejected: {p}")
    return ("Fp", p)


# ---------------------------------------------------------------------------
# sparse integer matrices

class ExactMatrix:
    """Sparse integer matrix in coordinate form; no explicit zeros stored."""

    __slots__ = ("rows", "cols", "_d")

    def __init__(self, rows: int, cols: int, entries: dict[tuple[int, int], int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        self._d: dict[tuple[int, int], int] = {}
        for (r, c), v in (entries or {}).items():
            self._set(r, c, v)

    def _set(self, r: int, c: int, v: int) -> None:
        if not 0 <= r < self.rows or not 0 <= c < self.cols:
            raise ValueError(f"entry ({r},{c}) outside {self.rows}x{self.cols}")
        if not isinstance(v, int):
            raise TypeError(f"integer entries required, got {type(v).__name__}")
        if v:
            self._d[(r, c)] = v

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable[tuple[int, int, int]]) -> "ExactMatrix":
        m = cls(rows, cols)
        acc: dict[tuple[int, int], int] = defaultdict(int)
        for r, c, v in triplets:
            acc[(r, c)] += v
        for (r, c), v in acc.items():
            m._set(r, c, v)
        return m

    @classmethod
    def from_dense(cls, dense: list[list[int]]) -> "ExactMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        m = cls(rows, cols)
        for r, row in enumerate(dense):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for c, v in enumerate(row):
                m._set(r, c, v)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int, scale: int = 1) -> "ExactMatrix":
        m = cls(n, n)
        for i in range(n):
            m._set(i, i, scale)
        return m

    @property
    def nnz(self) -> int:
        return len(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def get(self, r: int, c: int) -> int:
        return self._d.get((r, c), 0)

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._d.items():
            dense[r][c] = v
        return dense

    def triplets(self) -> list[tuple[int, int, int]]:
        return sorted((r, c, v) for (r, c), v in self._d.items())

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._d.items()})

    def submatrix(self, row_indices: list[int], col_indices: list[int]) -> "ExactMatrix":
        rmap = {r: i for i, r in enumerate(row_indices)}
        cmap = {c: j for j, c in enumerate(col_indices)}
        out = ExactMatrix(len(row_indices), len(col_indices))
        for (r, c), v in self._d.items():
            i = rmap.get(r)
            j = cmap.get(c)
            if i is not None and j is not None:
                out._set(i, j, v)
        return out

    def scale(self, k: int) -> "ExactMatrix":
        if k == 0:
            return ExactMatrix(self.rows, self.cols)
        return ExactMatrix(self.rows, self.cols, {rc: k * v for rc, v in self._d.items()})

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        out = dict(self._d)
        for rc, v in other._d.items():
            s = out.get(rc, 0) + v
            if s:
                out[rc] = s
            else:
                out.pop(rc, None)
        m = ExactMatrix(self.rows, self.cols)
        m._d = out
        return m

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        by_row: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for (k, c), v in other._d.items():
            by_row[k].append((c, v))
        acc: dict[tuple[int, int], int] = defaultdict(int)
        for (r, k), u in self._d.items():
            for c, v in by_row.get(k, ()):
                acc[(r, c)] += u * v
        out = ExactMatrix(self.rows, other.cols)
        for rc, v in acc.items():
            if v:
                out._d[rc] = v
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self._d == other._d

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


# ---------------------------------------------------------------------------
# Smith normal form

def _snf_dense(dense: list[list[int]], n: int, track: bool):
    """Diagonalize by unimodular row/column operations.

    ``n`` is the column count (explicit so zero-row matrices keep their
    shape).  Returns (factors, rank, T, Tinv) where A @ T has its last
    n-rank columns zero and T is unimodular; T/Tinv are None unless
    ``track``.  Pivots are chosen by minimal absolute value to keep
    coefficient growth down.
    """
    D = [row[:] for row in dense]
    m = len(D)
    T = [[int(i == j) for j in range(n)] for i in range(n)] if track else None
    Tinv = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]

    def row_addmul(src, dst, q):
        Dsrc, Ddst = D[src], D[dst]
        for k in range(n):
            Ddst[k] += q * Dsrc[k]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in T:
                row[i], row[j] = row[j], row[i]
            Tinv[i], Tinv[j] = Tinv[j], Tinv[i]

    def col_addmul(src, dst, q):
        for row in D:
            row[dst] += q * row[src]
        if track:
            for row in T:
                row[dst] += q * row[src]
            Ti, Td = Tinv[src], Tinv[dst]
            for k in range(n):
                Ti[k] -= q * Td[k]

    t = 0
    while t < min(m, n):
        # locate a minimal-absolute-value pivot in the trailing block
        pivot = None
        best = None
        for i in range(t, m):
            Di = D[i]
            for j in range(t, n):
                v = Di[j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        if pivot[0] != t:
            row_swap(t, pivot[0])
        if pivot[1] != t:
            col_swap(t, pivot[1])

        while True:
            # Euclidean sweeps on column t and row t
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, m):
                    if D[i][t]:
                        q = D[i][t] // D[t][t]
                        row_addmul(t, i, -q)
                        if D[i][t]:
                            row_swap(t, i)
                            dirty = True
                for j in range(t + 1, n):
                    if D[t][j]:
                        q = D[t][j] // D[t][t]
                        col_addmul(t, j, -q)
                        if D[t][j]:
                            col_swap(t, j)
                            dirty = True
            # enforce divisibility of the trailing block by the pivot
            pivot_val = D[t][t]
            bad = None
            for i in range(t + 1, m):
                Di = D[i]
                for j in range(t + 1, n):
                    if Di[j] % pivot_val:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(bad, t, 1)
        t += 1

    factors = []
    for i in range(t):
        v = abs(D[i][i])
        factors.append(v)
    return tuple(factors), t, T, Tinv


def smith_normal_form(M: ExactMatrix | list[list[int]]) -> tuple[tuple[int, ...], int]:
    """Invariant factors d1 | d2 | ... | dr and the rank over Q."""
    if isinstance(M, ExactMatrix):
        dense, cols = M.to_dense(), M.cols
    else:
        dense = [list(r) for r in M]
        cols = len(dense[0]) if dense else 0
    factors, rank, _, _ = _snf_dense(dense, cols, track=False)
    return factors, rank


# ---------------------------------------------------------------------------
# ranks over fields

def _rank_fractions(M: ExactMatrix) -> int:
    rows: list[dict[int, Fraction]] = []
    grouped: dict[int, dict[int, Fraction]] = defaultdict(dict)
    for (r, c), v in M._d.items():
        grouped[r][c] = Fraction(v)
    rows = [d for d in grouped.values() if d]
    rank = 0
    while rows:
        colcount: Counter = Counter()
        for row in rows:
            colcount.update(row.keys())
        prow = min(rows, key=lambda row: (len(row), min(row)))
        pc = min(prow, key=lambda c: (colcount[c], c))
        pinv = 1 / prow[pc]
        rank += 1
        nxt = []
        for row in rows:
            if row is prow:
                continue
            f = row.get(pc)
            if f is not None:
                f = f * pinv
                for c, v in prow.items():
                    nv = row.get(c, 0) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            if row:
                nxt.append(row)
        rows = nxt
    return rank


def _rank_mod_p(M: ExactMatrix, p: int) -> int:
    grouped: dict[int, dict[int, int]] = defaultdict(dict)
    for (r, c), v in M._d.items():
        vp = v % p
        if vp:
            grouped[r][c] = vp
    rows = [d for d in grouped.values() if d]
    rank = 0
    while rows:
        colcount: Counter = Counter()
        for row in rows:
            colcount.update(row.keys())
        prow = min(rows, key=lambda row: (len(row), min(row)))
        pc = min(prow, key=lambda c: (colcount[c], c))
        pinv = pow(prow[pc], -1, p)
        rank += 1
        nxt = []
        for row in rows:
            if row is prow:
                continue
            f = row.get(pc)
            if f is not None:
                f = f * pinv % p
                for c, v in prow.items():
                    nv = (row.get(c, 0) - f * v) % p
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            if row:
                nxt.append(row)
        rows = nxt
    return rank


def rank(M: ExactMatrix, base="Q") -> int:
    """Exact rank of an integer matrix over the given base's field.

    Over Z this is the rank over Q (the kernel of an integer matrix is
    a free lattice of the complementary rank).
    """
    kind, p = parse_base(base)
    if kind == "Fp":
        return _rank_mod_p(M, p)
    return _rank_fractions(M)


def kernel_rank(M: ExactMatrix, base="Q") -> int:
    """cols - rank over the base field."""
    return M.cols - rank(M, base)


# ---------------------------------------------------------------------------
# homology

@dataclass(frozen=True)
class HomologySummary:
    """Per-position homology: free ranks by parity, torsion by parity.

    Invariant factors in each torsion list divide successively and are
    all > 1.
    """

    position: int
    free: SuperDim
    torsion_even: tuple[int, ...]
    torsion_odd: tuple[int, ...]

    def to_record(self) -> dict:
        return {
            "position": self.position,
            "even_rank": self.free.even,
            "odd_rank": self.free.odd,
            "torsion_even": list(self.torsion_even),
            "torsion_odd": list(self.torsion_odd),
        }

    def __str__(self) -> str:
        return (
            f"position={self.position} free={self.free} "
            f"torsion_even={list(self.torsion_even)} torsion_odd={list(self.torsion_odd)}"
        )


def _mat_dense_mul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    n = len(A)
    k = len(B)
    m = len(B[0]) if k else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(m):
                    if Bt[j]:
                        Oi[j] += a * Bt[j]
    return out


def _block_homology_z(out_block: ExactMatrix, in_block: ExactMatrix) -> tuple[int, tuple[int, ...]]:
    """Free rank and torsion of ker(out)/im(in) over Z for one parity block."""
    dim = out_block.cols
    if dim == 0:
        return 0, ()
    _, r, _, Tinv = _snf_dense(out_block.to_dense(), dim, track=True)
    ker_dim = dim - r
    if in_block.cols == 0:
        return ker_dim, ()
    coords = _mat_dense_mul(Tinv, in_block.to_dense())
    for i in range(r):
        if any(coords[i]):
            raise ArithmeticError("image not contained in kernel: not a complex")
    X = coords[r:]
    factors, rank_x = _snf_dense(X, in_block.cols, track=False)[:2]
    torsion = tuple(f for f in factors if f > 1)
    return ker_dim - rank_x, torsion


def homology(C: "GradedComplex", base, position: int) -> HomologySummary:
    """Homology of a graded complex at one position, split by parity.

    Requires the position and both neighbors to be materialized (or
    provably zero beyond the complex's support); raises WindowError
    otherwise.  Over fields the torsion lists are empty; over Z the
    invariant factors > 1 of the incoming image inside the kernel
    lattice are reported.
    """
    kind, p = parse_base(base)
    out_m = C.outgoing(position)
    in_m = C.incoming(position)
    basis = C.basis_at[position]
    up = C.basis_at.get(position + 1)
    down = C.basis_at.get(position - 1)

    free = {}
    torsion = {}
    for parity in (0, 1):
        src = basis.parity_indices(parity)
        dst = up.parity_indices(parity) if up is not None else []
        prev = down.parity_indices(parity) if down is not None else []
        out_block = out_m.submatrix(dst, src)
        in_block = in_m.submatrix(src, prev)
        if kind == "Z":
            free[parity], torsion[parity] = _block_homology_z(out_block, in_block)
        else:
            fbase = (kind, p)
            ker = len(src) - rank(out_block, fbase)
            free[parity] = ker - rank(in_block, fbase)
            torsion[parity] = ()
    return HomologySummary(position, SuperDim(free[0], free[1]), torsion[0], torsion[1])
