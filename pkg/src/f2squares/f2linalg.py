"""Bit-packed GF(2) matrices and the exhaustive Gray-code census of squares.

A :class:`BitMatrix` stores row i as an integer whose bit j is entry (i, j).
For the census a whole n x n matrix is packed into one machine word with
entry (i, j) at bit ``i*n + j``.  Walking all matrices in binary-reflected
Gray-code order flips one entry per step, and the square is updated with

    (A + E_ij)^2 = A^2 + E_ij A + A E_ij (+ E_ij when i == j)

where E_ij A has row i equal to row j of A, and A E_ij has column j equal to
column i of A.  Both are a shift and a mask on the packed word.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

import numpy as np
from numba import njit


class BitMatrix:
    """An n x n matrix over GF(2); immutable."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int]):
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        limit = 1 << n
        for r in rows:
            if not 0 <= r < limit:
                raise ValueError(f"row {r:#b} does not fit in {n} columns")
        self.n = n
        self.rows = tuple(rows)

    @classmethod
    def _raw(cls, n: int, rows) -> "BitMatrix":
        m = object.__new__(cls)
        m.n = n
        m.rows = tuple(rows)
        return m

    # -- constructors ----------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls._raw(n, [1 << i for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "BitMatrix":
        return cls._raw(n, [0] * n)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BitMatrix":
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
            rows.append(sum((int(x) & 1) << j for j, x in enumerate(row)))
        return cls(n, rows)

    @classmethod
    def from_word(cls, word: int, n: int) -> "BitMatrix":
        """Inverse of :meth:`to_word`."""
        mask = (1 << n) - 1
        return cls._raw(n, [(word >> (n * i)) & mask for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[int]) -> "BitMatrix":
        """Matrix whose column j is the bit vector cols[j]."""
        n = len(cols)
        rows = [0] * n
        for j, c in enumerate(cols):
            for i in range(n):
                if c >> i & 1:
                    rows[i] |= 1 << j
        return cls(n, rows)

    @classmethod
    def random(cls, n: int, rng: random.Random | None = None) -> "BitMatrix":
        rng = rng or random
        return cls._raw(n, [rng.getrandbits(n) for _ in range(n)])

    @classmethod
    def parse(cls, text: str) -> "BitMatrix":
        """Parse n lines of n characters from {0, 1}."""
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        n = len(lines)
        if n == 0:
            raise ValueError("empty matrix text")
        rows = []
        for ln in lines:
            if len(ln) != n or set(ln) - {"0", "1"}:
                raise ValueError(f"bad matrix row {ln!r}: need {n} characters from 0/1")
            rows.append(int(ln[::-1], 2))
        return cls._raw(n, rows)

    # -- views ---------------------------------------------------------

    def to_word(self) -> int:
        return sum(r << (self.n * i) for i, r in enumerate(self.rows))

    def to_text(self) -> str:
        n = self.n
        return "".join(format(r, f"0{n}b")[::-1] + "\n" for r in self.rows) if n else ""

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.n)] for r in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i] >> j & 1

    def column(self, j: int) -> int:
        return sum((r >> j & 1) << i for i, r in enumerate(self.rows))

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.n)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"BitMatrix({self.n}, {self.to_lists()})"

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        _same_size(self, other)
        return BitMatrix._raw(self.n, [a ^ b for a, b in zip(self.rows, other.rows)])

    __sub__ = __add__

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return multiply(self, other)

    def apply(self, v: int) -> int:
        """Matrix times column vector v (bit i of v is coordinate i)."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def transpose(self) -> "BitMatrix":
        return BitMatrix._raw(self.n, self.columns())

    def square(self) -> "BitMatrix":
        return multiply(self, self)

    def __pow__(self, e: int) -> "BitMatrix":
        if e < 0:
            return inverse(self) ** (-e)
        result = BitMatrix.identity(self.n)
        base = self
        while e:
            if e & 1:
                result = multiply(result, base)
            base = multiply(base, base)
            e >>= 1
        return result

    def direct_sum(self, other: "BitMatrix") -> "BitMatrix":
        n = self.n
        return BitMatrix._raw(n + other.n, list(self.rows) + [r << n for r in other.rows])


def _same_size(a: BitMatrix, b: BitMatrix) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    _same_size(a, b)
    brows = b.rows
    out = []
    for r in a.rows:
        acc = 0
        k = 0
        while r:
            if r & 1:
                acc ^= brows[k]
            r >>= 1
            k += 1
        out.append(acc)
    return BitMatrix._raw(a.n, out)


def square(a: BitMatrix) -> BitMatrix:
    return multiply(a, a)


def direct_sum(blocks: Iterable[BitMatrix]) -> BitMatrix:
    out = BitMatrix.zero(0)
    for b in blocks:
        out = out.direct_sum(b)
    return out


def poly_eval(phi: int, a: BitMatrix) -> BitMatrix:
    """phi(A) for a GF(2) polynomial phi packed as an integer (Horner)."""
    out = BitMatrix.zero(a.n)
    ident = BitMatrix.identity(a.n)
    for i in range(phi.bit_length() - 1, -1, -1):
        out = multiply(out, a)
        if phi >> i & 1:
            out = out + ident
    return out


# -- elimination -------------------------------------------------------------


class Echelon:
    """Incrementally built basis of a subspace of GF(2)^n, pivoting on the top bit."""

    __slots__ = ("pivots",)

    def __init__(self, vectors: Iterable[int] = ()):
        self.pivots: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        pivots = self.pivots
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                return v
            v ^= p
        return 0

    def add(self, v: int) -> bool:
        """Add v; return True if it enlarged the span."""
        v = self.reduce(v)
        if v:
            self.pivots[v.bit_length() - 1] = v
            return True
        return False

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self) -> int:
        return len(self.pivots)


def rank(a: BitMatrix) -> int:
    return len(Echelon(a.rows))


def is_invertible(a: BitMatrix) -> bool:
    return rank(a) == a.n


def inverse(a: BitMatrix) -> BitMatrix:
    n = a.n
    # augmented rows: low n bits = A, high n bits = identity
    rows = [r | (1 << (n + i)) for i, r in enumerate(a.rows)]
    for col in range(n):
        piv = next((k for k in range(col, n) if rows[k] >> col & 1), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular over GF(2)")
        rows[col], rows[piv] = rows[piv], rows[col]
        for k in range(n):
            if k != col and rows[k] >> col & 1:
                rows[k] ^= rows[col]
    return BitMatrix._raw(n, [r >> n for r in rows])


def kernel(a: BitMatrix) -> list[int]:
    """Basis of {v : A v = 0} as column bit vectors."""
    n = a.n
    rows = list(a.rows)
    pivot_cols = []
    r = 0
    for col in range(n):
        piv = next((k for k in range(r, n) if rows[k] >> col & 1), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for k in range(n):
            if k != r and rows[k] >> col & 1:
                rows[k] ^= rows[r]
        pivot_cols.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for f in free:
        v = 1 << f
        for k, pc in enumerate(pivot_cols):
            if rows[k] >> f & 1:
                v |= 1 << pc
        basis.append(v)
    return basis


# -- Gray-code census -------------------------------------------------------

MAX_CENSUS_N = 5
LONG_RUN_N = 6


def gray_walk(n: int) -> Iterator[tuple[int, int]]:
    """Yield (A, A^2) as packed words for all 2^(n^2) matrices in Gray-code order.

    Pure-Python reference for the compiled census; every B is produced by
    the incremental update, never by squaring.
    """
    n2 = n * n
    row_mask = (1 << n) - 1
    col_mask = sum(1 << t for t in range(0, n2, n))
    a = b = 0
    yield a, b
    for t in range(1, 1 << n2):
        k = (t & -t).bit_length() - 1
        i, j = divmod(k, n)
        b ^= (((a >> (n * j)) & row_mask) << (n * i)) ^ (((a >> i) & col_mask) << j)
        if i == j:
            b ^= 1 << k
        a ^= 1 << k
        yield a, b


@njit(cache=True)
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True)
def _count_up(table):
    total = 0
    for i in range(table.shape[0]):
        total += _popcount64(table[i])
    return total


@njit(cache=True)
def _word_invertible(a, n, scratch):
    mask = (np.int64(1) << n) - 1
    for i in range(n):
        scratch[i] = (a >> (n * i)) & mask
    for col in range(n):
        piv = -1
        for k in range(col, n):
            if (scratch[k] >> col) & 1:
                piv = k
                break
        if piv < 0:
            return False
        tmp = scratch[col]
        scratch[col] = scratch[piv]
        scratch[piv] = tmp
        for k in range(col + 1, n):
            if (scratch[k] >> col) & 1:
                scratch[k] ^= scratch[col]
    return True


@njit(cache=True)
def _census_tables(n, track_invertible):
    n2 = n * n
    total = np.int64(1) << n2
    words = max(total >> 6, 1)
    table = np.zeros(words, dtype=np.uint64)
    inv_table = np.zeros(words if track_invertible else 1, dtype=np.uint64)
    scratch = np.zeros(n, dtype=np.int64)
    row_mask = (np.int64(1) << n) - 1
    col_mask = np.int64(0)
    for t in range(0, n2, n):
        col_mask |= np.int64(1) << t
    a = np.int64(0)
    b = np.int64(0)
    table[0] |= np.uint64(1)
    for t in range(1, total):
        k = 0
        while not (t >> k) & 1:
            k += 1
        i = k // n
        j = k - i * n
        b ^= (((a >> (n * j)) & row_mask) << (n * i)) ^ (((a >> i) & col_mask) << j)
        if i == j:
            b ^= np.int64(1) << k
        a ^= np.int64(1) << k
        bit = np.uint64(1) << np.uint64(b & 63)
        table[b >> 6] |= bit
        if track_invertible and _word_invertible(a, n, scratch):
            inv_table[b >> 6] |= bit
    return table, inv_table


def _census_kernel(n, track_invertible):
    table, inv_table = _census_tables(n, track_invertible)
    return _count_up(table), (_count_up(inv_table) if track_invertible else 0)


def gray_code_census_both(n: int, allow_long_run: bool = False) -> tuple[int, int]:
    """(distinct squares of all matrices, distinct squares of invertible matrices)."""
    _check_census_size(n, allow_long_run)
    a, b = _census_kernel(n, True)
    return int(a), int(b)


def gray_code_census(n: int, invertible_only: bool = False, allow_long_run: bool = False) -> int:
    """Number of distinct A^2 over all n x n matrices A (or over invertible A)."""
    _check_census_size(n, allow_long_run)
    a, b = _census_kernel(n, invertible_only)
    return int(b if invertible_only else a)


class SquareTable:
    """Bitset of every word that is the square of some n x n matrix (or of an invertible one)."""

    def __init__(self, n: int, allow_long_run: bool = False):
        _check_census_size(n, allow_long_run)
        self.n = n
        self._all, self._inv = _census_tables(n, True)

    def __contains__(self, a: BitMatrix) -> bool:
        return self.is_square(a)

    def is_square(self, a: BitMatrix, invertible_root: bool = False) -> bool:
        if a.n != self.n:
            raise ValueError(f"table is for n = {self.n}, got {a.n}")
        w = a.to_word()
        table = self._inv if invertible_root else self._all
        return bool((int(table[w >> 6]) >> (w & 63)) & 1)

    def __len__(self) -> int:
        return int(_count_up(self._all))


def _check_census_size(n: int, allow_long_run: bool) -> None:
    if n < 1:
        raise ValueError("census dimension must be at least 1")
    if n > LONG_RUN_N:
        raise ValueError(f"census for n = {n} is out of reach (2^{n * n} matrices)")
    if n == LONG_RUN_N and not allow_long_run:
        raise ValueError("n = 6 needs 2^36 steps and an 8 GiB table; pass allow_long_run=True")
