"""Integer partitions, the squaring map on partitions, and restricted families.

A partition is stored as a non-increasing tuple of positive parts; the empty
tuple is the empty partition.  The squaring map ``delta`` describes what
squaring a matrix over GF(2) does to the partition attached to each
irreducible polynomial:

    m_i(delta(lam)) = 2 m_{2i}(lam) + m_{2i-1}(lam) + m_{2i+1}(lam).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence


class NotASquareClass(ValueError):
    """Raised when a partition is not in the image of the squaring map."""


class Partition(tuple):
    """A non-increasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be non-increasing: {parts}")
        if parts and parts[-1] <= 0:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_multiplicities(cls, mult: Sequence[int]) -> "Partition":
        """Build the partition with ``mult[i-1]`` parts equal to ``i``."""
        parts = []
        for i in range(len(mult), 0, -1):
            m = mult[i - 1]
            if m < 0:
                raise ValueError(f"negative multiplicity {m} for part {i}")
            parts.extend([i] * m)
        return cls._trusted(parts)

    @classmethod
    def _trusted(cls, parts) -> "Partition":
        return tuple.__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def multiplicities(self) -> list[int]:
        return multiplicities(self)

    def __repr__(self) -> str:
        if not self:
            return "Partition(())"
        return f"Partition({tuple(self)})"

    def __str__(self) -> str:
        """Exponential notation, e.g. ``2 1^2`` for (2, 1, 1); ``0`` for the empty one."""
        if not self:
            return "0"
        out = []
        for i, m in reversed(list(enumerate(multiplicities(self), 1))):
            if m == 1:
                out.append(str(i))
            elif m > 1:
                out.append(f"{i}^{m}")
        return " ".join(out)


EMPTY = Partition()


def conjugate(lam: Sequence[int]) -> Partition:
    """Return lam' with lam'_j = #{i : lam_i >= j}."""
    if not lam:
        return EMPTY
    out = []
    k = len(lam)
    for j in range(1, lam[0] + 1):
        while lam[k - 1] < j:
            k -= 1
        out.append(k)
    return Partition._trusted(out)


def multiplicities(lam: Sequence[int]) -> list[int]:
    """Return [m_1, ..., m_{lam_1}] where m_i counts the parts equal to i."""
    if not lam:
        return []
    mult = [0] * lam[0]
    for p in lam:
        mult[p - 1] += 1
    return mult


def delta(lam: Sequence[int]) -> Partition:
    """Partition attached to phi in the square of a matrix with data lam at phi."""
    m = multiplicities(lam)
    top = len(m)

    def mm(i):
        return m[i - 1] if 1 <= i <= top else 0

    out = [2 * mm(2 * i) + mm(2 * i - 1) + mm(2 * i + 1) for i in range(1, (top + 1) // 2 + 1)]
    return Partition.from_multiplicities(out)


def is_in_delta_image(mu: Sequence[int]) -> bool:
    """True iff no odd part of the conjugate of mu is repeated."""
    mc = multiplicities(conjugate(mu))
    return all(mc[i] <= 1 for i in range(0, len(mc), 2))


def delta_preimage(mu: Sequence[int]) -> Partition:
    """Canonical lam with delta(lam) == mu (odd multiplicities of lam are 0 or 1).

    Raises NotASquareClass if mu is not in the image of delta.
    """
    if not is_in_delta_image(mu):
        raise NotASquareClass(f"{Partition(mu)!s} is not in the image of delta")
    if not mu:
        return EMPTY
    mc = conjugate(mu)
    m = multiplicities(mu)
    top = len(m)
    # b[k] = m_k(lam); odd slots fixed by parity of the conjugate
    b = [0] * (2 * top + 2)
    for i in range(1, top + 1):
        b[2 * i - 1] = mc[i - 1] % 2
    for i in range(1, top + 1):
        r = m[i - 1] - b[2 * i - 1] - b[2 * i + 1]
        assert r >= 0 and r % 2 == 0, (mu, i)
        b[2 * i] = r // 2
    return Partition.from_multiplicities(b[1:])


# -- partition generators ---------------------------------------------------


def partitions_of(w: int, largest: int | None = None) -> Iterator[Partition]:
    """All partitions of w with parts at most ``largest``, in reverse lexicographic order."""
    if largest is None:
        largest = w
    if w == 0:
        yield EMPTY
        return

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, cap), 0, -1):
            for tail in rec(rest - k, k):
                yield (k,) + tail

    for parts in rec(w, largest):
        yield Partition._trusted(parts)


@lru_cache(maxsize=None)
def _odd_distinct(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    # partitions of n, largest part exactly k, each odd part used at most once
    if n < k:
        return ()
    if k == 0:
        return ((),) if n == 0 else ()
    if k == 1:
        return ((1,),) if n == 1 else ()
    out = []
    top = 1 if k % 2 else n // k
    for m in range(1, top + 1):
        head = (k,) * m
        for j in range(k):
            for tail in _odd_distinct(n - m * k, j):
                out.append(head + tail)
    return tuple(out)


def odd_distinct_partitions(w: int) -> list[Partition]:
    """Partitions of w in which every odd part occurs at most once.

    Ordered by largest part ascending, then by the multiplicity of the
    largest part, then recursively on the remainder.
    """
    if w == 0:
        return [EMPTY]
    return [Partition._trusted(p) for k in range(1, w + 1) for p in _odd_distinct(w, k)]


# -- families -----------------------------------------------------------------


@dataclass(frozen=True)
class ClassFamily:
    """A set of partitions, applied uniformly to every irreducible polynomial.

    ``conjugate_cap`` is set when membership is decided independently per part
    value of the conjugate partition: a partition belongs to the family iff
    each value v occurs at most ``conjugate_cap(v)`` times in its conjugate.
    Such families admit a transfer-matrix evaluation of centralizer sums.
    """

    name: str
    contains: Callable[[Sequence[int]], bool]
    _enumerate: Callable[[int], list[Partition]]
    conjugate_cap: Callable[[int], float] | None = None

    def enumerate(self, w: int) -> list[Partition]:
        return enumerate_family(self, w)

    def __repr__(self) -> str:
        return f"ClassFamily({self.name!r})"


def _squares(w: int) -> list[Partition]:
    return [conjugate(p) for p in odd_distinct_partitions(w)]


def _semisimple(w: int) -> list[Partition]:
    return [Partition._trusted((1,) * w)]


def _separable(w: int) -> list[Partition]:
    return [Partition._trusted((1,))] if w == 1 else []


def _all(w: int) -> list[Partition]:
    return list(partitions_of(w))


SQUARES = ClassFamily(
    "squares", is_in_delta_image, _squares, conjugate_cap=lambda v: 1 if v % 2 else math.inf
)
SEMISIMPLE = ClassFamily("semisimple", lambda lam: all(p == 1 for p in lam), _semisimple)
SEPARABLE = ClassFamily("separable", lambda lam: len(lam) == 0 or tuple(lam) == (1,), _separable)
ALL = ClassFamily("all", lambda lam: True, _all, conjugate_cap=lambda v: math.inf)

FAMILIES = {f.name: f for f in (SQUARES, SEMISIMPLE, SEPARABLE, ALL)}


def get_family(family: ClassFamily | str) -> ClassFamily:
    if isinstance(family, ClassFamily):
        return family
    try:
        return FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(FAMILIES)}") from None


def enumerate_family(family: ClassFamily | str, w: int) -> list[Partition]:
    """All members of the family with weight w, each exactly once."""
    if w < 0:
        raise ValueError("weight must be nonnegative")
    family = get_family(family)
    if w == 0:
        return [EMPTY]
    return family._enumerate(w)
