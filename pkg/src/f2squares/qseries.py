"""Truncated power series over exact rationals or a prime field, plus CRT helpers.

The main entry point is :func:`big_product`, which evaluates
``prod_d f_d(X)^{n_d}`` for series with constant term 1 by summing the
logarithmic derivatives and solving ``F' = g F`` term by term.  Exponents
may be astronomically large (the number of irreducible polynomials of degree
70 over GF(2) has 64 bits), which rules out repeated multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod
from typing import Iterable, Sequence


class IntegrityError(RuntimeError):
    """A computation produced inconsistent data (e.g. CRT residues disagree)."""


class TruncatedSeries:
    """c_0 + c_1 X + ... + c_N X^N, arithmetic truncated at X^N.

    ``modulus=None`` means exact rational coefficients (``int`` or
    ``Fraction``); otherwise coefficients are residues modulo an odd prime.
    """

    __slots__ = ("coeffs", "order", "modulus")

    def __init__(self, coeffs: Iterable, order: int, modulus: int | None = None):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        c = list(coeffs)[: order + 1]
        c.extend([0] * (order + 1 - len(c)))
        if modulus is not None:
            c = [_to_residue(x, modulus) for x in c]
        self.coeffs = c
        self.order = order
        self.modulus = modulus

    @classmethod
    def one(cls, order: int, modulus: int | None = None) -> "TruncatedSeries":
        return cls([1], order, modulus)

    @classmethod
    def monomial(cls, coeff, k: int, order: int, modulus: int | None = None) -> "TruncatedSeries":
        """coeff * X^k."""
        c = [0] * (order + 1)
        if k <= order:
            c[k] = coeff
        return cls(c, order, modulus)

    def _new(self, coeffs) -> "TruncatedSeries":
        s = object.__new__(TruncatedSeries)
        s.coeffs = coeffs
        s.order = self.order
        s.modulus = self.modulus
        return s

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order or self.modulus != other.modulus:
            raise ValueError("series have different truncation order or coefficient domain")

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.order + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.order, self.modulus, self.coeffs) == (other.order, other.modulus, other.coeffs)

    def __repr__(self) -> str:
        dom = "QQ" if self.modulus is None else f"GF({self.modulus})"
        return f"TruncatedSeries({self.coeffs!r}, order={self.order}, domain={dom})"

    def _reduce(self, c: list) -> list:
        p = self.modulus
        return c if p is None else [x % p for x in c]

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return self._new(self._reduce([a + b for a, b in zip(self.coeffs, other.coeffs)]))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return self._new(self._reduce([a - b for a, b in zip(self.coeffs, other.coeffs)]))

    def __neg__(self) -> "TruncatedSeries":
        return self._new(self._reduce([-a for a in self.coeffs]))

    def scale(self, k) -> "TruncatedSeries":
        if self.modulus is not None:
            k = _to_residue(k, self.modulus)
        return self._new(self._reduce([k * a for a in self.coeffs]))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        N = self.order
        a, b = self.coeffs, other.coeffs
        out = [0] * (N + 1)
        bnz = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in bnz:
                if i + j > N:
                    break
                out[i + j] += x * y
        return self._new(self._reduce(out))

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e < 0:
            return self.inverse() ** (-e)
        result = TruncatedSeries.one(self.order, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "TruncatedSeries":
        """Formal derivative; the X^N coefficient of the result is 0."""
        c = self.coeffs
        out = [k * c[k] for k in range(1, self.order + 1)] + [0]
        return self._new(self._reduce(out))

    def integrate(self, constant=0) -> "TruncatedSeries":
        """Antiderivative with the given constant term, truncated at X^N."""
        c = self.coeffs
        out = [constant] + [self._div_int(c[k - 1], k) for k in range(1, self.order + 1)]
        return self._new(self._reduce(out))

    def _div_int(self, x, k: int):
        if self.modulus is None:
            return Fraction(x, k)
        if k % self.modulus == 0:
            raise ZeroDivisionError(f"cannot divide by {k} modulo {self.modulus}")
        return x * pow(k, -1, self.modulus) % self.modulus

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return self._new(_series_div(self.coeffs, other.coeffs, self.modulus))

    def inverse(self) -> "TruncatedSeries":
        return TruncatedSeries.one(self.order, self.modulus) / self

    def log_derivative(self) -> "TruncatedSeries":
        """f'/f for a series with invertible constant term."""
        return self.derivative() / self


def _to_residue(x, p: int) -> int:
    if isinstance(x, Fraction):
        return x.numerator * pow(x.denominator, -1, p) % p
    return int(x) % p


def _series_div(num: Sequence, den: Sequence, modulus: int | None) -> list:
    """Quotient num/den truncated to len(num); skips zero coefficients of den."""
    N = len(num) - 1
    c0 = den[0]
    if modulus is None:
        if c0 == 0:
            raise ZeroDivisionError("constant term of divisor is zero")
        inv0 = Fraction(1) / c0 if c0 != 1 else 1
    else:
        if c0 % modulus == 0:
            raise ZeroDivisionError("constant term of divisor is zero")
        inv0 = pow(c0, -1, modulus)
    dnz = [(j, y) for j, y in enumerate(den) if j and y]
    out = [0] * (N + 1)
    for k in range(N + 1):
        acc = num[k]
        for j, y in dnz:
            if j > k:
                break
            q = out[k - j]
            if q:
                acc -= y * q
        if modulus is None:
            out[k] = acc * inv0 if inv0 != 1 else acc
        else:
            out[k] = acc * inv0 % modulus
    return out


def big_product(factors: Sequence[tuple[TruncatedSeries, int]], order: int | None = None) -> TruncatedSeries:
    """prod f_d ** n_d truncated at ``order`` for factors with constant term 1.

    Sums g = sum n_d f_d'/f_d and solves k F_k = sum_{j=1}^{k} g_{j-1} F_{k-j}
    with F_0 = 1.
    """
    if not factors:
        raise ValueError("need at least one factor")
    first = factors[0][0]
    N = first.order if order is None else order
    p = first.modulus
    if p is not None and p <= N:
        raise ValueError(f"modulus {p} must exceed the truncation order {N}")
    g = [0] * N  # g_0 .. g_{N-1}
    for f, e in factors:
        if f.order < N or f.modulus != p:
            raise ValueError("factor has a smaller truncation order or another domain")
        if e < 0:
            raise ValueError("exponents must be nonnegative")
        c0 = f.coeffs[0]
        if c0 != 1:
            raise ValueError("factor constant term must be 1")
        if e == 0:
            continue
        c = f.coeffs[: N + 1]
        deriv = [k * c[k] for k in range(1, N + 1)]
        if not any(deriv):
            continue
        ld = _series_div(deriv, c[:N], p)
        if p is not None:
            e %= p
        for k, v in enumerate(ld):
            if v:
                g[k] += e * v
        if p is not None:
            g = [x % p for x in g]
    F = [1] + [0] * N
    gnz = [(j, y) for j, y in enumerate(g) if y]
    for k in range(1, N + 1):
        acc = 0
        for j, y in gnz:
            if j >= k:
                break
            acc += y * F[k - 1 - j]
        if p is None:
            F[k] = Fraction(acc, k) if isinstance(acc, int) else acc / k
        else:
            F[k] = acc * pow(k, -1, p) % p
    out = TruncatedSeries.one(N, p)
    out.coeffs = [int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in F]
    return out


def naive_product(factors: Sequence[tuple[TruncatedSeries, int]]) -> TruncatedSeries:
    """Oracle for big_product: repeated multiplication."""
    first = factors[0][0]
    out = TruncatedSeries.one(first.order, first.modulus)
    for f, e in factors:
        for _ in range(e):
            out = out * f
    return out


# -- Chinese remaindering -------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def multiplicative_order_exceeds(p: int, n: int) -> bool:
    """True iff p does not divide 2^k - 1 for any 1 <= k <= n."""
    x = 1
    for _ in range(n):
        x = 2 * x % p
        if x == 1:
            return False
    return True


def select_crt_primes(n: int, order: int | None = None, bound: int | None = None, extra: int = 0) -> list[int]:
    """Odd primes p > max(n, order), p not dividing 2^k - 1 for k <= n, product > bound.

    ``bound`` defaults to 2^(n^2).  Primes are taken in increasing order;
    ``extra`` further primes are appended as a redundancy check.
    """
    if n < 1:
        raise ValueError("n must be positive")
    floor = max(n, order or 0)
    if bound is None:
        bound = 1 << (n * n)
    primes = []
    total = 1
    p = floor + 1
    spare = extra
    while total <= bound or spare:
        if p > 2 and _is_prime(p) and multiplicative_order_exceeds(p, n):
            if total > bound:
                spare -= 1
            primes.append(p)
            total *= p
        p += 1
    return primes


def crt_reconstruct(residues: Sequence[int], moduli: Sequence[int], bound: int) -> int:
    """The unique x in [0, bound) with x = r_i mod p_i.

    Raises IntegrityError if the moduli cannot separate [0, bound) or the
    reconstructed value falls outside it.
    """
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli differ in length")
    if len(set(moduli)) != len(moduli):
        raise ValueError("moduli must be distinct")
    M = prod(moduli)
    if M < bound:
        raise IntegrityError(f"modulus product {M} is smaller than the bound {bound}")
    x = 0
    for r, p in zip(residues, moduli):
        Mi = M // p
        x += (r % p) * Mi * pow(Mi, -1, p)
    x %= M
    if x >= bound:
        raise IntegrityError(f"reconstructed value {x} exceeds the bound {bound}; residues inconsistent")
    return x
