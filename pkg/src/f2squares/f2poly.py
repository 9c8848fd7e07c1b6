"""Polynomials over GF(2) packed into Python integers.

Bit i of the integer is the coefficient of X^i, so ``0b111`` is X^2 + X + 1
and ``0`` is the zero polynomial.  Python integers widen on demand, so there
is no degree cap.
"""

from __future__ import annotations

import random
import re
from functools import lru_cache

F2Poly = int

X = 0b10
X_PLUS_1 = 0b11


def degree(f: F2Poly) -> int:
    """Degree of f; -1 for the zero polynomial."""
    return f.bit_length() - 1


def mul(a: F2Poly, b: F2Poly) -> F2Poly:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def divmod_(a: F2Poly, b: F2Poly) -> tuple[F2Poly, F2Poly]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = degree(b)
    q = 0
    while a and degree(a) >= db:
        s = degree(a) - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def mod(a: F2Poly, b: F2Poly) -> F2Poly:
    return divmod_(a, b)[1]


def gcd(a: F2Poly, b: F2Poly) -> F2Poly:
    while b:
        a, b = b, mod(a, b)
    return a


def mulmod(a: F2Poly, b: F2Poly, m: F2Poly) -> F2Poly:
    return mod(mul(a, b), m)


def powmod(a: F2Poly, e: int, m: F2Poly) -> F2Poly:
    result = 1 if degree(m) > 0 else 0
    a = mod(a, m)
    while e:
        if e & 1:
            result = mulmod(result, a, m)
        a = mulmod(a, a, m)
        e >>= 1
    return result


def power(a: F2Poly, e: int) -> F2Poly:
    result = 1
    while e:
        if e & 1:
            result = mul(result, a)
        a = mul(a, a)
        e >>= 1
    return result


def derivative(f: F2Poly) -> F2Poly:
    # odd-degree terms survive, shifted down one
    return (f >> 1) & int("01" * ((f.bit_length() + 1) // 2 + 1), 2) if f else 0


def _sqrt_of_square(f: F2Poly) -> F2Poly:
    """g with g^2 == f, for f whose odd coefficients all vanish."""
    g = 0
    i = 0
    while f:
        if f & 1:
            g |= 1 << i
        f >>= 2
        i += 1
    return g


def is_irreducible(f: F2Poly) -> bool:
    """Rabin-style test: X^(2^d) = X mod f and gcd(X^(2^(d/r)) - X, f) = 1 for primes r | d."""
    d = degree(f)
    if d < 1:
        return False
    if d == 1:
        return True
    if not f & 1:
        return False
    if powmod(X, 1 << d, f) != X:
        return False
    for r in _prime_factors(d):
        h = powmod(X, 1 << (d // r), f) ^ X
        if gcd(f, h) != 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for positive integers")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    return [e for e in range(1, n + 1) if n % e == 0]


@lru_cache(maxsize=None)
def irreducible_count(q: int, d: int, include_X: bool = True) -> int:
    """Number of monic irreducible polynomials of degree d over GF(q).

    With ``include_X=False`` the polynomial X is left out of the degree-1
    count, which is what matters for invertible matrices.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    if d == 1 and not include_X:
        return q - 1
    total = sum(mobius(d // e) * q**e for e in divisors(d))
    assert total % d == 0
    return total // d


# -- factorization ----------------------------------------------------------


def squarefree_decomposition(f: F2Poly) -> list[tuple[F2Poly, int]]:
    """Pairs (g, e) with f = prod g^e, each g squarefree and the g pairwise coprime."""
    if f == 0:
        raise ValueError("cannot factor the zero polynomial")
    out: list[tuple[F2Poly, int]] = []

    def rec(f, mult):
        if degree(f) < 1:
            return
        df = derivative(f)
        if df == 0:
            rec(_sqrt_of_square(f), 2 * mult)
            return
        c = gcd(f, df)
        w = divmod_(f, c)[0]
        i = 1
        while w != 1:
            y = gcd(w, c)
            z = divmod_(w, y)[0]
            if z != 1:
                out.append((z, i * mult))
            w = y
            c = divmod_(c, y)[0]
            i += 1
        if c != 1:
            rec(_sqrt_of_square(c), 2 * mult)

    rec(f, 1)
    return out


def distinct_degree(f: F2Poly) -> list[tuple[F2Poly, int]]:
    """For squarefree f: pairs (g_d, d) where g_d is the product of the degree-d factors."""
    out = []
    h = X
    d = 0
    while degree(f) >= 2 * (d + 1):
        d += 1
        h = mulmod(h, h, f)
        g = gcd(f, h ^ X)
        if g != 1:
            out.append((g, d))
            f = divmod_(f, g)[0]
            h = mod(h, f)
    if degree(f) > 0:
        out.append((f, degree(f)))
    return out


def _equal_degree(f: F2Poly, d: int, rng: random.Random) -> list[F2Poly]:
    """Split a product of distinct degree-d irreducibles using the trace map."""
    n = degree(f)
    if n == d:
        return [f]
    while True:
        a = rng.getrandbits(n) | 1 << rng.randrange(1, n)
        a = mod(a, f)
        if degree(a) < 1:
            continue
        # T(a) = a + a^2 + ... + a^(2^(d-1)) mod f
        t = a
        s = a
        for _ in range(d - 1):
            s = mulmod(s, s, f)
            t ^= s
        g = gcd(f, t)
        if 0 < degree(g) < n:
            return _equal_degree(g, d, rng) + _equal_degree(divmod_(f, g)[0], d, rng)


def sort_key(f: F2Poly) -> tuple[int, int]:
    """Irreducibles are ordered by degree, then by coefficient bits as an integer."""
    return (degree(f), f)


def factor(f: F2Poly, seed: int = 0) -> list[tuple[F2Poly, int]]:
    """Factor f into monic irreducibles; returns sorted (phi, exponent) pairs."""
    if f == 0:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    acc: dict[F2Poly, int] = {}
    for g, e in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for phi in _equal_degree(h, d, rng):
                acc[phi] = acc.get(phi, 0) + e
    return sorted(acc.items(), key=lambda t: sort_key(t[0]))


def expand(factors) -> F2Poly:
    out = 1
    for phi, e in factors:
        out = mul(out, power(phi, e))
    return out


def irreducibles(d: int) -> list[F2Poly]:
    """All monic irreducibles of degree d, in increasing integer order."""
    return [f for f in range(1 << d, 1 << (d + 1)) if is_irreducible(f)]


# -- companion matrices ------------------------------------------------------


def companion_matrix(phi: F2Poly, r: int = 1):
    """M(phi^r): the matrix of multiplication by X mod phi^r in the basis 1, X, ...

    Ones on the superdiagonal, coefficients of phi^r in the last row.
    """
    from f2squares.f2linalg import BitMatrix

    if phi == 0 or r < 1:
        raise ValueError("companion matrix needs a nonzero polynomial and r >= 1")
    f = power(phi, r)
    m = degree(f)
    if m < 1:
        raise ValueError("companion matrix of a constant")
    rows = [1 << (i + 1) for i in range(m - 1)]
    rows.append(f & ((1 << m) - 1))
    return BitMatrix(m, rows)


# -- text forms -------------------------------------------------------------


def to_bits(f: F2Poly) -> str:
    """Binary coefficient string, lowest degree first; "0" for the zero polynomial."""
    if f == 0:
        return "0"
    return format(f, "b")[::-1]


def from_bits(s: str) -> F2Poly:
    s = s.strip()
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"not a binary coefficient string: {s!r}")
    return int(s[::-1], 2)


def to_human(f: F2Poly) -> str:
    """E.g. "X^2+X+1"; "0" for zero."""
    if f == 0:
        return "0"
    terms = []
    for i in range(degree(f), -1, -1):
        if f >> i & 1:
            terms.append("1" if i == 0 else "X" if i == 1 else f"X^{i}")
    return "+".join(terms)


_TERM = re.compile(r"^(?:(1)|X(?:\^(\d+))?)$")


def from_human(s: str) -> F2Poly:
    s = s.replace(" ", "").replace("x", "X")
    if s == "0":
        return 0
    if not s:
        raise ValueError("empty polynomial")
    f = 0
    for term in s.split("+"):
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"cannot parse term {term!r}")
        i = 0 if m.group(1) else int(m.group(2) or 1)
        f ^= 1 << i
    return f


def parse(s: str) -> F2Poly:
    """Accept either text form."""
    t = s.strip()
    if t and set(t) <= {"0", "1"}:
        return from_bits(t)
    return from_human(t)
