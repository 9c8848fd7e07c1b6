"""Centralizer orders and the class-union generating functions.

For a family S of partitions applied to every irreducible polynomial,

    F(X) = prod_d ( sum_{lam in S} X^{|lam| d} / C(lam, 2^d) )^{e_d}
    G(X) = prod_d ( sum_{lam in S} X^{|lam| d} )^{e_d}

where e_d counts the irreducibles of degree d (the polynomial X is dropped
for GL).  The coefficient of X^n in F times |GL_n(F_2)| is the number of
matrices in the union; the coefficient in G is the number of classes.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from f2squares import f2poly
from f2squares.partitions import (
    EMPTY,
    ClassFamily,
    Partition,
    conjugate,
    enumerate_family,
    get_family,
    multiplicities,
    partitions_of,
)
from f2squares.qseries import IntegrityError, TruncatedSeries, big_product, crt_reconstruct, select_crt_primes

RINGS = ("mat", "gl")
BACKENDS = ("rational", "crt")


def _ring(ring: str) -> str:
    r = ring.lower()
    if r not in RINGS:
        raise ValueError(f"ring must be one of {RINGS}, got {ring!r}")
    return r


# -- centralizers --------------------------------------------------------------


def q_pochhammer(a, q, k: int) -> Fraction:
    """(a; q)_k = prod_{j<k} (1 - a q^j), extended to k <= 0."""
    a, q = Fraction(a), Fraction(q)
    if k == 0:
        return Fraction(1)
    if k > 0:
        out = Fraction(1)
        for j in range(k):
            out *= 1 - a * q**j
        return out
    denom = q_pochhammer(a * q**k, q, -k)
    if denom == 0:
        raise ZeroDivisionError(f"(a; q)_{k} has a vanishing factor")
    return 1 / denom


def centralizer_order(lam: Sequence[int], Q) -> Fraction | int:
    """C(lam, Q) = Q^{sum lam'_i^2} prod_i (Q^{-m_i}; Q)_{m_i}; C(empty, Q) = 1."""
    if not lam:
        return 1
    Q = Fraction(Q)
    out = Q ** sum(x * x for x in conjugate(lam))
    for m in multiplicities(lam):
        if m:
            out *= q_pochhammer(Q**-m, Q, m)
    return int(out) if out.denominator == 1 else out


def _pochhammer_prod(Q: int, m: int) -> int:
    out = 1
    for j in range(1, m + 1):
        out *= Q**j - 1
    return out


def centralizer_order_int(lam: Sequence[int], Q: int) -> int:
    """Integer-only evaluation of C(lam, Q) for an integer Q >= 2."""
    if not lam:
        return 1
    mult = multiplicities(lam)
    e = sum(x * x for x in conjugate(lam)) - sum(m * (m + 1) // 2 for m in mult)
    out = Q**e
    for m in mult:
        if m:
            out *= _pochhammer_prod(Q, m)
    return out


@lru_cache(maxsize=None)
def gl_order(n: int, q: int = 2) -> int:
    """|GL_n(F_q)| = prod_{k<n} (q^n - q^k)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.prod(q**n - q**k for k in range(n))


# -- class descriptors -----------------------------------------------------------


class ClassDescriptor:
    """A conjugacy class: irreducible polynomial -> nonempty partition."""

    __slots__ = ("items",)

    def __init__(self, assignment: Mapping[int, Sequence[int]] | Sequence[tuple[int, Sequence[int]]] = ()):
        pairs = assignment.items() if isinstance(assignment, Mapping) else assignment
        acc: dict[int, Partition] = {}
        for phi, lam in pairs:
            if phi in acc:
                raise ValueError(f"polynomial {f2poly.to_human(phi)} assigned twice")
            lam = lam if isinstance(lam, Partition) else Partition(lam)
            if lam:
                acc[phi] = lam
        self.items = tuple(sorted(acc.items(), key=lambda t: f2poly.sort_key(t[0])))

    def __getitem__(self, phi: int) -> Partition:
        for p, lam in self.items:
            if p == phi:
                return lam
        return EMPTY

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassDescriptor):
            return NotImplemented
        return self.items == other.items

    def __hash__(self) -> int:
        return hash(self.items)

    def __repr__(self) -> str:
        inner = ", ".join(f"{f2poly.to_human(p)}: {tuple(lam)}" for p, lam in self.items)
        return f"ClassDescriptor({{{inner}}})"

    def __str__(self) -> str:
        return "; ".join(f"{f2poly.to_human(p)} -> {lam}" for p, lam in self.items)

    @property
    def dimension(self) -> int:
        return sum(lam.weight * f2poly.degree(p) for p, lam in self.items)

    def standard_representative(self):
        """Direct sum of M(phi^k) over phi in sort order and parts k in descending order."""
        from f2squares.f2linalg import direct_sum

        return direct_sum(f2poly.companion_matrix(p, k) for p, lam in self.items for k in lam)

    def characteristic_polynomial(self) -> int:
        return f2poly.expand((p, lam.weight) for p, lam in self.items)

    def centralizer_order(self) -> int:
        return math.prod(centralizer_order_int(lam, 2 ** f2poly.degree(p)) for p, lam in self.items)

    def class_size(self) -> int:
        return gl_order(self.dimension) // self.centralizer_order()

    def is_invertible(self) -> bool:
        return not self[f2poly.X]

    def in_family(self, family: ClassFamily | str) -> bool:
        family = get_family(family)
        return all(family.contains(lam) for _, lam in self.items)


def enumerate_descriptors(n: int) -> Iterator[ClassDescriptor]:
    """Every conjugacy class of Mat_n(F_2), once each."""
    if n == 0:
        yield ClassDescriptor()
        return
    polys = [phi for d in range(1, n + 1) for phi in f2poly.irreducibles(d)]

    def rec(idx, remaining, acc):
        if remaining == 0:
            yield ClassDescriptor(acc)
            return
        if idx == len(polys):
            return
        phi = polys[idx]
        d = f2poly.degree(phi)
        yield from rec(idx + 1, remaining, acc)
        for w in range(1, remaining // d + 1):
            for lam in partitions_of(w):
                yield from rec(idx + 1, remaining - w * d, acc + [(phi, lam)])

    yield from rec(0, n, [])


# -- per-weight centralizer sums ------------------------------------------------


@lru_cache(maxsize=None)
def _family_signatures(name: str, w: int) -> tuple[tuple[int, tuple[int, ...], int], ...]:
    # (sum of squared conjugate parts, nonzero multiplicities, how many partitions)
    acc: dict[tuple[int, tuple[int, ...]], int] = {}
    for lam in enumerate_family(name, w):
        mult = tuple(sorted(m for m in multiplicities(lam) if m))
        key = (sum(x * x for x in conjugate(lam)), mult)
        acc[key] = acc.get(key, 0) + 1
    return tuple((s, m, c) for (s, m), c in sorted(acc.items()))


@lru_cache(maxsize=None)
def family_count(name: str, w: int) -> int:
    """Number of partitions of weight w in the family."""
    family = get_family(name)
    if w == 0:
        return 1
    if family.conjugate_cap is None:
        return len(enumerate_family(family, w))
    return _capped_partition_counts(name, w)[w]


@lru_cache(maxsize=None)
def _capped_partition_counts(name: str, W: int) -> tuple[int, ...]:
    cap = get_family(name).conjugate_cap
    c = [1] + [0] * W
    for v in range(1, W + 1):
        top = min(cap(v), W // v)
        new = c[:]
        for r in range(1, int(top) + 1):
            s = r * v
            for i in range(s, W + 1):
                new[i] += c[i - s]
        c = new
    return tuple(c)


def _weight_sums_enumerated(family: ClassFamily, Q: int, W: int, modulus: int | None) -> list:
    out = [1]
    for w in range(1, W + 1):
        if modulus is None:
            num, den = 0, 1
            for s, mult, cnt in _family_signatures(family.name, w):
                c = Q ** (s - sum(m * (m + 1) // 2 for m in mult))
                for m in mult:
                    c *= _pochhammer_prod(Q, m)
                num = num * c + cnt * den
                den *= c
                g = math.gcd(num, den)
                num //= g
                den //= g
            out.append(Fraction(num, den) if den != 1 else num)
        else:
            p = modulus
            total = 0
            for s, mult, cnt in _family_signatures(family.name, w):
                c = pow(Q, s - sum(m * (m + 1) // 2 for m in mult), p)
                for m in mult:
                    c = c * (_pochhammer_prod(Q, m) % p) % p
                total += cnt * pow(c, -1, p)
            out.append(total % p)
    return out


def _weight_sums_transfer(family: ClassFamily, Q: int, W: int, modulus: int | None) -> list:
    """sum_{|lam| = w} 1/C(lam, Q) for w <= W, walking the conjugate partition.

    With nu = lam' having distinct values v_1 > ... > v_s (v_{s+1} = 0) and
    multiplicities r_k,  1/C = Q^{-sum r_k v_k^2} prod_k g(v_k - v_{k+1})  where
    g(m) = 1/prod_{j<=m} (1 - Q^{-j}).  H[v][R] sums over tails of weight R
    built from values below v, including the step down from v.
    """
    cap = family.conjugate_cap
    caps = [0] + [min(cap(v), W) for v in range(1, W + 1)]
    p = modulus
    if p is None:
        # scaled integers: every tail value times K is integral
        P = [1]
        for j in range(1, W + 1):
            P.append(P[-1] * (Q**j - 1))
        bits = Q.bit_length() - 1
        if Q != 1 << bits:
            raise ValueError("exact transfer evaluation needs Q a power of 2")
        shift_K = bits * W * W
        K = P[W] << shift_K

        def step(h, m, neg):
            # h * Q^{m(m+1)/2 - neg} / P[m]
            e = bits * (m * (m + 1) // 2 - neg)
            return (h << e) // P[m] if e >= 0 else h // (P[m] << -e)

        H = [None] * (W + 1)
        for v in range(1, W + 1):
            row = [0] * (W - v + 1)
            row[0] = step(K, v, 0)
            for R in range(1, W - v + 1):
                acc = 0
                for u in range(1, min(v - 1, R) + 1):
                    Hu = H[u]
                    for r in range(1, min(caps[u], R // u) + 1):
                        t = Hu[R - r * u]
                        if t:
                            acc += step(t, v - u, r * u * u)
                row[R] = acc
            H[v] = row
        out = [1]
        for w in range(1, W + 1):
            acc = 0
            for v in range(1, w + 1):
                for r in range(1, min(caps[v], w // v) + 1):
                    t = H[v][w - r * v]
                    e = bits * r * v * v
                    acc += t >> e
            out.append(Fraction(acc, K))
        return [int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in out]

    Qinv = pow(Q, -1, p)
    g = [1]
    prod_ = 1
    for j in range(1, W + 1):
        prod_ = prod_ * (1 - pow(Qinv, j, p)) % p
        g.append(pow(prod_, -1, p))
    qpow = {}

    def qneg(e):
        if e not in qpow:
            qpow[e] = pow(Qinv, e, p)
        return qpow[e]

    H = [None] * (W + 1)
    for v in range(1, W + 1):
        row = [0] * (W - v + 1)
        row[0] = g[v]
        for R in range(1, W - v + 1):
            acc = 0
            for u in range(1, min(v - 1, R) + 1):
                Hu = H[u]
                for r in range(1, min(caps[u], R // u) + 1):
                    t = Hu[R - r * u]
                    if t:
                        acc += t * qneg(r * u * u) % p * g[v - u]
            row[R] = acc % p
        H[v] = row
    out = [1]
    for w in range(1, W + 1):
        acc = 0
        for v in range(1, w + 1):
            for r in range(1, min(caps[v], w // v) + 1):
                acc += H[v][w - r * v] * qneg(r * v * v)
        out.append(acc % p)
    return out


def weight_sums(family: ClassFamily | str, Q: int, W: int, modulus: int | None = None, method: str = "auto") -> list:
    """[s_0, ..., s_W] with s_w = sum of 1/C(lam, Q) over family members of weight w.

    ``method`` is "transfer" (needs a per-value conjugate rule), "enumerate",
    or "auto".
    """
    family = get_family(family)
    if method == "auto":
        method = "transfer" if family.conjugate_cap is not None else "enumerate"
    if method == "transfer":
        if family.conjugate_cap is None:
            raise ValueError(f"family {family.name} has no per-value conjugate rule")
        return _weight_sums_transfer(family, Q, W, modulus)
    if method == "enumerate":
        return _weight_sums_enumerated(family, Q, W, modulus)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=256)
def _weight_sums_cached(name: str, Q: int, W: int, modulus: int | None) -> tuple:
    return tuple(weight_sums(name, Q, W, modulus))


def family_factor_series(family: ClassFamily | str, d: int, N: int, modulus: int | None = None) -> TruncatedSeries:
    """1 + sum_{w >= 1, wd <= N} (sum_{lam in S, |lam| = w} 1/C(lam, 2^d)) X^{wd}."""
    if d < 1 or N < 0:
        raise ValueError("need d >= 1 and N >= 0")
    family = get_family(family)
    W = N // d
    s = _weight_sums_cached(family.name, 2**d, W, modulus)
    c = [0] * (N + 1)
    for w in range(W + 1):
        c[w * d] = s[w]
    return TruncatedSeries(c, N, modulus)


def _exponent(ring: str, d: int) -> int:
    return f2poly.irreducible_count(2, d, include_X=(ring == "mat"))


def element_series(family: ClassFamily | str, ring: str, N: int, modulus: int | None = None) -> TruncatedSeries:
    """F(X) truncated at X^N: coefficient n is |C_n| / |GL_n(F_2)|."""
    ring = _ring(ring)
    factors = [(family_factor_series(family, d, N, modulus), _exponent(ring, d)) for d in range(1, N + 1)]
    if N == 0:
        return TruncatedSeries.one(0, modulus)
    return big_product(factors, N)


# -- reports -------------------------------------------------------------------------


@dataclass(frozen=True)
class CountReport:
    n: int
    ring: str
    family: str
    element_count: int
    class_count: int
    backend: str = "rational"

    FIELDS = ("n", "ring", "family", "element_count", "class_count")

    def csv_row(self) -> str:
        return f"{self.n},{self.ring},{self.family},{self.element_count},{self.class_count}"

    def json_line(self) -> str:
        d = asdict(self)
        d["element_count"] = str(self.element_count)
        d["class_count"] = str(self.class_count)
        return json.dumps(d, sort_keys=True)


def count_elements(family: ClassFamily | str, ring: str, N: int, backend: str = "rational") -> list[CountReport]:
    """Element and class counts of the family's class union for n = 1..N."""
    if N < 1:
        raise ValueError("N must be at least 1")
    family = get_family(family)
    ring = _ring(ring)
    if backend == "rational":
        counts = _element_counts_rational(family, ring, N)
    elif backend == "crt":
        counts = _element_counts_crt(family, ring, N)
    else:
        raise ValueError(f"backend must be one of {BACKENDS}, got {backend!r}")
    classes = count_classes(family, ring, N)
    return [
        CountReport(n, ring, family.name, counts[n - 1], classes[n - 1], backend)
        for n in range(1, N + 1)
    ]


def _element_counts_rational(family: ClassFamily, ring: str, N: int) -> list[int]:
    F = element_series(family, ring, N)
    out = []
    for n in range(1, N + 1):
        v = Fraction(F[n]) * gl_order(n)
        if v.denominator != 1 or v < 0 or v > 1 << (n * n):
            raise IntegrityError(f"element count for n = {n} is not an integer in range: {v}")
        out.append(int(v))
    return out


def _element_counts_crt(family: ClassFamily, ring: str, N: int) -> list[int]:
    # one spare prime so that an inconsistent residue set is caught by the bound
    primes = select_crt_primes(N, order=N, extra=1)
    residues = [[] for _ in range(N)]
    for p in primes:
        F = element_series(family, ring, N, modulus=p)
        for n in range(1, N + 1):
            residues[n - 1].append(F[n] * gl_order(n) % p)
    return [crt_reconstruct(residues[n - 1], primes, (1 << (n * n)) + 1) for n in range(1, N + 1)]


def count_classes(family: ClassFamily | str, ring: str, N: int) -> list[int]:
    """Number of conjugacy classes in the family's union for n = 1..N."""
    if N < 1:
        raise ValueError("N must be at least 1")
    family = get_family(family)
    ring = _ring(ring)
    factors = []
    for d in range(1, N + 1):
        c = [0] * (N + 1)
        for w in range(N // d + 1):
            c[w * d] = family_count(family.name, w)
        factors.append((TruncatedSeries(c, N), _exponent(ring, d)))
    G = big_product(factors, N)
    out = []
    for n in range(1, N + 1):
        v = Fraction(G[n])
        if v.denominator != 1:
            raise IntegrityError(f"class count for n = {n} is not an integer: {v}")
        out.append(int(v))
    return out


def _mul_binomial(c: list[int], a: int, k: int) -> None:
    # c *= (1 + a z^k)
    for i in range(len(c) - 1, k - 1, -1):
        c[i] += a * c[i - k]


def _div_binomial(c: list[int], a: int, k: int) -> None:
    # c /= (1 + a z^k)
    for i in range(k, len(c)):
        c[i] -= a * c[i - k]


def euler_product_class_counts(ring: str, N: int) -> list[int]:
    """Square-class counts from the closed-form products.

    mat: prod_n (1 - 2z^{2n}) / ((1 - 2z^n)(1 - 2z^{4n}))
    gl:  the same times prod_n (1 - z^{2n}) / (1 + z^{2n-1})
    """
    ring = _ring(ring)
    if N < 1:
        raise ValueError("N must be at least 1")
    c = [1] + [0] * N
    for n in range(1, N + 1):
        if 2 * n <= N:
            _mul_binomial(c, -2, 2 * n)
        _div_binomial(c, -2, n)
        if 4 * n <= N:
            _div_binomial(c, -2, 4 * n)
        if ring == "gl":
            if 2 * n <= N:
                _mul_binomial(c, -1, 2 * n)
            if 2 * n - 1 <= N:
                _div_binomial(c, 1, 2 * n - 1)
    return c[1:]
