"""High-precision estimates of the limiting densities of squares.

If F(z) = sum c_j z^j has a simple pole at z = 1 and is otherwise analytic
in a disk of radius rho > 1, then c_j -> c_inf and |c_j - c_inf|^{-1/j} -> rho.
The last exact coefficient stands in for c_inf.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, log10

import mpmath

from f2squares.classcount import element_series, gl_order
from f2squares.partitions import ClassFamily, get_family

DEFAULT_TERMS = 70
DEFAULT_PRECISION = 4096


@dataclass(frozen=True)
class RatioSeries:
    label: str
    estimate: mpmath.mpf
    ratios: list[tuple[int, mpmath.mpf]]
    precision_bits: int

    def digits(self) -> int:
        return max(1, floor(self.precision_bits * log10(2)))

    def to_csv(self) -> str:
        """First row carries the estimate; then one ``j,ratio`` row per defined ratio."""
        nd = self.digits()
        lines = [f"estimate,{mpmath.nstr(self.estimate, nd, strip_zeros=False)}"]
        for j, r in self.ratios:
            lines.append(f"{j},{mpmath.nstr(r, 30)}")
        return "\n".join(lines) + "\n"


def coefficient_prefix(family: ClassFamily | str, ring: str, J: int) -> list[Fraction]:
    """Exact c_0..c_J of F(z) for the family's class union."""
    if J < 1:
        raise ValueError("J must be at least 1")
    F = element_series(get_family(family), ring, J)
    return [Fraction(c) for c in F.coeffs]


def _to_mpf(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


def estimate_constant(coeffs: list[Fraction], precision_bits: int = DEFAULT_PRECISION, label: str = "") -> RatioSeries:
    """Take c_J as the limit and tabulate |c_j - c_J|^{-1/j} for j = 1..J-1."""
    if precision_bits < 256:
        raise ValueError("precision_bits must be at least 256")
    coeffs = [Fraction(c) for c in coeffs]
    J = len(coeffs) - 1
    if J < 1:
        raise ValueError("need at least two coefficients")
    with mpmath.workprec(precision_bits + 16):
        est = _to_mpf(coeffs[J])
        ratios = []
        for j in range(1, J):
            diff = coeffs[j] - coeffs[J]
            if diff == 0:
                continue
            ratios.append((j, mpmath.power(abs(_to_mpf(diff)), mpmath.mpf(-1) / j)))
    with mpmath.workprec(precision_bits):
        est = +est
        ratios = [(j, +r) for j, r in ratios]
    return RatioSeries(label, est, ratios, precision_bits)


def ratio_series(ring: str, J: int = DEFAULT_TERMS, precision_bits: int = DEFAULT_PRECISION) -> RatioSeries:
    """RatioSeries for squares in Mat_n or GL_n."""
    return estimate_constant(coefficient_prefix("squares", ring, J), precision_bits, label=f"squares/{ring}")


def gamma2(precision_bits: int = 64) -> mpmath.mpf:
    """prod_{k >= 1} (1 - 2^-k), the limit of |GL_n(F_2)| / 2^(n^2)."""
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    # the tail prod_{k > K} differs from 1 by less than 2^-K
    K = precision_bits + 2
    with mpmath.workprec(precision_bits + 16):
        out = mpmath.mpf(1)
        for k in range(1, K + 1):
            out *= 1 - mpmath.ldexp(1, -k)
    with mpmath.workprec(precision_bits):
        return +out


def gamma2_partial(n: int) -> Fraction:
    """|GL_n(F_2)| / 2^(n^2), exactly."""
    return Fraction(gl_order(n), 1 << (n * n))


def normalized_count(count: int, n: int, precision_bits: int = 256) -> mpmath.mpf:
    """count / (gamma_2 * 2^(n^2))."""
    with mpmath.workprec(precision_bits):
        return mpmath.mpf(count) / (gamma2(precision_bits) * mpmath.ldexp(1, n * n))
