from fractions import Fraction

import mpmath
import pytest

from f2squares.asymptotics import (
    coefficient_prefix,
    estimate_constant,
    gamma2,
    gamma2_partial,
    normalized_count,
    ratio_series,
)
from f2squares.classcount import count_elements

from helpers import agrees_to, significant_digits
from reference_values import ALPHA_HAT, BETA_HAT, GAMMA2


@pytest.fixture(scope="module")
def gl_series():
    return ratio_series("gl", 70, 4096)


@pytest.fixture(scope="module")
def mat_series():
    return ratio_series("mat", 70, 4096)


def test_gamma2_digits():
    assert agrees_to(gamma2(64), GAMMA2, 17)
    assert agrees_to(gamma2(256), GAMMA2, 17)
    with pytest.raises(ValueError):
        gamma2(32)


def test_gamma2_precision_is_self_consistent():
    lo, hi = gamma2(128), gamma2(1024)
    with mpmath.workprec(1024):
        assert abs(lo - hi) < mpmath.ldexp(1, -120)


def test_gamma2_partial_products():
    parts = [gamma2_partial(n) for n in range(1, 45)]
    assert all(a > b for a, b in zip(parts, parts[1:]))
    with mpmath.workprec(256):
        g = gamma2(256)
        p = parts[39]
        assert abs(mpmath.mpf(p.numerator) / p.denominator - g) < mpmath.ldexp(1, -38)


def test_coefficient_prefix_examples():
    gl = coefficient_prefix("squares", "gl", 3)
    mat = coefficient_prefix("squares", "mat", 3)
    assert gl[0] == mat[0] == 1
    assert gl[1] == 1 and mat[1] == 2
    assert gl[2] == Fraction(3, 6) and mat[2] == Fraction(10, 6)
    for fam in ("semisimple", "separable", "all"):
        assert coefficient_prefix(fam, "mat", 1)[0] == 1


def test_constant_series_guard():
    s = estimate_constant([Fraction(1)] * 6, 256)
    assert s.estimate == 1
    assert s.ratios == []
    assert s.to_csv().splitlines()[0].startswith("estimate,1.0")
    with pytest.raises(ValueError):
        estimate_constant([1, 2], 128)
    with pytest.raises(ValueError):
        estimate_constant([1], 256)


def test_estimate_is_exact_coefficient():
    coeffs = [Fraction(1), Fraction(1, 3), Fraction(2, 7)]
    s = estimate_constant(coeffs, 512)
    with mpmath.workprec(600):
        assert abs(s.estimate - mpmath.mpf(2) / 7) < mpmath.ldexp(1, -(512 - 8))
        r = mpmath.power(mpmath.mpf(1) / 3 - mpmath.mpf(2) / 7, -1)
        assert abs(s.ratios[0][1] - r) < mpmath.ldexp(1, -500)


def test_beta_hat(gl_series):
    assert agrees_to(gl_series.estimate, BETA_HAT, 15)
    assert agrees_to(gl_series.estimate, BETA_HAT, significant_digits(BETA_HAT))


def test_alpha_hat(mat_series):
    assert agrees_to(mat_series.estimate, ALPHA_HAT, 15)
    assert agrees_to(mat_series.estimate, ALPHA_HAT, significant_digits(ALPHA_HAT))


@pytest.mark.parametrize("which", ["gl", "mat"])
def test_ratio_window(which, gl_series, mat_series):
    s = gl_series if which == "gl" else mat_series
    window = {j: r for j, r in s.ratios if 60 <= j <= 69}
    assert sorted(window) == list(range(60, 70))
    assert all(1.8 <= r <= 2.1 for r in window.values())
    assert all(r > 0 for _, r in s.ratios)


def test_csv_layout(gl_series):
    lines = gl_series.to_csv().splitlines()
    assert lines[0].startswith("estimate,0.58445464286493435163")
    assert len(lines) == 1 + len(gl_series.ratios)
    j, r = lines[-1].split(",")
    assert int(j) == 69 and 1.8 < float(r) < 2.1


def test_normalized_counts_approach_beta(gl_series):
    reps = count_elements("squares", "gl", 60)
    for n in range(55, 61):
        v = normalized_count(reps[n - 1].element_count, n, 256)
        assert abs(v - gl_series.estimate) < mpmath.mpf("1e-3")
