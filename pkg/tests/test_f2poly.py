import random

import pytest

from f2squares import f2poly
from f2squares.f2linalg import BitMatrix, poly_eval
from f2squares.f2poly import (
    companion_matrix,
    degree,
    expand,
    factor,
    from_bits,
    from_human,
    irreducible_count,
    is_irreducible,
    mul,
    parse,
    to_bits,
    to_human,
)


def _irreducible_by_trial_division(f):
    d = degree(f)
    if d < 1:
        return False
    for g in range(2, 1 << (d // 2 + 1)):
        if 1 <= degree(g) <= d // 2 and f2poly.mod(f, g) == 0:
            return False
    return True


def test_companion_examples():
    assert companion_matrix(0b10, 3).to_lists() == [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
    assert companion_matrix(0b11).to_lists() == [[1]]
    assert companion_matrix(0b111).to_lists() == [[0, 1], [1, 1]]
    with pytest.raises(ValueError):
        companion_matrix(0)


def test_companion_minimal_polynomial():
    for d in range(1, 5):
        for phi in f2poly.irreducibles(d):
            for r in range(1, 12 // d + 1):
                M = companion_matrix(phi, r)
                assert M.n == d * r
                assert poly_eval(f2poly.power(phi, r), M) == BitMatrix.zero(M.n)
                # phi irreducible, so phi^(r-1) is the only maximal proper divisor
                assert poly_eval(f2poly.power(phi, r - 1), M) != BitMatrix.zero(M.n)


def test_factor_examples():
    X, X1 = 0b10, 0b11
    assert factor(from_human("X^4+X^2")) == [(X, 2), (X1, 2)]
    assert factor(0b111) == [(0b111, 1)]
    assert factor(0b1011) == [(0b1011, 1)]
    with pytest.raises(ValueError):
        factor(0)


def test_factor_exhaustive_degree_16():
    for f in range(1, 1 << 17):
        fs = factor(f)
        assert expand(fs) == f
        assert len({phi for phi, _ in fs}) == len(fs)
        for phi, e in fs:
            assert e >= 1 and is_irreducible(phi)


def test_factor_random_degree_64():
    rng = random.Random(7)
    for _ in range(200):
        f = rng.getrandbits(64) | 1 << 64
        fs = factor(f)
        assert expand(fs) == f
        assert all(is_irreducible(phi) for phi, _ in fs)


def test_factors_pass_trial_division():
    rng = random.Random(11)
    for _ in range(300):
        f = rng.getrandbits(20) | 1 << 20
        for phi, _ in factor(f):
            assert _irreducible_by_trial_division(phi)


def test_irreducible_test_matches_trial_division():
    for f in range(2, 1 << 13):
        assert is_irreducible(f) == _irreducible_by_trial_division(f), f


def test_irreducible_count_examples():
    assert irreducible_count(2, 1, True) == 2
    assert irreducible_count(2, 1, False) == 1
    assert irreducible_count(2, 2, True) == 1
    assert irreducible_count(2, 4, True) == 3
    with pytest.raises(ValueError):
        irreducible_count(2, 0)


def test_irreducible_count_exhaustive():
    for d in range(1, 13):
        assert irreducible_count(2, d) == sum(1 for f in range(1 << d, 1 << (d + 1)) if is_irreducible(f))


def test_degree_sum_identity():
    for m in range(1, 25):
        assert sum(d * irreducible_count(2, d) for d in f2poly.divisors(m)) == 2**m


def test_generic_q():
    # monic irreducible quadratics over GF(3): (9 - 3) / 2
    assert irreducible_count(3, 2) == 3
    assert irreducible_count(4, 1, include_X=False) == 3


def test_text_round_trip():
    rng = random.Random(3)
    for _ in range(200):
        f = rng.getrandbits(40)
        assert from_bits(to_bits(f)) == f
        assert from_human(to_human(f)) == f
    assert to_bits(0b11) == "11"
    assert to_bits(0b110) == "011"
    assert to_human(0b111) == "X^2+X+1"
    assert parse("X^2+X+1") == parse("111") == 0b111
    assert parse("x^3 + x + 1") == 0b1011
    with pytest.raises(ValueError):
        from_human("X^2+Y")


def test_mul_is_carryless():
    assert mul(0b11, 0b11) == 0b101
    assert mul(0b111, 0b11) == 0b1001
