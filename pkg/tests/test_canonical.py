import random
from collections import Counter

import pytest

from f2squares import f2poly
from f2squares.canonical import (
    NotASquareError,
    descriptor,
    is_square,
    is_square_class,
    minimal_polynomial,
    rcf,
    sqrt,
    square_class,
    square_witness,
)
from f2squares.classcount import ClassDescriptor, enumerate_descriptors
from f2squares.f2linalg import BitMatrix, SquareTable, inverse, is_invertible, square
from f2squares.f2poly import companion_matrix

X, X1, PHI2 = 0b10, 0b11, 0b111


def _random_invertible(n, rng):
    while True:
        p = BitMatrix.random(n, rng)
        if is_invertible(p):
            return p


def _all_matrices(n):
    return [BitMatrix.from_word(w, n) for w in range(1 << (n * n))]


def test_rcf_examples():
    for n in range(1, 6):
        assert rcf(BitMatrix.identity(n)).descriptor == ClassDescriptor({X1: (1,) * n})
        assert rcf(BitMatrix.zero(n)).descriptor == ClassDescriptor({X: (1,) * n})
    assert rcf(BitMatrix.from_lists([[0, 1], [1, 1]])).descriptor == ClassDescriptor({PHI2: (1,)})


def test_rcf_transform_is_valid():
    rng = random.Random(0)
    for n in range(1, 11):
        for _ in range(30):
            a = BitMatrix.random(n, rng)
            dec = rcf(a)
            U = dec.transform
            assert U @ dec.standard @ inverse(U) == a
            assert dec.standard == dec.descriptor.standard_representative()
            assert dec.descriptor == descriptor(a)
            assert dec.descriptor.dimension == n
            assert f2poly.mod(
                dec.descriptor.characteristic_polynomial(), minimal_polynomial(a)
            ) == 0


def test_similarity_soundness():
    rng = random.Random(1)
    for n in range(1, 9):
        for _ in range(40):
            a = BitMatrix.random(n, rng)
            p = _random_invertible(n, rng)
            assert descriptor(p @ a @ inverse(p)) == descriptor(a)


def test_standard_representative_round_trip():
    for n in range(1, 7):
        for d in enumerate_descriptors(n):
            assert rcf(d.standard_representative()).descriptor == d
            assert descriptor(d.standard_representative()) == d


def test_square_class_examples():
    assert square_class(ClassDescriptor({X: (2,)})) == ClassDescriptor({X: (1, 1)})
    ident = ClassDescriptor({X1: (1,) * 4})
    assert square_class(ident) == ident
    assert square_class(ClassDescriptor({PHI2: (3,)})) == ClassDescriptor({PHI2: (2, 1)})
    S = companion_matrix(PHI2, 3)
    assert descriptor(square(S)) == ClassDescriptor({PHI2: (2, 1)})


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_squaring_consistency_exhaustive(n):
    for a in _all_matrices(n):
        assert descriptor(square(a)) == square_class(descriptor(a))


def test_squaring_consistency_random():
    rng = random.Random(2)
    for n in range(5, 11):
        for _ in range(100):
            a = BitMatrix.random(n, rng)
            assert descriptor(square(a)) == square_class(descriptor(a))


def test_is_square_examples():
    assert not is_square(companion_matrix(X, 2))
    assert square_witness(descriptor(companion_matrix(X, 2))) == (X, (2,))
    for n in range(1, 6):
        assert is_square(BitMatrix.identity(n))
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 8)
        diag = BitMatrix.from_lists([[rng.randint(0, 1) if i == j else 0 for j in range(n)] for i in range(n)])
        assert is_square(diag)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_is_square_brute_force(n):
    image = {square(a) for a in _all_matrices(n)}
    for a in _all_matrices(n):
        assert is_square(a) == (a in image)


def test_is_square_random_n5_against_census_table():
    table = SquareTable(5)
    rng = random.Random(4)
    outcomes = Counter()
    for _ in range(10_000):
        a = BitMatrix.random(5, rng)
        got = is_square(a)
        assert got == (a in table)
        outcomes[got] += 1
    assert outcomes[True] > 1000 and outcomes[False] > 1000
    assert len(table) == 13711952


def test_sqrt_examples():
    for n in range(1, 6):
        b = sqrt(BitMatrix.identity(n))
        assert square(b) == BitMatrix.identity(n)
    a = BitMatrix.zero(2)  # class {X -> 1^2}
    b = sqrt(a)
    assert square(b) == a and descriptor(b) == ClassDescriptor({X: (2,)})
    with pytest.raises(NotASquareError) as info:
        sqrt(companion_matrix(X, 2))
    assert info.value.phi == X and info.value.partition == (2,)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sqrt_exhaustive(n):
    for a in _all_matrices(n):
        if is_square(a):
            b = sqrt(a)
            assert square(b) == a
            assert is_invertible(b) == is_invertible(a)
        else:
            with pytest.raises(NotASquareError):
                sqrt(a)


def test_sqrt_random_squares():
    rng = random.Random(5)
    for n in range(4, 13):
        for _ in range(20):
            a = square(BitMatrix.random(n, rng))
            b = sqrt(a)
            assert square(b) == a
            assert is_invertible(b) == is_invertible(a)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_class_size_accounting(n):
    sizes = Counter(descriptor(a) for a in _all_matrices(n))
    assert sum(sizes.values()) == 2 ** (n * n)
    for d, size in sizes.items():
        assert size == d.class_size()


def test_square_class_counts_small():
    # classes of squares at n = 2: zero, identity, diag(0, 1), and the phi_2 class
    squares = [d for d in enumerate_descriptors(2) if is_square_class(d)]
    assert len(squares) == 4
    assert sorted(d.class_size() for d in squares) == [1, 1, 2, 6]
