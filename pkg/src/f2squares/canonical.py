"""Rational canonical form over GF(2), square detection and square roots.

The class of A is read off from kernel dimensions: for each irreducible phi
dividing the minimal polynomial, dim ker phi(A)^k = deg(phi) * sum_i min(lam_i, k).
The change of basis is built one primary component at a time by choosing
cyclic generators layer by layer in the filtration ker phi(A)^k.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from f2squares import f2poly
from f2squares.classcount import ClassDescriptor
from f2squares.f2linalg import BitMatrix, Echelon, inverse, kernel, multiply, poly_eval, rank
from f2squares.partitions import Partition, conjugate, delta, delta_preimage, is_in_delta_image


class NotASquareError(ValueError):
    """The matrix has no square root; ``phi`` and ``partition`` name the obstruction."""

    def __init__(self, phi: int, partition: Partition):
        self.phi = phi
        self.partition = partition
        super().__init__(
            f"not a square: partition {partition!s} at {f2poly.to_human(phi)} "
            "is not in the image of the squaring map"
        )


@dataclass(frozen=True)
class RcfDecomposition:
    """A = transform @ standard @ transform^-1."""

    descriptor: ClassDescriptor
    standard: BitMatrix
    transform: BitMatrix


def vector_minimal_polynomial(a: BitMatrix, v: int) -> int:
    """Monic p of least degree with p(A) v = 0."""
    basis: dict[int, tuple[int, int]] = {}
    w = v
    k = 0
    while True:
        vec, poly = w, 1 << k
        while vec:
            top = vec.bit_length() - 1
            hit = basis.get(top)
            if hit is None:
                break
            vec ^= hit[0]
            poly ^= hit[1]
        if not vec:
            return poly
        basis[vec.bit_length() - 1] = (vec, poly)
        w = a.apply(w)
        k += 1


def minimal_polynomial(a: BitMatrix) -> int:
    """Least common multiple of the minimal polynomials of the basis vectors."""
    m = 1
    span = Echelon()
    for i in range(a.n):
        e = 1 << i
        if e in span:
            continue
        p = vector_minimal_polynomial(a, e)
        m = f2poly.mul(m, f2poly.divmod_(p, f2poly.gcd(m, p))[0])
        # the cyclic subspace of e is A-invariant; basis vectors inside it add nothing new
        w = e
        for _ in range(f2poly.degree(p)):
            span.add(w)
            w = a.apply(w)
    return m


def _partition_from_kernel_dims(dims: list[int], d: int) -> Partition:
    # dims[k] = dim ker phi(A)^k, dims[0] = 0
    conj = []
    for k in range(1, len(dims)):
        step, rem = divmod(dims[k] - dims[k - 1], d)
        if rem:
            raise ArithmeticError("kernel dimensions are not multiples of deg(phi)")
        if step:
            conj.append(step)
    return conjugate(Partition(conj))


def descriptor(a: BitMatrix) -> ClassDescriptor:
    """Conjugacy-class data of A without building a change of basis."""
    n = a.n
    if n == 0:
        return ClassDescriptor()
    assignment = []
    for phi, e in f2poly.factor(minimal_polynomial(a)):
        d = f2poly.degree(phi)
        N = poly_eval(phi, a)
        dims = [0]
        P = N
        for _ in range(e):
            dims.append(n - rank(P))
            P = multiply(P, N)
        assignment.append((phi, _partition_from_kernel_dims(dims, d)))
    return ClassDescriptor(assignment)


def rcf(a: BitMatrix) -> RcfDecomposition:
    """Rational canonical form with an explicit change of basis."""
    n = a.n
    columns: list[int] = []
    assignment = []
    for phi, e in f2poly.factor(minimal_polynomial(a)) if n else []:
        d = f2poly.degree(phi)
        N = poly_eval(phi, a)
        # kernels of N^k, k = 0..e
        kernels = [[]]
        P = N
        for _ in range(e):
            kernels.append(kernel(P))
            P = multiply(P, N)
        dims = [len(k) for k in kernels]
        assignment.append((phi, _partition_from_kernel_dims(dims, d)))

        generators: list[tuple[int, int]] = []  # (vector, exponent), highest exponent first
        for k in range(e, 0, -1):
            span = Echelon(kernels[k - 1])
            for v, j in generators:
                w = v
                for _ in range(j - k):
                    w = N.apply(w)
                for _ in range(d):
                    span.add(w)
                    w = a.apply(w)
            for b in kernels[k]:
                if len(span) == dims[k]:
                    break
                if b in span:
                    continue
                generators.append((b, k))
                w = b
                for _ in range(d):
                    span.add(w)
                    w = a.apply(w)
        for w, k in generators:
            columns.extend(_companion_basis(a, w, f2poly.power(phi, k)))

    desc = ClassDescriptor(assignment)
    standard = desc.standard_representative() if n else BitMatrix.zero(0)
    U = BitMatrix.from_columns(columns) if n else BitMatrix.zero(0)
    if multiply(a, U) != multiply(U, standard) or rank(U) != n:
        raise ArithmeticError("rational canonical form: change of basis check failed")
    return RcfDecomposition(desc, standard, U)


def _companion_basis(a: BitMatrix, w: int, f: int) -> list[int]:
    """Vectors u_0..u_{m-1} on which A acts as the companion matrix M(f).

    u_{m-1} = w and u_{j-1} = A u_j + a_j w, where f = sum a_j X^j.
    """
    m = f2poly.degree(f)
    u = [0] * m
    u[m - 1] = w
    for j in range(m - 1, 0, -1):
        u[j - 1] = a.apply(u[j]) ^ (w if f >> j & 1 else 0)
    return u


def square_class(desc: ClassDescriptor) -> ClassDescriptor:
    """Class of A^2 given the class of A (over GF(2) each phi maps to itself)."""
    return ClassDescriptor([(phi, delta(lam)) for phi, lam in desc])


def square_witness(desc: ClassDescriptor) -> tuple[int, Partition] | None:
    """First (phi, partition) that blocks a square root, or None."""
    for phi, lam in desc:
        if not is_in_delta_image(lam):
            return phi, lam
    return None


def is_square_class(desc: ClassDescriptor) -> bool:
    return square_witness(desc) is None


def is_square(a: BitMatrix) -> bool:
    return is_square_class(descriptor(a))


@lru_cache(maxsize=4096)
def _root_in_standard_basis(desc: ClassDescriptor) -> BitMatrix:
    # a root T of the standard representative R of desc: T^2 == R
    root_desc = ClassDescriptor([(phi, delta_preimage(lam)) for phi, lam in desc])
    S = root_desc.standard_representative()
    dec = rcf(multiply(S, S))
    if dec.descriptor != desc:
        raise ArithmeticError("square of the canonical root landed in the wrong class")
    V = dec.transform
    # S^2 = V R V^-1, so (V^-1 S V)^2 = R
    return multiply(multiply(inverse(V), S), V)


def sqrt(a: BitMatrix) -> BitMatrix:
    """A matrix B with B @ B == A; raises NotASquareError if none exists."""
    if a.n == 0:
        return a
    dec = rcf(a)
    witness = square_witness(dec.descriptor)
    if witness is not None:
        raise NotASquareError(*witness)
    T = _root_in_standard_basis(dec.descriptor)
    U = dec.transform
    return multiply(multiply(U, T), inverse(U))
