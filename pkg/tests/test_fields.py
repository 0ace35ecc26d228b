import random
from math import comb, factorial

import pytest

from lgseries.fields import (Dual, DualNumbers, Fp, PrimeField,
                             binomial_matrix, dual_inverse, field_inverse,
                             integer_determinant, is_prime, is_tame,
                             tameness_determinant)

PRIMES_SMALL = [2, 3, 5, 7, 11, 13]


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)
    assert not is_prime(0)


def test_prime_field_rejects_bad_moduli():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(2**31 + 11)


def test_field_inverse_examples():
    assert field_inverse(Fp(1, 5)) == Fp(1, 5)
    # exhaustive oracle over GF(5): the inverse of 2 is whatever multiplies to 1
    expected = next(c for c in range(1, 5) if (2 * c) % 5 == 1)
    assert expected == 3
    assert field_inverse(Fp(2, 5)) == Fp(3, 5)
    assert field_inverse(Fp(1, 2)) == Fp(1, 2)


def test_field_inverse_zero_raises():
    with pytest.raises(ZeroDivisionError):
        field_inverse(Fp(0, 7))


def test_field_inverse_involution_exhaustive():
    for p in [2, 3, 5, 7, 11, 97]:
        for v in range(1, p):
            x = Fp(v, p)
            assert field_inverse(field_inverse(x)) == x
            assert x * field_inverse(x) == Fp(1, p)


def test_field_arithmetic_basics():
    a, b = Fp(3, 7), Fp(6, 7)
    assert a + b == Fp(2, 7)
    assert a - b == Fp(4, 7)
    assert a * b == Fp(4, 7)
    assert -a == Fp(4, 7)
    assert a + 4 == Fp(0, 7)
    with pytest.raises(ValueError):
        _ = Fp(1, 5) + Fp(1, 7)


def test_dual_inverse_examples():
    D = DualNumbers(3)
    assert dual_inverse(D(1, 0)) == D(1, 0)
    x = D(1, 1)
    inv = dual_inverse(x)
    assert inv == D(1, 2)
    assert x * inv == D(1, 0)  # (1+e)(1+2e) = 1+3e = 1
    with pytest.raises(ZeroDivisionError):
        dual_inverse(D(0, 1))


def test_dual_inverse_all_units():
    for p in (2, 3, 5):
        D = DualNumbers(p)
        for a0 in range(1, p):
            for a1 in range(p):
                x = D(a0, a1)
                assert x * x.inverse() == D(1, 0)


def test_dual_nilpotent():
    D = DualNumbers(5)
    assert D.eps() * D.eps() == D.zero()
    assert (D(2, 3) * D.eps()) == D(0, 2)


def test_tameness_identity_sequence():
    for p in PRIMES_SMALL:
        for r in range(4):
            assert tameness_determinant(range(r + 1), p) == Fp(1, p)


def test_tameness_examples():
    # det [[1,0],[1,2]] = 2
    assert integer_determinant(binomial_matrix([0, 2])) == 2
    assert tameness_determinant([0, 2], 2) == Fp(0, 2)   # wild
    assert tameness_determinant([0, 2], 3) == Fp(2, 3)   # tame
    assert not is_tame([0, 2], 2)
    assert is_tame([0, 2], 3)


def test_tameness_rejects_bad_sequences():
    with pytest.raises(ValueError):
        tameness_determinant([2, 2], 5)
    with pytest.raises(ValueError):
        tameness_determinant([3, 1], 5)
    with pytest.raises(ValueError):
        tameness_determinant([-1, 0], 5)


def test_no_wild_ramification_below_p():
    # all strictly increasing sequences with a_r <= 6 are tame mod 7 and 11
    import itertools

    for p in (7, 11):
        for r in range(4):
            for a in itertools.combinations(range(7), r + 1):
                assert is_tame(a, p)


def test_integer_determinant_vs_product_formula():
    # det(binom(a_i, j)) * prod j! = prod_{i<j} (a_j - a_i)
    rng = random.Random(20240817)
    for _ in range(200):
        r = rng.randrange(0, 5)
        a = sorted(rng.sample(range(21), r + 1))
        det = integer_determinant(binomial_matrix(a))
        lhs = det * 1
        for j in range(r + 1):
            lhs *= factorial(j)
        rhs = 1
        for i in range(r + 1):
            for j in range(i + 1, r + 1):
                rhs *= a[j] - a[i]
        assert lhs == rhs


def test_integer_determinant_small_oracle():
    # cross-check Bareiss against cofactor expansion on random small matrices
    def cofactor_det(m):
        n = len(m)
        if n == 0:
            return 1
        if n == 1:
            return m[0][0]
        total = 0
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * cofactor_det(minor)
        return total

    rng = random.Random(7)
    for _ in range(50):
        n = rng.randrange(1, 5)
        m = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(n)]
        assert integer_determinant(m) == cofactor_det(m)


def test_dual_ring_descriptor():
    D = DualNumbers(3)
    assert D.as_dict() == {"p": 3, "dual": True}
    assert PrimeField(3).as_dict() == {"p": 3, "dual": False}
    assert D(Fp(2, 3), 1) == Dual(2, 1, 3)
