"""
Tests for exact and multimodular linear algebra.
"""
from fractions import Fraction

import numpy as np
import pytest
import sympy

from quatlab.exact_linalg import (ExactSpan, ModSpan, bareiss_rank, integer_kernel, kernel_mod_p, multimodular_rank,
                                  primitive, random_primes, rank_mod_p, rational_kernel, rational_reconstruction)


def low_rank(rng, m, n, r, bound=9):
    L = rng.integers(-bound, bound + 1, size=(m, r)).astype(object)
    R = rng.integers(-bound, bound + 1, size=(r, n)).astype(object)
    return L.dot(R)


def test_random_primes(rng):
    primes = random_primes(rng, 4, 62)
    assert len(set(primes)) == 4
    for p in primes:
        assert sympy.isprime(p)
        assert (1 << 61) <= p < (1 << 62)


def test_random_primes_reproducible():
    a = random_primes(np.random.default_rng(5), 3, 31)
    b = random_primes(np.random.default_rng(5), 3, 31)
    assert a == b


@pytest.mark.parametrize("shape", [(6, 5, 3), (4, 8, 2), (7, 7, 7), (5, 9, 0)])
def test_ranks_agree_with_sympy(rng, shape):
    m, n, r = shape
    M = low_rank(rng, m, n, r) if r else np.zeros((m, n), dtype=object)
    expected = sympy.Matrix(M.tolist()).rank()
    assert bareiss_rank(M) == expected
    primes = random_primes(rng, 3, 62)
    res = multimodular_rank(M, primes)
    assert res.rank == expected
    assert res.stable
    assert len(res.pivot_rows) == expected


def test_rank_mod_small_prime():
    M = [[1, 2], [3, 6 + 5]]
    assert rank_mod_p(M, 5)[0] == 1
    assert rank_mod_p(M, 7)[0] == 2
    assert bareiss_rank(M) == 2


def test_integer_kernel(rng):
    M = low_rank(rng, 5, 8, 3)
    kernel = integer_kernel(M)
    assert len(kernel) == 8 - 3
    for v in kernel:
        assert not any(M.dot(np.array(v, dtype=object)))


def test_kernel_mod_p(rng):
    p = 2147483647
    M = low_rank(rng, 4, 7, 2)
    pivots, basis = kernel_mod_p(M, p)
    assert len(pivots) == 2 and len(basis) == 5
    for v in basis:
        assert all(int(x) % p == 0 for x in M.dot(np.array(v, dtype=object)))
    with pytest.raises(ValueError):
        kernel_mod_p(M, (1 << 61) - 1)


def test_rational_reconstruction():
    m = 10007 * 10009
    a = 3 * pow(7, -1, m) % m
    assert rational_reconstruction(a, m) == Fraction(3, 7)
    assert rational_reconstruction(-5 % m, m) == Fraction(-5)


def test_rational_kernel_matches_exact(rng):
    primes = random_primes(rng, 6, 31)
    for _ in range(5):
        M = low_rank(rng, 6, 9, 4)
        assert sorted(rational_kernel(M, primes)) == sorted(integer_kernel(M))


def test_rational_kernel_full_rank(rng):
    M = np.eye(4, dtype=object) * 3
    assert rational_kernel(M, random_primes(rng, 3, 31)) == []


def test_primitive():
    assert primitive([Fraction(-1, 2), Fraction(1, 3), 0]) == [3, -2, 0]
    assert primitive([0, 0]) == [0, 0]


def test_spans():
    p = 1000003
    span = ModSpan(p)
    assert span.add([1, 2, 3])
    assert span.add([0, 1, 1])
    assert not span.add([2, 5, 7])
    assert span.contains([1, 3, 4])
    assert not span.contains([0, 0, 1])
    assert span.dim == 2

    exact = ExactSpan()
    assert exact.add([Fraction(1, 2), 1], member="a")
    assert not exact.add([1, 2], member="b")
    assert exact.members == ["a"]
