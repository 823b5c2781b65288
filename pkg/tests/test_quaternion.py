"""
Tests for the quaternion scalar type.
"""
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatlab.errors import ExactModeUnsupported, NotPure, ZeroDivisor
from quatlab.jsonable import JsonParsingError
from quatlab.quaternion import (I, J, K, ONE, Quaternion, complex_half_plane, conjugate_by, exp_pure, is_similar,
                                random_unit, rational_sqrt)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=7)
quaternions = st.builds(Quaternion, fractions, fractions, fractions, fractions)


def test_hamilton_rules():
    assert I * I == J * J == K * K == -ONE
    assert I * J == K and J * K == I and K * I == J
    assert J * I == -K
    assert I * J * K == -1


@settings(max_examples=200)
@given(quaternions, quaternions, quaternions)
def test_exact_ring_laws(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p * q).conj() == q.conj() * p.conj()
    assert (p * q).norm_sq() == p.norm_sq() * q.norm_sq()


@given(quaternions)
def test_inverse_is_exact(q):
    if q.is_zero():
        with pytest.raises(ZeroDivisor):
            q.inverse()
    else:
        assert q * q.inverse() == 1
        assert q.inverse() * q == 1
        assert (q / q) == ONE


@given(quaternions, st.fractions(min_value=-5, max_value=5, max_denominator=5))
def test_real_scalars_are_central(q, s):
    assert s * q == q * s
    if s != 0:
        assert (q * s) / s == q


def test_mixed_backends_give_floats():
    q = Quaternion(1, 2, 3, 4) * Quaternion(0.5)
    assert not q.is_exact
    assert q == Quaternion(0.5, 1.0, 1.5, 2.0)


def test_division_by_zero_scalar():
    with pytest.raises(ZeroDivisor):
        Quaternion(1, 1) / 0


def test_powers():
    q = Quaternion(1, 1, 1, 1)
    assert q ** 0 == ONE
    assert q ** 3 == q * q * q
    # q/2 is a unit of order 6
    assert q ** 3 == -8 * ONE
    assert q ** 6 == 64 * ONE
    with pytest.raises(ValueError):
        q ** -1


@given(quaternions, quaternions)
def test_similarity_by_real_part_and_norm(p, u):
    if not u.is_zero():
        assert is_similar(conjugate_by(u, p), p)


def test_not_similar():
    assert not is_similar(Quaternion(1, 2), Quaternion(2, 1))
    assert is_similar(Quaternion(0, 3), Quaternion(0, 0, 0, -3))


def test_complex_half_plane():
    assert complex_half_plane(Quaternion(1, 0, 3, 4)) == Quaternion(1, 5)
    q = complex_half_plane(Quaternion(0, 1, 1, 0))
    assert not q.is_exact
    assert abs(q.b - math.sqrt(2)) < 1e-15


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None


def test_exp_pure():
    p = Quaternion(0.0, 0.0, 2.0, 0.0)
    e = exp_pure(p, math.pi / 4)
    assert e.is_close(Quaternion(0.0, 0.0, 1.0, 0.0), 1e-12)
    assert exp_pure(Quaternion(0.0), 3.0) == ONE
    with pytest.raises(ExactModeUnsupported):
        exp_pure(Quaternion(0, 1), 1.0)
    with pytest.raises(NotPure):
        exp_pure(Quaternion(1.0, 1.0), 1.0)


def test_exact_random_units(rng):
    for _ in range(20):
        u = random_unit(rng, exact=True)
        assert u.is_exact
        assert u.norm_sq() == 1


def test_json():
    q = Quaternion(Fraction(1, 2), -3, 0, Fraction(7, 3))
    assert q.to_json() == ["1/2", "-3", "0", "7/3"]
    assert Quaternion.from_json(q.to_json()) == q
    assert Quaternion.from_json(2) == Quaternion(2)
    assert not Quaternion.from_json([0.5, 0, 0, 0]).is_exact
    with pytest.raises(JsonParsingError):
        Quaternion.from_json([1, 2, 3])
    with pytest.raises(JsonParsingError):
        Quaternion.from_json(["a", 0, 0, 0])
