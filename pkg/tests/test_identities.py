import numpy as np
import pytest

from quatlab.errors import GuardViolated, NotPure, NotUnit
from quatlab.identities import (check_cident, check_cident3, check_one_param_identity, check_one_param_unrestricted,
                                check_pencil_identity, check_prop42, check_qident, check_qident3,
                                exponent_pairs, find_non_unit_witness, identity_suite, repeated_triples)
from quatlab.qmatrix import random_complex_matrix
from quatlab.quaternion import Quaternion, random_pure, random_pure_unit, random_quaternion


def test_quaternion_identity_exact(rng):
    for _ in range(50):
        x = random_quaternion(rng, True, 5, max_den=3)
        y = random_quaternion(rng, True, 5, max_den=3)
        for m in range(6):
            for n in range(6):
                assert check_qident(m, n, x, y) == 0


def test_quaternion_triple_identity(rng):
    x, y = random_quaternion(rng, True, 5), random_quaternion(rng, True, 5)
    for m, n, r in [(1, 2, 1), (3, 3, 2), (2, 5, 5), (0, 4, 0)]:
        assert check_qident3(m, n, r, x, y) == 0
    with pytest.raises(GuardViolated):
        check_qident3(1, 2, 3, x, y)


def test_zero_base():
    y = Quaternion(1, 2, 3, 4)
    assert check_qident(0, 3, Quaternion(0), y) == 0


def test_complex_matrix_identity_exact(rng):
    for _ in range(20):
        x, y = random_complex_matrix(2, rng, True, 4), random_complex_matrix(2, rng, True, 4)
        for m in range(5):
            for n in range(5):
                assert check_cident(m, n, x, y).is_zero()
        assert check_cident3(2, 1, 2, x, y).is_zero()


def test_pencil_identity(rng):
    x, y = random_quaternion(rng), random_quaternion(rng)
    cx, cy = random_complex_matrix(2, rng), random_complex_matrix(2, rng)
    for _ in range(10):
        coeffs = [int(v) for v in rng.integers(-5, 6, size=8)]
        assert check_pencil_identity(coeffs, x, y) == 0
        assert check_pencil_identity(coeffs, cx, cy).is_zero()
    with pytest.raises(ValueError):
        check_pencil_identity([1, 2, 3], x, y)


def test_one_parameter_identity_for_units(rng):
    for _ in range(100):
        p, q = random_pure_unit(rng), random_pure_unit(rng)
        k = int(rng.integers(1, 5))
        s = rng.uniform(-3, 3, size=k)
        t = rng.uniform(-3, 3, size=k)
        assert check_one_param_identity(p, q, s, t) < 1e-10


def test_equal_parameters_for_arbitrary_pure(rng):
    for _ in range(100):
        p, q = random_pure(rng, scale=3.0), random_pure(rng, scale=3.0)
        s, t = rng.uniform(-3, 3, size=2)
        assert check_prop42(p, q, 'a', [s, t]) < 1e-10
        assert check_prop42(p, q, 'b', [s, t, s]) < 1e-10
    with pytest.raises(GuardViolated):
        check_prop42(p, q, 'b', [0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        check_prop42(p, q, 'c', [0.1, 0.2])


def test_unit_guard():
    with pytest.raises(NotUnit):
        check_one_param_identity(Quaternion(0.0, 2.0), Quaternion(0.0, 0.0, 1.0), [1.0], [1.0])
    with pytest.raises(NotPure):
        check_one_param_unrestricted(Quaternion(1.0, 1.0), Quaternion(0.0, 1.0), [1.0], [1.0])


def test_non_unit_witness(rng):
    found = find_non_unit_witness(rng)
    assert found is not None
    p, q, s, t, residual = found
    assert residual > 1e-3
    assert residual == check_one_param_unrestricted(p, q, s, t)


def test_exponent_grids():
    assert len(exponent_pairs(5)) == 36
    triples = repeated_triples(3)
    assert len(triples) == 4 ** 3 - 4 * 3 * 2
    assert (2, 2, 1) in triples and (0, 1, 2) not in triples


def test_identity_suite(rng):
    report = identity_suite(rng, trials=4)
    assert report.ok()
    # per trial: 36 quaternion pairs, 25 complex pairs, 40 triples on each side, 5 one-off checks
    assert report.checks == 4 * (36 + 25 + 2 * 40 + 5)
    assert "non_unit_witness" in report.details
