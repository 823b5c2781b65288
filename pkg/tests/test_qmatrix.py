"""
Tests for quaternionic matrices, the complex embedding and the real block form.
"""
import numpy as np
import pytest

from quatlab.errors import InputError, NotSquare, ShapeMismatch, SingularMatrix
from quatlab.jsonable import JsonParsingError
from quatlab.qmatrix import (QMatrix, adjoint, chi, commutator, from_json_matrix, inverse, is_unitary, power,
                             qtrace, random_matrix, random_unitary, real_block, real_block_trace, require_size, unchi)
from quatlab.quaternion import Quaternion


def test_trace_is_twice_real_part():
    A = QMatrix.from_rows([[Quaternion(1, 5, 0, 0), 2], [3, Quaternion(-4, 0, 7, 0)]])
    assert qtrace(A) == -6


def test_trace_of_commutator_vanishes(rng):
    for _ in range(10):
        A, B = random_matrix(3, rng), random_matrix(3, rng)
        assert qtrace(commutator(A, B)) == 0


def test_chi_is_multiplicative(rng):
    for _ in range(10):
        A, B = random_matrix(2, rng, bound=5), random_matrix(2, rng, bound=5)
        assert chi(A * B) == chi(A) * chi(B)
        assert unchi(chi(A)) == A


def test_chi_trace(rng):
    A = random_matrix(3, rng)
    t = chi(A).tr()
    assert t.b == 0
    assert t.a == qtrace(A)


def test_real_block_is_multiplicative(rng):
    for _ in range(5):
        A, B = random_matrix(2, rng, bound=4), random_matrix(2, rng, bound=4)
        assert np.array_equal(real_block(A * B), real_block(A).dot(real_block(B)))
        assert real_block_trace(real_block(A)) == qtrace(A)


def test_real_block_int64(rng):
    A = random_matrix(2, rng, bound=3)
    M = real_block(A, dtype=np.int64)
    assert M.dtype == np.int64
    assert int(M.trace()) == 2 * qtrace(A)


def test_adjoint_reverses_products(rng):
    A, B = random_matrix(2, rng, bound=5), random_matrix(2, rng, bound=5)
    assert adjoint(A * B) == adjoint(B) * adjoint(A)
    assert adjoint(adjoint(A)) == A


def test_exact_inverse(rng):
    for n in (1, 2, 3):
        A = random_matrix(n, rng, bound=5)
        try:
            A_inv = inverse(A)
        except SingularMatrix:
            continue
        assert A * A_inv == QMatrix.identity(n)
        assert A_inv * A == QMatrix.identity(n)


def test_singular_inverse():
    with pytest.raises(SingularMatrix):
        inverse(QMatrix.from_rows([[1, Quaternion(0, 1)], [Quaternion(0, 2), -2]]))
    with pytest.raises(NotSquare):
        inverse(QMatrix(1, 2, [Quaternion(1), Quaternion(2)]))


def test_float_inverse(rng):
    A = random_matrix(3, rng, exact=False)
    assert (A * inverse(A)).allclose(QMatrix.identity(3, exact=False), 1e-9)


def test_powers(rng):
    A = random_matrix(2, rng, bound=3)
    assert power(A, 0) == QMatrix.identity(2)
    assert power(A, 5) == A * A * A * A * A
    assert A ** 2 == A * A


def test_exact_random_unitary(rng):
    for n in (2, 3):
        U = random_unitary(n, rng, exact=True)
        assert U.is_exact
        assert is_unitary(U)


def test_float_random_unitary(rng):
    U = random_unitary(4, rng)
    assert is_unitary(U, 1e-10)


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        QMatrix.identity(2) * QMatrix.identity(3)
    with pytest.raises(InputError):
        require_size(QMatrix.identity(3), 2)


def test_json_forms():
    A = QMatrix.from_rows([[Quaternion(0, 1), 1], [0, Quaternion(1) / 2]])
    data = A.to_json()
    assert data["rows"] == 2 and data["cols"] == 2
    assert QMatrix.from_json(data) == A
    assert from_json_matrix([[[0, 1, 0, 0], 1], [0, "1/2"]]) == A
    with pytest.raises(JsonParsingError):
        from_json_matrix([[1, 2], [3]])
    with pytest.raises(JsonParsingError):
        from_json_matrix({"rows": 2, "cols": 2, "entries": [1, 2, 3]})
    with pytest.raises(JsonParsingError):
        from_json_matrix("not a matrix")
