"""
Tests for the Sp(2) canonical form and the six separating invariants.
"""
from fractions import Fraction

import numpy as np
import pytest

from quatlab.canon import (CanonicalUpper2, InvariantSix, canonical_form, differing_invariants, equivalence_witness,
                           invariants, p6_on_K, random_canonical, sp2_equivalent, table1_suite, table1_witnesses)
from quatlab.errors import NotSquare
from quatlab.qmatrix import QMatrix, adjoint, is_unitary, random_matrix, random_unitary
from quatlab.quaternion import Quaternion


def test_invariants_are_exact(rng):
    A = random_matrix(2, rng, bound=5)
    inv = invariants(A)
    assert inv.is_exact
    assert InvariantSix.from_json(inv.to_json()).values == inv.values


def test_exact_unitary_conjugates_are_equivalent(rng):
    for _ in range(200):
        A = random_matrix(2, rng, bound=5)
        U = random_unitary(2, rng, exact=True)
        B = U * A * adjoint(U)
        assert differing_invariants(A, B) == []
        assert sp2_equivalent(A, B)


def test_float_unitary_conjugates_are_equivalent(rng):
    for _ in range(100):
        A = random_matrix(2, rng, exact=False)
        U = random_unitary(2, rng)
        assert sp2_equivalent(A, U * A * adjoint(U))


def test_perturbed_matrices_are_not_equivalent(rng):
    for _ in range(100):
        A = random_matrix(2, rng, bound=5)
        B = A + QMatrix.diag(Quaternion(0, 0, 1), Quaternion(0))
        assert not sp2_equivalent(A, B)


def test_canonical_form_round_trip(rng):
    for _ in range(100):
        A = random_matrix(2, rng, exact=False)
        c, U = canonical_form(A)
        assert c.validate(1e-9) == []
        assert is_unitary(U, 1e-9)
        assert (U * A * adjoint(U)).allclose(c.matrix(), 1e-8 * max(1.0, A.frobenius_norm()))


def test_canonical_form_is_a_class_invariant(rng):
    for _ in range(50):
        A = random_matrix(2, rng, exact=False)
        V = random_unitary(2, rng)
        c1, _ = canonical_form(A)
        c2, _ = canonical_form(V * A * adjoint(V))
        assert c1.swapped_close_to(c2, 1e-6)


def test_random_canonical_elements(rng):
    for _ in range(100):
        c = random_canonical(rng)
        assert c.validate(0.0) == []
        assert abs(float(p6_on_K(c)) - float(invariants(c.matrix())[6])) <= 1e-9 * max(1.0, abs(float(p6_on_K(c))))
        found, _ = canonical_form(c.matrix())
        assert found.swapped_close_to(c, 1e-6)


def test_p6_exact_on_rational_canonical():
    c = CanonicalUpper2(Quaternion(1, 2), Quaternion(-1, 1), Fraction(1, 2), Fraction(3))
    assert p6_on_K(c) == invariants(c.matrix())[6]


def test_equivalence_witness(rng):
    A = random_matrix(2, rng, exact=False)
    V = random_unitary(2, rng)
    B = V * A * adjoint(V)
    W = equivalence_witness(A, B)
    assert W is not None
    assert (W * A * adjoint(W)).allclose(B, 1e-6)
    assert equivalence_witness(A, A + QMatrix.identity(2, exact=False)) is None


def test_table1_minimality():
    ok, rows = table1_suite()
    assert ok
    assert [r["differing_invariants"] for r in rows] == [[1], [2], [3], [4], [5], [6]]
    exact_rows = [row.k for row in table1_witnesses() if row.A.is_exact and row.B.is_exact]
    assert exact_rows == [2, 3, 5, 6]


def test_requires_2x2():
    with pytest.raises(NotSquare):
        invariants(QMatrix.identity(3))


def test_canonical_json():
    c = CanonicalUpper2(Quaternion(1, 2), Quaternion(0, 1), Fraction(1, 2), Fraction(0))
    d = CanonicalUpper2.from_json(c.to_json())
    assert d.alpha == c.alpha and d.z1 == c.z1
