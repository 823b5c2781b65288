"""
Tests for algebra closures, the quasi-triangularizability decision and the W_n property checks.
"""
from fractions import Fraction

import pytest

from quatlab.errors import DimensionTooLarge, NotGeneric, ShapeMismatch
from quatlab.qmatrix import CMatrix, QMatrix, adjoint, inverse, random_complex_matrix, random_upper, random_unitary
from quatlab.quaternion import Quaternion
from quatlab.triangular import (AlgebraBasis, algebra_closure, char_coefficients, closure_pair_suite,
                                complex_matrix_basis, fiber_check, friedland_check, full_matrix_basis, is_nilpotent,
                                is_quasi_triangularizable, nilpotent_closure_test, permutation_matrix,
                                pure_imaginary_eig_check, quasi_triangularizable, quaternion_cube_witness,
                                random_common_eigenvector_pair, real_cube_witness, real_matrix_basis,
                                real_square_witness, sample_wn, to_cmatrix, tr_comm_cube, tr_comm_power,
                                tr_comm_square_test, upper_triangular_basis, wn_property_suite)

i, j, k = Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1)


def test_fixed_witness_values():
    assert tr_comm_power(*real_square_witness(), 2) == 4
    A, B = quaternion_cube_witness()
    assert tr_comm_cube(A, B) == -12
    assert tr_comm_power(A, B, 2) == -4
    assert tr_comm_cube(*real_cube_witness()) == -6


def test_cube_formulas_agree_on_random_pairs(rng):
    for _ in range(20):
        A, B = random_upper(2, rng), random_upper(2, rng)
        assert tr_comm_cube(A, B) == 0
    A, B = QMatrix.from_rows([[1, i], [j, 2]]), QMatrix.from_rows([[k, 1], [0, i]])
    assert tr_comm_cube(A, B) == tr_comm_cube(A.to_float(), B.to_float())


def test_standard_bases():
    assert upper_triangular_basis(2).dimension == 12
    assert full_matrix_basis(2).dimension == 16
    assert real_matrix_basis(3).dimension == 9
    assert complex_matrix_basis(2).dimension == 8
    assert upper_triangular_basis(2).elements[0] == QMatrix.identity(2)


def test_closure_dimensions():
    assert algebra_closure([], 2).dimension == 1
    assert algebra_closure([QMatrix.diag(i, i)]).dimension == 2
    assert algebra_closure(list(real_square_witness())).dimension == 4
    assert algebra_closure(list(quaternion_cube_witness())).dimension == 16


def test_closure_rejects_float_and_mixed_shapes():
    with pytest.raises(ShapeMismatch):
        algebra_closure([QMatrix.identity(2, exact=False)])
    with pytest.raises(ShapeMismatch):
        algebra_closure([QMatrix.identity(2), QMatrix.identity(3)])


def test_basis_json():
    basis = upper_triangular_basis(2)
    back = AlgebraBasis.from_json(basis.to_json())
    assert back.dimension == 12
    assert back.elements == basis.elements


def test_qt_decision_positive():
    assert is_quasi_triangularizable(upper_triangular_basis(2))
    assert is_quasi_triangularizable(complex_matrix_basis(2))
    assert quasi_triangularizable(real_matrix_basis(2)).quasi_triangularizable


def test_qt_decision_on_conjugated_triangular_closure():
    g = QMatrix.from_rows([[1, 0], [1, 1]])
    g_inv = inverse(g)
    T1 = QMatrix.from_rows([[1, i], [0, j]])
    T2 = QMatrix.from_rows([[k, 1], [0, 0]])
    basis = algebra_closure([g * T1 * g_inv, g * T2 * g_inv])
    assert basis.dimension <= 12
    assert is_quasi_triangularizable(basis)


def test_qt_decision_negative_carries_witness():
    result = quasi_triangularizable(real_matrix_basis(3))
    assert not result
    A, B = result.witness_pair
    assert result.value == tr_comm_cube(A, B) != 0

    closure = algebra_closure(list(quaternion_cube_witness()))
    result = quasi_triangularizable(closure, max_dimension=16)
    assert not result.quasi_triangularizable
    assert result.to_json()["value"] == str(result.value)


def test_qt_dimension_bound():
    with pytest.raises(DimensionTooLarge):
        quasi_triangularizable(full_matrix_basis(2))


def sampled_cube_vanishes(basis, rng, samples=30):
    return all(tr_comm_cube(basis.random_element(rng), basis.random_element(rng)) == 0 for _ in range(samples))


CLOSURES = {
    "upper": lambda rng: upper_triangular_basis(2),
    "complex": lambda rng: complex_matrix_basis(2),
    "real_2": lambda rng: real_matrix_basis(2),
    "real_3": lambda rng: real_matrix_basis(3),
    "real_square_witness": lambda rng: algebra_closure(list(real_square_witness())),
    "real_cube_witness": lambda rng: algebra_closure(list(real_cube_witness())),
    "conjugated_pair": lambda rng: algebra_closure(list(sample_wn(2, rng)[:2])),
    "quaternion_cube_witness": lambda rng: algebra_closure(list(quaternion_cube_witness())),
}


@pytest.mark.parametrize("name", [n if n != "quaternion_cube_witness" else pytest.param(n, marks=pytest.mark.slow)
                                  for n in CLOSURES])
def test_qt_agrees_with_sampled_cube(name, rng):
    basis = CLOSURES[name](rng)
    decided = quasi_triangularizable(basis, max_dimension=16).quasi_triangularizable
    assert decided == sampled_cube_vanishes(basis, rng)


def test_square_refuter():
    assert tr_comm_square_test(upper_triangular_basis(2), samples=50).passed
    result = tr_comm_square_test(full_matrix_basis(2), samples=50)
    assert not result.passed
    A, B = result.witness
    assert tr_comm_power(A, B, 2) == result.value > 0


def test_nilpotent_refuters():
    tri = upper_triangular_basis(2)
    assert nilpotent_closure_test(tri, "sum", samples=30).passed
    assert nilpotent_closure_test(tri, "product", samples=30).passed
    full = full_matrix_basis(2)
    assert not nilpotent_closure_test(full, "sum", samples=30).passed
    assert not nilpotent_closure_test(full, "product", samples=30).passed
    with pytest.raises(ValueError):
        nilpotent_closure_test(tri, "difference")


def test_is_nilpotent():
    assert is_nilpotent(QMatrix.from_rows([[0, j], [0, 0]]))
    assert not is_nilpotent(QMatrix.from_rows([[0, 1], [1, 0]]))
    assert not is_nilpotent(QMatrix.diag(i, 0))


def test_wn_properties_hold_on_samples(rng):
    for n in (2, 3):
        X, Y, _ = sample_wn(n, rng)
        report = wn_property_suite(X, Y, k_max=2, m_max=3)
        assert report.ok(), report.to_json()


def test_wn_properties_fail_on_quaternionic_witness():
    report = wn_property_suite(*quaternion_cube_witness(), k_max=2, m_max=2)
    assert not report.ok()
    assert "odd_power" in {v.prop for v in report.collector.errors()}


def test_closure_pair_suite(rng):
    A, B, _ = sample_wn(2, rng, bound=3, conj_bound=2)
    report = closure_pair_suite(A, B, samples=20, rng=rng)
    assert report.ok(), report.to_json()
    assert report.details["dimension"] <= 12


def test_fiber_check_finds_ordering(rng):
    A = QMatrix.diag(1, i, Quaternion(0, 0, 2))
    U = random_upper(3, rng, bound=4)
    order = (2, 0, 1)
    entries = [Quaternion(0)] * 9
    for r in range(3):
        for c in range(3):
            entries[order[r] * 3 + order[c]] = U[r, c]
    B = QMatrix(3, 3, entries)
    member, found = fiber_check(A, B)
    assert member
    P = permutation_matrix(found)
    assert (P * B * adjoint(P)).is_upper_triangular()


def test_fiber_check_negative_and_guards():
    A = QMatrix.diag(1, i)
    assert fiber_check(A, QMatrix.from_rows([[1, 1], [1, 1]])) == (False, None)
    with pytest.raises(NotGeneric):
        fiber_check(QMatrix.diag(i, j), QMatrix.identity(2))
    with pytest.raises(NotGeneric):
        fiber_check(QMatrix.from_rows([[1, 1], [0, 2]]), QMatrix.identity(2))


def test_friedland_on_triangularizable_pairs(rng):
    for _ in range(30):
        A, B = random_common_eigenvector_pair(rng)
        report = friedland_check(A, B)
        assert report.agree and report.triangularizable


def test_friedland_on_random_pairs(rng):
    verdicts = []
    for _ in range(30):
        A, B = random_complex_matrix(2, rng, bound=4), random_complex_matrix(2, rng, bound=4)
        verdicts.append(friedland_check(A, B).triangularizable)
    assert not all(verdicts)


def test_friedland_swap_pair():
    A = to_cmatrix(QMatrix.from_rows([[1, 0], [0, 0]]))
    B = to_cmatrix(QMatrix.from_rows([[0, 1], [1, 0]]))
    report = friedland_check(A, B)
    assert report.to_json() == {"a": False, "b": False, "c": False, "d": False, "e": False, "agree": True}


def test_friedland_shape_guard():
    with pytest.raises(ShapeMismatch):
        friedland_check(CMatrix.identity(3), CMatrix.identity(3))


@pytest.mark.parametrize("diagonal,expected", [
    ((i, Quaternion(0, 0, 2)), True),
    ((1, i), False),
    ((i, i), True),
])
def test_pure_spectrum_exact(diagonal, expected):
    assert pure_imaginary_eig_check(QMatrix.diag(*diagonal)).holds == expected


def test_char_coefficients():
    c = char_coefficients(QMatrix.diag(i, Quaternion(0, 0, 2)))
    assert c == {"e2": 5, "e4": 4}
    assert isinstance(c["e4"], Fraction)


def test_pure_spectrum_float(rng):
    for _ in range(10):
        U = random_unitary(2, rng, exact=False)
        A = U * QMatrix.diag(i, Quaternion(0, 0, 2)).to_float() * adjoint(U)
        report = pure_imaginary_eig_check(A)
        assert report.holds and report.spectrum_pure
    report = pure_imaginary_eig_check(QMatrix.diag(1, i).to_float())
    assert not report.holds and report.spectrum_pure is False
