import numpy as np
import pytest

from quatlab.errors import DimensionTooLarge, NoConvergence
from quatlab.qmatrix import QMatrix, adjoint, inverse, is_unitary, random_invertible, random_matrix
from quatlab.quaternion import Quaternion
from quatlab.spectral import EigenvalueList, eigenvalues, random_generic, right_eigenvector, schur


def test_eigenvalues_of_diagonal():
    A = QMatrix.diag(Quaternion(1, 0, 2, 0), Quaternion(3))
    eigs = eigenvalues(A)
    assert eigs.close_to(EigenvalueList([1 + 2j, 3]))
    assert eigs[0].imag >= 0


def test_eigenvalues_upper_half_plane(rng):
    eigs = eigenvalues(random_matrix(3, rng, exact=False))
    assert len(eigs) == 3
    assert all(z.imag >= 0 for z in eigs)
    assert list(eigs) == sorted(eigs, key=lambda z: (z.real, z.imag))


def test_eigenvalues_similarity_invariant(rng):
    A = random_matrix(3, rng, bound=4)
    P, P_inv = random_invertible(3, rng, bound=3)
    assert eigenvalues(P * A * P_inv).close_to(eigenvalues(A), 1e-6)


def test_right_eigenvector(rng):
    A = random_generic(2, rng)
    lam = eigenvalues(A)[1]
    v = right_eigenvector(A, lam)
    Av = A * QMatrix.from_columns([v])
    vl = QMatrix.from_columns([[q * Quaternion(lam.real, lam.imag) for q in v]])
    assert Av.allclose(vl, 1e-8)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_schur(rng, n):
    A = random_matrix(n, rng, exact=False)
    U, T = schur(A)
    assert is_unitary(U, 1e-9)
    assert T.is_upper_triangular()
    assert (U * A * adjoint(U)).allclose(T, 1e-8 * max(1.0, A.frobenius_norm()))
    diag = EigenvalueList([T[i, i].to_complex() for i in range(n)])
    assert diag.close_to(eigenvalues(A), 1e-7)


def test_schur_order(rng):
    A = random_generic(2, rng)
    eigs = eigenvalues(A)
    _, T = schur(A, [1, 0])
    assert abs(T[0, 0].to_complex() - eigs[1]) < 1e-7


def test_size_bound():
    with pytest.raises(DimensionTooLarge):
        eigenvalues(QMatrix.identity(7))


def test_json():
    eigs = EigenvalueList([1 - 2j, 0.5])
    assert eigs.to_json() == [[0.5, 0.0], [1.0, 2.0]]
    assert EigenvalueList.from_json(eigs.to_json()).close_to(eigs)


def test_schur_of_defective_matrix(rng):
    jordan = QMatrix.from_rows([[Quaternion(0, 1), 1], [0, Quaternion(0, 1)]])
    for _ in range(10):
        g, g_inv = random_invertible(2, rng, bound=3)
        A = g * jordan * g_inv
        U, T = schur(A)
        assert is_unitary(U, 1e-9)
        assert abs(T[0, 0].to_complex() - 1j) < 1e-4
        assert abs(T[1, 1].to_complex() - 1j) < 1e-4


def test_lapack_failure_is_no_convergence(monkeypatch):
    def fail(M):
        raise np.linalg.LinAlgError("Eigenvalues did not converge")
    monkeypatch.setattr(np.linalg, "eigvals", fail)
    with pytest.raises(NoConvergence):
        eigenvalues(QMatrix.identity(2))
