"""Eigenvalues and quaternionic Schur triangularization (float mode).

The eigenvalues of A ∈ Mₙ(ℍ) are the n upper-half-plane representatives of the spectrum of
χₙ(A), which is closed under complex conjugation. Schur vectors are built from complex
eigenvectors of χₙ of the trailing block: if χ(B)(w₁; w₂) = λ(w₁; w₂) then v = w₁ + 𝗃w₂
satisfies B v = v λ. Each extracted vector is checked against that relation before use.
"""
import logging
import math
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from quatlab.errors import DimensionTooLarge, NoConvergence
from quatlab.jsonable import Jsonable, JsonParsingError
from quatlab.qmatrix import QMatrix, chi, complete_unitary, adjoint, random_matrix
from quatlab.quaternion import Quaternion

logger = logging.getLogger(__name__)

EIG_MAX_N = 6
REAL_TOL = 1e-9
# a defective eigenvalue is only resolved to about √ε, and so are its Schur vectors
DEFECTIVE_GAP = 1e-6
DEFECTIVE_RESIDUAL = 100 * math.sqrt(float(np.finfo(float).eps))


class EigenvalueList(Jsonable):
    """
    n complex eigenvalues with Im ≥ 0, sorted lexicographically by (Re, Im).
    """
    def __init__(self, values: Sequence[complex]) -> None:
        self.values = tuple(sorted((complex(v.real, abs(v.imag)) for v in values), key=lambda z: (z.real, z.imag)))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[complex]:
        return iter(self.values)

    def __getitem__(self, i: int) -> complex:
        return self.values[i]

    def close_to(self, other: "EigenvalueList", tol: float = 1e-7) -> bool:
        """ Multiset comparison by greedy nearest matching. """
        if len(self) != len(other):
            return False
        rest = list(other.values)
        for z in self.values:
            j = min(range(len(rest)), key=lambda k: abs(rest[k] - z))
            if abs(rest[j] - z) > tol * max(1.0, abs(z)):
                return False
            rest.pop(j)
        return True

    def min_gap(self) -> float:
        vals = self.values
        if len(vals) < 2:
            return float('inf')
        return min(abs(vals[i] - vals[j]) for i in range(len(vals)) for j in range(i + 1, len(vals)))

    def to_json(self) -> list:
        return [[z.real, z.imag] for z in self.values]

    @staticmethod
    def from_json(data) -> "EigenvalueList":
        if not isinstance(data, list) or not all(isinstance(p, list) and len(p) == 2 for p in data):
            raise JsonParsingError("Eigenvalues are encoded as [[re, im], ...]. ", data)
        return EigenvalueList([complex(float(p[0]), float(p[1])) for p in data])

    def __repr__(self) -> str:
        return "EigenvalueList(%s)" % (list(self.values),)


def _pair_conjugates(spectrum: Sequence[complex]) -> List[complex]:
    """ Match each eigenvalue of χₙ with its nearest conjugate partner; one representative per pair. """
    rest = list(spectrum)
    reps = []
    while rest:
        z = rest.pop(0)
        j = min(range(len(rest)), key=lambda k: abs(rest[k] - z.conjugate()))
        w = rest.pop(j)
        re = 0.5 * (z.real + w.real)
        im = 0.5 * (abs(z.imag) + abs(w.imag))
        if im < REAL_TOL * max(1.0, abs(re)):
            im = 0.0
        reps.append(complex(re, im))
    return reps


def _check_size(A: QMatrix, max_n: int) -> None:
    A._require_square()
    if A.rows > max_n:
        raise DimensionTooLarge("eigenvalue routines are bounded to n <= %d, got %d" % (max_n, A.rows))


def eigenvalues(A: QMatrix, max_n: int = EIG_MAX_N) -> EigenvalueList:
    """
    Upper-half-plane eigenvalue representatives of A, via the (LAPACK) spectrum of χₙ(A).
    LAPACK reports an exhausted QR iteration as LinAlgError; it surfaces as NoConvergence.
    """
    _check_size(A, max_n)
    M = chi(A.to_float()).to_numpy()
    try:
        spectrum = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as e:
        raise NoConvergence("eigenvalue iteration failed: %s" % e)
    return EigenvalueList(_pair_conjugates(list(spectrum)))


def _vector_from_chi(w: np.ndarray, m: int) -> List[Quaternion]:
    w1, w2 = w[:m], w[m:]
    return [Quaternion(float(a.real), float(a.imag), float(b.real), float(-b.imag)) for a, b in zip(w1, w2)]


def _null_vector(M: np.ndarray, lam: complex) -> np.ndarray:
    _, _, vh = np.linalg.svd(M - lam * np.eye(M.shape[0]))
    return vh[-1].conj()


def _right_residual(B: QMatrix, v: List[Quaternion], lam: Quaternion) -> float:
    Bv = B * QMatrix.from_columns([v])
    vl = QMatrix.from_columns([[q * lam for q in v]])
    return (Bv - vl).frobenius_norm()


def right_eigenvector(B: QMatrix, lam: complex, guard: float = 1e-6) -> List[Quaternion]:
    """
    Quaternionic v ≠ 0 with B v = v λ for a complex λ in B's spectrum.
    Falls back to v'·𝗃 where B v' = v' λ̄ when the direct vector fails the guard.
    """
    m = B.rows
    M = chi(B).to_numpy()
    lam_q = Quaternion(lam.real, lam.imag)
    scale = max(1.0, B.frobenius_norm())
    v = _vector_from_chi(_null_vector(M, lam), m)
    if _right_residual(B, v, lam_q) <= guard * scale:
        return v
    logger.warning("eigenvector guard failed for %s, trying the conjugate eigenvector", lam)
    v_conj = _vector_from_chi(_null_vector(M, lam.conjugate()), m)
    jq = Quaternion(0.0, 0.0, 1.0, 0.0)
    v = [q * jq for q in v_conj]
    if _right_residual(B, v, lam_q) <= guard * scale:
        return v
    raise NoConvergence("no quaternionic eigenvector found for eigenvalue %s" % lam)


def _embed(W: QMatrix, n: int) -> QMatrix:
    """ diag(I_s, W) with s = n − size(W). """
    s = n - W.rows
    entries = []
    for i in range(n):
        for j in range(n):
            if i < s or j < s:
                entries.append(Quaternion(1.0) if i == j else Quaternion(0.0))
            else:
                entries.append(W[i - s, j - s])
    return QMatrix(n, n, entries)


def schur(A: QMatrix, order: Optional[Sequence[int]] = None, max_n: int = EIG_MAX_N,
          residual_tol: float = 1e-8) -> Tuple[QMatrix, QMatrix]:
    """
    Quaternionic Schur form: U ∈ Sp(n) and upper triangular T = U A U* whose diagonal holds the
    eigenvalues (complex, Im ≥ 0) in the requested order.

    :param order: permutation of range(n) indexing into `eigenvalues(A)`; identity by default
    """
    _check_size(A, max_n)
    n = A.rows
    A = A.to_float()
    eigs = eigenvalues(A, max_n)
    order = list(range(n)) if order is None else list(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of range(%d), got %r" % (n, order))
    targets = [eigs[k] for k in order]

    Q = QMatrix.identity(n, exact=False)
    B = A
    for s in range(n):
        sub = B.submatrix(range(s, n), range(s, n))
        v = right_eigenvector(sub, targets[s])
        W = _embed(complete_unitary(v), n)
        Q = Q * W
        B = adjoint(W) * B * W

    zero = Quaternion(0.0)
    entries = []
    for i in range(n):
        for j in range(n):
            if i > j:
                entries.append(zero)
            elif i == j:
                d = B[i, i]
                entries.append(Quaternion(d.a, abs(d.b)) if d.is_complex(1e-6) else d)
            else:
                entries.append(B[i, j])
    T = QMatrix(n, n, entries)
    U = adjoint(Q)
    residual = (U * A * adjoint(U) - T).frobenius_norm()
    bound = residual_tol if eigs.min_gap() > DEFECTIVE_GAP else max(residual_tol, DEFECTIVE_RESIDUAL)
    if residual > bound * max(1.0, A.frobenius_norm()):
        raise NoConvergence("Schur residual %g exceeds tolerance" % residual)
    return U, T


def random_generic(n: int, rng: np.random.Generator, gap: float = 1e-6, max_tries: int = 100) -> QMatrix:
    """ Float matrix whose eigenvalues are pairwise at distance >= gap. """
    for _ in range(max_tries):
        A = random_matrix(n, rng, exact=False)
        if eigenvalues(A).min_gap() >= gap:
            return A
    raise NoConvergence("no generic sample in %d tries" % max_tries)
