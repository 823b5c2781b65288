""" Membership in W₂, the simultaneously triangularizable pairs of 2x2 quaternionic matrices.

(A, B) ∈ W₂ iff some nonzero v ∈ ℍ² spans a right line invariant under both, Av = vα and
Bv = vβ. The invariant lines of A are found by cases on its spectrum:

  (i)   distinct eigenvalues: exactly two invariant lines, the first Schur vectors for the two
        orderings of the eigenvalues;
  (ii)  A a real scalar: every line, so B alone decides (always a member);
  (iii) a repeated non-real eigenvalue λ with A diagonalizable: after conjugating A to
        diag(λ, λ) the invariant lines are v·ℍ with v ∈ ℂ², since Av = vλ forces λvᵢ = vᵢλ;
  (iv)  a repeated eigenvalue with A not diagonalizable: a single invariant line.

The spectrum is read off the characteristic polynomial of χ(A), computed from the power sums
Tr(Aᵏ). Both eigenvalues of A lie in one similarity class exactly when that polynomial is
(z² − 2az + r)² with r ≥ a². The quadratic has real coefficients, so K = A² − 2aA + r
(or A − a when the eigenvalue is real, r = a²) is a matrix over ℍ commuting with A. K = 0 means A
is diagonalizable; otherwise K has rank one and its range is the invariant line of case (iv).
For rational input these steps are exact, and case (iv) is decided without rounding.

In case (iii) write the transformed B as P + 𝗃R with complex P, R. For complex v,
B v = v(β₁ + 𝗃β₂) splits into Pv = vβ₁ and Rv = v̄β₂, so v must be an eigenvector of P
and a coneigenvector of R. When P is scalar the second condition alone remains; it is
solvable iff R R̄ has a nonnegative real eigenvalue.

A generic matrix of the pair is always analysed first. Every positive verdict carries a
conjugator P with P A P⁻¹ and P B P⁻¹ upper triangular, re-validated before it is returned.
"""
import logging
import math
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from quatlab.config import Tolerances
from quatlab.errors import InconsistentResult, ShapeMismatch
from quatlab.jsonable import Jsonable, RealScalar
from quatlab.qmatrix import QMatrix, adjoint, complete_unitary, inverse, qtrace
from quatlab.quaternion import Quaternion
from quatlab.spectral import eigenvalues, schur

logger = logging.getLogger(__name__)

WITNESS_TOL = 1e-7

GENERIC = "generic"
SCALAR = "scalar"
DIAGONALIZABLE = "diagonalizable"
DEFECTIVE = "defective"


class W2Verdict(Jsonable):
    def __init__(self, member: bool, case: str, witness: Optional[QMatrix] = None, residual: float = 0.0) -> None:
        self.member = member
        self.case = case
        self.witness = witness
        self.residual = residual

    def __bool__(self) -> bool:
        return self.member

    def to_json(self) -> Dict[str, Any]:
        return {"member": self.member, "case": self.case,
                "witness": None if self.witness is None else self.witness.to_json(),
                "residual": self.residual}

    def __repr__(self) -> str:
        return "W2Verdict(member=%s, case=%r)" % (self.member, self.case)


def conjugation_residual(P: QMatrix, A: QMatrix, B: QMatrix) -> float:
    """ Largest |(P X P⁻¹)[1,0]| / ‖X‖ over X = A, B. Computed exactly when all three are exact. """
    if not (P.is_exact and A.is_exact and B.is_exact):
        P, A, B = P.to_float(), A.to_float(), B.to_float()
    P_inv = inverse(P)
    worst = 0.0
    for X in (A, B):
        norm = X.frobenius_norm()
        if norm > 0.0:
            worst = max(worst, (P * X * P_inv)[1, 0].norm() / norm)
    return worst


def _normalized(X: QMatrix) -> QMatrix:
    norm = X.frobenius_norm()
    return X if norm == 0.0 else X * (1.0 / norm)


def _as_float(X: QMatrix) -> QMatrix:
    return _normalized(X.to_float())


def _swap() -> QMatrix:
    return QMatrix.from_rows([[0, 1], [1, 0]])


# ---------------------------- classification ----------------------------

class _Shape(object):
    """ Spectral type of one matrix of the pair; `line` spans the invariant line when defective. """
    def __init__(self, kind: str, line: Optional[List[Quaternion]] = None) -> None:
        self.kind = kind
        self.line = line


def _quadratic(X: QMatrix) -> Tuple[RealScalar, RealScalar, RealScalar, RealScalar]:
    """ (a, r, e₃, e₄) with e₁ = 4a and e₂ = 4a² + 2r for the characteristic polynomial of χ(X). """
    p1, p2, p3, p4 = (qtrace(X ** k) for k in range(1, 5))
    e1 = p1
    e2 = (e1 * p1 - p2) / 2
    e3 = (e2 * p1 - e1 * p2 + p3) / 3
    e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4
    a = e1 / 4
    r = (e2 - 4 * a * a) / 2
    return a, r, e3, e4


def _annihilator(X: QMatrix, a: RealScalar, r: RealScalar, real_eigenvalue: bool) -> QMatrix:
    ident = QMatrix.identity(2, exact=X.is_exact)
    if real_eigenvalue:
        return X - ident * a
    return X * X - X * (2 * a) + ident * r


def _widest_column(K: QMatrix) -> List[Quaternion]:
    k = max(range(K.cols), key=lambda j: sum(float(q.norm_sq()) for q in K.column(j)))
    return K.column(k)


def _exact_shape(X: QMatrix) -> _Shape:
    a, r, e3, e4 = _quadratic(X)
    if e3 != 4 * a * r or e4 != r * r or r < a * a:
        return _Shape(GENERIC)
    K = _annihilator(X, a, r, r == a * a)
    if K.is_zero():
        return _Shape(SCALAR if r == a * a else DIAGONALIZABLE)
    return _Shape(DEFECTIVE, _widest_column(K))


def _float_shape(X: QMatrix, tol: Tolerances) -> _Shape:
    """ X is float with unit norm. """
    a = 0.5 * (X[0, 0].a + X[1, 1].a)
    if (X - QMatrix.identity(2, exact=False) * a).frobenius_norm() <= tol.eig_equal:
        return _Shape(SCALAR)
    eigs = eigenvalues(X)
    if eigs.min_gap() > tol.eig_gap:
        return _Shape(GENERIC)
    real_eigenvalue = 0.5 * (eigs[0].imag + eigs[1].imag) <= tol.eig_gap
    a, r, _, _ = _quadratic(X)
    K = _annihilator(X, a, r, real_eigenvalue)
    if K.frobenius_norm() <= tol.eig_equal:
        return _Shape(SCALAR if real_eigenvalue else DIAGONALIZABLE)
    line = _widest_column(K)
    norm = math.sqrt(sum(float(q.norm_sq()) for q in line))
    return _Shape(DEFECTIVE, [q / norm for q in line])


# ---------------------------- complex helpers for case (iii) ----------------------------

def _split(X: QMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """ X = P + 𝗃R with complex P, R: an entry a + b𝗂 + c𝗃 + d𝗄 gives P = a + b𝗂, R = c − d𝗂. """
    P = np.array([[complex(X[i, j].a, X[i, j].b) for j in range(2)] for i in range(2)])
    R = np.array([[complex(X[i, j].c, -X[i, j].d) for j in range(2)] for i in range(2)])
    return P, R


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _coneigenvector(R: np.ndarray, tol: float) -> Optional[np.ndarray]:
    """ v ≠ 0 with R v = μ v̄ for a real μ ≥ 0, or None. """
    sig, vecs = np.linalg.eig(R @ R.conj())
    for k in range(len(sig)):
        s = sig[k]
        if abs(s.imag) > tol or s.real < -tol:
            continue
        mu = np.sqrt(max(s.real, 0.0))
        x = vecs[:, k]
        y = R @ x.conj() + mu * x
        v = y.conj() if np.linalg.norm(y) > 1e-6 else 1j * x.conj()
        v = _unit(v)
        if np.linalg.norm(R @ v - mu * v.conj()) <= 1e3 * tol:
            return v
    return None


def _complex_candidates(P: np.ndarray, R: np.ndarray, tol: Tolerances, scale: float) -> List[np.ndarray]:
    p = 0.5 * np.trace(P)
    N = P - p * np.eye(2)
    if np.linalg.norm(N) <= tol.eig_equal * scale:
        v = _coneigenvector(R, tol.eig_equal * scale)
        return [] if v is None else [v]
    vals, vecs = np.linalg.eig(P)
    if abs(vals[0] - vals[1]) > tol.eig_gap * scale:
        return [_unit(vecs[:, 0]), _unit(vecs[:, 1])]
    # a single eigenvector: the range of the nilpotent P − p
    k = int(np.argmax(np.linalg.norm(N, axis=0)))
    return [_unit(N[:, k])]


def _is_coneigen(R: np.ndarray, v: np.ndarray, tol: float) -> bool:
    Rv = R @ v
    vb = v.conj()
    return abs(Rv[0] * vb[1] - Rv[1] * vb[0]) <= tol


# ---------------------------- cases ----------------------------

def _first_line_test(U: QMatrix, B: QMatrix, tol: Tolerances) -> bool:
    return (U * B * adjoint(U))[1, 0].norm() <= tol.triangular


def _case_generic(A: QMatrix, B: QMatrix, tol: Tolerances) -> Optional[QMatrix]:
    for order in ([0, 1], [1, 0]):
        U, _ = schur(A, order)
        if _first_line_test(U, B, tol):
            return U
    return None


def _line_conjugator(v: List[Quaternion]) -> QMatrix:
    """ P with P v ∈ e₁ℍ. Exact for an exact v. """
    if not all(q.is_exact for q in v):
        return adjoint(complete_unitary(v))
    zero, one = Quaternion(0), Quaternion(1)
    other = [zero, one] if not v[0].is_zero() else [one, zero]
    return inverse(QMatrix.from_columns([v, other]))


def _keeps_line(B: QMatrix, v: List[Quaternion], tol: Tolerances) -> bool:
    """ B v ∈ v ℍ. """
    if B.is_exact and all(q.is_exact for q in v):
        Bv = (B * QMatrix.from_columns([v])).column(0)
        k = 0 if not v[0].is_zero() else 1
        beta = v[k].inverse() * Bv[k]
        return all(Bv[i] == v[i] * beta for i in range(2))
    B = _as_float(B)
    Bv = (B * QMatrix.from_columns([v])).column(0)
    beta = v[0].conj() * Bv[0] + v[1].conj() * Bv[1]
    residual = math.sqrt(sum(float((Bv[i] - v[i] * beta).norm_sq()) for i in range(2)))
    return residual <= math.sqrt(tol.triangular)


def _case_defective(line: List[Quaternion], B: QMatrix, tol: Tolerances) -> Optional[QMatrix]:
    return _line_conjugator(line) if _keeps_line(B, line, tol) else None


def _case_diagonalizable(A: QMatrix, B: QMatrix, tol: Tolerances) -> Optional[QMatrix]:
    """ A is float, diagonalizable, with a repeated non-real eigenvalue. """
    U, T = schur(A)
    lam = 0.5 * (T[0, 0] + T[1, 1])
    t = T[0, 1]
    # diagonalize: S T S⁻¹ = diag(λ, λ) with S = [[1, x], [0, 1]], x = 𝗃w, w(λ̄ − λ) = t₂
    t2 = complex(t.c, -t.d)
    lam_c = complex(lam.a, lam.b)
    w = t2 / (lam_c.conjugate() - lam_c)
    x = Quaternion(0.0, 0.0, w.real, -w.imag)
    S = QMatrix.from_rows([[1.0, x], [0.0, 1.0]])
    S_inv = QMatrix.from_rows([[1.0, -x], [0.0, 1.0]])
    Bt = S * U * B * adjoint(U) * S_inv
    P, R = _split(Bt)
    scale = max(1.0, Bt.frobenius_norm())
    for v in _complex_candidates(P, R, tol, scale):
        if not _is_coneigen(R, v, math.sqrt(tol.triangular) * scale):
            continue
        W = complete_unitary([Quaternion(float(z.real), float(z.imag)) for z in v])
        return adjoint(W) * S * U
    return None


def _any_line(X: QMatrix, shape: _Shape) -> QMatrix:
    """ A conjugator triangularizing X alone. """
    if shape.kind == SCALAR:
        return QMatrix.identity(2, exact=X.is_exact)
    if shape.kind == DEFECTIVE:
        return _line_conjugator(shape.line)
    return schur(_as_float(X))[0]


def _decide(A: QMatrix, shape_a: _Shape, B: QMatrix, shape_b: _Shape, tol: Tolerances) -> Tuple[str, Optional[QMatrix]]:
    if shape_a.kind == GENERIC:
        return "i", _case_generic(_as_float(A), _as_float(B), tol)
    if shape_b.kind == GENERIC:
        logger.debug("first matrix is degenerate (%s), deciding through the second", shape_a.kind)
        return "i", _case_generic(_as_float(B), _as_float(A), tol)
    if shape_a.kind == SCALAR:
        return "ii", _any_line(B, shape_b)
    if shape_b.kind == SCALAR:
        return "ii", _any_line(A, shape_a)
    if shape_a.kind == DEFECTIVE:
        return "iv", _case_defective(shape_a.line, B, tol)
    if shape_b.kind == DEFECTIVE:
        return "iv", _case_defective(shape_b.line, A, tol)
    return "iii", _case_diagonalizable(_as_float(A), _as_float(B), tol)


def w2_membership(A: QMatrix, B: QMatrix, tol: Optional[Tolerances] = None) -> W2Verdict:
    """
    Decides whether (A, B) is simultaneously triangularizable over ℍ.
    """
    tol = tol or Tolerances()
    if A.shape != (2, 2) or B.shape != (2, 2):
        raise ShapeMismatch("W2 membership is for pairs of 2x2 matrices, got %s and %s" % (A.shape, B.shape))
    if A.is_exact and B.is_exact:
        if A.is_upper_triangular() and B.is_upper_triangular():
            return W2Verdict(True, "triangular", QMatrix.identity(2), 0.0)
        if A[0, 1].is_zero() and B[0, 1].is_zero():
            return W2Verdict(True, "triangular", _swap(), 0.0)
        shape_a, shape_b = _exact_shape(A), _exact_shape(B)
    else:
        A, B = _as_float(A), _as_float(B)
        shape_a, shape_b = _float_shape(A, tol), _float_shape(B, tol)

    case, witness = _decide(A, shape_a, B, shape_b, tol)
    if witness is None:
        return W2Verdict(False, case)
    residual = conjugation_residual(witness, A, B)
    if residual > WITNESS_TOL:
        raise InconsistentResult("witness for case (%s) leaves residual %g" % (case, residual))
    return W2Verdict(True, case, witness, residual)
