"""Sp(2)-equivalence of 2×2 quaternionic matrices.

Two matrices are unitarily similar iff their six trace invariants
(Tr A, Tr A², Tr A³, Tr A⁴, Tr AA*, Tr A²A*²) agree. The canonical set 𝒦 consists of upper
triangular [[α, z₁ + 𝗃z₃], [0, β]] with complex α, β in the closed upper half plane,
z₁, z₃ ≥ 0, and z₃ = 0 whenever α or β is real. Each class meets 𝒦 in at most two points
that differ by swapping α and β; `canonical_form` picks the lexicographically smaller
(Re, Im) eigenvalue for α.
"""
import cmath
import logging
import math
from fractions import Fraction
from typing import Any, List, Optional, Tuple

import numpy as np

from quatlab.config import Tolerances
from quatlab.errors import NotSquare, InconsistentResult
from quatlab.jsonable import Jsonable, JsonParsingError, RealScalar, decode_scalar, encode_scalar, getKey, getListKey
from quatlab.qmatrix import QMatrix, adjoint, power, qtrace
from quatlab.quaternion import Quaternion
from quatlab.spectral import schur

logger = logging.getLogger(__name__)

REAL_EIG_TOL = 1e-8


# ---------------------------- Invariants ----------------------------

class InvariantSix(Jsonable):
    """
    (p₁, …, p₆) = Tr(A, A², A³, A⁴, AA*, A²A*²).
    """
    def __init__(self, values: List[RealScalar]) -> None:
        if len(values) != 6:
            raise ValueError("six invariants expected, got %d" % len(values))
        self.values = tuple(values)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values)

    def __getitem__(self, k: int) -> RealScalar:
        """ 1-based access: inv[1] is p₁. """
        return self.values[k - 1]

    def differing(self, other: "InvariantSix", tol: Optional[Tolerances] = None) -> List[int]:
        """ 1-based indices where the invariants disagree; exact comparison when both sides are exact. """
        tol = tol if tol is not None else Tolerances()
        out = []
        for k, (a, b) in enumerate(zip(self.values, other.values), start=1):
            if self.is_exact and other.is_exact:
                if a != b:
                    out.append(k)
            else:
                a, b = float(a), float(b)
                if abs(a - b) > max(tol.invariant_abs, tol.invariant_rel * max(abs(a), abs(b))):
                    out.append(k)
        return out

    def to_json(self) -> list:
        return [encode_scalar(v) for v in self.values]

    @staticmethod
    def from_json(data: Any) -> "InvariantSix":
        if not isinstance(data, list) or len(data) != 6:
            raise JsonParsingError("Six invariants expected. ", data)
        return InvariantSix([decode_scalar(v, data) for v in data])

    def __repr__(self) -> str:
        return "InvariantSix(%s)" % (", ".join(str(v) for v in self.values))


def _require_2x2(A: QMatrix) -> None:
    if A.shape != (2, 2):
        raise NotSquare("expected a 2x2 matrix, got %dx%d" % A.shape)


def invariants(A: QMatrix) -> InvariantSix:
    _require_2x2(A)
    A2 = A * A
    As = adjoint(A)
    return InvariantSix([qtrace(A), qtrace(A2), qtrace(A2 * A), qtrace(A2 * A2),
                         qtrace(A * As), qtrace(A2 * As * As)])


# ---------------------------- Canonical set ----------------------------

class CanonicalUpper2(Jsonable):
    """
    An element [[α, z₁ + 𝗃z₃], [0, β]] of 𝒦.
    """
    def __init__(self, alpha: Quaternion, beta: Quaternion, z1: RealScalar, z3: RealScalar) -> None:
        self.alpha = alpha
        self.beta = beta
        self.z1 = z1
        self.z3 = z3

    def validate(self, tol: float = 0.0) -> List[str]:
        problems = []
        if not (self.alpha.is_complex(tol) and self.beta.is_complex(tol)):
            problems.append("alpha and beta must be complex")
        if self.alpha.b < -tol or self.beta.b < -tol:
            problems.append("alpha and beta need nonnegative imaginary parts")
        if self.z1 < -tol or self.z3 < -tol:
            problems.append("z1 and z3 must be nonnegative")
        if (abs(self.alpha.b) <= tol or abs(self.beta.b) <= tol) and abs(self.z3) > tol:
            problems.append("z3 must vanish when alpha or beta is real")
        return problems

    def matrix(self) -> QMatrix:
        z = Quaternion(self.z1, 0 * self.z1, self.z3, 0 * self.z3)
        return QMatrix.from_rows([[self.alpha, z], [self.alpha * 0, self.beta]])

    def p6(self) -> RealScalar:
        return p6_on_K(self)

    def close_to(self, other: "CanonicalUpper2", tol: float = 1e-7) -> bool:
        return (self.alpha.is_close(other.alpha, tol) and self.beta.is_close(other.beta, tol)
                and abs(float(self.z1) - float(other.z1)) <= tol and abs(float(self.z3) - float(other.z3)) <= tol)

    def swapped_close_to(self, other: "CanonicalUpper2", tol: float = 1e-7) -> bool:
        """ Equality up to exchanging α and β, which leaves z unchanged. """
        return self.close_to(other, tol) or (
            self.alpha.is_close(other.beta, tol) and self.beta.is_close(other.alpha, tol)
            and abs(float(self.z1) - float(other.z1)) <= tol and abs(float(self.z3) - float(other.z3)) <= tol)

    def to_json(self) -> dict:
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json(),
                "z1": encode_scalar(self.z1), "z3": encode_scalar(self.z3)}

    @staticmethod
    def from_json(data: Any) -> "CanonicalUpper2":
        return CanonicalUpper2(Quaternion.from_json(getKey(data, "alpha")), Quaternion.from_json(getKey(data, "beta")),
                               decode_scalar(getKey(data, "z1"), data), decode_scalar(getKey(data, "z3"), data))

    def __repr__(self) -> str:
        return "CanonicalUpper2(alpha=%s, beta=%s, z1=%s, z3=%s)" % (self.alpha, self.beta, self.z1, self.z3)


def p6_on_K(c: CanonicalUpper2) -> RealScalar:
    """
    ½p₆ = |α|⁴ + |β|⁴ + |α+β̄|²|z|² + z₁²(α−ᾱ)(β̄−β), where (α−ᾱ)(β̄−β) = 4·Im α·Im β.
    """
    a2 = c.alpha.norm_sq()
    b2 = c.beta.norm_sq()
    s = (c.alpha + c.beta.conj()).norm_sq()
    z2 = c.z1 * c.z1 + c.z3 * c.z3
    half = a2 * a2 + b2 * b2 + s * z2 + 4 * c.z1 * c.z1 * c.alpha.b * c.beta.b
    return 2 * half


def _unit_complex(theta: float) -> Quaternion:
    return Quaternion(math.cos(theta), math.sin(theta))


def canonical_form(A: QMatrix, residual_tol: float = 1e-8) -> Tuple[CanonicalUpper2, QMatrix]:
    """
    Reduces A to 𝒦: Schur form, then conjugation by diag(u, v) with unit u, v.

    :returns: (c, U) with U ∈ Sp(2) and U A U* = c.matrix() within `residual_tol`
    """
    _require_2x2(A)
    A = A.to_float()
    U, T = schur(A)
    alpha, beta = T[0, 0], T[1, 1]
    z = T[0, 1]
    c1 = complex(z.a, z.b)
    c2 = complex(z.c, -z.d)
    one = Quaternion(1.0)
    if abs(beta.b) <= REAL_EIG_TOL * max(1.0, beta.norm()):
        beta = Quaternion(beta.a, 0.0)
        u = one
        v = z / z.norm() if not z.is_zero(1e-300) else one
    elif abs(alpha.b) <= REAL_EIG_TOL * max(1.0, alpha.norm()):
        alpha = Quaternion(alpha.a, 0.0)
        u = z.conj() / z.norm() if not z.is_zero(1e-300) else one
        v = one
    else:
        theta1 = cmath.phase(c1) if c1 != 0 else 0.0
        theta2 = cmath.phase(c2) if c2 != 0 else 0.0
        u = _unit_complex(0.5 * (theta2 - theta1))
        v = _unit_complex(0.5 * (theta1 + theta2))
    D = QMatrix.diag(u, v)
    V = D * U
    K = V * A * adjoint(V)
    w = K[0, 1]
    c = CanonicalUpper2(alpha=Quaternion(alpha.a, abs(alpha.b)), beta=Quaternion(beta.a, abs(beta.b)),
                        z1=abs(w.a), z3=abs(w.c))
    if not c.alpha.b or not c.beta.b:
        c = CanonicalUpper2(c.alpha, c.beta, math.hypot(w.a, w.c), 0.0)
    residual = (K - c.matrix()).frobenius_norm()
    if residual > residual_tol * max(1.0, A.frobenius_norm()):
        raise InconsistentResult("canonical form residual %g exceeds %g" % (residual, residual_tol))
    return c, V


def equivalence_witness(A: QMatrix, B: QMatrix, tol: float = 1e-7) -> Optional[QMatrix]:
    """ V ∈ Sp(2) with V A V* = B, assembled from both canonical forms, or None. """
    cA, UA = canonical_form(A)
    cB, UB = canonical_form(B)
    if not cA.close_to(cB, tol * max(1.0, A.frobenius_norm())):
        return None
    return adjoint(UB) * UA


def differing_invariants(A: QMatrix, B: QMatrix, tol: Optional[Tolerances] = None) -> List[int]:
    return invariants(A).differing(invariants(B), tol)


def sp2_equivalent(A: QMatrix, B: QMatrix, tol: Optional[Tolerances] = None) -> bool:
    return not differing_invariants(A, B, tol)


def random_canonical(rng: np.random.Generator, real_probability: float = 0.25) -> CanonicalUpper2:
    """ A random element of 𝒦, with real α or β (and z₃ = 0) at the given rate. """
    def eig() -> Quaternion:
        if rng.random() < real_probability:
            return Quaternion(float(rng.standard_normal()), 0.0)
        return Quaternion(float(rng.standard_normal()), float(abs(rng.standard_normal())) + 0.1)
    alpha, beta = eig(), eig()
    z1 = float(abs(rng.standard_normal()))
    z3 = 0.0 if (alpha.b == 0.0 or beta.b == 0.0) else float(abs(rng.standard_normal()))
    return CanonicalUpper2(alpha, beta, z1, z3)


# ---------------------------- Minimality witnesses ----------------------------

class Table1Row(Jsonable):
    """ A pair agreeing on every invariant except p_k. """
    def __init__(self, k: int, A: QMatrix, B: QMatrix) -> None:
        self.k = k
        self.A = A
        self.B = B

    def check(self, tol: Optional[Tolerances] = None) -> List[int]:
        if tol is None and not (self.A.is_exact and self.B.is_exact):
            tol = Tolerances(invariant_rel=1e-9, invariant_abs=1e-9)
        return differing_invariants(self.A, self.B, tol)

    def to_json(self) -> dict:
        inv_a = invariants(self.A)
        inv_b = invariants(self.B)
        differing = self.check()
        return {"row": self.k, "A": self.A.to_json(), "B": self.B.to_json(),
                "p_A": inv_a.to_json(), "p_B": inv_b.to_json(),
                "differing_invariants": differing, "ok": differing == [self.k]}


def table1_witnesses() -> List[Table1Row]:
    r2, r3, r6 = math.sqrt(2.0), math.sqrt(3.0), math.sqrt(6.0)
    q = Quaternion
    zero = q(0)
    return [
        Table1Row(1, QMatrix.diag(q(r3, -1.0), q(-r3, 1.0)), QMatrix.diag(q(-r3, 1.0), q(-r3, -1.0))),
        Table1Row(2, QMatrix.from_rows([[q(2, 1), q(1)], [zero, q(-2, -1)]]),
                  QMatrix.from_rows([[q(1, 2), q(-1)], [zero, q(-1, -2)]])),
        Table1Row(3, QMatrix.diag(q(-1, 2), q(1)), QMatrix.diag(q(-1), q(1, 2))),
        Table1Row(4, QMatrix.from_rows([[q(0.0), q(r6, 0.0, 1.0)], [q(0.0), q(0.0, r2)]]),
                  QMatrix.from_rows([[q(0.0, 1.0), q(r3, 0.0, 2.0)], [q(0.0), q(0.0, -1.0)]])),
        Table1Row(5, QMatrix.zeros(2), QMatrix.from_rows([[zero, q(1)], [zero, zero]])),
        Table1Row(6, QMatrix.from_rows([[q(0, 1), q(1)], [zero, q(0, 1)]]),
                  QMatrix.from_rows([[q(0, 1), q(0, 0, 1)], [zero, q(0, 1)]])),
    ]


def table1_suite() -> Tuple[bool, List[dict]]:
    """ Every row must differ exactly at its own index. """
    reports = [row.to_json() for row in table1_witnesses()]
    for r in reports:
        if not r["ok"]:
            logger.warning("minimality row %d differs at %s", r["row"], r["differing_invariants"])
    return all(r["ok"] for r in reports), reports
