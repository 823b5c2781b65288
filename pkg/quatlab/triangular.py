""" Triangularizability of quaternionic matrix algebras and pairs.

A unital subalgebra 𝒜 ⊆ Mₙ(ℍ) is triangularizable iff sums of nilpotents in 𝒜 stay nilpotent,
iff products with a nilpotent factor stay nilpotent, iff Tr([A,B]²) ≤ 0 on 𝒜. Those universal
conditions are checked here by randomized refuters only. Quasi-triangularizability (block upper
triangular with diagonal blocks in ℍ or M₂(ℂ)) is equivalent to Tr([A,B]³) ≡ 0 on 𝒜, a
bihomogeneous form of bidegree (3,3) in the coordinates of A and B, and is decided exactly.
"""
import itertools
import logging
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from quatlab.config import Tolerances
from quatlab.errors import DimensionTooLarge, InconsistentResult, NotGeneric, ShapeMismatch
from quatlab.exact_linalg import ExactSpan
from quatlab.jsonable import Jsonable, PropertyReport, RealScalar, getIntKey, getListKey
from quatlab.qmatrix import (CMatrix, QMatrix, chi, commutator, inverse, power, qtrace, random_invertible,
                             random_complex_matrix, random_upper, real_block)
from quatlab.quaternion import Quaternion, is_similar
from quatlab.spectral import eigenvalues

logger = logging.getLogger(__name__)

QT_MAX_DIMENSION = 12


# ---------------------------- Algebra closure ----------------------------

def _coords(A: QMatrix) -> List[Fraction]:
    return [x for q in A.entries for x in q.parts()]


def integer_scaled(A: QMatrix) -> QMatrix:
    """ The primitive integer matrix on the ray of an exact matrix. """
    parts = _coords(A)
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(x).denominator for x in parts), 1)
    ints = [int(Fraction(x) * den) for x in parts]
    g = reduce(gcd, (abs(x) for x in ints), 0) or 1
    return QMatrix(A.rows, A.cols, [Quaternion(*[Fraction(x // g) for x in ints[4 * k:4 * k + 4]])
                                    for k in range(A.rows * A.cols)])


class AlgebraBasis(Jsonable):
    """
    Linearly independent exact matrices spanning a unital ℝ-subalgebra of Mₙ(ℍ); the identity comes first.
    """
    def __init__(self, n: int, elements: Sequence[QMatrix]) -> None:
        self.n = n
        self.elements = list(elements)

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def combination(self, coeffs: Sequence[Any]) -> QMatrix:
        acc = QMatrix.zeros(self.n)
        for c, e in zip(coeffs, self.elements):
            if c:
                acc = acc + e * c
        return acc

    def random_element(self, rng: np.random.Generator, bound: int = 3) -> QMatrix:
        return self.combination([int(c) for c in rng.integers(-bound, bound + 1, size=self.dimension)])

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "dimension": self.dimension, "elements": [e.to_json() for e in self.elements]}

    @staticmethod
    def from_json(data: Any) -> "AlgebraBasis":
        return AlgebraBasis(getIntKey(data, "n"), [QMatrix.from_json(e) for e in getListKey(data, "elements")])


def algebra_closure(gens: Sequence[QMatrix], n: Optional[int] = None) -> AlgebraBasis:
    """
    Basis of the smallest unital subalgebra containing `gens`: products of basis elements are
    added until the span stops growing (dimension at most 4n²).
    """
    if n is None:
        if not gens:
            raise ShapeMismatch("the matrix size n is required when there are no generators")
        n = gens[0].rows
    for g in gens:
        if g.shape != (n, n):
            raise ShapeMismatch("generator of shape %s in an algebra of %dx%d matrices" % (g.shape, n, n))
        if not g.is_exact:
            raise ShapeMismatch("algebra closure needs exact generators")
    span = ExactSpan()
    span.add(_coords(QMatrix.identity(n)), QMatrix.identity(n))
    for g in gens:
        span.add(_coords(g), integer_scaled(g))
    done = 0
    while done < len(span.members):
        # products of the newest members with everything seen so far, both orders
        new = span.members[done]
        done += 1
        for other in list(span.members[:done]):
            for prod in (new * other, other * new):
                if not prod.is_zero():
                    span.add(_coords(prod), integer_scaled(prod))
    logger.debug("closure of %d generators has dimension %d", len(gens), span.dim)
    return AlgebraBasis(n, span.members)


def upper_triangular_basis(n: int) -> AlgebraBasis:
    """ Standard basis of the upper triangular algebra 𝒰ₙ. """
    return _unit_basis(n, [(i, j) for i in range(n) for j in range(i, n)])


def full_matrix_basis(n: int) -> AlgebraBasis:
    return _unit_basis(n, [(i, j) for i in range(n) for j in range(n)])


def real_matrix_basis(n: int) -> AlgebraBasis:
    """ Mₙ(ℝ) inside Mₙ(ℍ). """
    return _unit_basis(n, [(i, j) for i in range(n) for j in range(n)], units=(Quaternion(1),))


def complex_matrix_basis(n: int) -> AlgebraBasis:
    """ Mₙ(ℂ) inside Mₙ(ℍ). """
    return _unit_basis(n, [(i, j) for i in range(n) for j in range(n)], units=(Quaternion(1), Quaternion(0, 1)))


def _unit_basis(n: int, positions: Sequence[Tuple[int, int]],
                units: Sequence[Quaternion] = (Quaternion(1), Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1))
                ) -> AlgebraBasis:
    elements = [QMatrix.identity(n)]
    span = ExactSpan()
    span.add(_coords(elements[0]))
    for (i, j) in positions:
        for u in units:
            E = QMatrix(n, n, [u if (r, c) == (i, j) else Quaternion(0) for r in range(n) for c in range(n)])
            if span.add(_coords(E)):
                elements.append(E)
    return AlgebraBasis(n, elements)


# ---------------------------- Randomized refuters ----------------------------

class RefutationResult(Jsonable):
    """ passed means no counterexample turned up; a failure carries the witness pair. """
    def __init__(self, test: str, passed: bool, witness: Optional[Tuple[QMatrix, QMatrix]] = None,
                 value: Any = None, trials: int = 0) -> None:
        self.test = test
        self.passed = passed
        self.witness = witness
        self.value = value
        self.trials = trials

    def to_json(self) -> Dict[str, Any]:
        return {"test": self.test, "passed": self.passed, "trials": self.trials,
                "witness": None if self.witness is None else [m.to_json() for m in self.witness],
                "value": None if self.value is None else str(self.value)}


def tr_comm_power(A: QMatrix, B: QMatrix, k: int) -> RealScalar:
    return qtrace(power(commutator(A, B), k))


def tr_comm_square_test(basis: AlgebraBasis, samples: int = 200, rng: Optional[np.random.Generator] = None
                        ) -> RefutationResult:
    """ Searches for A, B in the algebra with Tr([A,B]²) > 0, basis pairs first. """
    rng = rng if rng is not None else np.random.default_rng(0)
    trials = 0
    pairs = itertools.combinations(basis.elements, 2)
    randoms = ((basis.random_element(rng), basis.random_element(rng)) for _ in range(samples))
    for A, B in itertools.chain(pairs, randoms):
        trials += 1
        value = tr_comm_power(A, B, 2)
        if value > 0:
            return RefutationResult("tr_comm_square", False, (A, B), value, trials)
    return RefutationResult("tr_comm_square", True, trials=trials)


def is_nilpotent(A: QMatrix) -> bool:
    """ χₙ(A)^{2n} = 0, exactly. """
    return power(chi(A), 2 * A.rows).is_zero()


def nilpotent_closure_test(basis: AlgebraBasis, mode: str = "sum", samples: int = 200,
                           rng: Optional[np.random.Generator] = None) -> RefutationResult:
    """
    mode 'sum': nilpotent + nilpotent must be nilpotent; mode 'product': nilpotent times anything
    must be nilpotent (both orders). Nilpotents are harvested from basis elements, their pairwise
    products and commutators.
    """
    if mode not in ("sum", "product"):
        raise ValueError("mode must be 'sum' or 'product', got %r" % mode)
    rng = rng if rng is not None else np.random.default_rng(0)
    candidates = list(basis.elements)
    for a, b in itertools.combinations(basis.elements, 2):
        candidates.extend([a * b, b * a, commutator(a, b)])
    nilpotents = [c for c in candidates if not c.is_zero() and is_nilpotent(c)]
    trials = 0
    if not nilpotents:
        return RefutationResult("nilpotent_" + mode, True, trials=0)

    def random_nilpotent_combination() -> QMatrix:
        picks = rng.choice(len(nilpotents), size=min(2, len(nilpotents)), replace=False)
        acc = QMatrix.zeros(basis.n)
        for k in picks:
            acc = acc + nilpotents[int(k)] * int(rng.integers(1, 4))
        return acc

    if mode == "sum":
        pairs = list(itertools.combinations(nilpotents, 2))
        pairs += [(random_nilpotent_combination(), random_nilpotent_combination()) for _ in range(samples)]
        for N1, N2 in pairs:
            trials += 1
            if not is_nilpotent(N1 + N2):
                return RefutationResult("nilpotent_sum", False, (N1, N2), trials=trials)
    else:
        others = list(basis.elements) + [basis.random_element(rng) for _ in range(samples)]
        for N in nilpotents:
            for X in others:
                trials += 1
                if not is_nilpotent(N * X) or not is_nilpotent(X * N):
                    return RefutationResult("nilpotent_product", False, (N, X), trials=trials)
    return RefutationResult("nilpotent_" + mode, True, trials=trials)


# ---------------------------- Quasi-triangularizability ----------------------------

class QTResult(Jsonable):
    def __init__(self, dimension: int, quasi_triangularizable: bool,
                 witness_pair: Optional[Tuple[QMatrix, QMatrix]] = None, value: Any = None) -> None:
        self.dimension = dimension
        self.quasi_triangularizable = quasi_triangularizable
        self.witness_pair = witness_pair
        self.value = value

    def __bool__(self) -> bool:
        return self.quasi_triangularizable

    def to_json(self) -> Dict[str, Any]:
        return {"dimension": self.dimension, "quasi_triangularizable": self.quasi_triangularizable,
                "witness_pair": None if self.witness_pair is None else [m.to_json() for m in self.witness_pair],
                "value": None if self.value is None else str(self.value)}


def _simplex_points(d: int, degree: int = 3) -> np.ndarray:
    """ All nonnegative integer vectors of length d with coordinate sum `degree`. """
    pts = []
    for combo in itertools.combinations_with_replacement(range(d), degree):
        v = [0] * d
        for i in combo:
            v[i] += 1
        pts.append(v)
    return np.array(pts, dtype=np.int64)


def quasi_triangularizable(basis: AlgebraBasis, max_dimension: int = QT_MAX_DIMENSION) -> QTResult:
    """
    Decides Tr([A,B]³) ≡ 0 on the span of `basis`. The form has degree 3 in the coordinates of A
    and of B, so it vanishes identically iff it vanishes on the product of the two degree-3
    simplex lattices; each lattice is unisolvent for cubic forms.
    """
    d = basis.dimension
    if d > max_dimension:
        raise DimensionTooLarge("algebra of dimension %d exceeds the bound %d" % (d, max_dimension))
    elems = [integer_scaled(e) for e in basis.elements]
    comms = [[real_block(commutator(ei, ej)) for ej in elems] for ei in elems]
    m = 4 * basis.n
    C = np.empty((d, d, m, m), dtype=object)
    for i in range(d):
        for j in range(d):
            C[i, j] = comms[i][j]
    cmax = max((abs(int(x)) for x in C.reshape(-1)), default=0)
    if cmax == 0:
        return QTResult(d, True)
    bound = m * (m * 9 * cmax) ** 3
    if bound < (1 << 62):
        C = C.astype(np.int64)
    pts = _simplex_points(d)
    if C.dtype == object:
        pts = pts.astype(object)
    for a in pts:
        D = np.tensordot(a, C, axes=(0, 0))             # D[j] = Σᵢ aᵢ [eᵢ, eⱼ]
        M = np.tensordot(pts, D, axes=(1, 0))           # one commutator per b
        traces = np.trace(M @ M @ M, axis1=1, axis2=2)
        hits = np.nonzero(traces)[0]
        if len(hits):
            b = pts[int(hits[0])]
            A = basis_combination(elems, a)
            B = basis_combination(elems, b)
            value = tr_comm_cube(A, B)
            if 2 * value != int(traces[int(hits[0])]):
                raise InconsistentResult("real block trace %s disagrees with Tr([A,B]^3) = %s"
                                         % (traces[int(hits[0])], value))
            return QTResult(d, False, (A, B), value)
    return QTResult(d, True)


def basis_combination(elems: Sequence[QMatrix], coeffs: Sequence[Any]) -> QMatrix:
    acc = QMatrix.zeros(elems[0].rows)
    for c, e in zip(coeffs, elems):
        if int(c):
            acc = acc + e * int(c)
    return acc


def is_quasi_triangularizable(basis: AlgebraBasis, max_dimension: int = QT_MAX_DIMENSION) -> bool:
    return quasi_triangularizable(basis, max_dimension).quasi_triangularizable


def tr_comm_cube(A: QMatrix, B: QMatrix, tol: float = 1e-9) -> RealScalar:
    """
    Tr([A,B]³) computed three ways: directly, as 3·Tr(A²B²AB − B²A²BA) and as −3·Tr(AB²A[A,B]).
    """
    if A.shape != B.shape:
        raise ShapeMismatch("shapes %s and %s differ" % (A.shape, B.shape))
    C = commutator(A, B)
    A2, B2 = A * A, B * B
    direct = qtrace(C * C * C)
    second = 3 * (qtrace(A2 * B2 * A * B) - qtrace(B2 * A2 * B * A))
    third = -3 * qtrace(A * B2 * A * C)
    values = (direct, second, third)
    if A.is_exact and B.is_exact:
        agree = direct == second == third
    else:
        scale = max(1.0, abs(float(direct)))
        agree = all(abs(float(v) - float(direct)) <= tol * scale for v in values)
    if not agree:
        raise InconsistentResult("Tr([A,B]^3) formulas disagree: %s" % (values,))
    return direct


# Fixed pairs showing that the trace conditions fail for 2x2 blocks over ℍ and for 3x3 blocks
def real_square_witness() -> Tuple[QMatrix, QMatrix]:
    """ Tr([A,B]²) = 4 > 0 in M₂(ℝ). """
    return (QMatrix.from_rows([[1, 0], [0, 0]]), QMatrix.from_rows([[0, 1], [-1, 0]]))


def quaternion_cube_witness() -> Tuple[QMatrix, QMatrix]:
    """ Tr([A,B]³) = −12 in M₂(ℍ). """
    i, j = Quaternion(0, 1), Quaternion(0, 0, 1)
    return (QMatrix.from_rows([[0, 1], [0, j]]), QMatrix.from_rows([[0, 1], [i, 0]]))


def real_cube_witness() -> Tuple[QMatrix, QMatrix]:
    """ Tr([A,B]³) = −6 in M₃(ℝ). """
    return (QMatrix.from_rows([[0, 0, 0], [0, 1, 0], [1, 0, 0]]),
            QMatrix.from_rows([[1, 1, 0], [0, 0, 1], [0, 0, 0]]))


# ---------------------------- Pairs in Wₙ ----------------------------

def random_triangular_pair(n: int, rng: np.random.Generator, bound: int = 5) -> Tuple[QMatrix, QMatrix]:
    return random_upper(n, rng, True, bound), random_upper(n, rng, True, bound)


def sample_wn(n: int, rng: np.random.Generator, bound: int = 5, conj_bound: int = 3
              ) -> Tuple[QMatrix, QMatrix, QMatrix]:
    """ An exact simultaneously triangularizable pair (g T₁ g⁻¹, g T₂ g⁻¹) and the conjugator g. """
    T1, T2 = random_triangular_pair(n, rng, bound)
    g, g_inv = random_invertible(n, rng, True, conj_bound)
    return g * T1 * g_inv, g * T2 * g_inv, g


def fiber_check(A: QMatrix, B: QMatrix, tol: float = 0.0) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    """
    For diagonal A with pairwise non-similar diagonal entries, (A, B) is simultaneously
    triangularizable iff B ∈ P 𝒰ₙ P⁻¹ for a permutation matrix P: some ordering of the
    coordinates makes B upper triangular.

    :return: (member, ordering) with ordering[i] the coordinate placed at position i
    """
    A._require_square()
    n = A.rows
    if B.shape != A.shape:
        raise ShapeMismatch("shapes %s and %s differ" % (A.shape, B.shape))
    if any(not A[i, j].is_zero(tol) for i in range(n) for j in range(n) if i != j):
        raise NotGeneric("fiber_check needs a diagonal first matrix")
    diag = [A[i, i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if is_similar(diag[i], diag[j], tol or 1e-12):
                raise NotGeneric("diagonal entries %s and %s are similar" % (diag[i], diag[j]))
    for order in itertools.permutations(range(n)):
        if all(B[order[i], order[j]].is_zero(tol) for i in range(n) for j in range(i)):
            return True, order
    return False, None


def permutation_matrix(order: Sequence[int], exact: bool = True) -> QMatrix:
    """ P with (P X P⁻¹)[i][j] = X[order[i]][order[j]]. """
    n = len(order)
    one = Quaternion(1) if exact else Quaternion(1.0)
    zero = Quaternion(0) if exact else Quaternion(0.0)
    return QMatrix(n, n, [one if order[i] == j else zero for i in range(n) for j in range(n)])


def wn_property_suite(X: QMatrix, Y: QMatrix, k_max: int = 3, m_max: int = 3,
                      report: Optional[PropertyReport] = None) -> PropertyReport:
    """
    Checks on a simultaneously triangularizable pair: Tr([X,Y]^{2k−1}) = 0, Tr([X,Y]^{4k−2}) ≤ 0,
    Tr([X,Y]^{4k}) ≥ 0 and Tr(XᵏYᵏXᵐYᵐ − YᵏXᵏYᵐXᵐ) = 0.
    """
    report = report if report is not None else PropertyReport("wn_properties")
    out = report.collector
    C = commutator(X, Y)
    powers = {0: QMatrix.identity(X.rows, exact=C.is_exact)}
    for e in range(1, 4 * k_max + 1):
        powers[e] = powers[e - 1] * C
    for k in range(1, k_max + 1):
        odd = qtrace(powers[2 * k - 1])
        neg = qtrace(powers[4 * k - 2])
        pos = qtrace(powers[4 * k])
        report.count(3)
        if odd != 0:
            out.addViolation("odd_power", "Tr([X,Y]^%d) = %s" % (2 * k - 1, odd), {"k": k})
        if neg > 0:
            out.addViolation("power_4k-2", "Tr([X,Y]^%d) = %s > 0" % (4 * k - 2, neg), {"k": k})
        if pos < 0:
            out.addViolation("power_4k", "Tr([X,Y]^%d) = %s < 0" % (4 * k, pos), {"k": k})
    xp = {e: power(X, e) for e in range(1, m_max + 1)}
    yp = {e: power(Y, e) for e in range(1, m_max + 1)}
    for k in range(1, m_max + 1):
        for m in range(1, m_max + 1):
            d = qtrace(xp[k] * yp[k] * xp[m] * yp[m]) - qtrace(yp[k] * xp[k] * yp[m] * xp[m])
            report.count()
            if d != 0:
                out.addViolation("alternating_words", "difference %s" % d, {"k": k, "m": m})
    return report


def closure_pair_suite(A: QMatrix, B: QMatrix, samples: int = 50, rng: Optional[np.random.Generator] = None
                       ) -> PropertyReport:
    """
    For a 2x2 pair in W₂ and random X, Y in the algebra it generates:
    Tr([X,Y]³) = 0, Tr([X,Y]²) ≤ 0 and 2Tr([X,Y]⁴) ≤ (Tr([X,Y]²))² ≤ 4Tr([X,Y]⁴).
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    basis = algebra_closure([A, B])
    report = PropertyReport("closure_pair")
    report.details["dimension"] = basis.dimension
    out = report.collector
    for _ in range(samples):
        X, Y = basis.random_element(rng, 2), basis.random_element(rng, 2)
        C = commutator(X, Y)
        C2 = C * C
        t2, t3, t4 = qtrace(C2), qtrace(C2 * C), qtrace(C2 * C2)
        report.count(3)
        if t3 != 0:
            out.addViolation("cube", "Tr([X,Y]^3) = %s" % t3)
        if t2 > 0:
            out.addViolation("square", "Tr([X,Y]^2) = %s > 0" % t2)
        if not (2 * t4 <= t2 * t2 <= 4 * t4):
            out.addViolation("fourth_power", "bounds fail: Tr2 = %s, Tr4 = %s" % (t2, t4))
    return report


# ---------------------------- 2x2 complex pairs ----------------------------

class FriedlandReport(Jsonable):
    """ The five equivalent conditions for a pair in M₂(ℂ) to be simultaneously triangularizable. """
    KEYS = ("a", "b", "c", "d", "e")

    def __init__(self, values: Dict[str, bool]) -> None:
        self.values = values

    @property
    def agree(self) -> bool:
        return len(set(self.values.values())) == 1

    @property
    def triangularizable(self) -> bool:
        return self.values["a"]

    def to_json(self) -> Dict[str, Any]:
        out = dict(self.values)
        out["agree"] = self.agree
        return out


def _common_eigenvector_exists(A: CMatrix, B: CMatrix) -> bool:
    """ Exact search over the eigen-directions of A for one that B also preserves. """
    a, b, c, d = A[0, 0], A[0, 1], A[1, 0], A[1, 1]

    def preserved(v0: Quaternion, v1: Quaternion) -> bool:
        w0 = B[0, 0] * v0 + B[0, 1] * v1
        w1 = B[1, 0] * v0 + B[1, 1] * v1
        return (v0 * w1 - v1 * w0).is_zero()

    if b.is_zero():
        if a == d and c.is_zero():
            return True          # scalar A: any eigenvector of B will do
        candidates = [(Quaternion(0), Quaternion(1))]
        if a != d:
            candidates.append((a - d, c))
        return any(preserved(*v) for v in candidates)
    # v(λ) = (b, λ − a) is an eigenvector for each root λ of λ² − sλ + p
    s = a + d
    p = a * d - b * c
    # det[v, Bv] is quadratic in λ
    b00, b01, b10, b11 = B[0, 0], B[0, 1], B[1, 0], B[1, 1]
    # Bv = (b00 b + b01 (λ − a), b10 b + b11 (λ − a))
    # det = b·(b10 b + b11(λ − a)) − (λ − a)(b00 b + b01(λ − a))
    q2 = -b01
    q1 = b * b11 - b00 * b + 2 * a * b01
    q0 = b * b * b10 - a * b * b11 + a * b * b00 - a * a * b01
    # reduce modulo λ² = sλ − p
    r1 = q1 + q2 * s
    r0 = q0 - q2 * p
    if r1.is_zero():
        return r0.is_zero()
    lam = -r0 / r1
    return (lam * lam - s * lam + p).is_zero()


def friedland_check(A: CMatrix, B: CMatrix, strict: bool = True) -> FriedlandReport:
    """
    Conditions: (a) common eigenvector, (b) [A,B]² = 0, (c) tr([A,B]²) = 0,
    (d) tr(A²B² − (AB)²) = 0, (e) (2tr A² − (tr A)²)(2tr B² − (tr B)²) = (2tr AB − tr A tr B)².
    Exact for Gaussian-rational entries.
    """
    if A.shape != (2, 2) or B.shape != (2, 2):
        raise ShapeMismatch("Friedland conditions are for 2x2 complex matrices")
    C = commutator(A, B)
    C2 = C * C
    A2, B2, AB = A * A, B * B, A * B
    trA, trB = A.tr(), B.tr()
    lhs_e = (A2.tr() * 2 - trA * trA) * (B2.tr() * 2 - trB * trB)
    rhs_e = AB.tr() * 2 - trA * trB
    values = {
        "a": _common_eigenvector_exists(A, B),
        "b": C2.is_zero(),
        "c": C2.tr().is_zero(),
        "d": (A2 * B2 - AB * AB).tr().is_zero(),
        "e": (lhs_e - rhs_e * rhs_e).is_zero(),
    }
    report = FriedlandReport(values)
    if strict and not report.agree:
        raise InconsistentResult("Friedland conditions disagree: %s" % values)
    return report


def to_cmatrix(A: QMatrix) -> CMatrix:
    return CMatrix(A.rows, A.cols, A.entries)


def random_common_eigenvector_pair(rng: np.random.Generator, bound: int = 5) -> Tuple[CMatrix, CMatrix]:
    """ g T₁ g⁻¹, g T₂ g⁻¹ with complex upper triangular Tᵢ and complex invertible g, all exact. """
    T1 = random_complex_matrix(2, rng, True, bound)
    T2 = random_complex_matrix(2, rng, True, bound)
    zero = Quaternion(0)
    T1 = CMatrix(2, 2, [T1[0, 0], T1[0, 1], zero, T1[1, 1]])
    T2 = CMatrix(2, 2, [T2[0, 0], T2[0, 1], zero, T2[1, 1]])
    while True:
        g = random_complex_matrix(2, rng, True, 3)
        det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
        if not det.is_zero():
            break
    g_inv = to_cmatrix(inverse(g.as_qmatrix()))
    return g * T1 * g_inv, g * T2 * g_inv


# ---------------------------- Pure imaginary spectrum ----------------------------

class PureSpectrumReport(Jsonable):
    def __init__(self, conditions: Dict[str, bool], coefficients: Dict[str, Any],
                 spectrum_pure: Optional[bool] = None) -> None:
        self.conditions = conditions
        self.coefficients = coefficients
        self.spectrum_pure = spectrum_pure

    @property
    def holds(self) -> bool:
        return all(self.conditions.values())

    def to_json(self) -> Dict[str, Any]:
        return {"conditions": self.conditions, "holds": self.holds,
                "coefficients": {k: str(v) for k, v in self.coefficients.items()},
                "spectrum_pure": self.spectrum_pure}


def char_coefficients(A: QMatrix) -> Dict[str, RealScalar]:
    """
    For Tr A = Tr A³ = 0, χ₂(A) has characteristic polynomial z⁴ + e₂z² + e₄ with
    e₂ = −½·Tr A² and e₄ = ⅛·((Tr A²)² − 2·Tr A⁴).
    """
    A2 = A * A
    t2 = qtrace(A2)
    t4 = qtrace(A2 * A2)
    half = Fraction(1, 2) if A.is_exact else 0.5
    eighth = Fraction(1, 8) if A.is_exact else 0.125
    return {"e2": -half * t2, "e4": eighth * (t2 * t2 - 2 * t4)}


def pure_imaginary_eig_check(A: QMatrix, tol: Optional[Tolerances] = None) -> PureSpectrumReport:
    """
    Both eigenvalues of a 2x2 A are purely imaginary iff (1) Tr A = Tr A³ = 0, (2) Tr A² ≤ 0 and
    (3) 2Tr A⁴ ≤ (Tr A²)² ≤ 4Tr A⁴. Exact matrices get exact conditions; float matrices also have
    their spectrum computed and the equivalence asserted.
    """
    tol = tol or Tolerances()
    if A.shape != (2, 2):
        raise ShapeMismatch("expected a 2x2 matrix, got %dx%d" % A.shape)
    A2 = A * A
    t1, t2, t3, t4 = qtrace(A), qtrace(A2), qtrace(A2 * A), qtrace(A2 * A2)
    if A.is_exact:
        conditions = {"odd_traces_vanish": t1 == 0 and t3 == 0,
                      "square_trace_nonpositive": t2 <= 0,
                      "fourth_power_bounds": 2 * t4 <= t2 * t2 <= 4 * t4}
        return PureSpectrumReport(conditions, char_coefficients(A))
    scale = max(1.0, A.frobenius_norm())
    eps = tol.pure_spectrum
    conditions = {"odd_traces_vanish": abs(t1) <= eps * scale and abs(t3) <= eps * scale ** 3,
                  "square_trace_nonpositive": t2 <= eps * scale ** 2,
                  "fourth_power_bounds": (2 * t4 <= t2 * t2 + eps * scale ** 4) and (t2 * t2 <= 4 * t4 + eps * scale ** 4)}
    eigs = eigenvalues(A)
    pure = all(abs(z.real) <= eps * scale for z in eigs)
    report = PureSpectrumReport(conditions, char_coefficients(A), pure)
    if pure != report.holds:
        raise InconsistentResult("trace conditions (%s) disagree with spectrum %s" % (conditions, eigs))
    return report
