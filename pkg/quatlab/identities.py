""" Trace identities for quaternions and for 2×2 complex matrices.

One-parameter identities compare Tr(Π φ_p(sᵢ)φ_q(tᵢ)) with the same product with p and q swapped,
where φ_p(s) = e^{sp} for a pure quaternion p. They hold for pure unit p, q and arbitrary parameters,
and for arbitrary pure p, q when the parameters of each factor pair coincide (two or three pairs,
the three-pair case needing two equal parameters). They are transcendental, hence float only.

The discrete versions Tr(xᵐyᵐxⁿyⁿ) = Tr(yᵐxᵐyⁿxⁿ) (and the triple version for non-distinct
exponents) hold for all x, y ∈ ℍ and, with the standard trace, for all x, y ∈ M₂(ℂ). They are
checked exactly. Tr on ℍ is 2·Re.
"""
import itertools
import logging
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np

from quatlab.config import Tolerances
from quatlab.errors import GuardViolated, NotUnit
from quatlab.jsonable import PropertyReport, RealScalar
from quatlab.qmatrix import CMatrix, power, random_complex_matrix
from quatlab.quaternion import (Quaternion, ONE, check_pure, exp_pure, random_pure, random_pure_unit,
                                random_quaternion)

logger = logging.getLogger(__name__)

Element = Union[Quaternion, CMatrix]

# p = 2𝗂, q = 𝗃 with s = (1, 2), t = (0.5, 1) breaks the unit-free version by more than 1e-3
NON_UNIT_WITNESS = (Quaternion(0.0, 2.0), Quaternion(0.0, 0.0, 1.0), (1.0, 2.0), (0.5, 1.0))


def _qtr(q: Quaternion) -> RealScalar:
    return 2 * q.a


def _one_param_product(p: Quaternion, q: Quaternion, s: Sequence[float], t: Sequence[float],
                       eps_pure: float) -> Quaternion:
    acc = ONE.to_float()
    for si, ti in zip(s, t):
        acc = acc * exp_pure(p, si, eps_pure) * exp_pure(q, ti, eps_pure)
    return acc


def check_one_param_unrestricted(p: Quaternion, q: Quaternion, s: Sequence[float], t: Sequence[float],
                                 tol: Optional[Tolerances] = None) -> float:
    """
    |Tr(Π φ_p(sᵢ)φ_q(tᵢ)) − Tr(Π φ_q(sᵢ)φ_p(tᵢ))| for pure p, q without the unit guard.
    """
    tol = tol or Tolerances()
    if len(s) != len(t):
        raise ValueError("parameter lists differ in length: %d vs %d" % (len(s), len(t)))
    p, q = p.to_float(), q.to_float()
    check_pure(p, tol.eps_pure)
    check_pure(q, tol.eps_pure)
    lhs = _one_param_product(p, q, s, t, tol.eps_pure)
    rhs = _one_param_product(q, p, s, t, tol.eps_pure)
    return abs(float(_qtr(lhs) - _qtr(rhs)))


def check_one_param_identity(p: Quaternion, q: Quaternion, s: Sequence[float], t: Sequence[float],
                             tol: Optional[Tolerances] = None) -> float:
    """ Residual of the one-parameter identity; p and q must be pure units. """
    tol = tol or Tolerances()
    for name, u in (("p", p), ("q", q)):
        check_pure(u.to_float(), tol.eps_pure)
        if abs(u.to_float().norm() - 1.0) > tol.eps_unit:
            raise NotUnit("%s = %s has norm %g, expected 1" % (name, u, u.to_float().norm()))
    return check_one_param_unrestricted(p, q, s, t, tol)


def _not_distinct(values: Sequence[Any], eps: float = 0.0) -> bool:
    return any(abs(values[i] - values[j]) <= eps for i in range(len(values)) for j in range(i + 1, len(values)))


def check_prop42(p: Quaternion, q: Quaternion, case: str, args: Sequence[float],
                 tol: Optional[Tolerances] = None) -> float:
    """
    Equal-parameter identities for arbitrary pure p, q.

    :param case: 'a' with args (s, t), or 'b' with args (r, s, t) of which two must be equal
    """
    if case == 'a':
        if len(args) != 2:
            raise ValueError("case (a) takes two parameters s, t")
    elif case == 'b':
        if len(args) != 3:
            raise ValueError("case (b) takes three parameters r, s, t")
        if not _not_distinct(args):
            raise GuardViolated("case (b) needs two equal parameters among %s" % (list(args),))
    else:
        raise ValueError("case must be 'a' or 'b', got %r" % case)
    return check_one_param_unrestricted(p, q, args, args, tol)


# ---------------------------- Discrete identities ----------------------------

def _alternating(x: Element, y: Element, exponents: Sequence[int]) -> Element:
    acc = None
    for e in exponents:
        for base in (x, y):
            f = base ** e if isinstance(base, Quaternion) else power(base, e)
            acc = f if acc is None else acc * f
    return acc


def _guard_triple(m: int, n: int, r: int) -> None:
    if not _not_distinct((m, n, r)):
        raise GuardViolated("exponents %d, %d, %d are pairwise distinct" % (m, n, r))


def _check_exponents(*es: int) -> None:
    if any(not isinstance(e, int) or e < 0 for e in es):
        raise ValueError("exponents must be nonnegative integers, got %s" % (es,))


def check_qident(m: int, n: int, x: Quaternion, y: Quaternion) -> RealScalar:
    """ Tr(xᵐyᵐxⁿyⁿ) − Tr(yᵐxᵐyⁿxⁿ); x⁰ = 1 including x = 0. """
    _check_exponents(m, n)
    return _qtr(_alternating(x, y, (m, n))) - _qtr(_alternating(y, x, (m, n)))


def check_qident3(m: int, n: int, r: int, x: Quaternion, y: Quaternion) -> RealScalar:
    _check_exponents(m, n, r)
    _guard_triple(m, n, r)
    return _qtr(_alternating(x, y, (m, n, r))) - _qtr(_alternating(y, x, (m, n, r)))


def check_cident(m: int, n: int, x: CMatrix, y: CMatrix) -> Quaternion:
    """ tr(xᵐyᵐxⁿyⁿ) − tr(yᵐxᵐyⁿxⁿ) with the standard complex trace, as a complex quaternion. """
    _check_exponents(m, n)
    return _alternating(x, y, (m, n)).tr() - _alternating(y, x, (m, n)).tr()


def check_cident3(m: int, n: int, r: int, x: CMatrix, y: CMatrix) -> Quaternion:
    _check_exponents(m, n, r)
    _guard_triple(m, n, r)
    return _alternating(x, y, (m, n, r)).tr() - _alternating(y, x, (m, n, r)).tr()


def _affine(a: Any, b: Any, x: Element) -> Element:
    if isinstance(x, Quaternion):
        return b * x + a
    return x * b + CMatrix.identity(x.rows, exact=x.is_exact) * a


def _trace(e: Element) -> Any:
    return _qtr(e) if isinstance(e, Quaternion) else e.tr()


def check_pencil_identity(coeffs: Sequence[RealScalar], x: Element, y: Element) -> Any:
    """
    Tr((a+bx)(c+dy)(e+fx)(g+hy)) − Tr((c+dy)(a+bx)(g+hy)(e+fx)) for real a..h, over ℍ or M₂(ℂ).
    """
    if len(coeffs) != 8:
        raise ValueError("the pencil identity takes eight real coefficients a..h")
    a, b, c, d, e, f, g, h = coeffs
    u1, v1, u2, v2 = _affine(a, b, x), _affine(c, d, y), _affine(e, f, x), _affine(g, h, y)
    return _trace(u1 * v1 * u2 * v2) - _trace(v1 * u1 * v2 * u2)


# ---------------------------- Randomized suites ----------------------------

def find_non_unit_witness(rng: np.random.Generator, tries: int = 200, threshold: float = 1e-3
                          ) -> Optional[Tuple[Quaternion, Quaternion, Tuple[float, ...], Tuple[float, ...], float]]:
    """ A pure, non-unit (p, q) with parameters for which the one-parameter identity fails. """
    p, q, s, t = NON_UNIT_WITNESS
    residual = check_one_param_unrestricted(p, q, s, t)
    if residual > threshold:
        return p, q, s, t, residual
    for _ in range(tries):
        p, q = random_pure(rng, scale=2.0), random_pure(rng, scale=2.0)
        s = tuple(float(v) for v in rng.uniform(-3, 3, size=2))
        t = tuple(float(v) for v in rng.uniform(-3, 3, size=2))
        residual = check_one_param_unrestricted(p, q, s, t)
        if residual > threshold:
            return p, q, s, t, residual
    return None


def exponent_pairs(top: int) -> List[Tuple[int, int]]:
    """ Every (m, n) with 0 <= m, n <= top. """
    return [(m, n) for m, n in itertools.product(range(top + 1), repeat=2)]


def repeated_triples(top: int) -> List[Tuple[int, int, int]]:
    """ Every (m, n, r) in 0..top with two equal exponents, the domain of the triple identities. """
    return [e for e in itertools.product(range(top + 1), repeat=3) if _not_distinct(e)]


def identity_suite(rng: np.random.Generator, trials: int = 100, max_exp: int = 5,
                   tol: Optional[Tolerances] = None) -> PropertyReport:
    """
    Randomized sweep over every identity above. For each sampled pair the discrete identities run
    over the whole exponent grid (up to `max_exp` on ℍ, 4 on M₂(ℂ), 3 for triples) and must vanish
    exactly; one-parameter identities within 1e-10.
    """
    tol = tol or Tolerances()
    report = PropertyReport("identities")
    violations = report.collector
    q_pairs, c_pairs = exponent_pairs(max_exp), exponent_pairs(min(max_exp, 4))
    triples = repeated_triples(min(max_exp, 3))
    for _ in range(trials):
        x = random_quaternion(rng, True, 5, max_den=3)
        y = random_quaternion(rng, True, 5, max_den=3)
        data = {"x": x.to_json(), "y": y.to_json()}
        for m, n in q_pairs:
            d = check_qident(m, n, x, y)
            if d != 0:
                violations.addViolation("qident", "nonzero difference %s" % d, dict(data, m=m, n=n))
        for m, n, r in triples:
            d = check_qident3(m, n, r, x, y)
            if d != 0:
                violations.addViolation("qident3", "nonzero difference %s" % d, dict(data, m=m, n=n, r=r))
        report.count(len(q_pairs) + len(triples))

        cx = random_complex_matrix(2, rng, True, 5)
        cy = random_complex_matrix(2, rng, True, 5)
        data = {"x": cx.to_json(), "y": cy.to_json()}
        for m, n in c_pairs:
            d = check_cident(m, n, cx, cy)
            if not d.is_zero():
                violations.addViolation("cident", "nonzero difference %s" % d, dict(data, m=m, n=n))
        for m, n, r in triples:
            d = check_cident3(m, n, r, cx, cy)
            if not d.is_zero():
                violations.addViolation("cident3", "nonzero difference %s" % d, dict(data, m=m, n=n, r=r))
        report.count(len(c_pairs) + len(triples))

        coeffs = [int(v) for v in rng.integers(-5, 6, size=8)]
        report.count(2)
        if check_pencil_identity(coeffs, x, y) != 0:
            violations.addViolation("pencil", "quaternion pencil identity fails", {"coeffs": coeffs})
        if not check_pencil_identity(coeffs, cx, cy).is_zero():
            violations.addViolation("pencil", "complex pencil identity fails", {"coeffs": coeffs})

        p, q = random_pure_unit(rng), random_pure_unit(rng)
        k = int(rng.integers(1, 5))
        s = [float(v) for v in rng.uniform(-3, 3, size=k)]
        t = [float(v) for v in rng.uniform(-3, 3, size=k)]
        res = check_one_param_identity(p, q, s, t, tol)
        report.count()
        if res >= 1e-10:
            violations.addViolation("one_param", "residual %g" % res, {"p": p.to_json(), "q": q.to_json(), "s": s, "t": t})

        p, q = random_pure(rng, scale=3.0), random_pure(rng, scale=3.0)
        st = [float(v) for v in rng.uniform(-3, 3, size=3)]
        res_a = check_prop42(p, q, 'a', st[:2], tol)
        st[2] = st[0]
        res_b = check_prop42(p, q, 'b', st, tol)
        report.count(2)
        for case, res in (('a', res_a), ('b', res_b)):
            if res >= 1e-10:
                violations.addViolation("equal_parameters_" + case, "residual %g" % res, {"p": p.to_json(), "q": q.to_json(), "args": st})

    witness = find_non_unit_witness(rng)
    if witness is None:
        violations.addViolation("non_unit_witness", "no failing non-unit pair found", is_warning=True)
    else:
        p, q, s, t, residual = witness
        report.details["non_unit_witness"] = {"p": p.to_json(), "q": q.to_json(), "s": list(s), "t": list(t), "residual": residual}
    logger.info("identity suite: %d checks, %d violations", report.checks, len(violations.errors()))
    return report
