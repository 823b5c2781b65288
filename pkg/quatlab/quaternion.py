"""Quaternion scalars over two interchangeable real backends.

A `Quaternion` holds its four coefficients either as `fractions.Fraction` (exact mode) or as
`float` (float mode). Arithmetic between an exact and a float operand yields a float result.
Square roots and trigonometry (norms, `exp_pure`, half-plane representatives of non-complex
quaternions) are float-only.
"""
import math
from fractions import Fraction
from numbers import Real
from typing import Any, Optional, Tuple, Union

import numpy as np

from quatlab.errors import ExactModeUnsupported, FloatOverflow, NotPure, ZeroDivisor
from quatlab.jsonable import Jsonable, JsonParsingError, RealScalar, decode_scalar, encode_scalar

EPS_PURE = 1e-9


def _as_scalar(x: Any) -> RealScalar:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, Real) and not isinstance(x, float):
        return Fraction(x)
    raise TypeError("Not a real scalar: %r" % (x,))


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """ Exact square root of a nonnegative rational, or None if it is irrational. """
    if x < 0:
        return None
    num = math.isqrt(x.numerator)
    den = math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return None


class Quaternion(Jsonable):
    """
    The quaternion a + b𝗂 + c𝗃 + d𝗄. Immutable.
    """
    __slots__ = ('a', 'b', 'c', 'd')

    def __init__(self, a: Any = 0, b: Any = 0, c: Any = 0, d: Any = 0) -> None:
        parts = (a, b, c, d)
        if any(isinstance(x, float) for x in parts):
            vals = tuple(float(x) for x in parts)  # type: Tuple[RealScalar, ...]
            if not all(math.isfinite(x) for x in vals):
                raise FloatOverflow("non-finite quaternion coefficient in %r" % (vals,))
        else:
            vals = tuple(_as_scalar(x) for x in parts)
        object.__setattr__(self, 'a', vals[0])
        object.__setattr__(self, 'b', vals[1])
        object.__setattr__(self, 'c', vals[2])
        object.__setattr__(self, 'd', vals[3])

    def __setattr__(self, key, value):
        raise AttributeError("Quaternion is immutable")

    @staticmethod
    def coerce(x: Any) -> "Quaternion":
        if isinstance(x, Quaternion):
            return x
        return Quaternion(x)

    # ---------------------------- backend ----------------------------
    @property
    def is_exact(self) -> bool:
        return isinstance(self.a, Fraction)

    def parts(self) -> Tuple[RealScalar, RealScalar, RealScalar, RealScalar]:
        return (self.a, self.b, self.c, self.d)

    def to_float(self) -> "Quaternion":
        return Quaternion(float(self.a), float(self.b), float(self.c), float(self.d))

    # ---------------------------- arithmetic ----------------------------
    def __add__(self, other: Any) -> "Quaternion":
        if not isinstance(other, (Quaternion, Real)):
            return NotImplemented
        o = Quaternion.coerce(other)
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other: Any) -> "Quaternion":
        if not isinstance(other, (Quaternion, Real)):
            return NotImplemented
        o = Quaternion.coerce(other)
        return Quaternion(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other: Any) -> "Quaternion":
        return Quaternion.coerce(other) - self

    def __mul__(self, other: Any) -> "Quaternion":
        if isinstance(other, Quaternion):
            return mul(self, other)
        if isinstance(other, Real):
            s = _as_scalar(other)
            return Quaternion(self.a * s, self.b * s, self.c * s, self.d * s)
        return NotImplemented

    def __rmul__(self, other: Any) -> "Quaternion":
        # real scalars are central
        if isinstance(other, Real):
            return self.__mul__(other)
        return NotImplemented

    def __truediv__(self, other: Any) -> "Quaternion":
        """ Right division: self * other⁻¹. """
        if isinstance(other, Quaternion):
            return mul(self, other.inverse())
        if isinstance(other, Real):
            if other == 0:
                raise ZeroDivisor("division of %s by zero" % self)
            s = _as_scalar(other)
            if isinstance(s, Fraction):
                return self * (1 / s)
            return self * (1.0 / s)
        return NotImplemented

    def __pow__(self, k: int) -> "Quaternion":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers, got %r" % (k,))
        result = ONE if self.is_exact else ONE.to_float()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ---------------------------- structure ----------------------------
    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm_sq(self) -> RealScalar:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def real_part(self) -> RealScalar:
        return self.a

    def pure_part(self) -> "Quaternion":
        return Quaternion(self.a * 0, self.b, self.c, self.d)

    def inverse(self) -> "Quaternion":
        n = self.norm_sq()
        if n == 0:
            raise ZeroDivisor("zero quaternion has no inverse")
        return self.conj() * (1 / n if isinstance(n, Fraction) else 1.0 / n)

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.is_exact or tol == 0.0:
            return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0
        return self.norm() <= tol

    def is_real(self, tol: float = 0.0) -> bool:
        return self.pure_part().is_zero(tol)

    def is_complex(self, tol: float = 0.0) -> bool:
        if self.is_exact or tol == 0.0:
            return self.c == 0 and self.d == 0
        return math.hypot(self.c, self.d) <= tol

    def is_close(self, other: Any, tol: float = 1e-12) -> bool:
        return (self - Quaternion.coerce(other)).norm() <= tol

    def to_complex(self) -> complex:
        """ The complex number a + bi; only meaningful when c = d = 0. """
        return complex(float(self.a), float(self.b))

    @staticmethod
    def from_complex(z: complex) -> "Quaternion":
        return Quaternion(float(z.real), float(z.imag))

    # ---------------------------- protocol ----------------------------
    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Real):
            other = Quaternion(other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.parts() == other.parts()

    def __hash__(self) -> int:
        return hash(self.parts())

    def __repr__(self) -> str:
        return "Quaternion(%s, %s, %s, %s)" % tuple(str(x) for x in self.parts())

    def __str__(self) -> str:
        terms = []
        for coeff, unit in zip(self.parts(), ('', 'i', 'j', 'k')):
            if coeff == 0:
                continue
            terms.append("%s%s" % (coeff, unit))
        return "+".join(terms).replace("+-", "-") if terms else "0"

    def to_json(self) -> list:
        return [encode_scalar(x) for x in self.parts()]

    @staticmethod
    def from_json(data: Any) -> "Quaternion":
        if isinstance(data, (int, float, str)) and not isinstance(data, bool):
            return Quaternion(decode_scalar(data))
        if not isinstance(data, list) or len(data) != 4:
            raise JsonParsingError("A quaternion is encoded as [a, b, c, d]. ", data)
        return Quaternion(*[decode_scalar(x, data) for x in data])


ZERO = Quaternion(0)
ONE = Quaternion(1)
I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)


# ---------------------------- Operations ----------------------------

def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """ Hamilton product. """
    a1, b1, c1, d1 = p.parts()
    a2, b2, c2, d2 = q.parts()
    return Quaternion(a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                      a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                      a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                      a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


def real_part(q: Quaternion) -> RealScalar:
    return q.real_part()


def pure_part(q: Quaternion) -> Quaternion:
    return q.pure_part()


def conj(q: Quaternion) -> Quaternion:
    return q.conj()


def norm_sq(q: Quaternion) -> RealScalar:
    return q.norm_sq()


def complex_number(re: Any, im: Any = 0) -> Quaternion:
    """ ℂ is identified with the subfield ℝ + ℝ𝗂. """
    return Quaternion(re, im)


def check_pure(p: Quaternion, eps_pure: float = EPS_PURE) -> None:
    if p.is_exact:
        if p.a != 0:
            raise NotPure("quaternion %s has real part %s" % (p, p.a))
    elif abs(p.a) > eps_pure:
        raise NotPure("quaternion %s has real part %g > %g" % (p, p.a, eps_pure))


def exp_pure(p: Quaternion, s: Union[float, int], eps_pure: float = EPS_PURE) -> Quaternion:
    """
    The one-parameter subgroup φ_p(s) = e^{sp} = cos(|p|s) + (p/|p|)·sin(|p|s) of Sp(1).

    :param p: pure quaternion, float backend
    :param s: real parameter
    """
    if p.is_exact:
        raise ExactModeUnsupported("exp_pure needs the float backend; convert with to_float()")
    check_pure(p, eps_pure)
    v = p.pure_part()
    n = v.norm()
    if n == 0.0:
        return Quaternion(1.0)
    angle = n * float(s)
    sn = math.sin(angle) / n
    return Quaternion(math.cos(angle), v.b * sn, v.c * sn, v.d * sn)


def conjugate_by(u: Quaternion, q: Quaternion) -> Quaternion:
    """ u q u⁻¹ """
    if u.is_zero():
        raise ZeroDivisor("cannot conjugate by the zero quaternion")
    return u * q * u.inverse()


def is_similar(p: Quaternion, q: Quaternion, tol: float = 1e-9) -> bool:
    """ p and q are similar iff they share real part and norm (equivalently |pure part|). """
    if p.is_exact and q.is_exact:
        return p.a == q.a and p.pure_part().norm_sq() == q.pure_part().norm_sq()
    return abs(float(p.a) - float(q.a)) <= tol and abs(p.pure_part().norm() - q.pure_part().norm()) <= tol


def complex_half_plane(q: Quaternion) -> Quaternion:
    """
    The representative a + 𝗂|pure(q)| of q's similarity class. Exact whenever |pure(q)| is
    rational, float otherwise.
    """
    if q.is_exact:
        r = rational_sqrt(q.pure_part().norm_sq())
        if r is not None:
            return Quaternion(q.a, r)
    return Quaternion(float(q.a), q.pure_part().norm())


# ---------------------------- Random sampling ----------------------------

def _random_rational(rng: np.random.Generator, bound: int, max_den: int) -> Fraction:
    num = int(rng.integers(-bound, bound + 1))
    den = int(rng.integers(1, max_den + 1)) if max_den > 1 else 1
    return Fraction(num, den)


def random_quaternion(rng: np.random.Generator, exact: bool = True, bound: int = 10, max_den: int = 1) -> Quaternion:
    """ Exact: coefficients p/q with |p| <= bound, 1 <= q <= max_den. Float: standard normal. """
    if exact:
        return Quaternion(*[_random_rational(rng, bound, max_den) for _ in range(4)])
    return Quaternion(*[float(x) for x in rng.standard_normal(4)])


def random_complex(rng: np.random.Generator, exact: bool = True, bound: int = 10, max_den: int = 1) -> Quaternion:
    if exact:
        return Quaternion(_random_rational(rng, bound, max_den), _random_rational(rng, bound, max_den))
    return Quaternion(float(rng.standard_normal()), float(rng.standard_normal()))


def random_unit(rng: np.random.Generator, exact: bool = False, bound: int = 5) -> Quaternion:
    """ Exact units are q²/|q|² for a nonzero integer quaternion q. """
    if exact:
        q = ZERO
        while q.is_zero():
            q = random_quaternion(rng, True, bound)
        return q * q / q.norm_sq()
    v = rng.standard_normal(4)
    v = v / np.linalg.norm(v)
    return Quaternion(*[float(x) for x in v])


def random_pure(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    v = rng.standard_normal(3) * scale
    return Quaternion(0.0, float(v[0]), float(v[1]), float(v[2]))


def random_pure_unit(rng: np.random.Generator) -> Quaternion:
    v = rng.standard_normal(3)
    v = v / np.linalg.norm(v)
    return Quaternion(0.0, float(v[0]), float(v[1]), float(v[2]))
