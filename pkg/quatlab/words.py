"""Words in the letters x, y; noncommutative polynomials; trace polynomials.

A trace polynomial is a rational linear combination of products Tr(w₁)···Tr(w_r). Every factor
word is stored as its lexicographically least rotation (x < y), since Tr(uv) = Tr(vu).
The empty word stands for the identity, so the factor Tr(ε) evaluates to Tr(Iₙ) = 2n.
"""
import operator
from fractions import Fraction
from numbers import Rational
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from quatlab.errors import InputError, ShapeMismatch
from quatlab.jsonable import Jsonable, JsonParsingError, decode_scalar, encode_scalar, getKey, getListKey
from quatlab.qmatrix import QMatrix, adjoint, qtrace
from quatlab.quaternion import Quaternion

Word = str
Bidegree = Tuple[int, int]
LETTERS = ('x', 'y')


# ---------------------------- Words ----------------------------

def validate_word(w: Word) -> Word:
    if any(ch not in LETTERS for ch in w):
        raise InputError("words use only the letters x and y, got %r" % w)
    return w


def bidegree(w: Word) -> Bidegree:
    return (w.count('x'), w.count('y'))


def canonical_rotation(w: Word) -> Word:
    """ Lexicographically least rotation. """
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def is_primitive(w: Word) -> bool:
    """ True iff w is not a proper power of a shorter word. """
    n = len(w)
    return n > 0 and all(w != w[:d] * (n // d) for d in range(1, n) if n % d == 0)


def compress_word(w: Word) -> str:
    """ xxyyy → x^2y^3 """
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        out.append(w[i] if j - i == 1 else "%s^%d" % (w[i], j - i))
        i = j
    return "".join(out)


def _coeff(c: Any) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, Rational):
        return Fraction(c)
    raise TypeError("coefficients must be rational, got %r" % (c,))


# ---------------------------- Noncommutative polynomials ----------------------------

class NCPolynomial(Jsonable):
    """
    Finite map from words to nonzero rational coefficients.
    """
    def __init__(self, terms: Optional[Dict[Word, Any]] = None) -> None:
        clean = {}  # type: Dict[Word, Fraction]
        for w, c in (terms or {}).items():
            c = _coeff(c)
            if c != 0:
                clean[validate_word(w)] = clean.get(w, Fraction(0)) + c
        self.terms = {w: c for w, c in clean.items() if c != 0}

    @staticmethod
    def word(w: Word, coeff: Any = 1) -> "NCPolynomial":
        return NCPolynomial({w: coeff})

    @staticmethod
    def constant(c: Any) -> "NCPolynomial":
        return NCPolynomial({'': c})

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return NCPolynomial(out)

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def __mul__(self, other: Any) -> "NCPolynomial":
        if isinstance(other, NCPolynomial):
            out = {}  # type: Dict[Word, Fraction]
            for u, a in self.terms.items():
                for v, b in other.terms.items():
                    out[u + v] = out.get(u + v, Fraction(0)) + a * b
            return NCPolynomial(out)
        c = _coeff(other)
        return NCPolynomial({w: c * a for w, a in self.terms.items()})

    def __rmul__(self, other: Any) -> "NCPolynomial":
        return self.__mul__(_coeff(other))

    def __pow__(self, k: int) -> "NCPolynomial":
        out = NCPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def bidegrees(self) -> List[Bidegree]:
        return sorted(set(bidegree(w) for w in self.terms))

    def component(self, bideg: Bidegree) -> "NCPolynomial":
        return NCPolynomial({w: c for w, c in self.terms.items() if bidegree(w) == bideg})

    def sorted_terms(self) -> List[Tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0]))

    def to_json(self) -> Any:
        return [{"word": w, "coeff": encode_scalar(c)} for w, c in self.sorted_terms()]

    @staticmethod
    def from_json(data: Any) -> "NCPolynomial":
        if isinstance(data, str):
            from quatlab.word_syntax import parse_polynomial
            return parse_polynomial(data)
        if not isinstance(data, list):
            raise JsonParsingError("A polynomial is a text string or a list of {word, coeff}. ", data)
        return NCPolynomial({getKey(t, "word"): decode_scalar(getKey(t, "coeff"), data) for t in data})

    def __str__(self) -> str:
        from quatlab.word_syntax import format_polynomial
        return format_polynomial(self)

    __repr__ = __str__


X = NCPolynomial.word('x')
Y = NCPolynomial.word('y')


def commutator(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    return p * q - q * p


def partial_derivative(p: NCPolynomial, var: str) -> NCPolynomial:
    """
    ∂/∂var: sum over deletions of one occurrence of var, e.g. ∂/∂x(xyxy²) = yxy² + xy³.
    """
    if var not in LETTERS:
        raise InputError("derivation variable must be x or y, got %r" % var)
    out = {}  # type: Dict[Word, Fraction]
    for w, c in p.terms.items():
        for i, ch in enumerate(w):
            if ch == var:
                u = w[:i] + w[i + 1:]
                out[u] = out.get(u, Fraction(0)) + c
    return NCPolynomial(out)


# ---------------------------- Trace polynomials ----------------------------

Factors = Tuple[Word, ...]


def _canonical_factors(words: Iterable[Word]) -> Factors:
    return tuple(sorted(canonical_rotation(validate_word(w)) for w in words))


class TracePolynomial(Jsonable):
    """
    Σ c · Tr(w₁)···Tr(w_r) with canonical factor words; the empty product is the constant 1.
    """
    def __init__(self, terms: Optional[Dict[Sequence[Word], Any]] = None) -> None:
        clean = {}  # type: Dict[Factors, Fraction]
        for factors, c in (terms or {}).items():
            key = _canonical_factors(factors)
            clean[key] = clean.get(key, Fraction(0)) + _coeff(c)
        self.terms = {k: c for k, c in clean.items() if c != 0}

    @staticmethod
    def trace_of_word(w: Word, coeff: Any = 1) -> "TracePolynomial":
        return TracePolynomial({(w,): coeff})

    @staticmethod
    def constant(c: Any) -> "TracePolynomial":
        return TracePolynomial({(): c})

    def __add__(self, other: "TracePolynomial") -> "TracePolynomial":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return TracePolynomial(out)

    def __neg__(self) -> "TracePolynomial":
        return TracePolynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TracePolynomial") -> "TracePolynomial":
        return self + (-other)

    def __mul__(self, other: Any) -> "TracePolynomial":
        if isinstance(other, TracePolynomial):
            out = {}  # type: Dict[Factors, Fraction]
            for k1, a in self.terms.items():
                for k2, b in other.terms.items():
                    key = tuple(sorted(k1 + k2))
                    out[key] = out.get(key, Fraction(0)) + a * b
            return TracePolynomial(out)
        c = _coeff(other)
        return TracePolynomial({k: c * a for k, a in self.terms.items()})

    def __rmul__(self, other: Any) -> "TracePolynomial":
        return self.__mul__(_coeff(other))

    def __pow__(self, k: int) -> "TracePolynomial":
        out = TracePolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TracePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    @staticmethod
    def term_bidegree(factors: Factors) -> Bidegree:
        k = sum(w.count('x') for w in factors)
        l = sum(w.count('y') for w in factors)
        return (k, l)

    def bidegrees(self) -> List[Bidegree]:
        return sorted(set(self.term_bidegree(k) for k in self.terms))

    def bidegree(self) -> Bidegree:
        """ The bidegree of a homogeneous trace polynomial. """
        degs = self.bidegrees()
        if len(degs) != 1:
            raise InputError("trace polynomial is not bihomogeneous: bidegrees %s" % degs)
        return degs[0]

    def factor_words(self) -> List[Word]:
        return sorted(set(w for k in self.terms for w in k))

    def sorted_terms(self) -> List[Tuple[Factors, Fraction]]:
        return sorted(self.terms.items(), key=lambda kc: (sum(len(w) for w in kc[0]), len(kc[0]), kc[0]))

    def eval(self, A: QMatrix, B: QMatrix) -> Any:
        return eval_trace(self, A, B)

    def to_json(self) -> Any:
        return [{"factors": list(k), "coeff": encode_scalar(c)} for k, c in self.sorted_terms()]

    @staticmethod
    def from_json(data: Any) -> "TracePolynomial":
        if isinstance(data, str):
            from quatlab.word_syntax import parse_trace_polynomial
            return parse_trace_polynomial(data)
        if not isinstance(data, list):
            raise JsonParsingError("A trace polynomial is a text string or a list of {factors, coeff}. ", data)
        return TracePolynomial({tuple(getListKey(t, "factors")): decode_scalar(getKey(t, "coeff"), data) for t in data})

    def __str__(self) -> str:
        from quatlab.word_syntax import format_trace_polynomial
        return format_trace_polynomial(self)

    __repr__ = __str__


def trace_reduce(p: NCPolynomial) -> TracePolynomial:
    """ Tr(p) as a trace polynomial, merging cyclically equivalent words. """
    return TracePolynomial({(w,): c for w, c in p.terms.items()})


def trace_derivative(t: TracePolynomial, var: str) -> TracePolynomial:
    """ ∂/∂var extended to products of traces by the Leibniz rule. """
    out = TracePolynomial()
    for factors, c in t.terms.items():
        for i, w in enumerate(factors):
            d = trace_reduce(partial_derivative(NCPolynomial.word(w), var))
            if d.is_zero():
                continue
            rest = TracePolynomial({factors[:i] + factors[i + 1:]: c})
            out = out + d * rest
    return out


# ---------------------------- Evaluation ----------------------------

class WordEvaluator(object):
    """
    Evaluates words at a fixed pair (A, B), caching every prefix product.

    QMatrix pairs need no extra arguments; numpy real blocks pass identity, trace and
    product=numpy.dot.
    """
    def __init__(self, A: Any, B: Any, identity: Any = None, trace: Callable[[Any], Any] = qtrace,
                 product: Callable[[Any, Any], Any] = operator.mul) -> None:
        if A.shape != B.shape or A.shape[-1] != A.shape[-2]:
            raise ShapeMismatch("words need square matrices of equal size, got %s and %s" % (A.shape, B.shape))
        if identity is None:
            identity = type(A).identity(A.rows, exact=A.is_exact and B.is_exact)
        self.letters = {'x': A, 'y': B}
        self.cache = {'': identity}  # type: Dict[Word, Any]
        self.traces = {}  # type: Dict[Word, Any]
        self.trace_fn = trace
        self.product = product

    def word(self, w: Word) -> Any:
        hit = self.cache.get(w)
        if hit is not None:
            return hit
        value = self.product(self.word(w[:-1]), self.letters[w[-1]])
        self.cache[w] = value
        return value

    def trace(self, w: Word) -> Any:
        hit = self.traces.get(w)
        if hit is None:
            hit = self.trace_fn(self.word(w))
            self.traces[w] = hit
        return hit

    def poly(self, p: NCPolynomial) -> Any:
        acc = None
        for w, c in p.sorted_terms():
            term = self.word(w) * c
            acc = term if acc is None else acc + term
        return acc if acc is not None else self.word('') * 0

    def trace_poly(self, t: TracePolynomial) -> Any:
        total = 0
        for factors, c in t.terms.items():
            value = c
            for w in factors:
                value = value * self.trace(w)
            total = total + value
        return total


def eval_word(w: Word, A: QMatrix, B: QMatrix) -> QMatrix:
    return WordEvaluator(A, B).word(validate_word(w))


def eval_nc(p: NCPolynomial, A: QMatrix, B: QMatrix) -> QMatrix:
    return WordEvaluator(A, B).poly(p)


def eval_trace(t: TracePolynomial, A: QMatrix, B: QMatrix) -> Any:
    """ Exact for rational A, B; a float otherwise. """
    return WordEvaluator(A, B).trace_poly(t)


def trace_adjoint_word(w: Word, A: QMatrix) -> Any:
    """ Tr(w(A, A*)): y stands for the adjoint. These are the Sp(n)-invariant functions of A. """
    return WordEvaluator(A, adjoint(A)).trace(validate_word(w))


# ---------------------------- Directional derivatives ----------------------------

def _trace_gradient_word(w: Word, ev: WordEvaluator, letter: str) -> List[List[Quaternion]]:
    """
    Σ over positions p holding `letter` of the rotation of w that starts right after p.
    Perturbing that letter by u at entry (i, j) moves Tr(w) at rate 2·Re(G[j][i]·u).
    """
    n = ev.letters['x'].rows
    total = None
    for p, ch in enumerate(w):
        if ch != letter:
            continue
        rotated = w[p + 1:] + w[:p]
        M = ev.word(rotated)
        total = M if total is None else total + M
    if total is None:
        return [[Quaternion(0) for _ in range(n)] for _ in range(n)]
    return total.to_rows()


def trace_gradient(t: TracePolynomial, A: QMatrix, B: QMatrix) -> List[Any]:
    """
    Exact gradient of t at (A, B) in the 8n² real coordinates ordered as
    (letter x then y, row i, column j, unit 1, 𝗂, 𝗃, 𝗄).
    """
    ev = WordEvaluator(A, B)
    n = A.rows
    units = (Quaternion(1), Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1))
    grad = [0] * (8 * n * n)
    for factors, c in t.terms.items():
        for r, w in enumerate(factors):
            others = c
            for s, v in enumerate(factors):
                if s != r:
                    others = others * ev.trace(v)
            if others == 0:
                continue
            for li, letter in enumerate(LETTERS):
                G = _trace_gradient_word(w, ev, letter)
                for i in range(n):
                    for j in range(n):
                        for ui, u in enumerate(units):
                            d = 2 * (G[j][i] * u).a
                            if d != 0:
                                grad[((li * n + i) * n + j) * 4 + ui] += others * d
    return grad
