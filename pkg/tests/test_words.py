"""
Tests for words, trace polynomials, their evaluation and the text syntax.
"""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatlab.errors import InputError, WordSyntaxError
from quatlab.qmatrix import QMatrix, adjoint, qtrace, random_matrix
from quatlab.quaternion import Quaternion
from quatlab.word_syntax import format_trace_polynomial, parse_polynomial, parse_trace_polynomial
from quatlab.words import (NCPolynomial, TracePolynomial, X, Y, canonical_rotation, commutator, compress_word,
                           eval_nc, eval_trace, eval_word, is_primitive, partial_derivative, trace_adjoint_word,
                           trace_derivative, trace_gradient, trace_reduce)

words = st.text(alphabet="xy", min_size=1, max_size=8)


@given(words, st.integers(min_value=0, max_value=8))
def test_canonical_rotation_is_rotation_invariant(w, k):
    k = k % len(w)
    assert canonical_rotation(w[k:] + w[:k]) == canonical_rotation(w)


def test_word_helpers():
    assert canonical_rotation("yxx") == "xxy"
    assert not is_primitive("xyxy")
    assert is_primitive("xxy")
    assert compress_word("xxyyyx") == "x^2y^3x"


def test_partial_derivative():
    p = NCPolynomial.word("xyxyy")
    assert partial_derivative(p, 'x') == NCPolynomial({"yxyy": 1, "xyyy": 1})
    with pytest.raises(InputError):
        partial_derivative(p, 'z')


def test_trace_reduce_merges_rotations():
    assert trace_reduce(commutator(X, Y)).is_zero()
    assert trace_reduce(X * Y * Y + Y * X * Y) == TracePolynomial.trace_of_word("xyy", 2)


@settings(max_examples=30, deadline=None)
@given(words, st.integers(min_value=0, max_value=1000))
def test_trace_is_cyclic(w, seed):
    rng = np.random.default_rng(seed)
    A, B = random_matrix(2, rng, bound=3), random_matrix(2, rng, bound=3)
    k = seed % len(w)
    assert qtrace(eval_word(w, A, B)) == qtrace(eval_word(w[k:] + w[:k], A, B))


def test_eval_nc(rng):
    A, B = random_matrix(2, rng, bound=4), random_matrix(2, rng, bound=4)
    assert eval_nc(commutator(X, Y), A, B) == A * B - B * A
    assert eval_nc(NCPolynomial.constant(3), A, B) == QMatrix.identity(2) * 3


def test_eval_trace_products(rng):
    A, B = random_matrix(2, rng, bound=4), random_matrix(2, rng, bound=4)
    t = parse_trace_polynomial("Tr(x)Tr(y)^2 - 1/2*Tr(xy) + 3")
    expected = qtrace(A) * qtrace(B) ** 2 - Fraction(1, 2) * qtrace(A * B) + 3
    assert eval_trace(t, A, B) == expected
    assert eval_trace(parse_trace_polynomial("Tr(1)"), A, B) == 4


def test_trace_adjoint_word(rng):
    A = random_matrix(2, rng, bound=4)
    assert trace_adjoint_word("xy", A) == qtrace(A * adjoint(A))


def test_parse_polynomial():
    assert parse_polynomial("x^2y - 2*yx") == NCPolynomial({"xxy": 1, "yx": -2})
    assert parse_polynomial("[x,y]") == NCPolynomial({"xy": 1, "yx": -1})
    assert parse_polynomial("(x+y)^2") == NCPolynomial({"xx": 1, "xy": 1, "yx": 1, "yy": 1})
    assert parse_polynomial("[[x,y],x]") == parse_polynomial("xyx - yxx - xxy + xyx")


def test_format_round_trip():
    for text in ("Tr(xy^2x[x,y])", "Tr([[x,y],x])^2 - 1/2*Tr(x)Tr(y)", "Tr(x)^3 + 2", "-Tr(1)"):
        t = parse_trace_polynomial(text)
        assert parse_trace_polynomial(format_trace_polynomial(t)) == t


@pytest.mark.parametrize("text", ["Tr(x", "Tr(Tr(x))", "x + Tr(y)", "Tr(z)", "Tr(x)^", "Tr(x)*", "3/0", "Tr(x,y)"])
def test_syntax_errors(text):
    with pytest.raises(WordSyntaxError):
        parse_trace_polynomial(text)


def test_no_trace_in_polynomial():
    with pytest.raises(WordSyntaxError):
        parse_polynomial("Tr(x)")


def test_bidegree():
    assert parse_trace_polynomial("Tr(xy^2x[x,y])").bidegree() == (3, 3)
    with pytest.raises(InputError):
        parse_trace_polynomial("Tr(x) + Tr(y)").bidegree()


def test_trace_derivative_of_difference():
    p = parse_trace_polynomial("Tr(x^3y^3x^2y^2 - y^3x^3y^2x^2)")
    f13 = parse_trace_polynomial("Tr(x^2y^3x^2[x,y])")
    assert trace_derivative(p, 'y') == f13 * -2


def test_trace_derivative_leibniz():
    t = parse_trace_polynomial("Tr(xy)Tr(x^2)")
    assert trace_derivative(t, 'x') == parse_trace_polynomial("Tr(y)Tr(x^2) + 2*Tr(xy)Tr(x)")


def _perturbation(coords, n):
    entries = []
    for i in range(n):
        for j in range(n):
            base = (i * n + j) * 4
            entries.append(Quaternion(*coords[base:base + 4]))
    return QMatrix(n, n, entries)


def test_trace_gradient_matches_symmetric_difference(rng):
    # Tr(x^2y) is quadratic in x: the symmetric difference is exactly twice the linear part
    t = parse_trace_polynomial("Tr(x^2y) + 3*Tr(x)Tr(y)")
    A, B = random_matrix(2, rng, bound=4), random_matrix(2, rng, bound=4)
    coords = [int(v) for v in rng.integers(-3, 4, size=16)]
    E = _perturbation(coords, 2)
    grad = trace_gradient(t, A, B)
    directional = sum(g * c for g, c in zip(grad[:16], coords))
    assert 2 * directional == eval_trace(t, A + E, B) - eval_trace(t, A - E, B)
    assert len(grad) == 32


def test_json_forms():
    t = parse_trace_polynomial("Tr(xy^2x[x,y])")
    assert TracePolynomial.from_json(t.to_json()) == t
    assert TracePolynomial.from_json("Tr(xy^2x[x,y])") == t
    p = parse_polynomial("x^2y - 1/3*yx")
    assert NCPolynomial.from_json(p.to_json()) == p
