"""Exact polynomial arithmetic: ring laws, substitution, text round-trips.

All coefficients are Python ints, so every assertion here is exact; the
ring laws are driven by hypothesis over randomly assembled polynomials.
"""

import pytest
from hypothesis import given, settings, strategies as st

from linkhom.errors import ParseError, SchemeError
from linkhom.model import load_scheme
from linkhom.polyring import (
    Polynomial,
    Symbol,
    evaluate,
    parse_poly,
    poly_to_str,
    substitute,
)

S4 = load_scheme(4)
S5 = load_scheme(5)


def sym(name, scheme=S4):
    return Polynomial.sym(scheme.symbol(name))


@st.composite
def polys(draw, scheme=S4, max_terms=5, max_len=3, max_coeff=9):
    terms = draw(st.lists(
        st.tuples(
            st.lists(st.sampled_from(scheme.coords), max_size=max_len),
            st.integers(min_value=-max_coeff, max_value=max_coeff),
        ),
        max_size=max_terms,
    ))
    p = Polynomial.zero(scheme.n)
    for mono, coeff in terms:
        t = Polynomial.const(scheme.n, coeff)
        for s in mono:
            t = t * Polynomial.sym(s)
        p = p + t
    return p


points4 = st.fixed_dictionaries({s: st.integers(-6, 6) for s in S4.coords})


@settings(max_examples=80, deadline=None)
@given(p=polys(), q=polys(), r=polys())
def test_ring_laws(p, q, r):
    zero = Polynomial.zero(4)
    one = Polynomial.const(4, 1)
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + zero == p
    assert p * one == p
    assert p * zero == zero
    assert p - p == zero


@settings(max_examples=80, deadline=None)
@given(p=polys(), q=polys(), pt=points4)
def test_evaluate_is_a_ring_homomorphism(p, q, pt):
    assert evaluate(p + q, pt) == evaluate(p, pt) + evaluate(q, pt)
    assert evaluate(p * q, pt) == evaluate(p, pt) * evaluate(q, pt)
    assert evaluate(p - q, pt) == evaluate(p, pt) - evaluate(q, pt)


@settings(max_examples=40, deadline=None)
@given(p=polys(max_terms=4, max_len=2), data=st.data(), pt=points4)
def test_substitute_commutes_with_evaluation(p, data, pt):
    """evaluate(substitute(p, a), pt) == evaluate(p, a evaluated at pt)."""
    assignment = {
        s: data.draw(polys(max_terms=2, max_len=1, max_coeff=4))
        for s in S4.coords
    }
    image_point = {s: evaluate(img, pt) for s, img in assignment.items()}
    assert evaluate(substitute(p, assignment), pt) == evaluate(p, image_point)


@settings(max_examples=100, deadline=None)
@given(p=polys(scheme=S5, max_terms=6))
def test_print_parse_round_trip(p):
    assert parse_poly(poly_to_str(p), S5) == p


def test_powers():
    p = sym("y_12") - 2 * sym("y_123")
    assert p ** 0 == Polynomial.const(4, 1)
    assert p ** 1 == p
    assert p ** 3 == p * p * p
    with pytest.raises(ValueError):
        p ** -1


def test_integer_coercion():
    p = sym("y_12")
    assert p + 1 - 1 == p
    assert 3 - p == Polynomial.const(4, 3) - p
    assert p * 2 == p + p
    assert (p * 0).is_zero()


def test_bookkeeping_helpers():
    p = sym("y_12") * sym("y_13") + 5
    assert p.constant_term() == 5
    assert p.symbols() == {S4.symbol("y_12"), S4.symbol("y_13")}
    assert p.max_symbol_degree() == 1
    q = p + sym("y_1234")
    assert q.max_symbol_degree() == 3
    assert Polynomial.zero(4).is_zero()
    assert not p.is_zero()
    assert Polynomial.zero(4).max_symbol_degree() == 0


def test_mixed_scheme_arithmetic_rejected():
    with pytest.raises(SchemeError):
        sym("y_12", S4) + sym("y_12", S5)
    with pytest.raises(SchemeError):
        sym("y_12", S4) * sym("y_12", S5)


def test_symbol_interning_and_order():
    a = Symbol.get(4, (1, 2))
    assert a is S4.symbol("y_12")
    assert a.degree == 1 and a.kind == "linking"
    assert S4.symbol("y_123").kind == "triple"
    assert S4.symbol("y_12") < S4.symbol("y_123") < S4.symbol("y_1234")
    with pytest.raises(SchemeError):
        Symbol.get(4, (1, 5))
    with pytest.raises(SchemeError):
        Symbol.get(6, (1, 2))


def test_parse_rejects_garbage():
    for text in ("y_12 +", "* y_12", "y_99", "(y_12", "y_12 y_13 $", ""):
        with pytest.raises((ParseError, SchemeError)):
            parse_poly(text, S4)


def test_parse_examples():
    assert parse_poly("y_12*y_34 - 2*y_123 + 7", S4) == (
        sym("y_12") * sym("y_34") - 2 * sym("y_123") + 7
    )
    # implicit products are not part of the grammar; * is required
    assert parse_poly("-y_12", S4) == -sym("y_12")
    assert parse_poly("(y_12 + 1)*(y_12 - 1)", S4) == sym("y_12") * sym("y_12") - 1
    assert parse_poly("0", S4).is_zero()


def test_print_examples():
    assert poly_to_str(Polynomial.zero(4)) == "0"
    assert poly_to_str(Polynomial.const(4, -3)) == "-3"
    p = sym("y_123") - sym("y_12") * sym("y_13") + 1
    # graded-lex ordering, highest first, sign folded into the separator
    assert poly_to_str(p) == "y_123 - y_12*y_13 + 1"


def test_evaluate_and_substitute_require_total_maps():
    p = sym("y_12") + sym("y_13")
    with pytest.raises(SchemeError):
        evaluate(p, {S4.symbol("y_12"): 1})
    with pytest.raises(SchemeError):
        substitute(p, {S4.symbol("y_12"): Polynomial.const(4, 1)})
