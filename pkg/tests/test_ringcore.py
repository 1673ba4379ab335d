import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobroot.ringcore import (
    ContextMismatch,
    ExponentOverflow,
    Polynomial,
    PolynomialSyntaxError,
    RingContext,
    format_polynomial,
    parse_polynomial,
    poly_arith,
)
from helpers import brute_expand, random_poly


def test_parse_reduces_constants_mod_p():
    R = RingContext(5, ("x", "y"))
    f = parse_polynomial(R, "x^2*y - 3")
    assert f.terms == {(2, 1): 1, (0, 0): 2}


def test_parse_char_two_cancels():
    R = RingContext(2, ("x",))
    assert parse_polynomial(R, "x + x").terms == {}


def test_parse_square_of_binomial():
    R = RingContext(7, ("x",))
    # (x+1)^2 expanded by enumerating term pairs
    expected = brute_expand([R("x + 1"), R("x + 1")])
    assert R("(x+1)^2") == expected
    assert expected.terms == {(2,): 1, (1,): 2, (0,): 1}


@pytest.mark.parametrize("text", ["-x - y", " - x*y^2 + 3 ", "((x))^3*(y+1)", "2*3*x", "0"])
def test_parse_accepts(text):
    R = RingContext(7, ("x", "y"))
    parse_polynomial(R, text)


@pytest.mark.parametrize("text, pos", [
    ("x +", 3),
    ("x ** 2", 3),
    ("(x + y", 6),
    ("x $ y", 2),
    ("", 0),
    ("x^y", 2),
    ("2^3", 1),
])
def test_parse_syntax_errors_report_position(text, pos):
    R = RingContext(7, ("x", "y"))
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_polynomial(R, text)
    assert info.value.pos == pos


def test_parse_unknown_variable():
    R = RingContext(7, ("x", "y"))
    with pytest.raises(PolynomialSyntaxError, match="unknown variable 'w'") as info:
        parse_polynomial(R, "x^3 + w")
    assert info.value.pos == 6


def test_parse_exponent_overflow():
    R = RingContext(7, ("x",))
    with pytest.raises(PolynomialSyntaxError, match="overflow"):
        parse_polynomial(R, "x^2147483648")
    assert parse_polynomial(R, "x^2147483647").degree() == 2**31 - 1


@pytest.mark.parametrize("p", [1, 4, 9, 65537, 2**16])
def test_context_rejects_bad_primes(p):
    with pytest.raises(ValueError):
        RingContext(p, ("x",))


@pytest.mark.parametrize("names", [("x", "x"), ("1x",), ("",), ("x-y",)])
def test_context_rejects_bad_names(names):
    with pytest.raises(ValueError):
        RingContext(3, names)


def test_mul_char_two_binomial(R2):
    assert poly_arith(R2, "mul", R2("x+y"), R2("x+y")) == R2("x^2 + y^2")


def test_pow_zero_is_one(R5):
    assert poly_arith(R5, "pow", R5("3*x*y + y^4"), 0) == R5.one()


def test_pow_fermat_cubic_cubed(R2):
    f = R2("x^3+y^3+z^3")
    expected = brute_expand([f, f, f])
    assert f ** 3 == expected
    assert expected == R2("x^9+y^9+z^9+x^6*y^3+x^6*z^3+x^3*y^6+y^6*z^3+x^3*z^6+y^3*z^6")


def test_context_mismatch():
    a = RingContext(3, ("x",))("x")
    b = RingContext(5, ("x",))("x")
    with pytest.raises(ContextMismatch):
        a + b
    with pytest.raises(ContextMismatch):
        poly_arith(a.ctx, "mul", a, b)


def test_pow_overflow_is_checked():
    R = RingContext(3, ("x",))
    with pytest.raises(ExponentOverflow):
        R("x^2000000000") ** 2


def test_format_examples():
    R = RingContext(5, ("x", "y"))
    assert format_polynomial(R, R.zero()) == "0"
    assert format_polynomial(R, Polynomial(R, {(2, 1): 1, (1, 0): 3})) == "x^2*y + 3*x"


def test_format_orders_terms_by_ring_order():
    lex = RingContext(7, ("x", "y"), "lex")
    grevlex = RingContext(7, ("x", "y"))
    terms = {(1, 0): 1, (0, 3): 1}
    assert str(Polynomial(lex, terms)) == "x + y^3"
    assert str(Polynomial(grevlex, terms)) == "y^3 + x"


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_field_axioms_exhaustive(p):
    F = range(p)
    for a, b, c in itertools.product(F, repeat=3):
        assert (a * b) * c % p == a * (b * c) % p
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) % p == (a * b + a * c) % p
    for a in range(1, p):
        assert a * pow(a, -1, p) % p == 1
        assert pow(a, p, p) == a


def _monomials(n):
    return st.tuples(*[st.integers(0, 6)] * n)


ORDERS = ["grevlex", "lex", ("block", 1), ("block", 2)]


@pytest.mark.parametrize("order", ORDERS)
@settings(max_examples=200, deadline=None)
@given(u=_monomials(3), v=_monomials(3), w=_monomials(3))
def test_monomial_order_axioms(order, u, v, w):
    R = RingContext(3, ("x", "y", "z"), order)
    k = R.mon_key
    assert (k(u) < k(v)) + (u == v) + (k(v) < k(u)) == 1
    if k(u) < k(v):
        uw = tuple(a + b for a, b in zip(u, w))
        vw = tuple(a + b for a, b in zip(v, w))
        assert k(uw) < k(vw)
    assert k((0, 0, 0)) <= k(u)


def test_grevlex_known_comparisons():
    R = RingContext(3, ("x", "y", "z"))
    k = R.mon_key
    assert k((1, 0, 0)) > k((0, 1, 0)) > k((0, 0, 1))
    assert k((0, 2, 0)) > k((1, 0, 1))  # x*z < y^2 in grevlex
    assert k((1, 0, 0)) < k((0, 0, 2))


def test_block_order_eliminates_first_block():
    R = RingContext(3, ("t", "x", "y"), ("block", 1))
    k = R.mon_key
    assert k((1, 0, 0)) > k((0, 5, 5))
    assert k((0, 2, 0)) > k((0, 0, 1))


def test_ring_axioms_randomized():
    rng = random.Random(7)
    for p in (2, 3, 5, 7):
        R = RingContext(p, ("x", "y", "z"))
        for _ in range(25):
            a, b, c = (random_poly(R, rng, 3, 4) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            assert a - a == R.zero()


def test_frobenius_matches_pow():
    rng = random.Random(3)
    for p in (2, 3, 5):
        R = RingContext(p, ("x", "y"))
        for _ in range(10):
            f = random_poly(R, rng, 3, 4)
            assert f.frobenius(p) == f ** p
            assert f.frobenius(p * p) == f ** (p * p)


def test_divexact():
    R = RingContext(5, ("x", "y"))
    f, g = R("x^2 + 3*y"), R("x*y - 1")
    assert (f * g).divexact(g) == f
    with pytest.raises(ValueError):
        f.divexact(g)


def test_round_trip_1000_random():
    rng = random.Random(2024)
    for i in range(1000):
        p = (2, 3, 5, 7, 13, 65521)[i % 6]
        order = ORDERS[i % 4]
        R = RingContext(p, ("x", "y", "z"), order)
        f = random_poly(R, rng, max_deg=5, nterms=rng.randint(0, 6))
        assert parse_polynomial(R, format_polynomial(R, f)) == f


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(_monomials(2), st.integers(-50, 50), max_size=6))
def test_round_trip_hypothesis(terms):
    R = RingContext(11, ("a", "b1"))
    f = Polynomial(R, terms)
    assert R.parse(str(f)) == f
