from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbitnf.exactmath import (
    ParseError,
    PolyQ,
    poly_arith,
    poly_eq,
    poly_eval,
    poly_from_roots,
    poly_to_str,
    rat_from_json,
    rat_parse,
    rat_to_json,
)

from conftest import rationals


@pytest.mark.parametrize(
    "text, expected",
    [("16/3", Fraction(16, 3)), ("-4/8", Fraction(-1, 2)), ("0/5", Fraction(0)), ("7", Fraction(7))],
)
def test_rat_parse(text, expected):
    q = rat_parse(text)
    assert q == expected
    assert q.denominator > 0


@pytest.mark.parametrize("text", ["1/0", "", "1.5", "a/b", "--1", "1/-2", "3/"])
def test_rat_parse_rejects(text):
    with pytest.raises(ParseError):
        rat_parse(text)


def test_rat_json_roundtrip():
    for q in (Fraction(16, 3), Fraction(-1, 2), Fraction(4), Fraction(0)):
        assert rat_from_json(rat_to_json(q)) == q
    assert rat_to_json(Fraction(4)) == "4"
    assert rat_from_json(5) == 5


def test_poly_from_roots_examples():
    x = PolyQ([0, 1])
    assert poly_from_roots([(2, 1), (1, 1), (0, 1)]) == PolyQ([0, 2, -3, 1])
    assert poly_from_roots([(1, 3)]) == PolyQ([-1, 3, -3, 1])
    assert poly_from_roots([]) == PolyQ([1])
    assert poly_to_str(poly_from_roots([(2, 1), (1, 1), (0, 1)])) == "x^3 - 3*x^2 + 2*x"
    assert x * x == PolyQ([0, 0, 1])


def test_poly_ops_examples():
    cubic = PolyQ([0, 2, -3, 1])
    assert poly_eval(cubic, 1) == 0
    xm1 = PolyQ([-1, 1])
    assert poly_arith(xm1, xm1, "mul") == PolyQ([1, -2, 1])
    assert poly_eq(PolyQ([-1, 0, 1]), poly_arith(xm1, PolyQ([1, 1]), "mul"))
    assert poly_arith(xm1, xm1, "sub").is_zero()
    assert poly_arith(xm1, xm1, "add") == PolyQ([-2, 2])
    with pytest.raises(ValueError):
        poly_arith(xm1, xm1, "div")


def test_zero_trimmed():
    assert PolyQ([1, 0, 0]).degree == 0
    assert PolyQ([0, 0]).degree == -1


def test_divmod_exact():
    a = poly_from_roots([(1, 2), (Fraction(1, 3), 1)])
    q, r = a.divmod(poly_from_roots([(1, 1)]))
    assert r.is_zero()
    assert q == poly_from_roots([(1, 1), (Fraction(1, 3), 1)])
    q, r = PolyQ([1, 0, 1]).divmod(PolyQ([-1, 1]))
    assert q == PolyQ([1, 1]) and r == PolyQ([2])
    with pytest.raises(ZeroDivisionError):
        a.divmod(PolyQ())


@given(rationals, rationals, rationals)
def test_field_laws_exact(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(st.lists(st.tuples(rationals, st.integers(1, 3)), max_size=5))
def test_roots_vanish(roots):
    p = poly_from_roots(roots)
    assert p.leading() == 1
    assert p.degree == sum(m for _, m in roots)
    for r, _ in roots:
        assert poly_eval(p, r) == 0


@given(st.lists(rationals, max_size=6), st.lists(rationals, max_size=6))
def test_degree_of_product(a, b):
    pa, pb = PolyQ(a), PolyQ(b)
    prod = poly_arith(pa, pb, "mul")
    if pa.is_zero() or pb.is_zero():
        assert prod.is_zero()
    else:
        assert prod.degree == pa.degree + pb.degree


@given(st.lists(rationals, max_size=6), st.lists(rationals, min_size=1, max_size=4))
def test_divmod_reconstructs(a, b):
    pb = PolyQ(b)
    if pb.is_zero():
        return
    q, r = PolyQ(a).divmod(pb)
    assert q * pb + r == PolyQ(a)
    assert r.degree < pb.degree
