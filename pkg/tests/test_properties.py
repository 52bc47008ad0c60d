"""Hypothesis-driven checks on top of the seeded suites."""

from hypothesis import given, settings
from hypothesis import strategies as st

from eideals.epoly import EPoly, exp_apply, split_constant, validate
from eideals.grammar import format_epoly, parse_epoly
from eideals.lattice import decode, encode, extract_lattice

XY = ("x", "y")

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)


@st.composite
def epolys(draw, height=2):
    p = EPoly.zero(XY)
    for _ in range(draw(st.integers(1, 3))):
        t = EPoly.constant(XY, draw(coeffs))
        t = t.shift_x((draw(st.integers(0, 2)), draw(st.integers(0, 2))))
        if draw(st.booleans()):
            t = t * EPoly.symbol(XY, draw(st.integers(0, 2)))
        if height and draw(st.booleans()):
            _, arg = split_constant(draw(epolys(height - 1)))
            t = t * exp_apply(arg)
        p = p + t
    return p


@settings(max_examples=200, deadline=None)
@given(epolys(), epolys(), epolys())
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == EPoly.zero(XY)


@settings(max_examples=200, deadline=None)
@given(epolys(), epolys())
def test_exp_homomorphism(p, q):
    assert exp_apply(p + q) == exp_apply(p) * exp_apply(q)


@settings(max_examples=200, deadline=None)
@given(epolys())
def test_format_parse_round_trip(p):
    assert parse_epoly(format_epoly(p), XY) == p
    assert validate(p) == []


@settings(max_examples=200, deadline=None)
@given(epolys())
def test_encode_decode(p):
    # drop base-symbol coefficients, which have no Laurent image
    q = EPoly(XY, {k: c for k, c in p.terms if not k[2]})
    lat = extract_lattice([q], XY)
    assert decode(encode(q, lat), lat) == q


@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=6))
def test_scaled_exponent_round_trip(c):
    p = parse_epoly(f"E({c}*x) - 1", XY)
    assert parse_epoly(format_epoly(p), XY) == p
    if c:
        assert exp_apply(parse_epoly(f"{c}*x", XY)) * exp_apply(parse_epoly(f"{-c}*x", XY)) == EPoly.one(XY)
