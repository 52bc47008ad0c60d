from fractions import Fraction

import pytest

from eideals.epoly import EPoly, equals, exp_apply, height, split_constant, validate
from eideals.errors import UsageError

XY = ("x", "y")


def test_exp_is_additive(P):
    assert equals(P("E(x+y)"), P("E(x)*E(y)"))


def test_exp_differs_from_truncated_series(P):
    assert not equals(P("E(x)"), P("1 + x"))


def test_exp_of_zero_is_one():
    assert exp_apply(EPoly.zero(XY)) == EPoly.one(XY)


def test_exp_drops_constant_part(P):
    # trivial exponential on the base ring: E(c) = 1
    assert exp_apply(P("x + 3")) == P("E(x)")
    assert exp_apply(P("b0")) == EPoly.one(XY)


def test_heights(P):
    assert height(P("x^3 + 2")) == 0
    assert height(P("E(x)")) == 1
    assert height(P("x*E(y*E(x))")) == 2


def test_subtraction_normalizes_to_zero(P):
    p = P("x*E(y) - 3/4*E(x*E(y)) + b1*y^2")
    assert (p - p).is_zero()


def test_distributes_over_exponentials(P):
    assert P("x*(E(y) - 1)") == P("x*E(y) - x")


def test_mixed_variables_rejected(P):
    with pytest.raises(UsageError):
        P("x") + parse_x_only("x")


def parse_x_only(text):
    from eideals.grammar import parse_epoly

    return parse_epoly(text, ("x",))


def test_no_integer_equality(P):
    assert P("1") != 1
    assert P("1") == EPoly.one(XY)


def test_split_constant(P):
    c, rest = split_constant(P("x + 5/2 + E(y)"))
    assert c.as_rational() == Fraction(5, 2)
    assert rest == P("x + E(y)")


def test_structure_validator_accepts_normalized(P):
    assert validate(P("E(x*E(y) - y) + x^2*E(1/3*y)")) == []


def test_chain_product_has_nine_terms(P):
    p0 = P("E(b0*x) + E(b1*x) + E(b2*x)")
    p1 = P("E(b3*x) + E(b4*x) + E(b5*x)")
    assert len(list((p0 * p1).items())) == 9


def test_power_and_scale(P):
    assert P("E(x)")**3 == P("E(3*x)")
    assert P("x + 1").scale(Fraction(1, 2)) == P("x/2 + 1/2")


def test_x_content_and_shift(P):
    p = P("x^2*y + x^3*E(y)")
    assert p.x_content() == (2, 0)
    assert p.shift_x((-2, 0)) == P("y + x*E(y)")
