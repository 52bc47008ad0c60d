from fractions import Fraction

import pytest

from eideals.conditions import check_prime_conditions, tilde_substitute
from eideals.errors import UsageError
from eideals.grammar import collect_variables, format_epoly, parse_epoly, parse_many


def I(*texts):
    return parse_many(texts, collect_variables(*texts))


@pytest.mark.parametrize("src, expected", [
    ("y1 - 1", "E(x1) - 1"),
    ("x1*y1 + y2", "x1*E(x1) + E(x2)"),
    ("y1*y2 - 1", "E(x1 + x2) - 1"),
])
def test_tilde(src, expected):
    p = parse_epoly(src)
    out = tilde_substitute(p)
    assert out == parse_epoly(expected, out.vars)
    assert format_epoly(out) == format_epoly(parse_epoly(expected, out.vars))


def test_tilde_arity_mismatch():
    with pytest.raises(UsageError):
        tilde_substitute(parse_epoly("y3 - 1"), n=2)


def test_binomial_violation():
    rep = check_prime_conditions(I("y1 - 2"))
    assert ((Fraction(1),), Fraction(2)) in rep.cond3_violations
    assert rep.cond2_ok


def test_linear_violation():
    rep = check_prime_conditions(I("x1 + y1 - 3", "y1 - 1"))
    assert [format_epoly(v) for v in rep.cond2_violations] == ["x1 - 2"]


def test_no_violations():
    rep = check_prime_conditions(I("y1 - x1^2"), D=4, B=4)
    assert rep.cond2_ok and rep.cond3_ok
    s = rep.summary()
    assert "not verified" in s["cond1"] and "not verified" in s["cond4"]


def test_higher_power_binomial():
    rep = check_prime_conditions(I("y1^2 - 4"))
    assert ((Fraction(2),), Fraction(4)) in rep.cond3_violations
    assert all(q != (Fraction(1),) for q, _ in rep.cond3_violations)


def test_user_assertions_echoed():
    rep = check_prime_conditions(I("y1 - x1^2"), cond1=True, cond4=False)
    assert rep.summary()["cond1"].startswith("asserted true")
