from fractions import Fraction

import pytest
import sympy

from eideals.errors import BudgetExceeded
from eideals.groebner import (
    GREVLEX,
    LEX,
    In,
    NotIn,
    buchberger,
    eliminate_linear,
    laurent_membership,
    linear_elements,
    localization_relation,
)
from eideals.laurent import LaurentPoly, evaluate_at_point
from eideals.selftest import linear_algebra_member


def L(nx, nu, terms):
    return LaurentPoly(nx, nu, {tuple(e): Fraction(c) for e, c in terms.items()})


def test_xu_minus_x_not_in_xy():
    # x, y, u = E(y)
    f = L(2, 1, {(1, 0, 1): 1, (1, 0, 0): -1})
    g = L(2, 1, {(1, 1, 0): 1})
    assert isinstance(laurent_membership(f, [g]), NotIn)


def test_u_squared_minus_one_cofactor():
    f = L(0, 1, {(2,): 1, (0,): -1})
    g = L(0, 1, {(1,): 1, (0,): -1})
    v = laurent_membership(f, [g])
    assert isinstance(v, In)
    assert v.cofactors == ((0, L(0, 1, {(1,): 1, (0,): 1})),)


def test_inverse_needs_localization():
    # u^-1 - 1 = -u^-1 (u - 1)
    f = L(0, 1, {(-1,): 1, (0,): -1})
    g = L(0, 1, {(1,): 1, (0,): -1})
    v = laurent_membership(f, [g])
    assert v.member
    assert sum((c * g for _, c in v.cofactors), L(0, 1, {})) == f


def _chain(i):
    e = [0] * 9
    out = {}
    for k in range(3 * i, 3 * i + 3):
        m = list(e)
        m[k] = 1
        out[tuple(m)] = 1
    return L(0, 9, out)


def test_chain_not_in_and_evaluation_oracle():
    p0, p1, p2 = (_chain(i) for i in range(3))
    assert not laurent_membership(p2, [p0, p1]).member
    pt = (1, 1, -2, 1, 1, -2, 1, 1, 1)
    assert evaluate_at_point(p0, pt) == 0 and evaluate_at_point(p1, pt) == 0
    assert evaluate_at_point(p2, pt) == 3


def test_one_generator_chain_evaluation():
    p0, p1 = _chain(0), _chain(1)
    pt = (1, 1, -2, 1, 1, 1, 1, 1, 1)
    assert evaluate_at_point(p0, pt) == 0 and evaluate_at_point(p1, pt) == 3
    assert not laurent_membership(p1, [p0]).member


def test_zero_ideal_basis_is_localization_relation():
    basis = buchberger([L(0, 2, {})])
    assert len(basis) == 1
    assert dict(basis[0].terms) == dict(localization_relation(0, 2))


@pytest.mark.parametrize("order", [GREVLEX, LEX])
def test_order_independence(order):
    gens = [L(2, 0, {(2, 0): 1, (0, 1): -1}), L(2, 0, {(1, 1): 1, (0, 0): -1})]
    f = L(2, 0, {(0, 2): 1, (1, 0): -1})
    assert laurent_membership(f, gens, order).member == laurent_membership(f, gens[::-1], GREVLEX).member


def test_budget_exceeded():
    gens = [L(3, 0, {(3, 0, 0): 1, (0, 2, 1): -1, (1, 1, 1): 1}),
            L(3, 0, {(0, 3, 0): 1, (1, 0, 2): -1}),
            L(3, 0, {(0, 0, 3): 1, (2, 1, 0): -1})]
    with pytest.raises(BudgetExceeded):
        laurent_membership(L(3, 0, {(1, 1, 1): 1}), gens, budget=5)


def test_linear_elimination():
    # x1 + y1 - 3, y1 - 1 in variables (x1, y1): eliminate y1
    gens = [L(2, 0, {(1, 0): 1, (0, 1): 1, (0, 0): -3}), L(2, 0, {(0, 1): 1, (0, 0): -1})]
    lin = linear_elements(eliminate_linear(gens, [1]))
    assert lin == [L(1, 0, {(1,): 1, (0,): -2})]


def test_linear_elimination_none():
    gens = [L(2, 0, {(0, 1): 1, (2, 0): -1})]  # y - x^2
    assert linear_elements(eliminate_linear(gens, [1])) == []


def _sympy_member(f, gens, syms):
    G = sympy.groebner([_to_sympy(g, syms) for g in gens], *syms, order="grevlex")
    return G.contains(_to_sympy(f, syms))


def _to_sympy(p, syms):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([s**k for s, k in zip(syms, e)])
               for e, c in p.items())


@pytest.mark.parametrize("seed", range(20))
def test_against_sympy_and_linear_algebra(seed):
    import random

    from eideals.selftest import _pmul, _random_poly

    rng = random.Random(seed)
    gens = [_random_poly(rng, 2, 2, 3) for _ in range(2)]
    f = _pmul(gens[0], _random_poly(rng, 2, 1, 2)) if seed % 2 else _random_poly(rng, 2, 3, 3)
    syms = sympy.symbols("a b")
    ours = laurent_membership(L(2, 0, f), [L(2, 0, g) for g in gens]).member
    assert ours == _sympy_member(f, gens, syms) == linear_algebra_member(f, gens, 2, 8)
