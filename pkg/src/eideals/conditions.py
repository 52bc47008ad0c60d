"""The substitution p -> p(x, E(x)) and bounded checks of the primality conditions.

For an ideal I of Q[x, y] (paired variables ``x_i``/``y_i``) two conditions
are checkable with Groebner bases:

* no nonzero ``a + q.x`` (``q`` rational) lies in I: eliminate the y-block and
  look for elements of total degree at most one;
* no ``y^q - a`` lies in I: for each denominator ``d <= D`` substitute
  ``y = s^d`` in the Laurent ring and test whether ``s^p`` (``|p_i| <= B``) has a
  constant normal form.

Primality of I and of its radical extensions is not decided; those two
conditions are echoed back as user assertions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from .epoly import EPoly
from .errors import CoefficientNotRational, UsageError
from .groebner import (
    DEFAULT_BUDGET,
    GREVLEX,
    eliminate_linear,
    groebner,
    lift,
    linear_elements,
    localization_relation,
)
from .laurent import LaurentPoly

_NAME = re.compile(r"([xy])(\d*)\Z")


def _pairing(vars, n=None):
    """Map variable names to (block, index); returns the x-variable names."""
    info = {}
    bare = indexed = False
    for v in vars:
        m = _NAME.match(v)
        if not m:
            raise UsageError(f"variable {v!r} is not of the form x_i / y_i")
        if m.group(2):
            indexed = True
            info[v] = (m.group(1), int(m.group(2)))
        else:
            bare = True
            info[v] = (m.group(1), 1)
    if bare and indexed:
        raise UsageError("cannot mix bare x/y with indexed variables")
    top = max((i for _, i in info.values()), default=0)
    if n is None:
        n = top
    elif top > n:
        raise UsageError(f"arity mismatch: variable index {top} exceeds n={n}")
    if indexed and any(i < 1 for _, i in info.values()):
        raise UsageError("variable indices start at 1")
    xs = ("x",) if bare else tuple(f"x{i}" for i in range(1, n + 1))
    return info, xs, n


def tilde_substitute(p: EPoly, n: int = None) -> EPoly:
    """Replace each ``y_i`` by ``E(x_i)`` in a polynomial over x, y."""
    if p.height:
        raise UsageError("expected an ordinary polynomial in x and y")
    info, xs, n = _pairing(p.vars, n)
    out = EPoly.zero(xs)
    for (xexp, _, bexp), c in p.terms:
        alpha = [0] * n
        arg = EPoly.zero(xs)
        for name, e in zip(p.vars, xexp):
            if not e:
                continue
            block, i = info[name]
            if block == "x":
                alpha[i - 1] += e
            else:
                arg = arg + EPoly.variable(xs, xs[i - 1]).scale(e)
        term = EPoly(xs, {(tuple(alpha), arg, bexp): c})
        out = out + term
    return out


def _split_blocks(I, n, info):
    """Exponent vectors (alpha, beta) for each polynomial of I."""
    polys = []
    for p in I:
        if p.height:
            raise UsageError("expected ordinary polynomials in x and y")
        terms = {}
        for (xexp, _, bexp), c in p.terms:
            if bexp:
                raise CoefficientNotRational(f"{p} has base symbols in a coefficient")
            alpha, beta = [0] * n, [0] * n
            for name, e in zip(p.vars, xexp):
                block, i = info[name]
                (alpha if block == "x" else beta)[i - 1] += e
            terms[(tuple(alpha), tuple(beta))] = c
        polys.append(terms)
    return polys


@dataclass
class ConditionsReport:
    """Outcome of the bounded checks; ``None`` in cond2/cond3 lists means none found."""

    n: int
    x_names: tuple
    cond2_violations: list = field(default_factory=list)
    cond3_violations: list = field(default_factory=list)
    denominator_bound: int = 4
    numerator_bound: int = 4
    cond1_asserted: bool = None
    cond4_asserted: bool = None

    @property
    def cond2_ok(self) -> bool:
        return not self.cond2_violations

    @property
    def cond3_ok(self) -> bool:
        return not self.cond3_violations

    def summary(self) -> dict:
        def asserted(flag):
            if flag is None:
                return "not asserted (not verified)"
            return f"asserted {'true' if flag else 'false'} by user (not verified)"

        return {
            "cond1": asserted(self.cond1_asserted),
            "cond2": [str(v) for v in self.cond2_violations] or "none found",
            "cond3": [
                {"q": [str(q) for q in qs], "a": str(a)} for qs, a in self.cond3_violations
            ] or f"none found (denominator <= {self.denominator_bound}, |numerator| <= {self.numerator_bound})",
            "cond4": asserted(self.cond4_asserted),
        }


def check_prime_conditions(I, D: int = 4, B: int = 4, cond1: bool = None, cond4: bool = None,
                           budget: int = DEFAULT_BUDGET) -> ConditionsReport:
    """Bounded search for violations of the linear and binomial conditions."""
    I = [p for p in I if not p.is_zero()]
    vars = I[0].vars if I else ()
    info, xs, n = _pairing(vars)
    blocks = _split_blocks(I, n, info)
    report = ConditionsReport(n, xs, denominator_bound=D, numerator_bound=B,
                              cond1_asserted=cond1, cond4_asserted=cond4)
    if not blocks:
        return report

    # linear elements: variables ordered (x..., y...), eliminate the y-block
    gens = [LaurentPoly(2 * n, 0, {a + b: c for (a, b), c in t.items()}) for t in blocks]
    elim = eliminate_linear(gens, range(n, 2 * n), budget)
    for p in linear_elements(elim):
        report.cond2_violations.append(
            EPoly(xs, {(e, None, ()): c for e, c in p.terms.items()})
        )

    # binomials y^q - a with q = p/d
    found = set()
    for d in range(1, D + 1):
        laurent = [LaurentPoly(n, n, {a + tuple(d * k for k in b): c for (a, b), c in t.items()}) for t in blocks]
        inputs = [lift(g) for g in laurent] + [localization_relation(n, n)]
        gb = groebner(inputs, 2 * n + 1, GREVLEX, budget)
        for p in product(range(-B, B + 1), repeat=n):
            if not any(p):
                continue
            g = 0
            for k in p:
                g = gcd(g, k)
            if gcd(g, d) != 1:
                continue
            q = tuple(Fraction(k, d) for k in p)
            if q in found:
                continue
            mono = LaurentPoly.monomial(n, n, (0,) * n + p)
            r, _ = gb.reduce(lift(mono), budget)
            if all(not any(e) for e in r):
                a = r.get((0,) * (2 * n + 1), Fraction(0))
                found.add(q)
                report.cond3_violations.append((q, a))
    return report
