"""Prime-split certificates for the leveled E-radical operator.

Level 0 is the E-ideal generated by X.  A level-n certificate is a derivation
over X whose leaves may also be *prime splits*: given ``b1*b2`` certified at a
lower level, and the same element ``a`` certified at a lower level over both
``X + {b1}`` and ``X + {b2}``, the split contributes ``a``.  This is sound for
every prime E-ideal containing X, so a certified element lies in the E-radical.
Searching for certificates is only a semidecision; checking them is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .eideal import (
    CheckResult,
    EIdealPresentation,
    NotFoundUpToDepth,
    SaturationPolicy,
    Step,
    prove_membership,
    replay,
)
from .epoly import EPoly, exp_apply
from .errors import BudgetExceeded


@dataclass(frozen=True)
class PrimeSplit:
    b1: EPoly
    b2: EPoly
    product: "RadicalCertificate"
    left: "RadicalCertificate"
    right: "RadicalCertificate"
    element: EPoly


@dataclass(frozen=True)
class RadicalCertificate:
    level: int
    steps: tuple
    target: EPoly

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def splits(self) -> list[PrimeSplit]:
        return [s.split for s in self.steps if s.kind == "split"]


def Split(split: PrimeSplit) -> Step:
    return Step("split", split=split)


def check_radical_certificate(cert: RadicalCertificate, pres: EIdealPresentation, target: EPoly) -> CheckResult:
    """Pure replay of a radical certificate; no search is performed."""
    if not isinstance(cert, RadicalCertificate):
        return CheckResult(False, "not a radical certificate")
    if not isinstance(cert.level, int) or isinstance(cert.level, bool) or cert.level < 0:
        return CheckResult(False, "level must be a non-negative integer")
    if target.vars != pres.vars or cert.target.vars != pres.vars:
        return CheckResult(False, "variable mismatch")
    if cert.target != target:
        return CheckResult(False, "certificate target differs from requested target")
    if not cert.steps:
        return CheckResult(False, "empty certificate")

    def handle(step: Step, idx: int):
        s = step.split
        if cert.level == 0:
            return None, "prime split at level 0"
        if not isinstance(s, PrimeSplit):
            return None, "malformed split"
        for v in (s.b1, s.b2, s.element):
            if not isinstance(v, EPoly) or v.vars != pres.vars:
                return None, "split operand over wrong variables"
        for name, sub in (("product", s.product), ("left", s.left), ("right", s.right)):
            if not isinstance(sub, RadicalCertificate):
                return None, f"{name} is not a radical certificate"
            if not isinstance(sub.level, int) or sub.level >= cert.level:
                return None, f"{name} level {sub.level} is not below {cert.level}"
        r = check_radical_certificate(s.product, pres, s.b1 * s.b2)
        if not r:
            return None, f"product: {r.reason}"
        r = check_radical_certificate(s.left, pres.augmented(s.b1), s.element)
        if not r:
            return None, f"left: {r.reason}"
        r = check_radical_certificate(s.right, pres.augmented(s.b2), s.element)
        if not r:
            return None, f"right: {r.reason}"
        return s.element, None

    values, reason = replay(cert.steps, pres.gens, pres.vars, handle)
    if values is None:
        return CheckResult(False, reason)
    if values[-1] != target:
        return CheckResult(False, "replay mismatch: final step does not equal target")
    return CheckResult(True)


def as_radical(cert, level: int = 0) -> RadicalCertificate:
    """View a membership certificate as a radical certificate."""
    return RadicalCertificate(level, cert.steps, cert.target)


# -- split candidates ---------------------------------------------------------


def _x_divisors(content):
    ranges = [range(e + 1) for e in content]
    ds = [d for d in product(*ranges) if any(d)]
    return sorted(ds, key=lambda d: (sum(d), tuple(-e for e in d)))


def syntactic_splits(pres: EIdealPresentation) -> list[tuple[EPoly, EPoly]]:
    """Factorizations ``g = x^d * (g / x^d)`` of generators into two non-units."""
    out: dict = {}
    one = EPoly.one(pres.vars)
    for g in pres.gens:
        content = g.x_content()
        if not any(content):
            continue
        for d in _x_divisors(content):
            b1 = one.shift_x(d)
            b2 = g.shift_x(tuple(-e for e in d))
            if b2.is_unit_monomial():
                continue
            if (b2, b1) in out:
                continue
            out.setdefault((b1, b2), None)
    return list(out)


def factor_splits(pres: EIdealPresentation) -> list[tuple[EPoly, EPoly]]:
    """Syntactic splits plus those from factoring each generator's Laurent encoding over Q.

    Opt-in; generators with base symbols in coefficients are skipped.
    """
    import sympy

    from .lattice import decode, encode, extract_lattice
    from .laurent import LaurentPoly

    out: dict = dict.fromkeys(syntactic_splits(pres))
    for g in pres.gens:
        if g.has_symbolic_coefficients():
            continue
        lat = extract_lattice([g])
        f = encode(g, lat)
        nx, n = f.nx, f.nx + f.nu
        if n == 0:
            continue
        # clear negative u-exponents so the encoding is an ordinary polynomial
        shift = [0] * nx + [max(0, -min(e[i] for e in f.terms)) for i in range(nx, n)]
        syms = sympy.symbols(f"v0:{n}")
        poly = sympy.Poly.from_dict(
            {tuple(a + s for a, s in zip(e, shift)): sympy.Rational(c.numerator, c.denominator)
             for e, c in f.terms.items()},
            *syms, domain="QQ",
        )
        for fac, _ in poly.factor_list()[1]:
            quotient = sympy.div(poly, fac)[0]
            b1 = decode(_from_sympy(fac, nx, f.nu), lat)
            unshift = LaurentPoly.monomial(nx, f.nu, [-s for s in shift])
            b2 = decode(_from_sympy(quotient, nx, f.nu) * unshift, lat)
            if b1.is_unit_monomial() or b2.is_unit_monomial() or b1.is_zero() or b2.is_zero():
                continue
            if (b2, b1) not in out:
                out.setdefault((b1, b2), None)
    return list(out)


def _from_sympy(q, nx: int, nu: int):
    from .laurent import LaurentPoly

    return LaurentPoly(nx, nu, {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in q.as_dict().items()})


SPLITTERS = {"syntactic": syntactic_splits, "factor": factor_splits}


# -- search -------------------------------------------------------------------


@dataclass(frozen=True)
class RadicalProved:
    certificate: RadicalCertificate

    @property
    def proved(self) -> bool:
        return True

    @property
    def unit_ideal(self) -> bool:
        """True when the certified element is a nonzero constant, so Erad X = (1)."""
        t = self.certificate.target
        return t.is_constant() and not t.is_zero()


@dataclass(frozen=True)
class RadicalNotFound:
    max_level: int
    policy: SaturationPolicy

    @property
    def proved(self) -> bool:
        return False


class _Search:
    def __init__(self, policy: SaturationPolicy, splitter: str, max_nodes: int):
        self.policy = policy
        self.split = SPLITTERS[splitter]
        self.max_nodes = max_nodes
        self.nodes = 0
        self.memo: dict = {}

    def find(self, target: EPoly, pres: EIdealPresentation, level: int):
        key = (target, pres.gens, level)
        if key in self.memo:
            return self.memo[key]
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded(f"radical search exceeded {self.max_nodes} nodes")
        result = None
        v = prove_membership(target, pres, self.policy)
        if v.proved:
            result = as_radical(v.certificate, 0)
        elif level > 0:
            for b1, b2 in self.split(pres):
                prod = self.find(b1 * b2, pres, level - 1)
                if prod is None:
                    continue
                left = self.find(target, pres.augmented(b1), level - 1)
                if left is None:
                    continue
                right = self.find(target, pres.augmented(b2), level - 1)
                if right is None:
                    continue
                lvl = 1 + max(prod.level, left.level, right.level)
                split = PrimeSplit(b1, b2, prod, left, right, target)
                result = RadicalCertificate(lvl, (Split(split),), target)
                break
        self.memo[key] = result
        return result


def erad_search(target: EPoly, pres: EIdealPresentation, max_level: int = 1,
                policy: SaturationPolicy = SaturationPolicy(), splitter: str = "syntactic",
                max_nodes: int = 10_000):
    """Search for a radical certificate of level at most ``max_level``."""
    if max_level < 0:
        raise ValueError("max_level must be non-negative")
    search = _Search(policy, splitter, max_nodes)
    cert = search.find(target, pres, max_level)
    if cert is None:
        return RadicalNotFound(max_level, policy)
    return RadicalProved(cert)


@dataclass(frozen=True)
class Refutation:
    """A witness that X is not E-radical (relative to the non-membership depth).

    ``b1*b2`` is in the E-ideal, ``a`` lies in the E-radicals of ``X + {b1}``
    and ``X + {b2}``, yet ``a`` was not found in the E-ideal of X.
    """

    a: EPoly
    b1: EPoly
    b2: EPoly
    product: RadicalCertificate
    left: RadicalCertificate
    right: RadicalCertificate
    nonmembership: NotFoundUpToDepth


def refutation_candidates(b1: EPoly, b2: EPoly) -> list[EPoly]:
    e1 = exp_apply(b1) - 1
    e2 = exp_apply(b2) - 1
    return [b1 * e2, b2 * e1, e1 * e2]


def refute_eradical(pres: EIdealPresentation, policy: SaturationPolicy = SaturationPolicy(),
                    nonmember_depth: int = 3, splitter: str = "syntactic", max_level: int = 0):
    """Look for a violation of the E-radical criterion; ``None`` if none is found.

    ``None`` is not a proof that the ideal is E-radical.
    """
    if not pres.gens:
        return None
    search = _Search(policy, splitter, 10_000)
    for b1, b2 in SPLITTERS[splitter](pres):
        prod = search.find(b1 * b2, pres, max_level)
        if prod is None:
            continue
        for a in refutation_candidates(b1, b2):
            if a.is_zero():
                continue
            left = search.find(a, pres.augmented(b1), max_level)
            if left is None:
                continue
            right = search.find(a, pres.augmented(b2), max_level)
            if right is None:
                continue
            v = prove_membership(a, pres, policy.with_depth(nonmember_depth))
            if v.proved:
                continue
            return Refutation(a, b1, b2, prod, left, right, v)
    return None
