"""Exact canonical forms for the free exponential polynomial ring K[x]^E.

The base E-ring is ``K = Q[b0, b1, ...]`` with the trivial exponential
``E_K(c) = 1``.  An element of ``K[x]^E`` is stored as a finite sum of terms

    coeff * b^beta * x^alpha * t^a

where ``t^a`` stands for ``E(a)`` and the exponent ``a`` is itself an
:class:`EPoly` with zero constant part.  Internally every term is keyed by the
triple ``(xexp, arg, bexp)`` and carries a nonzero :class:`fractions.Fraction`;
grouping the terms that share ``(xexp, arg)`` recovers the
``(GeneralizedMonomial, BaseCoeff)`` view.

Terms are kept sorted (descending) in a fixed total order, so two elements are
equal as ring elements iff their term tuples are identical.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterator, NamedTuple

from .errors import CoefficientNotRational, UsageError


def _strip(bexp: tuple[int, ...]) -> tuple[int, ...]:
    n = len(bexp)
    while n and bexp[n - 1] == 0:
        n -= 1
    return bexp[:n]


def _badd(b1: tuple[int, ...], b2: tuple[int, ...]) -> tuple[int, ...]:
    if not b1:
        return b2
    if not b2:
        return b1
    if len(b1) < len(b2):
        b1, b2 = b2, b1
    return tuple(e + (b2[i] if i < len(b2) else 0) for i, e in enumerate(b1))


def _bkey(bexp: tuple[int, ...]):
    return (sum(bexp), bexp)


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)) and not isinstance(c, bool):
        return Fraction(c)
    raise TypeError(f"expected a rational number, got {type(c).__name__}")


class BaseCoeff:
    """A polynomial over Q in the base symbols b0, b1, ...

    Stored as a tuple of ``(bexp, Fraction)`` pairs with distinct, trailing-zero
    stripped exponent vectors and no zero coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[tuple[int, ...], Fraction] = {}
        for bexp, c in items:
            bexp = _strip(tuple(int(e) for e in bexp))
            if any(e < 0 for e in bexp):
                raise ValueError("base-symbol exponents must be non-negative")
            acc[bexp] = acc.get(bexp, 0) + _to_fraction(c)
        self.terms = tuple(
            sorted(((b, c) for b, c in acc.items() if c), key=lambda t: _bkey(t[0]), reverse=True)
        )

    @classmethod
    def rational(cls, c) -> BaseCoeff:
        return cls([((), c)])

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(not b for b, _ in self.terms)

    def as_rational(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_rational():
            raise CoefficientNotRational(f"coefficient {self} involves base symbols")
        return self.terms[0][1]

    def __add__(self, other: BaseCoeff) -> BaseCoeff:
        return BaseCoeff(self.terms + other.terms)

    def __neg__(self) -> BaseCoeff:
        return BaseCoeff([(b, -c) for b, c in self.terms])

    def __sub__(self, other: BaseCoeff) -> BaseCoeff:
        return self + (-other)

    def __mul__(self, other: BaseCoeff) -> BaseCoeff:
        return BaseCoeff([(_badd(b1, b2), c1 * c2) for b1, c1 in self.terms for b2, c2 in other.terms])

    def __eq__(self, other):
        if isinstance(other, BaseCoeff):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == BaseCoeff.rational(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        parts = []
        for bexp, c in self.terms:
            sym = "*".join(
                f"b{j}" if e == 1 else f"b{j}^{e}" for j, e in enumerate(bexp) if e
            )
            parts.append(f"{c}*{sym}" if sym else str(c))
        return f"BaseCoeff({' + '.join(parts) or '0'})"


class GeneralizedMonomial(NamedTuple):
    """``x^xexp * t^arg``; the trivial monomial has zero xexp and zero arg."""

    xexp: tuple[int, ...]
    arg: "EPoly"

    def is_trivial(self) -> bool:
        return not any(self.xexp) and not self.arg.terms


class EPoly:
    """An element of K[x]^E in canonical form.

    ``vars`` names the x-variables (e.g. ``("x", "y")``); operands of ring
    operations must agree on it.  Instances are immutable and hashable.
    """

    __slots__ = ("vars", "terms", "_hash", "_skey", "_height")

    def __init__(self, vars, terms=()):
        vars = tuple(vars)
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict = {}
        n = len(vars)
        for key, c in items:
            xexp, arg, bexp = key
            xexp = tuple(int(e) for e in xexp)
            if len(xexp) != n or any(e < 0 for e in xexp):
                raise ValueError(f"bad x-exponent {xexp} for {n} variables")
            if arg is None:
                arg = EPoly.zero(vars)
            if not isinstance(arg, EPoly) or arg.vars != vars:
                raise UsageError("exponent must be an EPoly over the same variables")
            if not split_constant(arg)[0].is_zero():
                raise ValueError("exponent must have zero constant part")
            bexp = _strip(tuple(int(e) for e in bexp))
            if any(e < 0 for e in bexp):
                raise ValueError("base-symbol exponents must be non-negative")
            k = (xexp, arg, bexp)
            acc[k] = acc.get(k, 0) + _to_fraction(c)
        self._init(vars, acc)

    def _init(self, vars, acc):
        self.vars = vars
        self.terms = tuple(
            sorted(((k, c) for k, c in acc.items() if c), key=lambda t: _term_key(t[0]), reverse=True)
        )
        self._hash = None
        self._skey = None
        self._height = None

    @classmethod
    def _make(cls, vars, acc) -> EPoly:
        obj = cls.__new__(cls)
        obj._init(vars, acc)
        return obj

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(vars) -> EPoly:
        return _zero(tuple(vars))

    @classmethod
    def constant(cls, vars, c) -> EPoly:
        vars = tuple(vars)
        return cls._make(vars, {((0,) * len(vars), _zero(vars), ()): _to_fraction(c)})

    @classmethod
    def one(cls, vars) -> EPoly:
        return cls.constant(vars, 1)

    @classmethod
    def variable(cls, vars, name: str) -> EPoly:
        vars = tuple(vars)
        try:
            i = vars.index(name)
        except ValueError:
            raise UsageError(f"unknown variable {name!r}; have {vars}") from None
        xexp = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls._make(vars, {(xexp, _zero(vars), ()): Fraction(1)})

    @classmethod
    def symbol(cls, vars, j: int) -> EPoly:
        """The base constant b_j."""
        vars = tuple(vars)
        bexp = (0,) * j + (1,)
        return cls._make(vars, {((0,) * len(vars), _zero(vars), bexp): Fraction(1)})

    @classmethod
    def exp_monomial(cls, arg: EPoly) -> EPoly:
        """``t^arg``; ``arg`` must have zero constant part."""
        if not split_constant(arg)[0].is_zero():
            raise ValueError("exponent must have zero constant part")
        vars = arg.vars
        return cls._make(vars, {((0,) * len(vars), arg, ()): Fraction(1)})

    # -- structure --------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def height(self) -> int:
        if self._height is None:
            h = 0
            for (_, arg, _), _ in self.terms:
                if arg.terms:
                    h = max(h, arg.height + 1)
            self._height = h
        return self._height

    @property
    def sort_key(self):
        if self._skey is None:
            self._skey = tuple((_term_key(k), c) for k, c in self.terms)
        return self._skey

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        """True for elements of Q (no x, no t, no base symbols)."""
        return all(not any(x) and not a.terms and not b for (x, a, b), _ in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return self.terms[0][1] if self.terms else Fraction(0)

    def is_unit_monomial(self) -> bool:
        """True for ``c * t^a`` with c a nonzero rational: a unit of the ring."""
        if len(self.terms) != 1:
            return False
        (x, _, b), _ = self.terms[0]
        return not any(x) and not b

    def items(self) -> Iterator[tuple[GeneralizedMonomial, BaseCoeff]]:
        """Yield ``(GeneralizedMonomial, BaseCoeff)`` pairs in canonical order."""
        groups: dict = {}
        for (x, a, b), c in self.terms:
            groups.setdefault((x, a), []).append((b, c))
        for (x, a), bc in groups.items():
            yield GeneralizedMonomial(x, a), BaseCoeff(bc)

    def coefficient(self, xexp, arg=None) -> BaseCoeff:
        arg = arg if arg is not None else _zero(self.vars)
        xexp = tuple(xexp)
        return BaseCoeff([(b, c) for (x, a, b), c in self.terms if x == xexp and a == arg])

    def exponents(self) -> list[EPoly]:
        """Distinct nonzero exponents ``a`` of top-level factors ``t^a``."""
        seen = {}
        for (_, a, _), _ in self.terms:
            if a.terms:
                seen.setdefault(a, None)
        return list(seen)

    def has_symbolic_coefficients(self) -> bool:
        return any(b for (_, _, b), _ in self.terms)

    def x_content(self) -> tuple[int, ...]:
        """Componentwise minimum of the x-exponents (zero polynomial -> zeros)."""
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(x[i] for (x, _, _), _ in self.terms) for i in range(self.nvars))

    def shift_x(self, delta: tuple[int, ...]) -> EPoly:
        """Multiply by ``x^delta``; negative entries divide (must stay non-negative)."""
        acc = {}
        for (x, a, b), c in self.terms:
            nx = tuple(e + d for e, d in zip(x, delta))
            if any(e < 0 for e in nx):
                raise ValueError("x-monomial does not divide")
            acc[(nx, a, b)] = c
        return EPoly._make(self.vars, acc)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> EPoly:
        if isinstance(other, EPoly):
            if other.vars != self.vars:
                raise UsageError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return EPoly.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for k, c in other.terms:
            v = acc.get(k, 0) + c
            if v:
                acc[k] = v
            else:
                del acc[k]
        return EPoly._make(self.vars, acc)

    __radd__ = __add__

    def __neg__(self) -> EPoly:
        return EPoly._make(self.vars, {k: -c for k, c in self.terms})

    def __pos__(self) -> EPoly:
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return _zero(self.vars)
        acc: dict = {}
        arg_sums: dict = {}
        for (x1, a1, b1), c1 in self.terms:
            for (x2, a2, b2), c2 in other.terms:
                if not a2.terms:
                    a = a1
                elif not a1.terms:
                    a = a2
                else:
                    pair = (a1, a2)
                    a = arg_sums.get(pair)
                    if a is None:
                        a = arg_sums[pair] = a1 + a2
                k = (tuple(e1 + e2 for e1, e2 in zip(x1, x2)), a, _badd(b1, b2))
                v = acc.get(k, 0) + c1 * c2
                if v:
                    acc[k] = v
                else:
                    del acc[k]
        return EPoly._make(self.vars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> EPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are defined")
        result = EPoly.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> EPoly:
        c = _to_fraction(c)
        if not c:
            return _zero(self.vars)
        return EPoly._make(self.vars, {k: v * c for k, v in self.terms})

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, EPoly):
            return NotImplemented
        return self.vars == other.vars and hash(self) == hash(other) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.terms))
        return self._hash

    def __str__(self):
        from .grammar import format_epoly

        return format_epoly(self)

    def __repr__(self):
        return f"EPoly({str(self)!r})"


def _term_key(k):
    xexp, arg, bexp = k
    return (arg.height, sum(xexp), xexp, arg.sort_key, sum(bexp), bexp)


@lru_cache(maxsize=None)
def _zero(vars: tuple[str, ...]) -> EPoly:
    return EPoly._make(vars, {})


# -- module-level operations ---------------------------------------------


def ring_op(p: EPoly, q, op: str) -> EPoly:
    """Apply ``op`` in {add, sub, mul, neg, scale}; ``scale`` takes a rational ``q``."""
    if op == "neg":
        return -p
    if op == "scale":
        return p.scale(q)
    if isinstance(q, EPoly) and q.vars != p.vars:
        raise UsageError(f"variable mismatch: {p.vars} vs {q.vars}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise UsageError(f"unknown ring operation {op!r}")


def split_constant(p: EPoly) -> tuple[BaseCoeff, EPoly]:
    """Split ``p = c + a`` with ``c`` in K and ``a`` free of the trivial monomial."""
    const = []
    rest = {}
    for (x, a, b), c in p.terms:
        if not a.terms and not any(x):
            const.append((b, c))
        else:
            rest[(x, a, b)] = c
    return BaseCoeff(const), EPoly._make(p.vars, rest)


def exp_apply(p: EPoly) -> EPoly:
    """``E(p) = E_K(c) * t^a`` for ``p = c + a``, with E_K identically 1."""
    _, a = split_constant(p)
    if not a.terms:
        return EPoly.one(p.vars)
    return EPoly._make(p.vars, {((0,) * p.nvars, a, ()): Fraction(1)})


def height(p: EPoly) -> int:
    return p.height


def equals(p: EPoly, q: EPoly) -> bool:
    if p.vars != q.vars:
        raise UsageError(f"variable mismatch: {p.vars} vs {q.vars}")
    return (p - q).is_zero()


def validate(p: EPoly) -> list[str]:
    """Check every structural invariant recursively; returns problems found."""
    problems: list[str] = []
    _validate(p, problems, "")
    return problems


def _validate(p: EPoly, problems: list[str], path: str) -> None:
    keys = [_term_key(k) for k, _ in p.terms]
    if any(keys[i] <= keys[i + 1] for i in range(len(keys) - 1)):
        problems.append(f"{path}terms not strictly descending")
    for (x, a, b), c in p.terms:
        if not isinstance(c, Fraction) or c == 0:
            problems.append(f"{path}bad coefficient {c!r}")
        if len(x) != p.nvars or any(e < 0 for e in x):
            problems.append(f"{path}bad x-exponent {x}")
        if any(e < 0 for e in b) or (b and b[-1] == 0):
            problems.append(f"{path}bad base exponent {b}")
        if a.vars != p.vars:
            problems.append(f"{path}exponent over different variables")
        if a.terms:
            if not split_constant(a)[0].is_zero():
                problems.append(f"{path}exponent {a} has nonzero constant part")
            if a.height >= p.height:
                problems.append(f"{path}exponent height {a.height} not below {p.height}")
            _validate(a, problems, path + "E(")
