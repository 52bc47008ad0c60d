"""Laurent polynomials over Q in polynomial variables x and invertible variables u."""

from __future__ import annotations

from fractions import Fraction


class LaurentPoly:
    """Element of ``Q[x_1..x_nx, u_1^{+-1}..u_nu^{+-1}]``.

    ``terms`` maps an exponent tuple of length ``nx + nu`` (the first ``nx``
    entries non-negative) to a nonzero Fraction.
    """

    __slots__ = ("nx", "nu", "terms")

    def __init__(self, nx: int, nu: int, terms=None):
        self.nx = nx
        self.nu = nu
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nx + nu or any(v < 0 for v in e[:nx]):
                raise ValueError(f"bad exponent {e} for nx={nx}, nu={nu}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, nx, nu, terms) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj.nx, obj.nu, obj.terms = nx, nu, terms
        return obj

    @classmethod
    def constant(cls, nx, nu, c) -> LaurentPoly:
        return cls(nx, nu, {(0,) * (nx + nu): c})

    @classmethod
    def monomial(cls, nx, nu, exp, c=1) -> LaurentPoly:
        return cls(nx, nu, {tuple(exp): c})

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: LaurentPoly):
        if (self.nx, self.nu) != (other.nx, other.nu):
            raise ValueError("Laurent polynomials over different variable sets")

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return LaurentPoly._raw(self.nx, self.nu, acc)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.nx, self.nu, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly._raw(self.nx, self.nu, {})
            return LaurentPoly._raw(self.nx, self.nu, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        acc: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = acc.get(e, 0) + c1 * c2
                if v:
                    acc[e] = v
                else:
                    del acc[e]
        return LaurentPoly._raw(self.nx, self.nu, acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.nx, self.nu) == (other.nx, other.nu) and self.terms == other.terms

    def __hash__(self):
        return hash((self.nx, self.nu, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __repr__(self):
        names = [f"x{i + 1}" for i in range(self.nx)] + [f"u{i + 1}" for i in range(self.nu)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return f"LaurentPoly({' + '.join(parts) or '0'})"


def evaluate_at_point(f: LaurentPoly, point) -> Fraction:
    """Exact value of ``f`` at ``point`` (x-coordinates then u-coordinates)."""
    point = [Fraction(v) for v in point]
    if len(point) != f.nx + f.nu:
        raise ValueError(f"point has {len(point)} coordinates, expected {f.nx + f.nu}")
    if any(v == 0 for v in point[f.nx:]):
        raise ValueError("invertible coordinates must be nonzero")
    total = Fraction(0)
    for e, c in f.terms.items():
        term = c
        for v, k in zip(point, e):
            if k:
                term *= v ** k
        total += term
    return total
