"""Exponent lattices and the Laurent encoding of exponential polynomials.

The exponents ``a`` occurring in a finite set of EPolys generate a finitely
generated, torsion-free (hence free) subgroup of the additive group of
augmentation elements.  Clearing denominators and taking a Hermite normal form
gives a Z-basis ``v_1..v_r``; each ``t^a`` with integer coordinates ``k`` then
becomes the Laurent monomial ``u^k``.  On that subring the encoding is a ring
isomorphism onto ``Q[x, u^{+-1}]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .epoly import EPoly, _term_key
from .errors import CoefficientNotRational, ExponentOutsideLattice, UsageError
from .laurent import LaurentPoly


def hermite_normal_form(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows of the HNF (positive pivots, entries above each
    pivot reduced into ``[0, pivot)``) and the pivot column of each row.
    """
    A = [list(r) for r in rows if any(r)]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r >= len(A):
            break
        while True:
            nz = [i for i in range(r, len(A)) if A[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(A[i][col]), i))
            A[r], A[piv] = A[piv], A[r]
            clean = True
            for i in range(r + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // A[r][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][col]:
                        clean = False
            if clean:
                break
        if any(A[i][col] for i in range(r, len(A))):
            if A[r][col] < 0:
                A[r] = [-a for a in A[r]]
            for i in range(r):
                q = A[i][col] // A[r][col]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            pivots.append(col)
            r += 1
    return A[:r], pivots


@dataclass(frozen=True)
class ExponentLattice:
    """Z-basis of the group generated by a finite set of exponents."""

    vars: tuple[str, ...]
    atoms: tuple[EPoly, ...]
    basis: tuple[EPoly, ...]
    denominator: int
    columns: tuple = field(repr=False)
    hnf: tuple[tuple[int, ...], ...] = field(repr=False)
    pivots: tuple[int, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, arg: EPoly) -> tuple[int, ...]:
        """Integer coordinates of ``arg`` in the basis, or ExponentOutsideLattice."""
        if arg.vars != self.vars:
            raise UsageError(f"exponent over {arg.vars}, lattice over {self.vars}")
        if not arg.terms:
            return (0,) * self.rank
        col = {k: i for i, k in enumerate(self.columns)}
        v = [0] * len(self.columns)
        for k, c in arg.terms:
            i = col.get(k)
            scaled = c * self.denominator
            if i is None or scaled.denominator != 1:
                raise ExponentOutsideLattice(f"exponent {arg} is outside the lattice")
            v[i] = int(scaled)
        coords = []
        for row, p in zip(self.hnf, self.pivots):
            q, rem = divmod(v[p], row[p])
            if rem:
                raise ExponentOutsideLattice(f"exponent {arg} is outside the lattice")
            coords.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        if any(v):
            raise ExponentOutsideLattice(f"exponent {arg} is outside the lattice")
        return tuple(coords)

    def combine(self, coords) -> EPoly:
        """The exponent ``sum(k_i * v_i)``."""
        acc: dict = {}
        for k, row in zip(coords, self.hnf):
            if not k:
                continue
            for j, e in enumerate(row):
                if e:
                    key = self.columns[j]
                    acc[key] = acc.get(key, 0) + Fraction(k * e, self.denominator)
        return EPoly._make(self.vars, {key: c for key, c in acc.items() if c})


def extract_lattice(ps, vars=None, extra_atoms=()) -> ExponentLattice:
    """Lattice generated by every top-level exponent of ``ps`` (plus ``extra_atoms``)."""
    ps = list(ps)
    extra_atoms = list(extra_atoms)
    if vars is None:
        if ps:
            vars = ps[0].vars
        elif extra_atoms:
            vars = extra_atoms[0].vars
        else:
            vars = ()
    vars = tuple(vars)
    atoms: dict = {}
    for p in ps:
        for a in p.exponents():
            atoms.setdefault(a, None)
    for a in extra_atoms:
        if a.terms:
            atoms.setdefault(a, None)
    atoms = list(atoms)
    columns: dict = {}
    for a in atoms:
        for k, _ in a.terms:
            columns.setdefault(k, None)
    columns = sorted(columns, key=_term_key, reverse=True)
    index = {k: i for i, k in enumerate(columns)}
    denom = 1
    for a in atoms:
        for _, c in a.terms:
            denom = lcm(denom, c.denominator)
    rows = []
    for a in atoms:
        row = [0] * len(columns)
        for k, c in a.terms:
            row[index[k]] = int(c * denom)
        rows.append(row)
    H, pivots = hermite_normal_form(rows) if rows else ([], [])
    basis = []
    for row in H:
        basis.append(
            EPoly._make(
                vars, {columns[j]: Fraction(e, denom) for j, e in enumerate(row) if e}
            )
        )
    return ExponentLattice(
        vars=vars,
        atoms=tuple(atoms),
        basis=tuple(basis),
        denominator=denom,
        columns=tuple(columns),
        hnf=tuple(tuple(r) for r in H),
        pivots=tuple(pivots),
    )


def encode(p: EPoly, lattice: ExponentLattice) -> LaurentPoly:
    """Laurent image of ``p``: ``x^alpha t^a -> x^alpha u^coords(a)``."""
    if p.vars != lattice.vars:
        raise ValueError(f"variable mismatch: {p.vars} vs {lattice.vars}")
    terms = {}
    for (x, a, b), c in p.terms:
        if b:
            raise CoefficientNotRational(f"{p} has base symbols in a coefficient")
        terms[x + lattice.coordinates(a)] = c
    return LaurentPoly._raw(p.nvars, lattice.rank, terms)


def decode(f: LaurentPoly, lattice: ExponentLattice) -> EPoly:
    """Inverse of :func:`encode`."""
    nx = len(lattice.vars)
    if (f.nx, f.nu) != (nx, lattice.rank):
        raise ValueError("Laurent polynomial does not match the lattice")
    acc = {}
    for e, c in f.terms.items():
        acc[(e[:nx], lattice.combine(e[nx:]), ())] = c
    return EPoly._make(lattice.vars, acc)
