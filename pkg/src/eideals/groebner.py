"""Buchberger's algorithm over Q with cofactor tracking, and Laurent membership.

Polynomials are plain dicts ``{exponent tuple: Fraction}``.  A Laurent ideal
``(g_1..g_s)`` in ``Q[x, u^{+-1}]`` is decided in the polynomial ring
``Q[x, u, w]`` by adjoining ``w*u_1*...*u_r - 1``.  Every basis element keeps
its representation in terms of the inputs, so a zero remainder yields explicit
cofactors, which are checked by exact replay before being returned.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import BudgetExceeded
from .laurent import LaurentPoly

DEFAULT_BUDGET = 1_000_000

Exp = tuple
PolyDict = dict


class MonomialOrder:
    """An admissible monomial order given by a sort key (larger key = larger monomial)."""

    def __init__(self, name: str, key: Callable[[Exp], tuple]):
        self.name = name
        self.key = key

    def __repr__(self):
        return f"MonomialOrder({self.name!r})"


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


GREVLEX = MonomialOrder("grevlex", _grevlex_key)
LEX = MonomialOrder("lex", lambda m: m)


def block_order(k: int) -> MonomialOrder:
    """Grevlex on the first ``k`` variables, ties broken by grevlex on the rest."""
    return MonomialOrder(f"block{k}", lambda m: (_grevlex_key(m[:k]), _grevlex_key(m[k:])))


ORDERS = {"grevlex": GREVLEX, "lex": LEX}


# -- dict polynomial helpers --------------------------------------------


def _lead(f: PolyDict, key) -> Exp:
    return max(f, key=key)


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_scaled(acc: PolyDict, g: PolyDict, shift: Exp, c: Fraction) -> None:
    """``acc -= c * x^shift * g`` in place."""
    for m, cg in g.items():
        mm = tuple(a + b for a, b in zip(m, shift))
        v = acc.get(mm, 0) - c * cg
        if v:
            acc[mm] = v
        else:
            acc.pop(mm, None)


def _mul(f: PolyDict, g: PolyDict) -> PolyDict:
    acc: PolyDict = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = acc.get(m, 0) + c1 * c2
            if v:
                acc[m] = v
            else:
                del acc[m]
    return acc


def _add_into(acc: PolyDict, f: PolyDict, c: Fraction = Fraction(1)) -> None:
    for m, cf in f.items():
        v = acc.get(m, 0) + c * cf
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def _scale(f: PolyDict, c: Fraction) -> PolyDict:
    return {m: v * c for m, v in f.items()}


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(f"Groebner computation exceeded budget of {self.budget} reduction steps")


def _reduce(f: PolyDict, basis, leads, key, counter, quotients=None) -> PolyDict:
    """Full reduction of ``f``; optionally accumulates per-element quotients."""
    p = dict(f)
    r: PolyDict = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for i, g in enumerate(basis):
            lm = leads[i]
            if _divides(lm, m):
                counter.tick()
                shift = tuple(a - b for a, b in zip(m, lm))
                coeff = c / g[lm]
                _sub_scaled(p, g, shift, coeff)
                if quotients is not None:
                    q = quotients[i]
                    v = q.get(shift, 0) + coeff
                    if v:
                        q[shift] = v
                    else:
                        q.pop(shift, None)
                break
        else:
            r[m] = c
            del p[m]
    return r


@dataclass
class GroebnerBasis:
    """A reduced Groebner basis, with representations when tracking was requested."""

    polys: list
    leads: list
    reps: list | None
    order: MonomialOrder
    nvars: int
    ninputs: int
    steps: int

    def reduce(self, f: PolyDict, budget: int = DEFAULT_BUDGET, track: bool = False):
        """Return ``(remainder, cofactors)``; cofactors are w.r.t. the inputs if tracked."""
        counter = _Counter(budget)
        quotients = [dict() for _ in self.polys] if track else None
        r = _reduce(f, self.polys, self.leads, self.order.key, counter, quotients)
        if not track:
            return r, None
        if self.reps is None:
            raise ValueError("basis was computed without representation tracking")
        cof = [dict() for _ in range(self.ninputs)]
        for qi, rep in zip(quotients, self.reps):
            if not qi:
                continue
            for k in range(self.ninputs):
                if rep[k]:
                    _add_into(cof[k], _mul(qi, rep[k]))
        return r, cof


def groebner(inputs: Sequence[PolyDict], nvars: int, order: MonomialOrder = GREVLEX,
             budget: int = DEFAULT_BUDGET, track: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``inputs``.

    Pair selection is the normal strategy (smallest lcm first, deterministic
    tie-breaks); Buchberger's coprime and chain criteria prune pairs.
    """
    key = order.key
    counter = _Counter(budget)
    m = len(inputs)
    G: list[PolyDict] = []
    leads: list[Exp] = []
    reps: list[list[PolyDict]] = []
    alive: list[bool] = []
    pending: set = set()
    heap: list = []
    zero = (0,) * nvars

    def add(h: PolyDict, rep):
        lm = _lead(h, key)
        inv = 1 / h[lm]
        h = _scale(h, inv)
        if track:
            rep = [_scale(r, inv) for r in rep]
        t = len(G)
        G.append(h)
        leads.append(lm)
        reps.append(rep)
        alive.append(True)
        for i in range(t):
            if not alive[i]:
                continue
            lcm_ij = tuple(max(a, b) for a, b in zip(leads[i], lm))
            heapq.heappush(heap, ((sum(lcm_ij), key(lcm_ij)), i, t, lcm_ij))
            pending.add((i, t))

    def reduce_new(f: PolyDict, rep):
        quotients = [dict() for _ in G] if track else None
        r = _reduce(f, G, leads, key, counter, quotients)
        if track and r:
            rep = [dict(x) for x in rep]
            for qi, rk in zip(quotients, reps):
                if qi:
                    for k in range(m):
                        if rk[k]:
                            _add_into(rep[k], _mul(qi, rk[k]), Fraction(-1))
        return r, rep

    for idx, f in enumerate(inputs):
        if not f:
            continue
        rep = [({zero: Fraction(1)} if k == idx else {}) for k in range(m)] if track else None
        r, rep = reduce_new(f, rep)
        if r:
            add(r, rep)

    while heap:
        _, i, j, lcm_ij = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = leads[i], leads[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        chain = False
        for k in range(len(G)):
            if k in (i, j) or not alive[k]:
                continue
            done_ik = (min(i, k), max(i, k)) not in pending
            if done_ik and _divides(leads[k], lcm_ij) and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            continue
        si = tuple(a - b for a, b in zip(lcm_ij, li))
        sj = tuple(a - b for a, b in zip(lcm_ij, lj))
        s: PolyDict = {}
        _sub_scaled(s, G[i], si, Fraction(-1))
        _sub_scaled(s, G[j], sj, Fraction(1))
        rep = None
        if track:
            rep = []
            for k in range(m):
                acc: PolyDict = {}
                _sub_scaled(acc, reps[i][k], si, Fraction(-1))
                _sub_scaled(acc, reps[j][k], sj, Fraction(1))
                rep.append(acc)
        counter.tick()
        r, rep = reduce_new(s, rep)
        if r:
            add(r, rep)

    # minimal basis
    # divisors of a lead are never larger in an admissible order
    keep: list[int] = []
    for i in sorted(range(len(G)), key=lambda t: (key(leads[t]), t)):
        if not any(_divides(leads[k], leads[i]) for k in keep):
            keep.append(i)
    polys = [G[i] for i in keep]
    lds = [leads[i] for i in keep]
    rps = [reps[i] for i in keep] if track else None
    # interreduce tails
    for t in range(len(polys)):
        others = [polys[k] for k in range(len(polys)) if k != t]
        oleads = [lds[k] for k in range(len(polys)) if k != t]
        quotients = [dict() for _ in others] if track else None
        r = _reduce(polys[t], others, oleads, key, counter, quotients)
        if track:
            orps = [rps[k] for k in range(len(polys)) if k != t]
            rep = [dict(x) for x in rps[t]]
            for qi, rk in zip(quotients, orps):
                if qi:
                    for k in range(m):
                        if rk[k]:
                            _add_into(rep[k], _mul(qi, rk[k]), Fraction(-1))
            rps[t] = rep
        polys[t] = r
    order_idx = sorted(range(len(polys)), key=lambda t: key(lds[t]), reverse=True)
    return GroebnerBasis(
        polys=[polys[t] for t in order_idx],
        leads=[lds[t] for t in order_idx],
        reps=[rps[t] for t in order_idx] if track else None,
        order=order,
        nvars=nvars,
        ninputs=m,
        steps=counter.steps,
    )


# -- Laurent layer --------------------------------------------------------


def lift(f: LaurentPoly) -> PolyDict:
    """Polynomial preimage in ``Q[x, u, w]`` (``w`` only when ``nu > 0``)."""
    nx, nu = f.nx, f.nu
    out: PolyDict = {}
    for e, c in f.terms.items():
        if nu:
            u = e[nx:]
            shift = max(0, -min(u))
            out[e[:nx] + tuple(k + shift for k in u) + (shift,)] = c
        else:
            out[e] = c
    return out


def unlift(p: PolyDict, nx: int, nu: int) -> LaurentPoly:
    """Image of a polynomial in ``Q[x, u, w]`` under ``w -> (u_1...u_r)^{-1}``."""
    acc: dict = {}
    for e, c in p.items():
        if nu:
            w = e[-1]
            key = e[:nx] + tuple(k - w for k in e[nx:nx + nu])
        else:
            key = e
        v = acc.get(key, 0) + c
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)
    return LaurentPoly._raw(nx, nu, acc)


def localization_relation(nx: int, nu: int) -> PolyDict:
    n = nx + nu + 1
    return {(0,) * nx + (1,) * (nu + 1): Fraction(1), (0,) * n: Fraction(-1)}


def _poly_vars(nx: int, nu: int) -> int:
    return nx + nu + (1 if nu else 0)


def _check_shapes(polys):
    shapes = {(p.nx, p.nu) for p in polys}
    if len(shapes) > 1:
        raise ValueError(f"Laurent polynomials over different variable sets: {sorted(shapes)}")


def buchberger(gens: Sequence[LaurentPoly], order: MonomialOrder = GREVLEX,
               budget: int = DEFAULT_BUDGET) -> list[LaurentPoly]:
    """Reduced Groebner basis of the Laurent ideal, as polynomials in ``Q[x, u, w]``.

    When invertible variables are present the basis includes (a reduced form of)
    the localization relation ``w*u_1*...*u_r - 1``.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator to fix the variable set")
    _check_shapes(gens)
    nx, nu = gens[0].nx, gens[0].nu
    inputs = [lift(g) for g in gens if not g.is_zero()]
    if nu:
        inputs.append(localization_relation(nx, nu))
    n = _poly_vars(nx, nu)
    gb = groebner(inputs, n, order, budget)
    return [LaurentPoly._raw(n, 0, p) for p in gb.polys]


@dataclass(frozen=True)
class In:
    """Membership with cofactors: ``sum(c * gens[i] for i, c in cofactors) == f``."""

    cofactors: tuple

    @property
    def member(self) -> bool:
        return True


@dataclass(frozen=True)
class NotIn:
    """Non-membership; ``normal_form`` is the nonzero remainder (mapped back to Laurent form)."""

    normal_form: LaurentPoly

    @property
    def member(self) -> bool:
        return False


def laurent_membership(f: LaurentPoly, gens: Sequence[LaurentPoly], order: MonomialOrder = GREVLEX,
                       budget: int = DEFAULT_BUDGET):
    """Decide ``f in (gens)`` in the Laurent ring; returns :class:`In` or :class:`NotIn`."""
    gens = list(gens)
    _check_shapes(gens + [f])
    nx, nu = f.nx, f.nu
    idx = [i for i, g in enumerate(gens) if not g.is_zero()]
    inputs = [lift(gens[i]) for i in idx]
    if nu:
        inputs.append(localization_relation(nx, nu))
    n = _poly_vars(nx, nu)
    gb = groebner(inputs, n, order, budget, track=True)
    r, cof = gb.reduce(lift(f), budget, track=True)
    if r:
        return NotIn(unlift(r, nx, nu))
    cofactors = []
    total = LaurentPoly._raw(nx, nu, {})
    for pos, i in enumerate(idx):
        c = unlift(cof[pos], nx, nu)
        if not c.is_zero():
            cofactors.append((i, c))
            total = total + c * gens[i]
    if total != f:
        raise AssertionError("cofactor replay failed; Groebner engine bug")
    return In(tuple(cofactors))


def normal_form(f: LaurentPoly, gens: Sequence[LaurentPoly], order: MonomialOrder = GREVLEX,
                budget: int = DEFAULT_BUDGET) -> LaurentPoly:
    """Normal form of ``f`` modulo the Laurent ideal, mapped back to Laurent form."""
    v = laurent_membership(f, gens, order, budget)
    if isinstance(v, In):
        return LaurentPoly._raw(f.nx, f.nu, {})
    return v.normal_form


def eliminate_linear(gens: Sequence[LaurentPoly], eliminate: Sequence[int],
                     budget: int = DEFAULT_BUDGET) -> list[LaurentPoly]:
    """Generators of the elimination ideal after removing the variables ``eliminate``.

    ``gens`` are ordinary polynomials (``nu == 0``).  Uses a block order with
    the eliminated variables first and graded reverse lex inside each block, so
    the ideal contains a nonzero element of total degree <= 1 in the remaining
    variables iff the returned basis does.  Results are over the remaining
    variables, in their original relative order.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    _check_shapes(gens)
    if gens[0].nu:
        raise ValueError("elimination works on ordinary polynomials (nu == 0)")
    n = gens[0].nx
    elim = list(dict.fromkeys(eliminate))
    keep = [i for i in range(n) if i not in elim]
    perm = elim + keep
    inputs = [{tuple(e[i] for i in perm): c for e, c in g.terms.items()} for g in gens]
    gb = groebner(inputs, n, block_order(len(elim)), budget)
    out = []
    k = len(elim)
    for p in gb.polys:
        if all(not any(e[:k]) for e in p):
            out.append(LaurentPoly._raw(len(keep), 0, {e[k:]: c for e, c in p.items()}))
    return out


def linear_elements(polys: Sequence[LaurentPoly]) -> list[LaurentPoly]:
    """The nonzero members of ``polys`` with total degree at most one."""
    return [p for p in polys if p.terms and all(sum(e) <= 1 for e in p.terms)]
