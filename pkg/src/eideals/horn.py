"""Strict Horn clauses over the signature {+, -, *, e, 0, 1} and bounded closure.

A clause ``p1 & ... & pk -> q`` says: if every premise value lies in the set,
so does the conclusion.  Clause variables are single lowercase letters, the
exponential is written ``e(...)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from .epoly import EPoly, exp_apply
from .errors import ParseError


@dataclass(frozen=True)
class Term:
    """Clause term: op in {var, const, add, sub, mul, neg, pow, exp}."""

    op: str
    args: tuple = ()
    value: object = None

    def variables(self) -> list[str]:
        if self.op == "var":
            return [self.value]
        out: list[str] = []
        for a in self.args:
            for v in a.variables():
                if v not in out:
                    out.append(v)
        return out

    def has_exp(self) -> bool:
        return self.op == "exp" or any(a.has_exp() for a in self.args)

    def evaluate(self, env: dict, vars) -> EPoly:
        op = self.op
        if op == "var":
            return env[self.value]
        if op == "const":
            return EPoly.constant(vars, self.value)
        vals = [a.evaluate(env, vars) for a in self.args]
        if op == "add":
            return vals[0] + vals[1]
        if op == "sub":
            return vals[0] - vals[1]
        if op == "mul":
            return vals[0] * vals[1]
        if op == "neg":
            return -vals[0]
        if op == "pow":
            return vals[0] ** self.value
        if op == "exp":
            return exp_apply(vals[0])
        raise ValueError(f"unknown term op {op!r}")

    def __str__(self):
        op = self.op
        if op in ("var", "const"):
            return str(self.value)
        if op == "exp":
            return f"e({self.args[0]})"
        if op == "neg":
            return f"-{_wrap(self.args[0], 2)}"
        if op == "pow":
            return f"{_wrap(self.args[0], 3)}^{self.value}"
        sym, prec = {"add": (" + ", 1), "sub": (" - ", 1), "mul": ("*", 2)}[op]
        right_prec = prec + 1 if op == "sub" else prec
        return f"{_wrap(self.args[0], prec)}{sym}{_wrap(self.args[1], right_prec)}"


def _prec(t: Term) -> int:
    return {"add": 1, "sub": 1, "neg": 2, "mul": 2, "pow": 3}.get(t.op, 4)


def _wrap(t: Term, prec: int) -> str:
    return f"({t})" if _prec(t) < prec else str(t)


_TOK = re.compile(r"\s*(?:(\d+)|([a-z])|(->|[-+*^()&]))")


class _ClauseParser:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOK.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip():
                    raise ParseError("bad clause syntax", pos, text)
                break
            if m.group(1):
                self.toks.append(("num", int(m.group(1)), m.start(1)))
            elif m.group(2):
                self.toks.append(("name", m.group(2), m.start(2)))
            elif m.group(3):
                self.toks.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.toks.append(("end", None, len(text)))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, v):
        kind, val, pos = self.take()
        if val != v:
            raise ParseError(f"expected {v!r}", pos, self.text)

    def clause(self):
        premises = []
        if self.peek()[1] != "->":
            premises.append(self.expr())
            while self.peek()[1] == "&":
                self.take()
                premises.append(self.expr())
        if self.peek()[1] == "->":
            self.take()
            conclusion = self.expr()
        elif len(premises) == 1 and self.peek()[0] == "end":
            conclusion, premises = premises[0], []
        else:
            raise ParseError("expected '->'", self.peek()[2], self.text)
        if self.peek()[0] != "end":
            raise ParseError("trailing input", self.peek()[2], self.text)
        return premises, conclusion

    def expr(self):
        neg = False
        if self.peek()[1] == "-":
            self.take()
            neg = True
        t = self.term()
        if neg:
            t = Term("neg", (t,))
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = Term("add" if op == "+" else "sub", (t, self.term()))
        return t

    def term(self):
        t = self.factor()
        while self.peek()[1] == "*":
            self.take()
            t = Term("mul", (t, self.factor()))
        return t

    def factor(self):
        t = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, n, pos = self.take()
            if kind != "num":
                raise ParseError("expected exponent", pos, self.text)
            t = Term("pow", (t,), n)
        return t

    def atom(self):
        kind, v, pos = self.take()
        if kind == "num":
            return Term("const", (), v)
        if kind == "name":
            if v == "e" and self.peek()[1] == "(":
                self.take()
                inner = self.expr()
                self.expect(")")
                return Term("exp", (inner,))
            return Term("var", (), v)
        if v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {v!r}", pos, self.text)


@dataclass(frozen=True)
class HornClause:
    name: str
    premises: tuple
    conclusion: Term

    @classmethod
    def parse(cls, text: str, name: str = None) -> HornClause:
        premises, conclusion = _ClauseParser(text).clause()
        return cls(name or text.strip(), tuple(premises), conclusion)

    @property
    def variables(self) -> list[str]:
        out: list[str] = []
        for t in (*self.premises, self.conclusion):
            for v in t.variables():
                if v not in out:
                    out.append(v)
        return out

    @property
    def free_variables(self) -> list[str]:
        bound = {v for p in self.premises for v in p.variables()}
        return [v for v in self.conclusion.variables() if v not in bound]

    @property
    def exponential(self) -> bool:
        return self.conclusion.has_exp() and not any(p.has_exp() for p in self.premises)

    def __str__(self):
        lhs = " & ".join(str(p) for p in self.premises)
        return f"{lhs} -> {self.conclusion}" if lhs else f"-> {self.conclusion}"


@dataclass(frozen=True)
class RuleSet:
    name: str
    clauses: tuple

    @classmethod
    def parse(cls, name: str, lines) -> RuleSet:
        return cls(name, tuple(HornClause.parse(line) for line in lines if line.strip()))


_IDEAL_CLAUSES = ("-> 0", "x & y -> x - y", "x -> x*y")
IDEAL = RuleSet.parse("IDEAL", _IDEAL_CLAUSES)
EIDEAL = RuleSet.parse("EIDEAL", _IDEAL_CLAUSES + ("x -> e(x) - 1",))
RADICAL = RuleSet.parse("RADICAL", _IDEAL_CLAUSES + ("x^2 -> x",))
RULESETS = {r.name: r for r in (IDEAL, EIDEAL, RADICAL)}


@dataclass(frozen=True)
class Derivation:
    """How an element entered the closure; ``exp_depth`` counts nested exponential steps."""

    clause: str
    assignment: tuple = ()
    premises: tuple = ()
    exp_depth: int = 0
    exp_source: object = None


@dataclass(frozen=True)
class TradBudget:
    rounds: int = 2
    max_elements: int = 200
    monomial_degree: int = 1


def term_bank(X, vars, degree: int) -> list[EPoly]:
    """Multipliers for clause variables: x-monomials up to ``degree`` and E of augmentation parts."""
    from .epoly import split_constant

    bank: dict = {}
    n = len(vars)
    for total in range(1, degree + 1):
        for exps in product(range(total + 1), repeat=n):
            if sum(exps) == total:
                bank.setdefault(EPoly.one(vars).shift_x(exps), None)
    for g in X:
        _, a = split_constant(g)
        if a.terms:
            bank.setdefault(exp_apply(a), None)
    return list(bank)


def trad_bounded(rules: RuleSet, X, budget: TradBudget = TradBudget(), vars=None) -> list:
    """Forward-chaining closure of ``X`` under ``rules``.

    Returns ``(element, Derivation)`` pairs, given elements first, then derived
    ones in discovery order.  Variables occurring bare as a premise range over
    the current set; all others range over the current set plus a term bank.
    The result is truncated (deterministically) at ``budget.max_elements``.
    """
    X = list(X)
    if vars is None:
        vars = X[0].vars if X else ()
    known: dict = {}
    for x in X:
        known.setdefault(x, Derivation("given"))
    bank = term_bank(X, vars, budget.monomial_degree)
    full = False
    for _ in range(budget.rounds):
        if full:
            break
        new: dict = {}
        current = list(known)
        pool = current + [b for b in bank if b not in known]
        for clause in rules.clauses:
            if full:
                break
            bare = {p.value for p in clause.premises if p.op == "var"}
            names = clause.variables
            pools = [current if v in bare else pool for v in names]
            for combo in product(*pools):
                env = dict(zip(names, combo))
                prem = [p.evaluate(env, vars) for p in clause.premises]
                if not all(p in known for p in prem):
                    continue
                concl = clause.conclusion.evaluate(env, vars)
                if concl in known or concl in new:
                    continue
                depth = max((known[p].exp_depth for p in prem), default=0)
                source = None
                if clause.exponential:
                    depth += 1
                    source = prem[0] if prem else None
                new[concl] = Derivation(
                    str(clause), tuple(sorted(env.items())), tuple(prem), depth, source
                )
                if len(known) + len(new) >= budget.max_elements:
                    full = True
                    break
        if not new:
            break
        known.update(new)
    return list(known.items())


def exp_sources(element: EPoly, closure) -> list[EPoly]:
    """Elements that received the exponential rule in ``element``'s derivation, innermost first."""
    table = dict(closure)
    out: list = []
    seen = set()

    def walk(e):
        if e in seen:
            return
        seen.add(e)
        d = table.get(e)
        if d is None:
            return
        for p in d.premises:
            walk(p)
        if d.exp_source is not None and d.exp_source not in out:
            out.append(d.exp_source)

    walk(element)
    return out
