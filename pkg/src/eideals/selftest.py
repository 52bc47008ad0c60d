"""Seeded property suites over all engine layers.

Each suite draws its cases from ``random.Random(seed)`` and returns a
:class:`SuiteResult`; the same seed always yields the same cases.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from .eideal import EIdealPresentation, SaturationPolicy, check_certificate, prove_membership
from .epoly import EPoly, exp_apply, split_constant, validate
from .errors import CertificateFormatError, EIdealsError
from .grammar import format_epoly, parse_epoly, parse_many
from .groebner import GREVLEX, laurent_membership
from .lattice import decode, encode, extract_lattice
from .laurent import LaurentPoly
from .radical import check_radical_certificate, erad_search
from .serialize import dumps_certificate, loads_certificate

VARS = ("x", "y")


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        if len(self.failures) < 10:
            self.failures.append(msg)
        else:
            self.failures[-1] = f"... and more (last: {msg})"


# -- random generators -------------------------------------------------------


def random_epoly(rng: random.Random, vars=VARS, height: int = 2, terms: int = 3,
                 symbols: bool = True) -> EPoly:
    """Small random exponential polynomial of height at most ``height``."""
    out = EPoly.zero(vars)
    for _ in range(rng.randint(1, terms)):
        c = Fraction(rng.choice((-4, -3, -2, -1, 1, 2, 3, 4)), rng.randint(1, 3))
        t = EPoly.constant(vars, c)
        for v in vars:
            d = rng.randint(0, 2)
            if d:
                t = t * EPoly.variable(vars, v) ** d
        if symbols and rng.random() < 0.2:
            t = t * EPoly.symbol(vars, rng.randint(0, 2))
        if height and rng.random() < 0.6:
            _, arg = split_constant(random_epoly(rng, vars, height - 1, 2, symbols))
            t = t * exp_apply(arg)
        out = out + t
    return out


# -- linear-algebra membership oracle -----------------------------------------


def _monomials(n: int, degree: int):
    for e in product(range(degree + 1), repeat=n):
        if sum(e) <= degree:
            yield e


def linear_algebra_member(f: dict, gens: list, n: int, degree: int) -> bool:
    """True iff ``f`` is a Q-combination of ``m*g`` with ``deg(m*g) <= degree``.

    Sound for membership; complete once ``degree`` bounds some representation.
    Uses sparse Gaussian elimination over the rationals.
    """
    pivots: dict = {}  # leading monomial -> row (dict)

    def reduce(row: dict) -> dict:
        row = dict(row)
        while row:
            lead = max(row)
            if lead not in pivots:
                return row
            c = row[lead]
            for m, v in pivots[lead].items():
                w = row.get(m, 0) - c * v
                if w:
                    row[m] = w
                else:
                    row.pop(m, None)
        return row

    for g in gens:
        gdeg = max(sum(e) for e in g)
        for m in _monomials(n, degree - gdeg):
            row = {tuple(a + b for a, b in zip(e, m)): c for e, c in g.items()}
            row = reduce(row)
            if row:
                lead = max(row)
                inv = 1 / row[lead]
                pivots[lead] = {k: v * inv for k, v in row.items()}
    return not reduce(f)


def _random_poly(rng, n, degree, terms) -> dict:
    out: dict = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, degree) for _ in range(n))
        if sum(e) > degree:
            continue
        out[e] = out.get(e, 0) + Fraction(rng.randint(-3, 3) or 1)
    return {e: c for e, c in out.items() if c} or {(0,) * n: Fraction(1)}


def _pmul(f: dict, g: dict) -> dict:
    out: dict = {}
    for a, c in f.items():
        for b, d in g.items():
            e = tuple(x + y for x, y in zip(a, b))
            out[e] = out.get(e, 0) + c * d
    return {e: c for e, c in out.items() if c}


def _padd(f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


# -- suites ------------------------------------------------------------------


def suite_ring_axioms(rng, cases):
    r = SuiteResult("ring axioms")
    one, zero = EPoly.one(VARS), EPoly.zero(VARS)
    for _ in range(cases):
        a, b, c = (random_epoly(rng, height=1, terms=2) for _ in range(3))
        r.cases += 1
        checks = {
            "add assoc": (a + b) + c == a + (b + c),
            "add comm": a + b == b + a,
            "mul assoc": (a * b) * c == a * (b * c),
            "mul comm": a * b == b * a,
            "distrib": a * (b + c) == a * b + a * c,
            "units": a + zero == a and a * one == a and a * zero == zero,
        }
        for name, ok in checks.items():
            if not ok:
                r.fail(f"{name} fails for {a} | {b} | {c}")
    return r


def suite_exp_homomorphism(rng, cases):
    r = SuiteResult("E homomorphism")
    if exp_apply(EPoly.zero(VARS)) != EPoly.one(VARS):
        r.fail("E(0) != 1")
    for _ in range(cases):
        p, q = random_epoly(rng), random_epoly(rng)
        r.cases += 1
        if exp_apply(p + q) != exp_apply(p) * exp_apply(q):
            r.fail(f"E(p+q) != E(p)E(q) for p={p}, q={q}")
    return r


def suite_canonical(rng, cases):
    r = SuiteResult("canonical form")
    for _ in range(cases):
        p = random_epoly(rng)
        r.cases += 1
        if not (p - p).is_zero():
            r.fail(f"p - p != 0 for {p}")
        problems = validate(p)
        if problems:
            r.fail(f"invalid structure for {p}: {problems}")
    return r


def suite_parse_format(rng, cases):
    r = SuiteResult("parse/format round trip")
    for _ in range(cases):
        p = random_epoly(rng)
        r.cases += 1
        text = format_epoly(p)
        try:
            back = parse_epoly(text, VARS)
        except EIdealsError as e:
            r.fail(f"cannot reparse {text!r}: {e}")
            continue
        if back != p or format_epoly(back) != text:
            r.fail(f"round trip changed {text!r}")
    return r


def suite_encode_decode(rng, cases):
    r = SuiteResult("encode/decode round trip")
    for _ in range(cases):
        p = random_epoly(rng, symbols=False)
        r.cases += 1
        lattice = extract_lattice([p], VARS)
        if decode(encode(p, lattice), lattice) != p:
            r.fail(f"encode/decode changed {p}")
    return r


def suite_groebner_oracle(rng, cases):
    r = SuiteResult("Groebner vs linear algebra")
    n = 2
    for idx in range(cases):
        gens = [_random_poly(rng, n, 2, 3) for _ in range(rng.randint(1, 2))]
        if idx % 2 == 0:
            f: dict = {}
            for g in gens:
                f = _padd(f, _pmul(g, _random_poly(rng, n, 1, 2)))
        else:
            f = _random_poly(rng, n, 3, 3)
        if not f:
            continue
        r.cases += 1
        lf = LaurentPoly(n, 0, f)
        lg = [LaurentPoly(n, 0, g) for g in gens]
        gb = laurent_membership(lf, lg, GREVLEX).member
        degree = 8
        oracle = linear_algebra_member(f, gens, n, degree)
        if gb != oracle:
            r.fail(f"verdicts differ (groebner {gb}, oracle {oracle}) for f={f}, gens={gens}")
    return r


# (ideal, target, depth) with known verdicts
CORPUS = (
    (("x",), "x*(E(y) - 1)", 0, True),
    (("y",), "x*(E(y) - 1)", 1, True),
    (("x*y",), "x*(E(y) - 1)", 2, False),
    (("E(x/2) - 1",), "E(x) - 1", 0, True),
    (("E(x) - 1",), "E(x/2) - 1", 1, False),
    (("x*y", "E(x) + 1", "E(y) + 1"), "x*(E(y) + 1)", 0, True),
    (("x^2 - y", "E(x) - 1"), "E(y) - 1", 1, False),
    (("x - y", "y"), "E(x) - 1", 1, True),
)


def suite_invariance(rng, cases):
    r = SuiteResult("membership invariance")
    extras = [parse_epoly("x/7", VARS), parse_epoly("y/3", VARS)]
    for gens_text, target_text, depth, expected in CORPUS:
        gens = parse_many(gens_text, VARS)
        target = parse_epoly(target_text, VARS)
        for perm in permutations(gens):
            pres = EIdealPresentation(tuple(perm), VARS)
            for order in ("grevlex", "lex"):
                for extra in ((), extras):
                    r.cases += 1
                    v = prove_membership(target, pres, SaturationPolicy(depth, order=order), extra)
                    if v.proved != expected:
                        r.fail(f"{target_text} in {perm} depth {depth} order {order} "
                               f"extra {bool(extra)}: got {v.proved}")
                    elif v.proved and not check_certificate(v.certificate, pres, target):
                        r.fail(f"invalid certificate for {target_text} in {perm}")
    return r


def bundled_certificates():
    """(document, checker) pairs for the reference certificates."""
    out = []
    a = parse_epoly("x*(E(y) - 1)", VARS)
    for gen, depth in (("x", 0), ("y", 1)):
        pres = EIdealPresentation((parse_epoly(gen, VARS),))
        cert = prove_membership(a, pres, SaturationPolicy(depth)).certificate
        out.append((dumps_certificate(cert), pres, a, False))
    pres = EIdealPresentation(tuple(parse_many(["x*y", "E(x) + 1", "E(y) + 1"], VARS)))
    two = EPoly.constant(VARS, 2)
    cert = erad_search(two, pres, 1).certificate
    out.append((dumps_certificate(cert), pres, two, True))
    z = ("x",)
    pres = EIdealPresentation((parse_epoly("E(x/6) - 1", z),))
    t = parse_epoly("E(x/2) - 1", z)
    cert = prove_membership(t, pres, SaturationPolicy(0)).certificate
    out.append((dumps_certificate(cert), pres, t, False))
    return out


def _mutable_spans(doc: str):
    """Character positions inside expression strings, refs and step kinds.

    ``level`` values are excluded: raising a declared level keeps a
    certificate valid, so it is not a corruption.
    """
    data_start = doc.index("\n") + 1
    spans = []
    pos = data_start
    for line in doc[data_start:].splitlines(keepends=True):
        stripped = line.strip()
        if stripped.startswith('"level"') or stripped.startswith('"variables"'):
            pos += len(line)
            continue
        for j, ch in enumerate(line):
            if ch.isalnum() or ch in "+-*/^()":
                spans.append(pos + j)
        pos += len(line)
    return spans


def is_rejected(doc: str, pres, target, radical: bool) -> bool:
    try:
        cert = loads_certificate(doc)
    except (CertificateFormatError, EIdealsError, ValueError, KeyError, TypeError):
        return True
    check = check_radical_certificate if radical else check_certificate
    try:
        return not check(cert, pres, target)
    except (EIdealsError, ValueError, TypeError, AttributeError):
        return True


def suite_corruption(rng, cases):
    r = SuiteResult("corrupted certificates")
    bundle = bundled_certificates()
    for doc, pres, target, radical in bundle:
        if is_rejected(doc, pres, target, radical):
            r.fail("a bundled certificate is rejected")
    alphabet = "0123456789xyE+-*/()b "
    for _ in range(cases):
        doc, pres, target, radical = rng.choice(bundle)
        pos = rng.choice(_mutable_spans(doc))
        new = rng.choice([c for c in alphabet if c != doc[pos]])
        bad = doc[:pos] + new + doc[pos + 1:]
        r.cases += 1
        if not is_rejected(bad, pres, target, radical):
            r.fail(f"accepted corruption at {pos}: {doc[pos]!r} -> {new!r}")
    return r


SUITES = {
    "ring-axioms": (suite_ring_axioms, 1000),
    "exp-homomorphism": (suite_exp_homomorphism, 1000),
    "canonical-form": (suite_canonical, 1000),
    "parse-format": (suite_parse_format, 1000),
    "encode-decode": (suite_encode_decode, 1000),
    "groebner-oracle": (suite_groebner_oracle, 40),
    "invariance": (suite_invariance, None),
    "corruption": (suite_corruption, 100),
}


def run_selftest(seed: int = 0, only=None, scale: float = 1.0) -> list[SuiteResult]:
    """Run the suites (all by default); ``scale`` shrinks case counts for quick runs."""
    results = []
    for name, (fn, cases) in SUITES.items():
        if only and name not in only:
            continue
        rng = random.Random(f"{seed}:{name}")
        n = None if cases is None else max(1, int(cases * scale))
        start = time.perf_counter()
        res = fn(rng, n)
        res.seconds = time.perf_counter() - start
        results.append(res)
    return results


def summary(results) -> dict:
    return {r.name: {"cases": r.cases, "ok": r.ok, "failures": r.failures} for r in results}


def format_results(results, timings: bool = False) -> str:
    lines = []
    for r in results:
        line = f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.cases} cases"
        if timings:
            line += f" in {r.seconds:.1f}s"
        lines.append(line)
        lines.extend(f"    {f}" for f in r.failures)
    return "\n".join(lines) + "\n"


def results_json(results) -> str:
    return json.dumps(summary(results), indent=2)
