"""Named, scripted reproductions with machine-checkable reports.

Every experiment is a list of independent steps.  A step returns a plain dict
(its verdict, input echoes and any certificate in serialized form).  Each
certificate is re-validated with the bundled checker before it is recorded.
Budget exhaustion is reported on the step and the remaining steps still run.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import __version__
from .conditions import check_prime_conditions
from .eideal import (
    EIdealPresentation,
    SaturationPolicy,
    check_certificate,
    prove_membership,
)
from .epoly import EPoly
from .errors import BudgetExceeded, UsageError
from .grammar import collect_variables, format_epoly, parse_epoly, parse_many
from .groebner import DEFAULT_BUDGET
from .lattice import encode, extract_lattice
from .laurent import evaluate_at_point
from .radical import check_radical_certificate, erad_search, refute_eradical
from .serialize import certificate_to_dict

EXPERIMENTS = (
    "noetherian-prime-chain",
    "zariski-chain",
    "macintyre-not-fg",
    "xy-not-eradical",
    "no-prime-above",
    "prime-conditions",
)

# documented parameter ranges
RANGES = {"n": (0, 6), "k": (2, 8), "depth": (0, 4)}


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    n: int = 3
    k: int = 4
    depth: int = 3
    budget: int = DEFAULT_BUDGET
    format: str = "text"
    seed: int = 0
    ideal: tuple = ()
    timings: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.name not in EXPERIMENTS:
            raise UsageError(f"unknown experiment {self.name!r}; choose from {', '.join(EXPERIMENTS)}")
        for key, (lo, hi) in RANGES.items():
            v = getattr(self, key)
            if not isinstance(v, int) or not lo <= v <= hi:
                raise UsageError(f"{key}={v!r} outside the supported range {lo}..{hi}")
        if self.format not in ("text", "structured"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.budget < 1 or self.jobs < 1:
            raise UsageError("budget and jobs must be positive")

    def echo(self) -> dict:
        d = {"n": self.n, "k": self.k, "depth": self.depth, "budget": self.budget}
        if self.ideal:
            d["ideal"] = list(self.ideal)
        return d


@dataclass
class ExperimentReport:
    name: str
    config: dict
    steps: list = field(default_factory=list)
    conclusion: str = ""
    version: str = __version__

    @property
    def ok(self) -> bool:
        return all(s.get("status") == "ok" for s in self.steps)

    def to_dict(self) -> dict:
        return {
            "experiment": self.name,
            "engine_version": self.version,
            "config": self.config,
            "steps": self.steps,
            "conclusion": self.conclusion,
        }

    def to_text(self) -> str:
        lines = [f"experiment {self.name} (engine {self.version})"]
        for s in self.steps:
            line = f"  [{s['status']}] {s['claim']}: {s['verdict']}"
            if "detail" in s:
                line += f" ({s['detail']})"
            lines.append(line)
        lines.append(f"conclusion: {self.conclusion}")
        return "\n".join(lines) + "\n"


# -- helpers -----------------------------------------------------------------


def _checked(cert, pres, target, radical=False) -> dict:
    check = check_radical_certificate if radical else check_certificate
    r = check(cert, pres, target)
    if not r:
        raise AssertionError(f"engine produced an invalid certificate: {r.reason}")
    return certificate_to_dict(cert)


def _strs(ps) -> list:
    return [format_epoly(p) for p in ps]


def _membership_step(claim, target, pres, policy, expect_proved) -> dict:
    v = prove_membership(target, pres, policy)
    step = {"claim": claim, "ideal": _strs(pres.gens), "target": format_epoly(target),
            "policy": policy.describe()}
    if v.proved:
        step["verdict"] = "proved"
        step["certificate"] = _checked(v.certificate, pres, target)
    else:
        step["verdict"] = f"not found up to depth {v.depth}"
        step["normal_form"] = format_epoly(v.normal_form)
    step["status"] = "ok" if v.proved == expect_proved else "unexpected"
    return step, v


def _evaluate(p: EPoly, lattice, values: dict) -> Fraction:
    """Value of ``p`` when ``E(v)`` takes ``values[v]`` on each lattice basis vector and x = 0."""
    point = [0] * len(p.vars) + [values[v] for v in lattice.basis]
    return evaluate_at_point(encode(p, lattice), point)


def _sub(i: int) -> str:
    return str(i).translate(str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉"))


# -- experiments ------------------------------------------------------------


def chain_element(i: int) -> EPoly:
    return parse_epoly(f"E(b{3 * i}*x) + E(b{3 * i + 1}*x) + E(b{3 * i + 2}*x)", ("x",))


def _prime_chain(cfg):
    n = cfg.n
    ps = [chain_element(i) for i in range(n + 2)]
    ring = SaturationPolicy(0, budget=cfg.budget)
    steps = []
    A = EIdealPresentation(tuple(ps[: n + 1]))
    for i in range(n + 1):
        steps.append(lambda i=i: _membership_step(f"p{i} in A{n}", ps[i], A, ring, True)[0])

    def outside(m):
        pres = EIdealPresentation(tuple(ps[: m + 1]))
        target = ps[m + 1]
        step, v = _membership_step(f"p{m + 1} not in A{m}", target, pres, ring, False)
        lattice = extract_lattice(ps[: m + 2], ("x",))
        values = {}
        for j in range(m + 1):
            for r, val in zip(range(3 * j, 3 * j + 3), (1, 1, -2)):
                values[parse_epoly(f"b{r}*x", ("x",))] = val
        for r in range(3 * m + 3, 3 * m + 6):
            values[parse_epoly(f"b{r}*x", ("x",))] = 1
        gens_at = [_evaluate(g, lattice, values) for g in pres.gens]
        target_at = _evaluate(target, lattice, values)
        step["evaluation"] = {"generators": [str(v) for v in gens_at], "target": str(target_at)}
        consistent = all(v == 0 for v in gens_at) and target_at != 0
        if not v.proved:
            step["verdict"] = "not in (exact at stage 0)"
        if not consistent:
            step["status"] = "unexpected"
        step["detail"] = f"point gives generators 0, target {target_at}"
        return step

    for m in range(n + 1):
        steps.append(lambda m=m: outside(m))

    def conclude(results):
        strict = all(r["status"] == "ok" for r in results)
        chain = " ⊊ ".join(f"A{_sub(i)}" for i in range(n + 1))
        return f"strict ascent: {chain}" if strict else "strict ascent NOT established"

    return steps, conclude


def _zariski(cfg):
    steps = []
    ring = SaturationPolicy(0, budget=cfg.budget)
    deep = SaturationPolicy(2, budget=cfg.budget)

    def atom(j):
        return parse_epoly(f"E(x/{factorial(j)}) - 1", ("x",))

    def forward(j):
        small, big = atom(j), atom(j - 1)
        pres = EIdealPresentation((small,))
        step, v = _membership_step(f"{format_epoly(big)} in ({format_epoly(small)})",
                                   big, pres, ring, True)
        if v.proved:
            comb = v.certificate.steps[-1]
            cof = comb.multipliers[0] if len(comb.multipliers) == 1 else None
            expected = sum((parse_epoly(f"E({m}*x/{factorial(j)})", ("x",)) for m in range(1, j)),
                           EPoly.one(("x",)))
            step["cofactor"] = format_epoly(cof) if cof is not None else None
            step["telescoping"] = cof == expected
            if cof != expected:
                step["status"] = "unexpected"
        return step

    def backward(j):
        small, big = atom(j), atom(j - 1)
        pres = EIdealPresentation((big,))
        step, _ = _membership_step(f"{format_epoly(small)} not in ({format_epoly(big)})^E",
                                   small, pres, deep, False)
        return step

    for j in range(2, cfg.k + 1):
        steps.append(lambda j=j: forward(j))
        steps.append(lambda j=j: backward(j))

    def conclude(results):
        if all(r["status"] == "ok" for r in results):
            return f"strictly descending zero sets for j = 2..{cfg.k} (converse not found up to depth 2)"
        return "chain NOT established"

    return steps, conclude


def _dyadic_chain(cfg):
    ring = SaturationPolicy(0, budget=cfg.budget)

    def step_for(m):
        gens = tuple(parse_epoly(f"E(x/{2 ** i}) - 1", ("x",)) for i in range(m + 1))
        target = parse_epoly(f"E(x/{2 ** (m + 1)}) - 1", ("x",))
        pres = EIdealPresentation(gens)
        step, v = _membership_step(f"{format_epoly(target)} not in ({', '.join(_strs(gens))})",
                                   target, pres, ring, False)
        lattice = extract_lattice((target, *gens), ("x",))
        values = {b: (-1 if b == target.exponents()[0] else 1) for b in lattice.basis}
        gens_at = [_evaluate(g, lattice, values) for g in gens]
        target_at = _evaluate(target, lattice, values)
        step["evaluation"] = {"generators": [str(x) for x in gens_at], "target": str(target_at)}
        if not v.proved:
            step["verdict"] = "not in (exact at stage 0)"
        if not (all(x == 0 for x in gens_at) and target_at != 0):
            step["status"] = "unexpected"
        step["detail"] = f"{format_epoly(target + 1)} = -1 gives generators 0, target {target_at}"
        return step

    steps = [lambda m=m: step_for(m) for m in range(cfg.n + 1)]

    def conclude(results):
        if all(r["status"] == "ok" for r in results):
            return f"no finite initial segment (up to {cfg.n}) generates the next element"
        return "claim NOT established"

    return steps, conclude


def _xy(cfg):
    vars = ("x", "y")
    P = lambda s: parse_epoly(s, vars)  # noqa: E731
    a = P("x*(E(y) - 1)")

    def member(gen, depth, expect):
        pres = EIdealPresentation((P(gen),))
        return _membership_step(f"x*E(y) - x in ({gen})^E", a, pres,
                                SaturationPolicy(depth, budget=cfg.budget), expect)[0]

    def refute():
        pres = EIdealPresentation((P("x*y"),))
        r = refute_eradical(pres, SaturationPolicy(budget=cfg.budget), nonmember_depth=cfg.depth)
        step = {"claim": "(x*y)^E is not E-radical", "ideal": ["x*y"]}
        if r is None:
            step.update(verdict="no refutation found", status="unexpected")
            return step
        step.update(
            verdict="refuted",
            a=format_epoly(r.a), b1=format_epoly(r.b1), b2=format_epoly(r.b2),
            product=_checked(r.product, pres, r.b1 * r.b2, radical=True),
            left=_checked(r.left, pres.augmented(r.b1), r.a, radical=True),
            right=_checked(r.right, pres.augmented(r.b2), r.a, radical=True),
            nonmembership={"depth": r.nonmembership.depth,
                           "normal_form": format_epoly(r.nonmembership.normal_form),
                           "policy": r.nonmembership.policy.describe()},
            status="ok",
        )
        return step

    steps = [
        lambda: member("x", 0, True),
        lambda: member("y", 1, True),
        lambda: member("x*y", cfg.depth, False),
        refute,
    ]

    def conclude(results):
        if all(r["status"] == "ok" for r in results):
            return (f"x*E(y) - x lies in (x)^E and (y)^E but not in (x*y)^E up to depth {cfg.depth}; "
                    "(x*y)^E is not E-radical")
        return "counterexample NOT reproduced"

    return steps, conclude


def _no_prime(cfg):
    vars = ("x", "y")
    pres = EIdealPresentation(tuple(parse_many(["x*y", "E(x) + 1", "E(y) + 1"], vars)))
    two = EPoly.constant(vars, 2)

    def search():
        r = erad_search(two, pres, max_level=1, policy=SaturationPolicy(budget=cfg.budget))
        step = {"claim": "2 in Erad level 1 of (x*y, E(x) + 1, E(y) + 1)",
                "ideal": _strs(pres.gens), "target": "2"}
        if not r.proved:
            step.update(verdict="not found up to level 1", status="unexpected")
            return step
        splits = r.certificate.splits()
        step.update(
            verdict=f"proved at level {r.certificate.level}",
            split=[format_epoly(splits[0].b1), format_epoly(splits[0].b2)] if splits else None,
            certificate=_checked(r.certificate, pres, two, radical=True),
            unit_ideal=r.unit_ideal,
            status="ok",
        )
        return step

    def conclude(results):
        if results[0].get("unit_ideal"):
            return "Erad = (1): no prime E-ideal contains (x*y, E(x) + 1, E(y) + 1)"
        return "unit radical NOT established"

    return [search], conclude


_CONDITION_CORPUS = ("y1 - 2", "x1 + y1 - 3, y1 - 1", "y1 - x1^2")


def _conditions(cfg):
    corpus = (",".join(cfg.ideal),) if cfg.ideal else _CONDITION_CORPUS

    def run(text):
        texts = [t for t in text.split(",") if t.strip()]
        vars = collect_variables(*texts)
        I = parse_many(texts, vars)
        rep = check_prime_conditions(I, budget=cfg.budget)
        return {"claim": f"bounded conditions for ({text})", "ideal": _strs(I),
                "verdict": "violations found" if rep.cond2_violations or rep.cond3_violations else "none found",
                "conditions": rep.summary(), "status": "ok"}

    steps = [lambda t=t: run(t) for t in corpus]

    def conclude(results):
        return "checked conditions 2 and 3 within bounds; conditions 1 and 4 are not verified"

    return steps, conclude


_BUILDERS = {
    "noetherian-prime-chain": _prime_chain,
    "zariski-chain": _zariski,
    "macintyre-not-fg": _dyadic_chain,
    "xy-not-eradical": _xy,
    "no-prime-above": _no_prime,
    "prime-conditions": _conditions,
}


def _run_step(index: int, thunk, timings: bool) -> dict:
    start = time.perf_counter()
    try:
        result = thunk()
    except BudgetExceeded as e:
        result = {"claim": f"step {index + 1}", "verdict": "budget exceeded",
                  "detail": str(e), "status": "budget"}
    if timings:
        result["seconds"] = round(time.perf_counter() - start, 3)
    return result


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    steps, conclude = _BUILDERS[cfg.name](cfg)
    if cfg.jobs > 1:
        with ThreadPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(lambda it: _run_step(*it, cfg.timings), enumerate(steps)))
    else:
        results = [_run_step(i, t, cfg.timings) for i, t in enumerate(steps)]
    report = ExperimentReport(cfg.name, cfg.echo(), results)
    report.conclusion = conclude(results)
    return report
