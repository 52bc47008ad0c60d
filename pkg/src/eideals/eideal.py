"""E-ideal presentations, staged saturation and membership certificates.

The E-ideal generated by X is the closure of X under the ideal rules and
``a -> E(a) - 1``.  Saturation applies the exponential rule a bounded number
of rounds to a policy-selected set of elements; membership in the ring ideal
of the resulting stage is then decided exactly via the Laurent encoding.  A
positive answer comes with a :class:`MembershipCertificate` that can be
replayed by plain EPoly arithmetic.  Negative answers are always relative to
the stage: :class:`NotFoundUpToDepth` never claims absolute non-membership.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

from .epoly import EPoly, exp_apply
from .errors import BudgetExceeded, UsageError
from .groebner import DEFAULT_BUDGET, ORDERS, In, laurent_membership
from .lattice import decode, encode, extract_lattice

MAX_STAGE_ELEMENTS = 5000


@dataclass(frozen=True)
class EIdealPresentation:
    """Generators of an E-ideal; duplicates are dropped, order is kept."""

    gens: tuple
    vars: tuple = None

    def __post_init__(self):
        gens = tuple(dict.fromkeys(self.gens))
        vars = self.vars
        if vars is None:
            if not gens:
                raise UsageError("cannot infer variables of an empty presentation")
            vars = gens[0].vars
        vars = tuple(vars)
        for g in gens:
            if not isinstance(g, EPoly):
                raise TypeError(f"generator {g!r} is not an EPoly")
            if g.vars != vars:
                raise UsageError(f"generator {g} is over {g.vars}, expected {vars}")
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "vars", vars)

    def augmented(self, b: EPoly) -> EIdealPresentation:
        """Presentation of X with ``b`` appended (unchanged if already present)."""
        return EIdealPresentation(self.gens + (b,), self.vars)

    def __len__(self):
        return len(self.gens)


@dataclass(frozen=True)
class SaturationPolicy:
    """Which elements receive ``a -> E(a) - 1`` and for how many rounds.

    ``target_rule`` is ``"generators"``, ``"pairwise"`` (generators and their
    pairwise products), or a tuple of EPolys; listed elements are
    exponentiated once they are shown to lie in the current stage ideal.
    """

    depth: int = 1
    target_rule: Union[str, tuple] = "generators"
    budget: int = DEFAULT_BUDGET
    order: str = "grevlex"

    def __post_init__(self):
        if self.depth < 0:
            raise UsageError("saturation depth must be non-negative")
        if isinstance(self.target_rule, str):
            if self.target_rule not in ("generators", "pairwise"):
                raise UsageError(f"unknown target rule {self.target_rule!r}")
        else:
            object.__setattr__(self, "target_rule", tuple(self.target_rule))
        if self.order not in ORDERS:
            raise UsageError(f"unknown monomial order {self.order!r}")

    def with_depth(self, depth: int) -> SaturationPolicy:
        return SaturationPolicy(depth, self.target_rule, self.budget, self.order)

    def describe(self) -> str:
        rule = self.target_rule if isinstance(self.target_rule, str) else f"explicit[{len(self.target_rule)}]"
        return f"depth={self.depth} rule={rule} order={self.order} budget={self.budget}"


# -- certificates ----------------------------------------------------------


@dataclass(frozen=True)
class Step:
    """One derivation step.

    ``gen``: refs = (generator index,).  ``exp``: refs = (j,), value
    ``E(d_j) - 1``.  ``comb``: value ``sum(m_k * d_{refs[k]})``.  ``split``
    only occurs in radical certificates and carries a PrimeSplit.
    """

    kind: str
    refs: tuple = ()
    multipliers: tuple = ()
    split: object = None


def Gen(i: int) -> Step:
    return Step("gen", (i,))


def ExpRule(j: int) -> Step:
    return Step("exp", (j,))


def Comb(pairs) -> Step:
    pairs = list(pairs)
    return Step("comb", tuple(j for _, j in pairs), tuple(m for m, _ in pairs))


@dataclass(frozen=True)
class MembershipCertificate:
    steps: tuple
    target: EPoly

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))


@dataclass(frozen=True)
class Proved:
    certificate: object

    @property
    def proved(self) -> bool:
        return True


@dataclass(frozen=True)
class NotFoundUpToDepth:
    """No proof at this depth/policy; exact for the ring ideal of that stage."""

    depth: int
    normal_form: EPoly
    policy: SaturationPolicy = field(default_factory=SaturationPolicy)

    @property
    def proved(self) -> bool:
        return False


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: str = "ok"

    def __bool__(self):
        return self.ok


def replay(steps: Sequence[Step], gens: Sequence[EPoly], vars, split_handler: Callable = None):
    """Replay ``steps`` over ``gens``; returns ``(values, None)`` or ``(None, reason)``."""
    values: list[EPoly] = []
    for idx, step in enumerate(steps):
        kind = step.kind
        refs = step.refs
        if not all(isinstance(r, int) and not isinstance(r, bool) for r in refs):
            return None, f"step {idx}: non-integer reference"
        if kind == "gen":
            if len(refs) != 1 or step.multipliers:
                return None, f"step {idx}: malformed gen step"
            if not 0 <= refs[0] < len(gens):
                return None, f"step {idx}: generator index {refs[0]} out of range"
            values.append(gens[refs[0]])
        elif kind == "exp":
            if len(refs) != 1 or step.multipliers:
                return None, f"step {idx}: malformed exp step"
            if not 0 <= refs[0] < idx:
                return None, f"step {idx}: reference {refs[0]} is not an earlier step"
            values.append(exp_apply(values[refs[0]]) - 1)
        elif kind == "comb":
            if len(refs) != len(step.multipliers):
                return None, f"step {idx}: {len(refs)} refs but {len(step.multipliers)} multipliers"
            total = EPoly.zero(vars)
            for m, j in zip(step.multipliers, refs):
                if not 0 <= j < idx:
                    return None, f"step {idx}: reference {j} is not an earlier step"
                if not isinstance(m, EPoly) or m.vars != vars:
                    return None, f"step {idx}: multiplier over wrong variables"
                total = total + m * values[j]
            values.append(total)
        elif kind == "split":
            if split_handler is None:
                return None, f"step {idx}: split step not allowed here"
            value, reason = split_handler(step, idx)
            if value is None:
                return None, f"step {idx}: {reason}"
            values.append(value)
        else:
            return None, f"step {idx}: unknown kind {kind!r}"
    return values, None


def check_certificate(cert: MembershipCertificate, pres: EIdealPresentation, target: EPoly) -> CheckResult:
    """Validate ``cert`` by exact replay; independent of any Groebner computation."""
    if not isinstance(cert, MembershipCertificate):
        return CheckResult(False, "not a membership certificate")
    if target.vars != pres.vars or cert.target.vars != pres.vars:
        return CheckResult(False, "variable mismatch")
    if cert.target != target:
        return CheckResult(False, "certificate target differs from requested target")
    if not cert.steps:
        return CheckResult(False, "empty certificate")
    values, reason = replay(cert.steps, pres.gens, pres.vars)
    if values is None:
        return CheckResult(False, reason)
    if values[-1] != target:
        return CheckResult(False, "replay mismatch: final step does not equal target")
    return CheckResult(True)


def prune_steps(steps: Sequence[Step], final: int) -> tuple:
    """Steps reachable from ``final``, renumbered, with ``final`` last."""
    needed = set()
    stack = [final]
    while stack:
        i = stack.pop()
        if i in needed:
            continue
        needed.add(i)
        if steps[i].kind in ("exp", "comb"):
            stack.extend(steps[i].refs)
    order = sorted(needed)
    remap = {old: new for new, old in enumerate(order)}
    out = []
    for old in order:
        s = steps[old]
        if s.kind in ("exp", "comb"):
            s = Step(s.kind, tuple(remap[r] for r in s.refs), s.multipliers, s.split)
        out.append(s)
    return tuple(out)


# -- saturation ------------------------------------------------------------


@dataclass
class Stage:
    """Stage generators with the derivation step that produces each one."""

    vars: tuple
    elements: list
    element_steps: list
    steps: list

    def certificate_for(self, target: EPoly, cofactors) -> MembershipCertificate:
        """Certificate for ``target = sum(m * elements[i])`` given ``(i, m)`` pairs."""
        comb = Comb((m, self.element_steps[i]) for i, m in cofactors)
        steps = self.steps + [comb]
        return MembershipCertificate(prune_steps(steps, len(steps) - 1), target)


def _stage_verdict(target: EPoly, elements: Sequence[EPoly], policy: SaturationPolicy, extra_atoms=()):
    lattice = extract_lattice([target, *elements], target.vars, extra_atoms)
    f = encode(target, lattice)
    gens = [encode(g, lattice) for g in elements]
    verdict = laurent_membership(f, gens, ORDERS[policy.order], policy.budget)
    return verdict, lattice


def saturate_stage(pres: EIdealPresentation, policy: SaturationPolicy) -> Stage:
    vars = pres.vars
    steps: list[Step] = [Gen(i) for i in range(len(pres.gens))]
    elements = list(pres.gens)
    element_steps = list(range(len(pres.gens)))
    seen = set(elements)
    applied: set = set()
    pending = list(policy.target_rule) if isinstance(policy.target_rule, tuple) else []

    def add_exp(alpha: EPoly, step: int, new: list):
        applied.add(alpha)
        e = exp_apply(alpha) - 1
        if e.is_zero() or e in seen:
            return
        steps.append(ExpRule(step))
        seen.add(e)
        new.append((e, len(steps) - 1))

    for _ in range(policy.depth):
        new: list = []
        sources: list = [(g, s) for g, s in zip(elements, element_steps) if g not in applied]
        if policy.target_rule == "pairwise":
            n = len(elements)
            for i in range(n):
                for j in range(i, n):
                    prod = elements[i] * elements[j]
                    if prod in applied or prod in seen:
                        continue
                    steps.append(Comb([(elements[j], element_steps[i])]))
                    sources.append((prod, len(steps) - 1))
        elif isinstance(policy.target_rule, tuple):
            sources = []
            still = []
            for alpha in pending:
                if alpha in applied:
                    continue
                if alpha in seen:
                    sources.append((alpha, element_steps[elements.index(alpha)]))
                    continue
                verdict, lattice = _stage_verdict(alpha, elements, policy)
                if isinstance(verdict, In):
                    cofs = [(i, decode(c, lattice)) for i, c in verdict.cofactors]
                    steps.append(Comb((m, element_steps[i]) for i, m in cofs))
                    sources.append((alpha, len(steps) - 1))
                else:
                    still.append(alpha)
            pending = still
        for alpha, s in sources:
            if alpha not in applied:
                add_exp(alpha, s, new)
        if not new:
            continue
        for e, s in new:
            elements.append(e)
            element_steps.append(s)
        if len(elements) > MAX_STAGE_ELEMENTS:
            raise BudgetExceeded(f"saturation produced more than {MAX_STAGE_ELEMENTS} elements")
    return Stage(vars, elements, element_steps, steps)


def saturate(pres: EIdealPresentation, policy: SaturationPolicy = SaturationPolicy()) -> list:
    """Stage generator set ``G_depth`` (monotone in depth)."""
    return list(saturate_stage(pres, policy).elements)


def prove_membership(target: EPoly, pres: EIdealPresentation,
                     policy: SaturationPolicy = SaturationPolicy(), extra_atoms=()):
    """``Proved(certificate)`` or ``NotFoundUpToDepth`` for the stage ideal."""
    if target.vars != pres.vars:
        raise UsageError(f"target is over {target.vars}, ideal over {pres.vars}")
    stage = saturate_stage(pres, policy)
    verdict, lattice = _stage_verdict(target, stage.elements, policy, extra_atoms)
    if isinstance(verdict, In):
        cofs = [(i, decode(c, lattice)) for i, c in verdict.cofactors]
        return Proved(stage.certificate_for(target, cofs))
    return NotFoundUpToDepth(policy.depth, decode(verdict.normal_form, lattice), policy)


def intersect_membership(target: EPoly, pres_a: EIdealPresentation, pres_b: EIdealPresentation,
                         policy: SaturationPolicy = SaturationPolicy()):
    """Membership verdicts against two presentations (both Proved => in the intersection)."""
    return prove_membership(target, pres_a, policy), prove_membership(target, pres_b, policy)
