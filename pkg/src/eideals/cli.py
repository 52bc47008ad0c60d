"""Command-line interface.

Exit codes: 0 proved/valid, 1 not found within bounds, 2 usage or parse
error, 3 refuted or invalid certificate.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .eideal import EIdealPresentation, SaturationPolicy, check_certificate, prove_membership
from .errors import BudgetExceeded, CertificateFormatError, EIdealsError
from .experiments import EXPERIMENTS, ExperimentConfig, run_experiment
from .grammar import collect_variables, format_epoly, parse_epoly, parse_many, split_list
from .groebner import DEFAULT_BUDGET
from .radical import RadicalCertificate, check_radical_certificate, erad_search, refute_eradical
from .serialize import certificate_to_dict, dumps_certificate, dumps_report, loads_certificate

EXIT_OK, EXIT_NOT_FOUND, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common(p, depth=1, target=True):
    p.add_argument("--ideal", required=True, help="comma-separated generators")
    p.add_argument("--target", required=target, default="0")
    p.add_argument("--depth", type=int, default=depth, help="saturation depth")
    p.add_argument("--policy", default="generators",
                   help="generators | pairwise | list:EXPR;EXPR;... (elements to exponentiate)")
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="reduction-step budget")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--out", help="write the certificate here")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="eideals", description="E-ideal membership and E-radical certificates")
    ap.add_argument("--version", action="version", version=f"eideals {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="normalize expressions")
    p.add_argument("exprs", nargs="+")
    p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("member", help="E-ideal membership with certificate")
    _common(p)

    p = sub.add_parser("erad", help="leveled E-radical certificates")
    _common(p, target=False)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--splitter", choices=("syntactic", "factor"), default="syntactic")
    p.add_argument("--refute", action="store_true",
                   help="search for a witness that the ideal is not E-radical (--target ignored)")
    p.add_argument("--nonmember-depth", type=int, default=3,
                   help="with --refute: depth up to which a must not be found")

    p = sub.add_parser("certify", help="check a certificate file")
    p.add_argument("--file", required=True)
    p.add_argument("--ideal", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("experiment", help="run a named reproduction")
    p.add_argument("name", choices=EXPERIMENTS)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--ideal", default="", help="ideal for prime-conditions (comma-separated)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--timings", action="store_true", help="include wall-clock seconds")
    p.add_argument("--jobs", type=int, default=1, help="run independent steps concurrently")

    p = sub.add_parser("selftest", help="run the property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", action="append", help="suite name (repeatable)")
    p.add_argument("--scale", type=float, default=1.0, help="fraction of the default case counts")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--timings", action="store_true")
    return ap


def _inputs(args, ideal_text=None, target_text=None, vars=None):
    texts = split_list(ideal_text if ideal_text is not None else args.ideal)
    target_text = target_text if target_text is not None else args.target
    if vars is None:
        vars = collect_variables(*texts, target_text)
    gens = parse_many(texts, vars)
    target = parse_epoly(target_text, vars)
    return EIdealPresentation(tuple(gens), vars), target


def _policy(args, vars) -> SaturationPolicy:
    rule = args.policy
    if rule.startswith("list:"):
        rule = tuple(parse_epoly(t, vars) for t in rule[5:].split(";") if t.strip())
    return SaturationPolicy(args.depth, rule, args.budget, args.order)


def _emit(args, report: dict, text: str) -> None:
    if args.format == "structured":
        sys.stdout.write(dumps_report(report))
    else:
        sys.stdout.write(text)


def _write_cert(args, cert) -> str:
    doc = dumps_certificate(cert)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
    return doc


def cmd_parse(args) -> int:
    vars = collect_variables(*args.exprs)
    ps = parse_many(args.exprs, vars)
    rows = [{"input": t, "canonical": format_epoly(p), "height": p.height} for t, p in zip(args.exprs, ps)]
    _emit(args, {"command": "parse", "variables": list(vars), "expressions": rows},
          "".join(r["canonical"] + "\n" for r in rows))
    return EXIT_OK


def cmd_member(args) -> int:
    pres, target = _inputs(args)
    policy = _policy(args, pres.vars)
    v = prove_membership(target, pres, policy)
    report = {"command": "member", "ideal": [format_epoly(g) for g in pres.gens],
              "target": format_epoly(target), "policy": policy.describe()}
    if v.proved:
        if not check_certificate(v.certificate, pres, target):
            raise AssertionError("engine produced an invalid certificate")
        doc = _write_cert(args, v.certificate)
        report.update(verdict="proved", certificate=certificate_to_dict(v.certificate))
        text = "proved\n" + ("" if args.out else doc)
        _emit(args, report, text)
        return EXIT_OK
    report.update(verdict="not-found", depth=v.depth, normal_form=format_epoly(v.normal_form))
    _emit(args, report, f"not found up to depth {v.depth} ({policy.describe()})\n"
                        f"stage normal form: {format_epoly(v.normal_form)}\n")
    return EXIT_NOT_FOUND


def cmd_erad(args) -> int:
    if args.level < 0:
        raise EIdealsError("--level must be non-negative")
    pres, target = _inputs(args)
    policy = _policy(args, pres.vars)
    report = {"command": "erad", "ideal": [format_epoly(g) for g in pres.gens],
              "policy": policy.describe(), "level": args.level}
    if args.refute:
        r = refute_eradical(pres, policy, nonmember_depth=args.nonmember_depth, splitter=args.splitter,
                            max_level=max(args.level - 1, 0))
        if r is None:
            report["verdict"] = "no-refutation"
            _emit(args, report, "no refutation found (not a proof of E-radicality)\n")
            return EXIT_NOT_FOUND
        for sub, aug, t in ((r.product, pres, r.b1 * r.b2), (r.left, pres.augmented(r.b1), r.a),
                            (r.right, pres.augmented(r.b2), r.a)):
            if not check_radical_certificate(sub, aug, t):
                raise AssertionError("engine produced an invalid certificate")
        report.update(verdict="refuted", a=format_epoly(r.a), b1=format_epoly(r.b1), b2=format_epoly(r.b2),
                      product=certificate_to_dict(r.product), left=certificate_to_dict(r.left),
                      right=certificate_to_dict(r.right),
                      nonmembership={"depth": r.nonmembership.depth,
                                     "normal_form": format_epoly(r.nonmembership.normal_form)})
        _emit(args, report,
              f"refuted: b1*b2 = ({format_epoly(r.b1)})*({format_epoly(r.b2)}) is in the ideal,\n"
              f"a = {format_epoly(r.a)} is in both augmented radicals,\n"
              f"a not found in the E-ideal up to depth {r.nonmembership.depth}\n")
        return EXIT_INVALID
    v = erad_search(target, pres, args.level, policy, args.splitter)
    report["target"] = format_epoly(target)
    if not v.proved:
        report["verdict"] = "not-found"
        _emit(args, report, f"not found up to level {args.level} ({policy.describe()})\n")
        return EXIT_NOT_FOUND
    if not check_radical_certificate(v.certificate, pres, target):
        raise AssertionError("engine produced an invalid certificate")
    doc = _write_cert(args, v.certificate)
    report.update(verdict="proved", unit_ideal=v.unit_ideal, certificate=certificate_to_dict(v.certificate))
    text = f"proved at level {v.certificate.level}\n"
    if v.unit_ideal:
        text += "Erad = (1)\n"
    _emit(args, report, text + ("" if args.out else doc))
    return EXIT_OK


def cmd_certify(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        doc = fh.read()
    try:
        cert = loads_certificate(doc)
    except (CertificateFormatError, EIdealsError) as e:
        return _invalid(args, f"malformed certificate: {e}")
    try:
        pres, target = _inputs(args, vars=cert.target.vars)
    except EIdealsError as e:
        return _invalid(args, f"ideal or target does not fit the certificate variables: {e}")
    if isinstance(cert, RadicalCertificate):
        result = check_radical_certificate(cert, pres, target)
    else:
        result = check_certificate(cert, pres, target)
    if not result:
        return _invalid(args, result.reason)
    _emit(args, {"command": "certify", "valid": True}, "valid\n")
    return EXIT_OK


def _invalid(args, reason: str) -> int:
    _emit(args, {"command": "certify", "valid": False, "reason": reason}, f"invalid: {reason}\n")
    return EXIT_INVALID


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig(args.name, n=args.n, k=args.k, depth=args.depth, budget=args.budget,
                           format=args.format, seed=args.seed, ideal=tuple(split_list(args.ideal)),
                           timings=args.timings, jobs=args.jobs)
    report = run_experiment(cfg)
    out = dumps_report(report.to_dict()) if args.format == "structured" else report.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    sys.stdout.write(out)
    return EXIT_OK if report.ok else EXIT_NOT_FOUND


def cmd_selftest(args) -> int:
    from .selftest import SUITES, format_results, run_selftest, summary

    for name in args.only or ():
        if name not in SUITES:
            raise EIdealsError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    results = run_selftest(args.seed, args.only, args.scale)
    _emit(args, {"command": "selftest", "seed": args.seed, "suites": summary(results)},
          format_results(results, args.timings))
    return EXIT_OK if all(r.ok for r in results) else EXIT_NOT_FOUND


COMMANDS = {
    "parse": cmd_parse,
    "member": cmd_member,
    "erad": cmd_erad,
    "certify": cmd_certify,
    "experiment": cmd_experiment,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    if argv is not None:
        argv = list(argv)
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except (EIdealsError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def cli(argv=None) -> int:
    try:
        return main(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
