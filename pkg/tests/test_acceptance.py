"""Acceptance criteria, each checked at its stated time limit.

One PASS/FAIL line per criterion is printed in the pytest terminal summary,
or directly when this file is run as a script.
"""

import time
from contextlib import contextmanager
from pathlib import Path

from conftest import ACCEPTANCE

from eideals.cli import cli
from eideals.eideal import EIdealPresentation, NotFoundUpToDepth, check_certificate
from eideals.epoly import EPoly
from eideals.experiments import ExperimentConfig, run_experiment
from eideals.grammar import parse_epoly, parse_many
from eideals.radical import check_radical_certificate, erad_search, refute_eradical
from eideals.selftest import run_selftest
from eideals.serialize import certificate_from_dict, loads_certificate

XY = ("x", "y")
NO_PRIME = "x*y, E(x)+1, E(y)+1"


@contextmanager
def criterion(num, label, limit):
    start = time.perf_counter()
    ok, note = False, "failed"
    try:
        yield
        elapsed = time.perf_counter() - start
        ok = elapsed < limit
        note = f"{elapsed:.2f}s (limit {limit}s)"
    except BaseException as e:
        note = f"{type(e).__name__}: {e}"
        raise
    finally:
        ACCEPTANCE[num] = (ok, f"{label}: {note}")
    assert ok, note


def _timed(limit, fn):
    start = time.perf_counter()
    result = fn()
    elapsed = time.perf_counter() - start
    assert elapsed < limit, f"{elapsed:.2f}s exceeds {limit}s"
    return result


def test_criterion_1_xy_counterexample(tmp_path):
    with criterion(1, "x*(E(y)-1) in (x)^E and (y)^E, not found in (xy)^E", 32):
        target = "x*(E(y)-1)"
        for gen, depth in (("x", "0"), ("y", "1")):
            out = tmp_path / f"{gen}.txt"
            code = _timed(1, lambda: cli(["member", "--ideal", gen, "--target", target,
                                          "--depth", depth, "--out", str(out)]))
            assert code == 0
            assert cli(["certify", "--file", str(out), "--ideal", gen, "--target", target]) == 0
        code = _timed(30, lambda: cli(["member", "--ideal", "x*y", "--target", target, "--depth", "3"]))
        assert code == 1


def test_criterion_2_no_prime_above(tmp_path):
    with criterion(2, "level-1 certificate for 2, Erad = (1)", 5):
        X = EIdealPresentation(tuple(parse_many(["x*y", "E(x) + 1", "E(y) + 1"], XY)))
        two = EPoly.constant(XY, 2)
        v = erad_search(two, X, max_level=1)
        assert v.proved and v.certificate.level == 1 and v.unit_ideal
        s = v.certificate.splits()[0]
        assert (s.b1, s.b2) == (parse_epoly("x", XY), parse_epoly("y", XY))
        assert check_radical_certificate(v.certificate, X, two)
        cert = tmp_path / "r.txt"
        assert cli(["erad", "--ideal", NO_PRIME, "--target", "2", "--level", "1", "--out", str(cert)]) == 0
        assert loads_certificate(cert.read_text()) == v.certificate
        assert cli(["certify", "--file", str(cert), "--ideal", NO_PRIME, "--target", "2"]) == 0


def test_criterion_3_refutation():
    with criterion(3, "refute_eradical on (xy)^E returns (x*(E(y)-1), x, y)", 10):
        X = EIdealPresentation((parse_epoly("x*y", XY),))
        r = refute_eradical(X)
        P = lambda s: parse_epoly(s, XY)  # noqa: E731
        assert (r.a, r.b1, r.b2) == (P("x*(E(y) - 1)"), P("x"), P("y"))
        assert check_radical_certificate(r.product, X, r.b1 * r.b2)
        assert check_radical_certificate(r.left, X.augmented(r.b1), r.a)
        assert check_radical_certificate(r.right, X.augmented(r.b2), r.a)
        assert isinstance(r.nonmembership, NotFoundUpToDepth) and r.nonmembership.depth == 3


def test_criterion_4_prime_chain():
    with criterion(4, "p_i in A_n, p_(n+1) not in A_n with evaluation cross-check, n <= 4", 60):
        for n in range(1, 5):
            rep = run_experiment(ExperimentConfig("noetherian-prime-chain", n=n))
            assert rep.ok, rep.to_text()
            members = [s for s in rep.steps if s["verdict"] == "proved"]
            assert len(members) == n + 1
            last = rep.steps[-1]
            assert last["claim"] == f"p{n + 1} not in A{n}"
            assert last["evaluation"]["target"] == "3"
            assert set(last["evaluation"]["generators"]) == {"0"}


def test_criterion_5_factorial_and_dyadic_chains():
    with criterion(5, "Zariski cofactors replay for k <= 5; E(x/2^(n+1))-1 not in stage ideal, n <= 5", 30):
        rep = run_experiment(ExperimentConfig("zariski-chain", k=5))
        assert rep.ok, rep.to_text()
        forward = [s for s in rep.steps if s["verdict"] == "proved"]
        assert len(forward) == 4 and all(s["telescoping"] for s in forward)
        for s in forward:
            cert = certificate_from_dict(s["certificate"])
            pres = EIdealPresentation(tuple(parse_many(s["ideal"], ("x",))))
            assert check_certificate(cert, pres, parse_epoly(s["target"], ("x",)))
        rep = run_experiment(ExperimentConfig("macintyre-not-fg", n=5))
        assert rep.ok and len(rep.steps) == 6
        assert all(s["verdict"].startswith("not in") for s in rep.steps)


def test_criterion_6_property_suites():
    with criterion(6, "seeded property suites (full selftest)", 300):
        results = run_selftest(seed=0)
        counts = {r.name: r.cases for r in results}
        for r in results:
            assert r.ok, f"{r.name}: {r.failures}"
        for name in ("ring axioms", "E homomorphism", "canonical form", "parse/format round trip",
                     "encode/decode round trip"):
            assert counts[name] >= 1000
        assert counts["Groebner vs linear algebra"] >= 20
        assert counts["corrupted certificates"] == 100
        assert counts["membership invariance"] > 0


if __name__ == "__main__":
    import tempfile

    tests = [(test_criterion_1_xy_counterexample, True), (test_criterion_2_no_prime_above, True),
             (test_criterion_3_refutation, False), (test_criterion_4_prime_chain, False),
             (test_criterion_5_factorial_and_dyadic_chains, False), (test_criterion_6_property_suites, False)]
    for fn, wants_tmp in tests:
        try:
            fn(Path(tempfile.mkdtemp())) if wants_tmp else fn()
        except AssertionError:
            pass
    for num in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[num]
        print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {msg}")
