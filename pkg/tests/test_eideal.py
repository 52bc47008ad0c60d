import pytest

from eideals.eideal import (
    Comb,
    EIdealPresentation,
    ExpRule,
    Gen,
    MembershipCertificate,
    NotFoundUpToDepth,
    SaturationPolicy,
    check_certificate,
    intersect_membership,
    prove_membership,
    saturate,
)
from eideals.epoly import EPoly
from eideals.errors import UsageError

XY = ("x", "y")


def pres(P, *gens):
    return EIdealPresentation(tuple(P(g) for g in gens), XY)


def test_saturate_generators(P):
    assert saturate(pres(P, "x"), SaturationPolicy(1)) == [P("x"), P("E(x) - 1")]
    assert saturate(pres(P, "x*y"), SaturationPolicy(1)) == [P("x*y"), P("E(x*y) - 1")]
    assert saturate(pres(P, "E(x/2) - 1"), SaturationPolicy(0)) == [P("E(x/2) - 1")]


def test_saturate_is_monotone(P):
    X = pres(P, "x*y", "E(x) + 1")
    stages = [saturate(X, SaturationPolicy(d)) for d in range(3)]
    for a, b in zip(stages, stages[1:]):
        assert set(a) <= set(b)


def test_presentation_dedupes(P):
    assert len(pres(P, "x", "x", "y")) == 2


def test_proof_in_y_ideal(P):
    v = prove_membership(P("x*(E(y) - 1)"), pres(P, "y"), SaturationPolicy(1))
    assert v.proved
    assert v.certificate.steps == (Gen(0), ExpRule(0), Comb([(P("x"), 1)]))


def test_proof_in_x_ideal(P):
    v = prove_membership(P("x*(E(y) - 1)"), pres(P, "x"), SaturationPolicy(0))
    assert v.certificate.steps == (Gen(0), Comb([(P("E(y) - 1"), 0)]))


def test_half_exponent_cofactor(P):
    v = prove_membership(P("E(x) - 1"), pres(P, "E(x/2) - 1"), SaturationPolicy(0))
    assert v.certificate.steps[-1].multipliers == (P("E(x/2) + 1"),)


def test_xy_not_found(P):
    v = prove_membership(P("x*(E(y) - 1)"), pres(P, "x*y"), SaturationPolicy(3))
    assert isinstance(v, NotFoundUpToDepth)
    assert v.depth == 3
    assert v.normal_form == P("x*E(y) - x")


def test_checker_rejects_wrong_target(P):
    X = pres(P, "y")
    cert = prove_membership(P("x*(E(y) - 1)"), X, SaturationPolicy(1)).certificate
    assert check_certificate(cert, X, P("x*(E(y) - 1)"))
    bad = MembershipCertificate(cert.steps, P("x*E(y) + x"))
    r = check_certificate(bad, X, P("x*E(y) + x"))
    assert not r and "mismatch" in r.reason


def test_checker_rejects_forward_reference(P):
    X = pres(P, "y")
    cert = MembershipCertificate((Gen(0), ExpRule(2), Comb([(P("x"), 1)])), P("x*(E(y) - 1)"))
    r = check_certificate(cert, X, cert.target)
    assert not r and "earlier" in r.reason


def test_checker_rejects_bad_generator_index(P):
    cert = MembershipCertificate((Gen(3),), P("y"))
    assert not check_certificate(cert, pres(P, "y"), P("y"))


def test_intersection(P):
    a = P("x*(E(y) - 1)")
    va, vb = intersect_membership(a, pres(P, "x"), pres(P, "y"))
    assert va.proved and vb.proved
    va, vb = intersect_membership(P("x"), pres(P, "x"), pres(P, "y"), SaturationPolicy(2))
    assert va.proved and not vb.proved
    zero = EPoly.zero(XY)
    assert all(v.proved for v in intersect_membership(zero, pres(P, "x"), pres(P, "y")))


def test_depth_monotone_certificates_reusable(P):
    X = pres(P, "y")
    a = P("x*(E(y) - 1)")
    c1 = prove_membership(a, X, SaturationPolicy(1)).certificate
    for d in (2, 3):
        v = prove_membership(a, X, SaturationPolicy(d))
        assert v.proved and check_certificate(c1, X, a)


def test_pairwise_and_explicit_policies(P):
    X = pres(P, "x", "y")
    v = prove_membership(P("E(x*y) - 1"), X, SaturationPolicy(1, "pairwise"))
    assert v.proved and check_certificate(v.certificate, X, P("E(x*y) - 1"))
    # explicit targets are exponentiated only after being proved members
    v = prove_membership(P("E(x + y) - 1"), X, SaturationPolicy(1, (P("x + y"),)))
    assert v.proved and check_certificate(v.certificate, X, P("E(x + y) - 1"))
    v = prove_membership(P("E(x + 1) - 1"), pres(P, "y"), SaturationPolicy(1, (P("x + 1"),)))
    assert not v.proved


def test_variable_mismatch(P):
    with pytest.raises(UsageError):
        prove_membership(P("x", ("x",)), pres(P, "x"))


def test_negative_depth_rejected():
    with pytest.raises(UsageError):
        SaturationPolicy(-1)
