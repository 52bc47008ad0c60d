import dataclasses

from eideals.eideal import EIdealPresentation, NotFoundUpToDepth, SaturationPolicy, check_certificate, prove_membership
from eideals.epoly import EPoly
from eideals.radical import (
    RadicalCertificate,
    Split,
    as_radical,
    check_radical_certificate,
    erad_search,
    factor_splits,
    refute_eradical,
    syntactic_splits,
)

XY = ("x", "y")


def no_prime(P):
    return EIdealPresentation((P("x*y"), P("E(x) + 1"), P("E(y) + 1")))


def test_two_in_level_one(P):
    X = no_prime(P)
    two = EPoly.constant(XY, 2)
    v = erad_search(two, X, 1)
    assert v.proved and v.unit_ideal
    cert = v.certificate
    assert cert.level == 1
    split = cert.splits()[0]
    assert (split.b1, split.b2) == (P("x"), P("y"))
    assert check_radical_certificate(cert, X, two)


def test_split_with_wrong_factor_rejected(P):
    X = no_prime(P)
    two = EPoly.constant(XY, 2)
    cert = erad_search(two, X, 1).certificate
    s = cert.splits()[0]
    bad = RadicalCertificate(1, (Split(dataclasses.replace(s, b2=P("x"))),), two)
    r = check_radical_certificate(bad, X, two)
    assert not r and r.reason.startswith("step 0: product")


def test_level_zero_agrees_with_membership(P):
    X = EIdealPresentation((P("y"),))
    a = P("x*(E(y) - 1)")
    cert = prove_membership(a, X, SaturationPolicy(1)).certificate
    assert check_radical_certificate(as_radical(cert), X, a)
    assert check_certificate(cert, X, a)
    wrong = P("x*E(y) + x")
    assert not check_radical_certificate(as_radical(dataclasses.replace(cert, target=wrong)), X, wrong)
    assert not check_certificate(dataclasses.replace(cert, target=wrong), X, wrong)


def test_padding_invariance(P):
    X = no_prime(P)
    two = EPoly.constant(XY, 2)
    cert = erad_search(two, X, 1).certificate
    for level in (2, 5):
        assert check_radical_certificate(dataclasses.replace(cert, level=level), X, two)
    assert not check_radical_certificate(dataclasses.replace(cert, level=0), X, two)


def test_split_forbidden_at_level_zero(P):
    X = no_prime(P)
    two = EPoly.constant(XY, 2)
    cert = erad_search(two, X, 1).certificate
    assert not check_radical_certificate(dataclasses.replace(cert, level=0), X, two)


def test_intersection_element(P):
    X = EIdealPresentation((P("x*y"),))
    v = erad_search(P("x*(E(y) - 1)"), X, 1)
    assert v.proved and v.certificate.splits()[0].b1 == P("x")
    assert check_radical_certificate(v.certificate, X, P("x*(E(y) - 1)"))


def test_generator_at_level_zero(P):
    X = EIdealPresentation((P("x", ("x",)),))
    assert erad_search(P("x", ("x",)), X, 0).proved


def test_not_found_without_splits(P):
    X = EIdealPresentation((P("E(x) + 1"),))
    assert not erad_search(P("x"), X, 2).proved


def test_refutation_triple(P):
    X = EIdealPresentation((P("x*y"),))
    r = refute_eradical(X)
    assert (r.a, r.b1, r.b2) == (P("x*(E(y) - 1)"), P("x"), P("y"))
    assert isinstance(r.nonmembership, NotFoundUpToDepth) and r.nonmembership.depth == 3
    assert check_radical_certificate(r.product, X, P("x*y"))
    assert check_radical_certificate(r.left, X.augmented(r.b1), r.a)
    assert check_radical_certificate(r.right, X.augmented(r.b2), r.a)


def test_no_refutation_for_prime_generator(P):
    assert refute_eradical(EIdealPresentation((P("x", ("x",)),))) is None
    assert refute_eradical(EIdealPresentation((), XY)) is None


def test_syntactic_splits(P):
    X = EIdealPresentation((P("x^2*y"),))
    splits = syntactic_splits(X)
    assert (P("x"), P("x*y")) in splits
    assert all((b, a) not in splits for a, b in splits)
    assert syntactic_splits(EIdealPresentation((P("E(x) + 1"),))) == []


def test_factor_splits_find_laurent_factors(P):
    # encoded as u^3 - u = u (u - 1)(u + 1); the unit u is never split off alone
    g = P("E(3*x) - E(x)")
    pairs = factor_splits(EIdealPresentation((g,)))
    assert pairs and all(a * b == g for a, b in pairs)
    assert any(P("E(x) - 1") in pair for pair in pairs)
    assert all(not a.is_unit_monomial() and not b.is_unit_monomial() for a, b in pairs)
