import json

import pytest

from eideals.eideal import EIdealPresentation, SaturationPolicy, prove_membership
from eideals.epoly import EPoly
from eideals.errors import CertificateFormatError
from eideals.radical import erad_search
from eideals.serialize import (
    CERT_HEADER,
    dumps_certificate,
    dumps_report,
    loads_certificate,
    loads_report,
)

XY = ("x", "y")


@pytest.fixture
def membership(P):
    X = EIdealPresentation((P("E(x/2) - 1"),))
    return prove_membership(P("E(x) - 1"), X, SaturationPolicy(0)).certificate


@pytest.fixture
def radical(P):
    X = EIdealPresentation((P("x*y"), P("E(x) + 1"), P("E(y) + 1")))
    return erad_search(EPoly.constant(XY, 2), X, 1).certificate


def test_membership_round_trip(membership):
    doc = dumps_certificate(membership)
    assert doc.startswith(CERT_HEADER + "\n")
    back = loads_certificate(doc)
    assert back == membership
    assert dumps_certificate(back) == doc


def test_radical_round_trip(radical):
    doc = dumps_certificate(radical)
    back = loads_certificate(doc)
    assert back == radical
    assert dumps_certificate(back) == doc
    body = json.loads(doc.split("\n", 1)[1])
    split = body["steps"][0]
    assert set(split) == {"kind", "b1", "b2", "product", "left", "right", "element"}


def test_field_names(membership):
    body = json.loads(dumps_certificate(membership).split("\n", 1)[1])
    assert body["kind"] == "membership"
    assert body["target"] == "E(x) - 1"
    assert body["steps"][-1]["multiplier"] == ["E(1/2*x) + 1"]


@pytest.mark.parametrize("mutate", [
    lambda d: d.replace(CERT_HEADER, "eideals-certificate 2"),
    lambda d: d.replace('"E(1/2*x) + 1"', '"1 + E(x/2)"'),  # non-canonical expression
    lambda d: d.replace("\n  ", "\n   ", 1),  # non-canonical layout
    lambda d: d.replace('"comb"', '"combo"'),
    lambda d: d[:-3],
    lambda d: d.replace('"refs"', '"ref"', 1),
])
def test_strict_loading(membership, mutate):
    doc = dumps_certificate(membership)
    bad = mutate(doc)
    assert bad != doc
    with pytest.raises(CertificateFormatError):
        loads_certificate(bad)


def test_report_round_trip():
    rep = {"experiment": "x", "steps": [{"verdict": "proved"}]}
    assert loads_report(dumps_report(rep)) == rep
    with pytest.raises(CertificateFormatError):
        loads_report("{}")
