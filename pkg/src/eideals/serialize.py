"""Versioned text formats for certificates and experiment reports.

A document is a header line followed by indented JSON.  All polynomials are
written in the canonical expression syntax.  Loading is strict: a document is
accepted only if re-serializing the decoded value reproduces it byte for byte,
so any corruption is either rejected here or changes a value the checker sees.
"""

from __future__ import annotations

import json

from .eideal import MembershipCertificate, Step
from .epoly import EPoly
from .errors import CertificateFormatError, ParseError
from .grammar import format_epoly, parse_epoly
from .radical import PrimeSplit, RadicalCertificate

CERT_HEADER = "eideals-certificate 1"
REPORT_HEADER = "eideals-report 1"


def _expr(p: EPoly) -> str:
    return format_epoly(p)


def _steps_to_list(steps) -> list:
    out = []
    for s in steps:
        if s.kind == "split":
            sp = s.split
            out.append({
                "kind": "split",
                "b1": _expr(sp.b1),
                "b2": _expr(sp.b2),
                "product": _body_to_dict(sp.product),
                "left": _body_to_dict(sp.left),
                "right": _body_to_dict(sp.right),
                "element": _expr(sp.element),
            })
            continue
        d = {"kind": s.kind, "refs": list(s.refs)}
        if s.kind == "comb":
            d["multiplier"] = [_expr(m) for m in s.multipliers]
        out.append(d)
    return out


def _body_to_dict(cert: RadicalCertificate) -> dict:
    return {"level": cert.level, "target": _expr(cert.target), "steps": _steps_to_list(cert.steps)}


def certificate_to_dict(cert) -> dict:
    if isinstance(cert, RadicalCertificate):
        return {"kind": "radical", "variables": list(cert.target.vars), **_body_to_dict(cert)}
    if isinstance(cert, MembershipCertificate):
        return {
            "kind": "membership",
            "variables": list(cert.target.vars),
            "target": _expr(cert.target),
            "steps": _steps_to_list(cert.steps),
        }
    raise TypeError(f"cannot serialize {type(cert).__name__}")


def dumps_certificate(cert) -> str:
    return CERT_HEADER + "\n" + json.dumps(certificate_to_dict(cert), indent=2, ensure_ascii=False) + "\n"


class _Decoder:
    def __init__(self, vars):
        self.vars = tuple(vars)

    def expr(self, s) -> EPoly:
        if not isinstance(s, str):
            raise CertificateFormatError(f"expected an expression string, got {s!r}")
        try:
            p = parse_epoly(s, self.vars)
        except ParseError as e:
            raise CertificateFormatError(f"bad expression {s!r}: {e}") from None
        if format_epoly(p) != s:
            raise CertificateFormatError(f"expression {s!r} is not in canonical form")
        return p

    def refs(self, d) -> tuple:
        refs = d.get("refs")
        if not isinstance(refs, list) or not all(isinstance(r, int) and not isinstance(r, bool) for r in refs):
            raise CertificateFormatError("refs must be a list of integers")
        return tuple(refs)

    def steps(self, items) -> tuple:
        if not isinstance(items, list):
            raise CertificateFormatError("steps must be a list")
        out = []
        for d in items:
            if not isinstance(d, dict):
                raise CertificateFormatError("each step must be an object")
            kind = d.get("kind")
            if kind in ("gen", "exp"):
                _keys(d, {"kind", "refs"})
                out.append(Step(kind, self.refs(d)))
            elif kind == "comb":
                _keys(d, {"kind", "refs", "multiplier"})
                mults = d["multiplier"]
                if not isinstance(mults, list):
                    raise CertificateFormatError("multiplier must be a list")
                out.append(Step("comb", self.refs(d), tuple(self.expr(m) for m in mults)))
            elif kind == "split":
                _keys(d, {"kind", "b1", "b2", "product", "left", "right", "element"})
                out.append(Step("split", split=PrimeSplit(
                    self.expr(d["b1"]), self.expr(d["b2"]),
                    self.body(d["product"]), self.body(d["left"]), self.body(d["right"]),
                    self.expr(d["element"]),
                )))
            else:
                raise CertificateFormatError(f"unknown step kind {kind!r}")
        return tuple(out)

    def body(self, d) -> RadicalCertificate:
        if not isinstance(d, dict):
            raise CertificateFormatError("sub-certificate must be an object")
        _keys(d, {"level", "target", "steps"})
        level = d["level"]
        if not isinstance(level, int) or isinstance(level, bool):
            raise CertificateFormatError("level must be an integer")
        return RadicalCertificate(level, self.steps(d["steps"]), self.expr(d["target"]))


def _keys(d: dict, expected: set) -> None:
    if set(d) != expected:
        raise CertificateFormatError(f"expected fields {sorted(expected)}, got {sorted(d)}")


def certificate_from_dict(d):
    if not isinstance(d, dict):
        raise CertificateFormatError("certificate must be an object")
    kind = d.get("kind")
    vars = d.get("variables")
    if not isinstance(vars, list) or not all(isinstance(v, str) for v in vars):
        raise CertificateFormatError("variables must be a list of names")
    dec = _Decoder(vars)
    if kind == "membership":
        _keys(d, {"kind", "variables", "target", "steps"})
        return MembershipCertificate(dec.steps(d["steps"]), dec.expr(d["target"]))
    if kind == "radical":
        _keys(d, {"kind", "variables", "level", "target", "steps"})
        return dec.body({k: d[k] for k in ("level", "target", "steps")})
    raise CertificateFormatError(f"unknown certificate kind {kind!r}")


def loads_certificate(text: str):
    """Decode a certificate document; raises CertificateFormatError on any defect."""
    header, sep, body = text.partition("\n")
    if header != CERT_HEADER or not sep:
        raise CertificateFormatError(f"missing header line {CERT_HEADER!r}")
    try:
        data = json.loads(body)
    except json.JSONDecodeError as e:
        raise CertificateFormatError(f"invalid JSON: {e}") from None
    cert = certificate_from_dict(data)
    if dumps_certificate(cert) != text:
        raise CertificateFormatError("document is not in canonical form")
    return cert


def dumps_report(report: dict) -> str:
    return REPORT_HEADER + "\n" + json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def loads_report(text: str) -> dict:
    header, sep, body = text.partition("\n")
    if header != REPORT_HEADER or not sep:
        raise CertificateFormatError(f"missing header line {REPORT_HEADER!r}")
    try:
        return json.loads(body)
    except json.JSONDecodeError as e:
        raise CertificateFormatError(f"invalid JSON: {e}") from None
