"""Exponential polynomial rings, E-ideal membership and E-radical certificates."""

__version__ = "0.1.0"

from .eideal import (  # noqa: E402
    EIdealPresentation,
    MembershipCertificate,
    NotFoundUpToDepth,
    Proved,
    SaturationPolicy,
    check_certificate,
    prove_membership,
)
from .epoly import EPoly, exp_apply  # noqa: E402
from .grammar import format_epoly, parse_epoly  # noqa: E402
from .radical import (  # noqa: E402
    RadicalCertificate,
    check_radical_certificate,
    erad_search,
    refute_eradical,
)

__all__ = [
    "EIdealPresentation", "EPoly", "MembershipCertificate", "NotFoundUpToDepth", "Proved",
    "RadicalCertificate", "SaturationPolicy", "check_certificate", "check_radical_certificate",
    "erad_search", "exp_apply", "format_epoly", "parse_epoly", "prove_membership", "refute_eradical",
]
