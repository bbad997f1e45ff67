"""Field literals: Fp(101), Fq(2,2;x^2+x+1), Q, Fq(t;2), and the short command line forms Fp:101, Fq:2:2, Fqt:2."""
from __future__ import annotations

from typing import TYPE_CHECKING

from common.literals import LiteralSyntaxError, strict_fullmatch
from fields.extension import ExtField
from fields.polynomial import Polynomial
from fields.prime import PrimeField
from fields.rational import RationalField
from ffield.element import FunctionField

if TYPE_CHECKING:
    from fields.base import Field

_FIELD_PATTERNS = (
    r"Fp\((?P<fp>\d+)\)",
    r"Fp:(?P<fp_short>\d+)",
    r"Q",
    r"Fq\(t;(?P<fqt_p>\d+)(?:,(?P<fqt_degree>\d+))?\)",
    r"Fqt:(?P<fqt_short_p>\d+)(?::(?P<fqt_short_degree>\d+))?",
    r"Fq\((?P<fq_p>\d+),(?P<fq_degree>\d+)(?:;(?P<fq_modulus>[^)]+))?\)",
    r"Fq:(?P<fq_short_p>\d+):(?P<fq_short_degree>\d+)",
)


def _finite_base(p: int, degree: int) -> PrimeField | ExtField:
    return PrimeField(p) if degree == 1 else ExtField.of(p, degree)


def parse_field(text: str) -> Field:
    """Parse a field literal.

    Raises:
        LiteralSyntaxError: If the text is not a field literal
    """
    text = text.replace(" ", "")
    for pattern in _FIELD_PATTERNS:
        try:
            match = strict_fullmatch(pattern, text)
        except LiteralSyntaxError:
            continue
        groups = {key: value for key, value in match.groupdict().items() if value is not None}
        if "fp" in groups or "fp_short" in groups:
            return PrimeField(int(groups.get("fp") or groups["fp_short"]))
        if "fqt_p" in groups or "fqt_short_p" in groups:
            p = int(groups.get("fqt_p") or groups["fqt_short_p"])
            degree = int(groups.get("fqt_degree") or groups.get("fqt_short_degree") or 1)
            return FunctionField(_finite_base(p, degree))
        if "fq_p" in groups or "fq_short_p" in groups:
            p = int(groups.get("fq_p") or groups["fq_short_p"])
            degree = int(groups.get("fq_degree") or groups["fq_short_degree"])
            if "fq_modulus" in groups:
                return ExtField.of(p, degree, Polynomial.parse(PrimeField(p), groups["fq_modulus"], "x"))
            return _finite_base(p, degree)
        return RationalField()
    error_message = f"Unknown field literal {text!r}"
    raise LiteralSyntaxError(error_message)
