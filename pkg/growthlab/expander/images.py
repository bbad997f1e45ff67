"""Image sets of the expanders f(a, b) = a + ab, g(a, b, c) = (a - b) / (a - c) and the cross ratio h.

Values at infinity are never members of an image set. They are kept in the multiplicity maps so that energies
can be counted over the projective line.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product
from math import log
from typing import TYPE_CHECKING, Any

from projective.crossratio import cross_ratio, line_point, line_value
from setcore.energy import TooSmallError
from setcore.operations import SetOperation, TranslateMode, ZeroDilationError, pairwise_set, translate_dilate

if TYPE_CHECKING:
    from fields.base import FieldElement
    from projective.space import ProjPoint
    from setcore.finite_set import FiniteSet


def f_image(A: FiniteSet) -> FiniteSet:
    """Return f(A) = A(A + 1)."""
    return pairwise_set(A, translate_dilate(A, A.field.one(), TranslateMode.TRANSLATE), SetOperation.PROD)


def _require(A: FiniteSet, size: int, name: str) -> None:
    if len(A) < size:
        error_message = f"{name} needs at least {size} elements, got {len(A)}"
        raise TooSmallError(error_message)


def g_image(A: FiniteSet) -> FiniteSet:
    """Return {(a - b) / (a - c) : a, b, c in A, a != c}.

    Raises:
        TooSmallError: If |A| < 2
    """
    _require(A, 2, "g(A)")
    return A.with_elements((a - b) / (a - c) for a, b, c in product(A, repeat=3) if a != c)


def g_image_by_cross_ratio(A: FiniteSet) -> FiniteSet:
    """Return g(A) through the cross ratio, using g(a, b, c) = -X(infinity, c, a, b).

    Raises:
        TooSmallError: If |A| < 2
    """
    _require(A, 2, "g(A)")
    field = A.field
    infinity = line_point(field, None)
    values: list[FieldElement] = []
    for a, b, c in product(A, repeat=3):
        if a == c:
            continue
        value = line_value(cross_ratio(infinity, line_point(field, c), line_point(field, a), line_point(field, b)))
        if value is not None:
            values.append(-value)
    return A.with_elements(values)


def h_multiplicities(A: FiniteSet) -> Counter[ProjPoint]:
    """Number of quadruples (a, b, c, d) with a, b, c distinct taking each cross ratio value, infinity included."""
    field = A.field
    points = [line_point(field, a) for a in A]
    return Counter(cross_ratio(a, b, c, d) for a, b, c in permutations(points, 3) for d in points)


def h_image(A: FiniteSet) -> FiniteSet:
    """Return the finite cross ratios X(a, b, c, d) over quadruples with a, b, c distinct.

    Raises:
        TooSmallError: If |A| < 3
    """
    _require(A, 3, "h(A)")
    values = (line_value(point) for point in h_multiplicities(A))
    return A.with_elements(value for value in values if value is not None)


def affine_image(A: FiniteSet, x: FieldElement, y: FieldElement) -> FiniteSet:
    """Return (A - y) / x.

    Raises:
        ZeroDilationError: If x is zero
    """
    if x.is_zero:
        error_message = f"Cannot map {A} into 0 * C + {y}"
        raise ZeroDilationError(error_message)
    shifted = translate_dilate(A, -y, TranslateMode.TRANSLATE)
    return translate_dilate(shifted, x.inverse(), TranslateMode.DILATE)


def _exponent(size: int | None, base: int) -> float | None:
    if size is None or base < 2:
        return None
    return log(size) / log(base)


@dataclass(frozen=True)
class GrowthReport:
    """Image sizes of one set and the realized exponents log |image| / log |A|."""

    family: str
    field: str
    size: int
    f_size: int
    g_size: int | None
    h_size: int | None
    sum_size: int
    prod_size: int
    seed: int | None = None

    @property
    def exponents(self) -> tuple[float | None, float | None, float | None]:
        return (
            _exponent(self.f_size, self.size),
            _exponent(self.g_size, self.size),
            _exponent(self.h_size, self.size),
        )

    @property
    def g_constant(self) -> float | None:
        """C with |g(A)| = |A|^2 / C."""
        return self.size**2 / self.g_size if self.g_size else None

    def to_row(self) -> dict[str, Any]:
        exp_f, exp_g, exp_h = self.exponents
        return {
            "family": self.family,
            "field": self.field,
            "|A|": self.size,
            "fSize": self.f_size,
            "gSize": self.g_size,
            "hSize": self.h_size,
            "expF": exp_f,
            "expG": exp_g,
            "expH": exp_h,
            "seed": self.seed,
            "sumSize": self.sum_size,
            "prodSize": self.prod_size,
        }


def growth_report(A: FiniteSet, family: str, seed: int | None = None) -> GrowthReport:
    """Measure f(A), g(A) and h(A) together with A + A and AA.

    Images that need more elements than A has are reported as None.
    """
    return GrowthReport(
        family,
        A.field.tag,
        len(A),
        len(f_image(A)),
        len(g_image(A)) if len(A) >= 2 else None,
        len(h_image(A)) if len(A) >= 3 else None,
        len(pairwise_set(A, A, SetOperation.SUM)),
        len(pairwise_set(A, A, SetOperation.PROD)),
        seed,
    )
