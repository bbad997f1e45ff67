"""Extremal incidence and sum-product constructions."""
from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING

from calculus.certificates import ExtractionCertificate
from common.budget import check_budget
from common.certificate import Certificate
from common.exact import ceil_sqrt, exact_cube_root
from fields.prime import PrimeField, find_generator
from incidence.geometry import AffineLine, AffinePoint, IncidenceInstance
from setcore.finite_set import FiniteSet
from setcore.operations import SetOperation, pairwise_set

if TYPE_CHECKING:
    from fields.base import Field


class NotACubeError(Exception):
    """Exception raised when the size of an extremal grid is not a perfect cube."""


class FieldTooSmallError(Exception):
    """Exception raised when a construction would wrap around the characteristic of its field."""


class InvalidSizeError(Exception):
    """Exception raised when a requested set size is outside of [1, p]."""


def extremal_grid(field: Field, N: int) -> IncidenceInstance:
    """Build P = [1, m] x [1, 2m^2] and L = {y = rx + s : r in [1, m], s in [1, m^2]} for N = m^3.

    Every line meets exactly m points so I(P, L) = N^(4/3).

    Raises:
        NotACubeError: If N is not a positive cube
        FieldTooSmallError: If the characteristic is positive and N >= (p / 2)^(3/2)
    """
    m = exact_cube_root(N) if N > 0 else None
    if m is None:
        error_message = f"{N} is not a positive cube"
        raise NotACubeError(error_message)
    p = field.characteristic
    if p and 8 * N * N >= p**3:
        error_message = f"N = {N} needs N < ({p}/2)^(3/2)"
        raise FieldTooSmallError(error_message)
    points = (AffinePoint.of(field, x, y) for x in range(1, m + 1) for y in range(1, 2 * m * m + 1))
    lines = (AffineLine.graph(field(r), field(s)) for r in range(1, m + 1) for s in range(1, m * m + 1))
    return IncidenceInstance.build(field, points, lines)


def elekes_config(A: FiniteSet) -> tuple[IncidenceInstance, Certificate]:
    """Build P = (A + A) x (AA) and L = {y = a(x - b) : a in A nonzero, b in A}.

    Each line l_ab holds the |A| witnesses (b + c, ac), which the certificate checks one by one.
    """
    field = A.field
    sums = pairwise_set(A, A, SetOperation.SUM)
    products = pairwise_set(A, A, SetOperation.PROD)
    points = [AffinePoint(x, y) for x in sums for y in products]
    slopes = A.without_zero()
    lines = {(a, b): AffineLine.graph(a, -a * b) for a in slopes for b in A}
    instance = IncidenceInstance.build(field, points, lines.values())
    witnesses = sum(
        1 for (a, b), line in lines.items() for c in A if line.contains(AffinePoint(b + c, a * c))
    )

    certificate = Certificate("elekes", {"field": field.tag, "A": A.to_json()})
    certificate.record("|A+A|", len(sums))
    certificate.record("|AA|", len(products))
    certificate.record("I(P,L)", instance.incidences)
    certificate.check("distinct-lines", len(lines), len(instance.lines))
    certificate.check("witnesses", len(lines) * len(A), witnesses)
    certificate.check("incidence-lower-bound", len(slopes) * len(A) ** 2, instance.incidences)
    return instance, certificate


def bourgain_garaev_set(p: int, N: int) -> ExtractionCertificate:
    """Find A in F_p of size up to N inside both a geometric and an arithmetic progression of length M.

    With M = ceil(sqrt(pN)) and g a generator, every y in F_p is scanned for the largest intersection of
    {g^n : 1 <= n <= M} with {y + j : 1 <= j <= M}. Both sum and product sets of A then have at most 2M - 1
    elements.

    Raises:
        InvalidSizeError: If N is outside of [1, p]
        BudgetExceededError: If the M^2 pairs of the scan exceed the enumeration budget
    """
    field = PrimeField(p)
    if not 1 <= N <= p:
        error_message = f"N must lie in [1, {p}], got {N}"
        raise InvalidSizeError(error_message)
    M = ceil_sqrt(p * N)
    check_budget(M * M, "Bourgain-Garaev scan")
    g = field.one() if p == 2 else find_generator(field)
    powers = {g**n for n in range(1, M + 1)}
    hits = Counter((x - j) for x in powers for j in range(1, M + 1))
    y = min(hits, key=lambda candidate: (-hits[candidate], candidate))
    window = {y + j for j in range(1, M + 1)}
    intersection = sorted(powers & window)
    A = FiniteSet(field, intersection[:N])
    sums = pairwise_set(A, A, SetOperation.SUM)
    products = pairwise_set(A, A, SetOperation.PROD)

    certificate = ExtractionCertificate("bourgain-garaev", {"field": field.tag, "N": N}, subset=A)
    certificate.record("M", M)
    certificate.record("g", str(g))
    certificate.record("y", str(y))
    certificate.record("intersection", len(intersection))
    certificate.record("|A+A|", len(sums))
    certificate.record("|AA|", len(products))
    certificate.check("pigeonhole", len(powers) * M, len(intersection) * p)
    certificate.check("sumset", len(sums), 2 * M + 1)
    certificate.check("product-set", len(products), 2 * M + 1)
    certificate.check("size", min(N, -(-len(powers) * M // p)), len(A))
    return certificate
