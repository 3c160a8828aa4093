"""
Finite-dimensional representations of a Drinfeld double.

A representation is stored by its restrictions to the two factors; matrices
act on column vectors, so ρ(αβ) = ρ(α)ρ(β) and

    ρ_D(e_A e^B) = ρ_F(e_A) ρ_U(e^B).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Tuple

from core.exceptions import DimensionMismatch, RepresentationError
from core.linalg import (
    Matrix,
    as_matrix,
    first_difference,
    identity_matrix,
    mat_combination,
    mat_mul,
)
from core.reports import CheckReport
from core.tensors import Vector
from double.double import DrinfeldDouble

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DoubleRepresentation:
    """
    ρ_D given on the bases of F and U.

    Attributes:
        D: The double
        n: Carrier dimension
        rhoF: ρ_D(e_A) for every basis element of F
        rhoU: ρ_D(e^B) for every basis element of U
    """
    D: DrinfeldDouble
    n: int
    rhoF: Tuple[Matrix, ...]
    rhoU: Tuple[Matrix, ...]
    name: str = field(default='', compare=False)

    def __post_init__(self):
        for label, mats in (('rhoF', self.rhoF), ('rhoU', self.rhoU)):
            if len(mats) != self.D.n:
                raise DimensionMismatch(f"{label} has {len(mats)} matrices, expected {self.D.n}")
            for k, m in enumerate(mats):
                if len(m) != self.n or any(len(row) != self.n for row in m):
                    raise DimensionMismatch(f"{label}[{k}] is not {self.n}x{self.n}", (label, k))

    def __repr__(self) -> str:
        return f"DoubleRepresentation({self.name or 'rho'}, n={self.n})"

    @cached_property
    def basis_matrices(self) -> Tuple[Matrix, ...]:
        """ρ_D on the ordered basis e_A e^B of D."""
        return tuple(mat_mul(self.rhoF[a], self.rhoU[b]) for a in range(self.D.n) for b in range(self.D.n))

    def represent(self, alpha: Vector) -> Matrix:
        """ρ_D(α) for α given by coordinates in D."""
        return mat_combination(((c, self.basis_matrices[k]) for k, c in alpha.items()), self.n)

    def represent_f(self, a: Vector) -> Matrix:
        return mat_combination(((c, self.rhoF[k]) for k, c in a.items()), self.n)

    def represent_u(self, x: Vector) -> Matrix:
        return mat_combination(((c, self.rhoU[k]) for k, c in x.items()), self.n)

    @cached_property
    def report(self) -> CheckReport:
        return verify_double_rep(self)

    def require_valid(self) -> 'DoubleRepresentation':
        if not self.report.passed:
            failure = self.report.first_failure()
            raise RepresentationError(f"{self}: '{failure.name}' fails at {failure.witness}", failure.witness)
        return self


def make_representation(
    D: DrinfeldDouble,
    rhoF: Sequence[Sequence[Sequence]],
    rhoU: Sequence[Sequence[Sequence]],
    name: str = '',
) -> DoubleRepresentation:
    rhoF = tuple(as_matrix(m) for m in rhoF)
    rhoU = tuple(as_matrix(m) for m in rhoU)
    n = len(rhoF[0]) if rhoF else 0
    return DoubleRepresentation(D=D, n=n, rhoF=rhoF, rhoU=rhoU, name=name)


def trivial_representation(D: DrinfeldDouble) -> DoubleRepresentation:
    """The counit ε_D as a 1-dimensional representation."""
    return DoubleRepresentation(
        D=D,
        n=1,
        rhoF=tuple(((c,),) for c in D.F.counit),
        rhoU=tuple(((c,),) for c in D.U.counit),
        name='trivial',
    )


def _product_failure(
    products: dict,
    left: Sequence[Matrix],
    right: Sequence[Matrix],
    combine,
    pairs,
) -> Optional[Tuple[int, int]]:
    for a, b in pairs:
        expected = combine(products.get((a, b), {}))
        if first_difference(mat_mul(left[a], right[b]), expected) is not None:
            return (a, b)
    return None


def verify_double_rep(rho: DoubleRepresentation, exhaustive: bool = False) -> CheckReport:
    """
    Check that ρ is a representation of D.

    Args:
        rho: Candidate representation
        exhaustive: Also check ρ(xy) = ρ(x)ρ(y) for every pair of basis
            elements of D (dim(F)⁴ products)

    Returns:
        CheckReport; witnesses are the failing basis pairs
    """
    D = rho.D
    F, U = D.F, D.U
    k = range(D.n)
    report = CheckReport(title=f"{rho!r} of {D!r}")
    one = identity_matrix(rho.n)
    unit_ok = rho.represent_f(F.unit_vector) == one and rho.represent_u(U.unit_vector) == one
    report.add('unit', None if unit_ok else 'unit')
    report.add('f_multiplicative', _product_failure(
        F.basis_products, rho.rhoF, rho.rhoF, rho.represent_f, ((a, b) for a in k for b in k)))
    report.add('u_multiplicative', _product_failure(
        U.basis_products, rho.rhoU, rho.rhoU, rho.represent_u, ((a, b) for a in k for b in k)))
    # e^P e_Q through the straightening rule
    report.add('cross_relation', _product_failure(
        D.straightening, rho.rhoU, rho.rhoF, rho.represent, ((p, q) for p in k for q in k)))
    if exhaustive:
        m = range(D.dim)
        report.add('double_multiplicative', _product_failure(
            D.algebra.basis_products, rho.basis_matrices, rho.basis_matrices, rho.represent,
            ((x, y) for x in m for y in m)))
    logger.debug("%s: %s", report.title, report.passed)
    return report


def direct_sum(first: DoubleRepresentation, second: DoubleRepresentation) -> DoubleRepresentation:
    """Block-diagonal sum, first block on top."""
    if first.D is not second.D and first.D != second.D:
        raise DimensionMismatch("representations of different doubles")
    size = first.n + second.n

    def block(a: Matrix, b: Matrix) -> Matrix:
        rows = [list(row) + [Fraction(0)] * second.n for row in a]
        rows += [[Fraction(0)] * first.n + list(row) for row in b]
        return as_matrix(rows)

    return DoubleRepresentation(
        D=first.D,
        n=size,
        rhoF=tuple(block(a, b) for a, b in zip(first.rhoF, second.rhoF)),
        rhoU=tuple(block(a, b) for a, b in zip(first.rhoU, second.rhoU)),
        name=f"{first.name}+{second.name}",
    )
