"""
Hochschild cochains with values in a finite-dimensional bimodule.

A bimodule M over an algebra with N basis elements is given by the matrices
of α·v = L(α)v and v·α = R(α)v. A k-cochain is stored sparsely by its values
on basis k-tuples; component r of φ(α_1, …, α_k) sits at index

    ((α_1·N + α_2)·N + … + α_k)·dim(M) + r

and the coboundary is

    (δφ)(α_1, …, α_{k+1}) = α_1·φ(α_2, …, α_{k+1})
                            + Σ_i (−1)^i φ(…, α_i α_{i+1}, …)
                            + (−1)^{k+1} φ(α_1, …, α_k)·α_{k+1}.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from bicovariant.representations import DoubleRepresentation
from core.exceptions import CochainError, DimensionMismatch
from core.hopf import HopfAlgebra
from core.linalg import Matrix, first_difference, identity_matrix, in_span, mat_combination, mat_mul, mat_scale, nullspace, span_basis, transpose
from core.reports import CheckReport
from core.tensors import Vector, accumulate, axpy, basis_vector, to_sparse, vec_scale, vec_sub

logger = logging.getLogger(__name__)

BASES = ('D', 'F')


@dataclass(frozen=True)
class CoefficientBimodule:
    """
    Attributes:
        algebra: The algebra acting on both sides
        width: Dimension of the carrier
        left: L(α) for every basis element α
        right: R(α) for every basis element α
        base: 'D' or 'F'
    """
    algebra: HopfAlgebra
    width: int
    left: Tuple[Matrix, ...]
    right: Tuple[Matrix, ...]
    base: str = 'D'
    name: str = field(default='', compare=False)

    def __post_init__(self):
        if self.base not in BASES:
            raise CochainError(f"base must be one of {BASES}, got {self.base!r}")
        for label, mats in (('left', self.left), ('right', self.right)):
            if len(mats) != self.algebra.dim:
                raise DimensionMismatch(f"{label} has {len(mats)} matrices, expected {self.algebra.dim}")
            if any(len(m) != self.width or any(len(row) != self.width for row in m) for m in mats):
                raise DimensionMismatch(f"{label} matrices are not {self.width}x{self.width}")

    def __repr__(self) -> str:
        return f"CoefficientBimodule({self.name or 'M'} over {self.base}, width={self.width})"

    @property
    def N(self) -> int:
        return self.algebra.dim

    def cochain_dim(self, k: int) -> int:
        return self.N ** k * self.width

    def encode(self, alphas: Sequence[int], r: int) -> int:
        index = 0
        for alpha in alphas:
            index = index * self.N + alpha
        return index * self.width + r

    def decode(self, index: int, k: int) -> Tuple[Tuple[int, ...], int]:
        index, r = divmod(index, self.width)
        alphas = []
        for _ in range(k):
            index, alpha = divmod(index, self.N)
            alphas.append(alpha)
        return tuple(reversed(alphas)), r

    @cached_property
    def preimages(self) -> Dict[int, Tuple[Tuple[int, int, Fraction], ...]]:
        """C -> ((A, B, m_AB^C), ...)"""
        index: Dict[int, list] = {}
        for (a, b, c), v in sorted(self.algebra.mult.entries.items()):
            index.setdefault(c, []).append((a, b, v))
        return {k: tuple(v) for k, v in index.items()}

    def left_matrix(self, alpha: Vector) -> Matrix:
        return mat_combination(((c, self.left[k]) for k, c in alpha.items()), self.width)

    def right_matrix(self, alpha: Vector) -> Matrix:
        return mat_combination(((c, self.right[k]) for k, c in alpha.items()), self.width)


def verify_coefficient_bimodule(M: CoefficientBimodule) -> CheckReport:
    """
    L is multiplicative, R is anti-multiplicative ((v·α)·β = v·(αβ)), both
    send 1 to the identity, and the two actions commute.
    """
    H = M.algebra
    rng = range(M.N)
    one = identity_matrix(M.width)
    report = CheckReport(title=f"bimodule axioms of {M!r}")
    report.add('unit', None if M.left_matrix(H.unit_vector) == one and M.right_matrix(H.unit_vector) == one else 'unit')
    products = H.basis_products
    report.add('left_multiplicative', next((
        (a, b) for a in rng for b in rng
        if first_difference(M.left_matrix(products.get((a, b), {})), mat_mul(M.left[a], M.left[b])) is not None
    ), None))
    report.add('right_antimultiplicative', next((
        (a, b) for a in rng for b in rng
        if first_difference(M.right_matrix(products.get((a, b), {})), mat_mul(M.right[b], M.right[a])) is not None
    ), None))
    report.add('actions_commute', next((
        (a, b) for a in rng for b in rng
        if first_difference(mat_mul(M.left[a], M.right[b]), mat_mul(M.right[b], M.left[a])) is not None
    ), None))
    logger.debug("%s: %s", report.title, report.passed)
    return report


def inv_gamma_bimodule(rho: DoubleRepresentation, base: str = 'D') -> CoefficientBimodule:
    """
    The left-invariant forms as a bimodule: α·v = ε(α)v, v·α = [ρ(α)]^t v,
    over the double or over F.
    """
    n = rho.n
    one = identity_matrix(n)
    if base == 'D':
        algebra = rho.D.algebra
        right = tuple(transpose(m) for m in rho.basis_matrices)
    elif base == 'F':
        algebra = rho.D.F
        right = tuple(transpose(m) for m in rho.rhoF)
    else:
        raise CochainError(f"base must be one of {BASES}, got {base!r}")
    left = tuple(mat_scale(one, c) for c in algebra.counit)
    return CoefficientBimodule(
        algebra=algebra,
        width=n,
        left=left,
        right=right,
        base=base,
        name=f"invΓ of {rho.name or 'rho'}",
    )


# Cochains

@dataclass(frozen=True)
class Cochain:
    module: CoefficientBimodule
    degree: int
    values: Vector = field(default_factory=dict)

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, base={self.module.base}, nnz={len(self.values)})"

    def __add__(self, other: 'Cochain') -> 'Cochain':
        _check_compatible(self, other)
        return Cochain(self.module, self.degree, axpy(dict(self.values), 1, other.values))

    def __sub__(self, other: 'Cochain') -> 'Cochain':
        _check_compatible(self, other)
        return Cochain(self.module, self.degree, vec_sub(self.values, other.values))

    def __neg__(self) -> 'Cochain':
        return self.scaled(Fraction(-1))

    def scaled(self, c: Fraction) -> 'Cochain':
        return Cochain(self.module, self.degree, vec_scale(self.values, c))

    @property
    def is_zero(self) -> bool:
        return not self.values

    def value(self, *alphas: int) -> Tuple[Fraction, ...]:
        """φ(α_1, …, α_k) on basis elements, as a dense vector."""
        if len(alphas) != self.degree:
            raise DimensionMismatch(f"{len(alphas)} arguments for a {self.degree}-cochain")
        return tuple(self.values.get(self.module.encode(alphas, r), Fraction(0)) for r in range(self.module.width))

    def at(self, *args: Vector) -> Tuple[Fraction, ...]:
        """φ on arbitrary elements, by multilinearity."""
        if len(args) != self.degree:
            raise DimensionMismatch(f"{len(args)} arguments for a {self.degree}-cochain")
        w = self.module.width
        out = [Fraction(0)] * w
        for terms in product(*(sorted(x.items()) for x in args)):
            coefficient = Fraction(1)
            for _, c in terms:
                coefficient *= c
            base = self.module.encode(tuple(k for k, _ in terms), 0)
            for r in range(w):
                v = self.values.get(base + r)
                if v:
                    out[r] += coefficient * v
        return tuple(out)


def _check_compatible(a: Cochain, b: Cochain) -> None:
    if a.degree != b.degree or a.module != b.module:
        raise CochainError(f"{a!r} and {b!r} live in different cochain spaces")


def zero_cochain(M: CoefficientBimodule, k: int) -> Cochain:
    return Cochain(M, k, {})


def basis_cochain(M: CoefficientBimodule, k: int, index: int) -> Cochain:
    return Cochain(M, k, basis_vector(index))


def coboundary_vector(M: CoefficientBimodule, k: int, values: Vector) -> Vector:
    """Coordinates of δφ for the k-cochain with the given coordinates."""
    N, w = M.N, M.width
    out: Vector = {}
    last_sign = 1 if k % 2 else -1
    for index, v in values.items():
        alphas, comp = M.decode(index, k)
        for alpha in range(N):
            matrix = M.left[alpha]
            for r in range(w):
                x = matrix[r][comp]
                if x:
                    accumulate(out, M.encode((alpha,) + alphas, r), x * v)
        for i in range(k):
            sign = 1 if i % 2 else -1
            for a, b, m in M.preimages.get(alphas[i], ()):
                accumulate(out, M.encode(alphas[:i] + (a, b) + alphas[i + 1:], comp), sign * m * v)
        for alpha in range(N):
            matrix = M.right[alpha]
            for r in range(w):
                x = matrix[r][comp]
                if x:
                    accumulate(out, M.encode(alphas + (alpha,), r), last_sign * x * v)
    return out


def coboundary(phi: Cochain) -> Cochain:
    """δφ, a cochain of degree k+1."""
    return Cochain(phi.module, phi.degree + 1, coboundary_vector(phi.module, phi.degree, phi.values))


def coboundary_columns(M: CoefficientBimodule, k: int) -> List[Vector]:
    """δ applied to every basis k-cochain."""
    return [coboundary_vector(M, k, basis_vector(j)) for j in range(M.cochain_dim(k))]


def _rows(columns: Sequence[Vector]) -> List[Vector]:
    rows: Dict[int, Vector] = {}
    for j, column in enumerate(columns):
        for i, v in column.items():
            rows.setdefault(i, {})[j] = v
    return [rows[i] for i in sorted(rows)]


def cocycle_basis(M: CoefficientBimodule, k: int, extra_rows: Sequence[Vector] = ()) -> List[Vector]:
    """Basis of Z^k, optionally cut down by further linear conditions."""
    rows = _rows(coboundary_columns(M, k)) + list(extra_rows)
    return [to_sparse(v) for v in nullspace(rows, M.cochain_dim(k))]


@dataclass(frozen=True)
class CohomologyReport:
    """Z^k, B^k and H^k = Z^k / B^k for one bimodule."""
    module: CoefficientBimodule
    degree: int
    cocycles: Tuple[Vector, ...]
    coboundaries: Tuple[Vector, ...]
    report: CheckReport

    @property
    def z_dim(self) -> int:
        return len(self.cocycles)

    @property
    def b_dim(self) -> int:
        return len(self.coboundaries)

    @property
    def h_dim(self) -> int:
        return self.z_dim - self.b_dim

    def cocycle_cochains(self) -> List[Cochain]:
        return [Cochain(self.module, self.degree, v) for v in self.cocycles]

    def as_dict(self) -> Dict[str, object]:
        return {
            'base': self.module.base,
            'degree': self.degree,
            'Z': self.z_dim,
            'B': self.b_dim,
            'H': self.h_dim,
            'checks': self.report.as_dict(),
        }


def cohomology_spaces(M: CoefficientBimodule, k: int) -> CohomologyReport:
    """
    Cocycles, coboundaries and cohomology in degree 0 or 1.

    Raises:
        CochainError: k is not 0 or 1
    """
    if k not in (0, 1):
        raise CochainError(f"cohomology is computed in degrees 0 and 1, not {k}")
    cocycles = cocycle_basis(M, k)
    coboundaries: List[Vector] = []
    if k > 0:
        columns = coboundary_columns(M, k - 1)
        coboundaries = [columns[i] for i in span_basis(columns)]
    report = CheckReport(title=f"H^{k} of {M!r}")
    report.add('coboundaries_are_cocycles', next((
        i for i, b in enumerate(coboundaries) if coboundary_vector(M, k, b)
    ), None))
    report.add('coboundaries_in_cocycles', next((
        i for i, b in enumerate(coboundaries) if not in_span(cocycles, b)
    ), None))
    logger.debug("%s: dim Z = %d, dim B = %d", report.title, len(cocycles), len(coboundaries))
    return CohomologyReport(
        module=M,
        degree=k,
        cocycles=tuple(cocycles),
        coboundaries=tuple(coboundaries),
        report=report,
    )


def coboundary_preimage(phi: Cochain) -> Optional[Cochain]:
    """Some γ with δγ = φ, or None when φ is not a coboundary."""
    M, k = phi.module, phi.degree
    if k == 0:
        return zero_cochain(M, 0) if phi.is_zero else None
    columns = coboundary_columns(M, k - 1)
    m = len(columns)
    augmented = columns + [phi.values]
    for v in nullspace(_rows(augmented), m + 1):
        if v[m]:
            scale = -1 / v[m]
            return Cochain(M, k - 1, to_sparse([scale * x for x in v[:m]]))
    return None


def is_coboundary(phi: Cochain) -> bool:
    return coboundary_preimage(phi) is not None


def constant_cochain(M: CoefficientBimodule, values: Sequence) -> Cochain:
    """The 0-cochain with the given value."""
    if len(values) != M.width:
        raise DimensionMismatch(f"{len(values)} values for a bimodule of width {M.width}")
    return Cochain(M, 0, to_sparse(values))


def cochain_from_values(M: CoefficientBimodule, k: int, table: Dict[Tuple[int, ...], Sequence]) -> Cochain:
    """A k-cochain from (α_1, …, α_k) -> value on basis tuples."""
    values: Vector = {}
    for alphas, value in table.items():
        for r, x in enumerate(value):
            if x:
                values[M.encode(alphas, r)] = Fraction(x)
    return Cochain(M, k, values)
