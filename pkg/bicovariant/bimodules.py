"""
Bicovariant bimodules over F given by matrices (f_ij) in U and (R_ij) in F,
their correspondence with representations of the double, the braiding
matrix Λ and the bimodule Γ of forms a ω_i.

    f_ij = Σ_A [ρ_D(e_A)]_ij e^A
    R_ij = Σ_A e_A [ρ_D(S̃^{-1} e^A)]_ji
    ω_i b = Σ_j (f_ij ⋆ b) ω_j,   δ_Γ(a ω_i) = Δ(a)(1 ⊗ ω_i),   δ(ω_i) = Σ_j ω_j ⊗ R_ji
    Λ^{ij}_{kl} = ⟨f_jl, R_ki⟩,   stored at Λ[i*n + j][k*n + l]
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Optional, Tuple

from core.exceptions import BimoduleError, ConsistencyError, DimensionMismatch, ParentMismatch
from core.hopf import AlgebraElement, HopfAlgebra, star_left_vector, star_right_vector
from core.linalg import Matrix, as_matrix, first_difference, identity_matrix, kron, mat_combination, mat_mul
from core.reports import CheckReport
from core.tensors import TensorVector, Vector, accumulate, axpy, basis_vector, clean, outer
from double.double import DrinfeldDouble, canonical_r

from .representations import DoubleRepresentation

logger = logging.getLogger(__name__)

VectorMatrix = Tuple[Tuple[Vector, ...], ...]


@dataclass(frozen=True)
class BicovariantBimodule:
    """
    Attributes:
        F: Base Hopf algebra
        U: Its dual
        n: Number of left-invariant generators ω_i
        f: f[i][j] as coordinates in U
        R: R[i][j] as coordinates in F
        D: The double the bimodule came from, when known
    """
    F: HopfAlgebra
    U: HopfAlgebra
    n: int
    f: VectorMatrix
    R: VectorMatrix
    D: Optional[DrinfeldDouble] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for label, mat in (('f', self.f), ('R', self.R)):
            if len(mat) != self.n or any(len(row) != self.n for row in mat):
                raise DimensionMismatch(f"{label} is not {self.n}x{self.n}")

    def __repr__(self) -> str:
        return f"BicovariantBimodule({self.F.name or 'F'}, n={self.n})"

    def f_element(self, i: int, j: int) -> AlgebraElement:
        return AlgebraElement(self.U, self.f[i][j])

    def R_element(self, i: int, j: int) -> AlgebraElement:
        return AlgebraElement(self.F, self.R[i][j])

    def pair_f(self, i: int, j: int, a: Vector) -> Fraction:
        """⟨f_ij, a⟩"""
        row = self.f[i][j]
        return sum((row[k] * v for k, v in a.items() if k in row), Fraction(0))

    @cached_property
    def report(self) -> CheckReport:
        return verify_bimodule(self)

    def require_valid(self) -> 'BicovariantBimodule':
        if not self.report.passed:
            failure = self.report.first_failure()
            raise BimoduleError(f"{self}: '{failure.name}' fails at {failure.witness}", failure)
        return self


def verify_bimodule(b: BicovariantBimodule) -> CheckReport:
    """
    Check the defining relations of (f_ij, R_ij).

    f_ij is multiplicative in the sense ⟨f_ij, ab⟩ = Σ_k ⟨f_ik, a⟩⟨f_kj, b⟩
    with ⟨f_ij, 1⟩ = δ_ij; ΔR_ij = Σ_k R_ik ⊗ R_kj with ε(R_ij) = δ_ij; and
    the compatibility Σ_x R_xj (a ⋆ f_xk) = Σ_x (f_jx ⋆ a) R_kx for every
    basis element a and all j, k.
    """
    F, n = b.F, b.n
    d = F.dim
    rng = range(n)
    report = CheckReport(title=f"bimodule relations of {b!r}")

    def f_mult_failure():
        for x in range(d):
            for y in range(d):
                prod = F.basis_products.get((x, y), {})
                for i in rng:
                    for j in rng:
                        rhs = sum((b.f[i][k].get(x, 0) * b.f[k][j].get(y, 0) for k in rng), Fraction(0))
                        if b.pair_f(i, j, prod) != rhs:
                            return (i, j, x, y)
        return None

    report.add('f_multiplicative', f_mult_failure())
    report.add('f_counit', next((
        (i, j) for i in rng for j in rng if b.pair_f(i, j, F.unit_vector) != int(i == j)
    ), None))

    def r_comult_failure():
        for i in rng:
            for j in rng:
                rhs: TensorVector = {}
                for k in rng:
                    axpy(rhs, 1, outer(b.R[i][k], b.R[k][j]))
                if F.coproduct(b.R[i][j]) != rhs:
                    return (i, j)
        return None

    report.add('R_comultiplicative', r_comult_failure())
    report.add('R_counit', next((
        (i, j) for i in rng for j in rng if F.apply_counit(b.R[i][j]) != int(i == j)
    ), None))

    def compatibility_failure():
        for a in range(d):
            e_a = basis_vector(a)
            for j in rng:
                for k in rng:
                    lhs: Vector = {}
                    rhs: Vector = {}
                    for x in rng:
                        axpy(lhs, 1, F.product(b.R[x][j], star_right_vector(F, e_a, b.f[x][k])))
                        axpy(rhs, 1, F.product(star_left_vector(F, b.f[j][x], e_a), b.R[k][x]))
                    if lhs != rhs:
                        return (a, j, k)
        return None

    report.add('compatibility', compatibility_failure())
    logger.debug("%s: %s", report.title, report.passed)
    return report


def rep_to_bimodule(rho: DoubleRepresentation) -> BicovariantBimodule:
    """
    Read off (f_ij, R_ij) from a representation of the double.

    Raises:
        RepresentationError: rho is not a representation
        BimoduleError: the resulting data fails a bimodule relation
    """
    rho.require_valid()
    D = rho.D
    F, n, d = D.F, rho.n, D.n
    f = tuple(
        tuple(clean({a: rho.rhoF[a][i][j] for a in range(d)}) for j in range(n))
        for i in range(n)
    )
    R = []
    for i in range(n):
        row = []
        for j in range(n):
            coords: Vector = {}
            for bb in range(d):
                entry = rho.rhoU[bb][j][i]
                if entry:
                    axpy(coords, entry, F.antipode[bb])
            row.append(coords)
        R.append(tuple(row))
    bimodule = BicovariantBimodule(F=F, U=D.U, n=n, f=f, R=tuple(R), D=D)
    return bimodule.require_valid()


def bimodule_to_rep(b: BicovariantBimodule, D: Optional[DrinfeldDouble] = None) -> DoubleRepresentation:
    """
    Rebuild ρ_D from (f_ij, R_ij): ρ_D(e_A)_ij = ⟨f_ij, e_A⟩ and
    ρ_U = Σ_A S^{-1}-transformed transposes of R.

    Raises:
        BimoduleError: b fails a bimodule relation
        RepresentationError: the rebuilt matrices are not multiplicative
    """
    b.require_valid()
    D = D or b.D
    if D is None:
        raise ParentMismatch(f"no double given for {b!r}")
    if D.F != b.F:
        raise ParentMismatch(f"{b!r} is not a bimodule over the first factor of {D!r}")
    n, d = b.n, D.n
    rhoF = tuple(
        as_matrix([[b.f[i][j].get(a, 0) for j in range(n)] for i in range(n)]) for a in range(d)
    )
    # T_A[i][j] = (R_ji)_A, and ρ_U(e^B) = Σ_A (S^{-1})_AB T_A
    transposed = [
        as_matrix([[b.R[j][i].get(a, 0) for j in range(n)] for i in range(n)]) for a in range(d)
    ]
    s_inv = D.F.antipode_inverse
    rhoU = tuple(
        mat_combination(((s_inv[a].get(bb, 0), transposed[a]) for a in range(d)), n)
        for bb in range(d)
    )
    rho = DoubleRepresentation(D=D, n=n, rhoF=rhoF, rhoU=rhoU, name='from bimodule')
    return rho.require_valid()


# Braiding

def lambda_from_pairing(b: BicovariantBimodule) -> Matrix:
    n = b.n
    rows = []
    for i in range(n):
        for j in range(n):
            rows.append([
                b.pair_f(j, l, b.R[k][i]) for k in range(n) for l in range(n)
            ])
    return as_matrix(rows)


def lambda_from_r_inverse(rho: DoubleRepresentation) -> Matrix:
    """(ρ_D ⊗ ρ_D)(σ ∘ R^{-1}) as a Kronecker sum."""
    R = canonical_r(rho.D)
    size = rho.n * rho.n
    return mat_combination(
        ((c, kron(rho.represent(basis_vector(y)), rho.represent(basis_vector(x))))
         for (x, y), c in R.r_inverse.items()),
        size,
    )


def lambda_matrix(b: BicovariantBimodule, rho: Optional[DoubleRepresentation] = None) -> Matrix:
    """
    Λ computed from the pairing ⟨f_jl, R_ki⟩ and, independently, from σ∘R^{-1}
    in the representation.

    Raises:
        ConsistencyError: the two computations differ
    """
    b.require_valid()
    rho = rho or bimodule_to_rep(b)
    paired = lambda_from_pairing(b)
    braided = lambda_from_r_inverse(rho)
    where = first_difference(paired, braided)
    if where is not None:
        raise ConsistencyError(f"Λ from the pairing and from R^-1 differ at {where}", where)
    return paired


def _lambda_13(lam: Matrix, n: int) -> Matrix:
    size = n ** 3
    rows = [[Fraction(0)] * size for _ in range(size)]
    for a in range(n):
        for c in range(n):
            row = lam[a * n + c]
            for a2 in range(n):
                for c2 in range(n):
                    value = row[a2 * n + c2]
                    if value:
                        for mid in range(n):
                            rows[(a * n + mid) * n + c][(a2 * n + mid) * n + c2] = value
    return as_matrix(rows)


def check_qybe(lam: Matrix) -> CheckReport:
    """Λ12 Λ13 Λ23 = Λ23 Λ13 Λ12 in End(V⊗V⊗V), exactly."""
    n = isqrt(len(lam))
    if n * n != len(lam) or any(len(row) != len(lam) for row in lam):
        raise DimensionMismatch(f"Λ of size {len(lam)} is not n²×n²")
    one = identity_matrix(n)
    l12 = kron(lam, one)
    l23 = kron(one, lam)
    l13 = _lambda_13(lam, n)
    left = mat_mul(mat_mul(l12, l13), l23)
    right = mat_mul(mat_mul(l23, l13), l12)
    report = CheckReport(title=f"quantum Yang-Baxter equation (n={n})")
    report.add('qybe', first_difference(left, right))
    return report


# The bimodule Γ

@dataclass(frozen=True)
class GammaElement:
    """Σ_i coords[i] ω_i with coords[i] ∈ F."""
    bimodule: BicovariantBimodule
    coords: Tuple[Vector, ...]

    def __add__(self, other: 'GammaElement') -> 'GammaElement':
        return GammaElement(self.bimodule, tuple(axpy(dict(a), 1, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'GammaElement') -> 'GammaElement':
        return GammaElement(self.bimodule, tuple(axpy(dict(a), -1, b) for a, b in zip(self.coords, other.coords)))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)


def zero_form(b: BicovariantBimodule) -> GammaElement:
    return GammaElement(b, tuple({} for _ in range(b.n)))


def generator(b: BicovariantBimodule, i: int) -> GammaElement:
    """ω_i = 1·ω_i"""
    return GammaElement(b, tuple(dict(b.F.unit_vector) if k == i else {} for k in range(b.n)))


def right_multiply(x: GammaElement, a: Vector) -> GammaElement:
    """x·a, using ω_i a = Σ_j (f_ij ⋆ a) ω_j."""
    b = x.bimodule
    F = b.F
    coords = [dict() for _ in range(b.n)]
    for i, xi in enumerate(x.coords):
        if not xi:
            continue
        for j in range(b.n):
            axpy(coords[j], 1, F.product(xi, star_left_vector(F, b.f[i][j], a)))
    return GammaElement(b, tuple(coords))


def left_multiply(a: Vector, x: GammaElement) -> GammaElement:
    F = x.bimodule.F
    return GammaElement(x.bimodule, tuple(F.product(a, xi) for xi in x.coords))


def module_right_action(i: int, b: AlgebraElement, bim: BicovariantBimodule) -> GammaElement:
    """ω_i b = Σ_j (f_ij ⋆ b) ω_j"""
    if b.parent != bim.F:
        raise ParentMismatch(f"{b.parent} is not the base algebra of {bim!r}")
    return GammaElement(bim, tuple(star_left_vector(bim.F, bim.f[i][j], b.coords) for j in range(bim.n)))


def left_coaction(x: GammaElement) -> TensorVector:
    """δ_Γ(Σ a_i ω_i) = Σ a_i(1) ⊗ a_i(2) ω_i, keyed (p, q, i) for e_p ⊗ e_q ω_i."""
    out: TensorVector = {}
    for i, xi in enumerate(x.coords):
        for (p, q), c in x.bimodule.F.coproduct(xi).items():
            accumulate(out, (p, q, i), c)
    return out


def right_coaction(x: GammaElement) -> TensorVector:
    """δ(Σ a_i ω_i) = Σ a_i(1) ω_j ⊗ a_i(2) R_ji, keyed (q, j, p) for e_q ω_j ⊗ e_p."""
    b = x.bimodule
    F = b.F
    out: TensorVector = {}
    for i, xi in enumerate(x.coords):
        for (q, s), c in F.coproduct(xi).items():
            for j in range(b.n):
                for p, v in F.product(basis_vector(s), b.R[j][i]).items():
                    accumulate(out, (q, j, p), c * v)
    return out


def coactions(x: GammaElement, side: str) -> TensorVector:
    """
    Left or right coaction of a form.

    Args:
        x: Element of Γ
        side: 'left' (F⊗Γ, keys (p, q, i)) or 'right' (Γ⊗F, keys (q, j, p))
    """
    if side == 'left':
        return left_coaction(x)
    if side == 'right':
        return right_coaction(x)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def tensor_right_action(rho: DoubleRepresentation, b: BicovariantBimodule, i: int, a: Vector) -> GammaElement:
    """ω_i·a computed in F ⊗ invΓ: Σ a_(1) ⊗ [ρ_F(a_(2))]^t e_i."""
    coords = [dict() for _ in range(b.n)]
    for (p, q), c in b.F.coproduct(a).items():
        for j in range(b.n):
            entry = rho.rhoF[q][i][j]
            if entry:
                accumulate(coords[j], p, c * entry)
    return GammaElement(b, tuple(coords))


def verify_covariance(b: BicovariantBimodule, rho: Optional[DoubleRepresentation] = None) -> CheckReport:
    """
    Check Γ as a bicovariant bimodule on basis elements: the right action is
    associative, both coactions are bimodule maps, and they commute. With a
    representation, also compare ω_i·a with its computation in F ⊗ invΓ.
    """
    F = b.F
    d, n = F.dim, b.n
    report = CheckReport(title=f"covariance of Γ over {b!r}")
    e = [basis_vector(k) for k in range(d)]
    omega = [generator(b, i) for i in range(n)]

    report.add('right_action_associative', next((
        (i, x, y) for i in range(n) for x in range(d) for y in range(d)
        if right_multiply(right_multiply(omega[i], e[x]), e[y])
        != right_multiply(omega[i], F.basis_products.get((x, y), {}))
    ), None))

    def right_map_failure():
        for i in range(n):
            for y in range(d):
                lhs = right_coaction(right_multiply(omega[i], e[y]))
                rhs: TensorVector = {}
                for (s, t), c in F.coproduct(e[y]).items():
                    for j in range(n):
                        moved = right_multiply(omega[j], e[s])
                        tail = F.product(b.R[j][i], e[t])
                        for k, coeff in enumerate(moved.coords):
                            for q, u in coeff.items():
                                for p, v in tail.items():
                                    accumulate(rhs, (q, k, p), c * u * v)
                if lhs != rhs:
                    return (i, y)
        return None

    report.add('right_coaction_bimodule_map', right_map_failure())

    def left_map_failure():
        for i in range(n):
            for y in range(d):
                lhs = left_coaction(right_multiply(omega[i], e[y]))
                rhs: TensorVector = {}
                for (s, t), c in F.coproduct(e[y]).items():
                    moved = right_multiply(omega[i], e[t])
                    for j, coeff in enumerate(moved.coords):
                        for q, u in coeff.items():
                            accumulate(rhs, (s, q, j), c * u)
                if lhs != rhs:
                    return (i, y)
        return None

    report.add('left_coaction_bimodule_map', left_map_failure())

    def left_module_failure():
        for x in range(d):
            delta = F.coproduct(e[x])
            for i in range(n):
                for y in range(d):
                    form = right_multiply(omega[i], e[y])
                    lhs = left_coaction(left_multiply(e[x], form))
                    rhs: TensorVector = {}
                    for (p, q, j), c in left_coaction(form).items():
                        for (s, t), v in delta.items():
                            for p2, u in F.product(e[s], e[p]).items():
                                for q2, w in F.product(e[t], e[q]).items():
                                    accumulate(rhs, (p2, q2, j), c * v * u * w)
                    if lhs != rhs:
                        return (x, i, y)
        return None

    report.add('left_coaction_module_map', left_module_failure())

    def bicovariance_failure():
        for x in range(d):
            for i in range(n):
                form = left_multiply(e[x], omega[i])
                lhs: TensorVector = {}
                for (p, q, j), c in left_coaction(form).items():
                    single = GammaElement(b, tuple(e[q] if k == j else {} for k in range(n)))
                    for (q2, k, r), v in right_coaction(single).items():
                        accumulate(lhs, (p, q2, k, r), c * v)
                rhs: TensorVector = {}
                for (q, j, r), c in right_coaction(form).items():
                    single = GammaElement(b, tuple(e[q] if k == j else {} for k in range(n)))
                    for (p, q2, k), v in left_coaction(single).items():
                        accumulate(rhs, (p, q2, k, r), c * v)
                if lhs != rhs:
                    return (x, i)
        return None

    report.add('bicovariance', bicovariance_failure())

    if rho is not None:
        report.add('tensor_right_action', next((
            (i, x) for i in range(n) for x in range(d)
            if tensor_right_action(rho, b, i, e[x]) != right_multiply(omega[i], e[x])
        ), None))
    logger.debug("%s: %s", report.title, report.passed)
    return report
