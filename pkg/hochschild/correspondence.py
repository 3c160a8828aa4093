"""
Calculi as 1-cocycles, the U-action on cochains over F and inner
differentials.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from bicovariant.bimodules import (
    BicovariantBimodule,
    GammaElement,
    left_coaction,
    left_multiply,
    rep_to_bimodule,
    right_coaction,
    right_multiply,
)
from bicovariant.representations import DoubleRepresentation
from calculus.calculus import FirstOrderCalculus, make_calculus
from core.exceptions import CochainError, ConsistencyError
from core.hopf import HopfAlgebra, big_ad_vector
from core.linalg import mat_vec, nullspace, transpose
from core.reports import CheckReport
from core.tensors import TensorVector, Vector, accumulate, axpy, basis_vector, flip, to_sparse

from .cochains import Cochain, CoefficientBimodule, cocycle_basis, coboundary, constant_cochain, inv_gamma_bimodule
from .universal import universal_cocycle

logger = logging.getLogger(__name__)


def vanishes_on_u(phi: Cochain, D) -> bool:
    """φ(1_F ⊗ X) = 0 for every basis X of U."""
    return not any(any(phi.at(D.embed_u_vector(basis_vector(x)))) for x in range(D.U.dim))


def _require_double_cocycle(phi: Cochain, D) -> None:
    if phi.module.base != 'D' or phi.degree != 1:
        raise CochainError(f"{phi!r} is not a 1-cochain over the double")
    witness = next(iter(coboundary(phi).values), None)
    if witness is not None:
        raise CochainError(f"{phi!r} is not a cocycle", witness)
    if not vanishes_on_u(phi, D):
        raise CochainError(f"{phi!r} does not vanish on U")


def calculus_to_cocycle(c: FirstOrderCalculus, module: Optional[CoefficientBimodule] = None) -> Cochain:
    """
    φ(e_A e^B) = [ρ(e^B)]^t χ(e_A), a 1-cocycle over D with values in invΓ.

    Raises:
        ConsistencyError: the result is not a cocycle vanishing on U
    """
    rho = c.rep
    D = rho.D
    module = module or inv_gamma_bimodule(rho, 'D')
    values: Vector = {}
    for a in range(D.F.dim):
        chi_a = [x.get(a, Fraction(0)) for x in c.chi]
        if not any(chi_a):
            continue
        for x in range(D.U.dim):
            for r, v in enumerate(mat_vec(transpose(rho.rhoU[x]), chi_a)):
                if v:
                    values[module.encode((D.index(a, x),), r)] = v
    phi = Cochain(module, 1, values)
    try:
        _require_double_cocycle(phi, D)
    except CochainError as exc:
        raise ConsistencyError(f"cocycle of {c!r}: {exc}", exc.witness) from exc
    return phi


def cocycle_to_calculus(phi: Cochain, rho: DoubleRepresentation, bimodule: Optional[BicovariantBimodule] = None) -> FirstOrderCalculus:
    """
    χ_i(a) = φ(a ⊗ 1_U)_i.

    Raises:
        CochainError: φ is not a 1-cocycle over D vanishing on U
        BimoduleError: the recovered functionals are dependent
    """
    D = rho.D
    _require_double_cocycle(phi, D)
    chi: List[Vector] = [{} for _ in range(rho.n)]
    for a in range(D.F.dim):
        for i, v in enumerate(phi.at(D.embed_f_vector(basis_vector(a)))):
            if v:
                chi[i][a] = v
    return make_calculus(rho, chi, bimodule=bimodule, allow_degenerate=True)


# Cochains over F

def restrict_to_f(phi: Cochain, rho: DoubleRepresentation, module: Optional[CoefficientBimodule] = None) -> Cochain:
    """ψ(a) = φ(a ⊗ 1_U)"""
    D = rho.D
    module = module or inv_gamma_bimodule(rho, 'F')
    values: Vector = {}
    for a in range(D.F.dim):
        for r, v in enumerate(phi.at(D.embed_f_vector(basis_vector(a)))):
            if v:
                values[module.encode((a,), r)] = v
    return Cochain(module, 1, values)


def extend_from_f(
    psi: Cochain,
    rho: DoubleRepresentation,
    module: Optional[CoefficientBimodule] = None,
    phi_hat: Optional[Cochain] = None,
) -> Cochain:
    """φ = ψ ∘ φ̂"""
    D = rho.D
    module = module or inv_gamma_bimodule(rho, 'D')
    phi_hat = phi_hat or universal_cocycle(D)
    values: Vector = {}
    for alpha in range(D.dim):
        for r, v in enumerate(psi.at(to_sparse(phi_hat.value(alpha)))):
            if v:
                values[module.encode((alpha,), r)] = v
    return Cochain(module, 1, values)


def plain_coproduct_power(U: HopfAlgebra, x: Vector, legs: int) -> Dict[Tuple[int, ...], Fraction]:
    """X_(1) ⊗ … ⊗ X_(legs) for the coproduct of U as the dual of F."""
    out: Dict[Tuple[int, ...], Fraction] = {(k,): c for k, c in x.items()}
    for _ in range(legs - 1):
        step: Dict[Tuple[int, ...], Fraction] = {}
        for key, c in out.items():
            for (i, j), v in flip(U.coproduct(basis_vector(key[-1]))).items():
                accumulate(step, key[:-1] + (i, j), c * v)
        out = step
    return out


def bullet_action(psi: Cochain, x: Vector, rho: DoubleRepresentation) -> Cochain:
    """
    (ψ•X)(a_1, …, a_k) = Σ [ρ(X_(k+1))]^t ψ(Ad_{X_(1)} a_1, …, Ad_{X_(k)} a_k),
    a right action of U on cochains over F.
    """
    M = psi.module
    if M.base != 'F':
        raise CochainError(f"{psi!r} is not a cochain over F")
    F, U = rho.D.F, rho.D.U
    k = psi.degree
    legs = plain_coproduct_power(U, x, k + 1)
    adjoint: Dict[Tuple[int, int], Vector] = {}

    def ad(q: int, a: int) -> Vector:
        if (q, a) not in adjoint:
            adjoint[(q, a)] = big_ad_vector(F, basis_vector(q), basis_vector(a))
        return adjoint[(q, a)]

    values: Vector = {}
    for alphas in product(range(F.dim), repeat=k):
        total = [Fraction(0)] * M.width
        for key, c in legs.items():
            inner = psi.at(*(ad(q, a) for q, a in zip(key[:-1], alphas)))
            if not any(inner):
                continue
            for r, v in enumerate(mat_vec(transpose(rho.rhoU[key[-1]]), inner)):
                total[r] += c * v
        for r, v in enumerate(total):
            if v:
                values[M.encode(alphas, r)] = v
    return Cochain(M, k, values)


def invariant_subspace(cochains: Sequence[Cochain], rho: DoubleRepresentation) -> List[Cochain]:
    """Basis of the combinations ψ of the given cochains with ψ•X = ε(X)ψ."""
    if not cochains:
        return []
    U = rho.D.U
    rows: Dict[Tuple[int, int], Vector] = {}
    for x in range(U.dim):
        for j, psi in enumerate(cochains):
            moved = axpy(dict(bullet_action(psi, basis_vector(x), rho).values), -U.counit[x], psi.values)
            for index, v in moved.items():
                rows.setdefault((x, index), {})[j] = v
    first = cochains[0]
    out = []
    for combination in nullspace([rows[key] for key in sorted(rows)], len(cochains)):
        values: Vector = {}
        for j, c in enumerate(combination):
            axpy(values, c, cochains[j].values)
        out.append(Cochain(first.module, first.degree, values))
    return out


def is_invariant(psi: Cochain, rho: DoubleRepresentation) -> bool:
    U = rho.D.U
    return all(
        bullet_action(psi, basis_vector(x), rho).values == axpy({}, U.counit[x], psi.values)
        for x in range(U.dim)
    )


@dataclass(frozen=True)
class CocycleCorrespondence:
    """
    1-cocycles over D vanishing on U against U-invariant 1-cocycles over F.

    Attributes:
        double_side: Basis of {φ ∈ Z^1(D) : φ|_U = 0}
        f_side: Basis of the invariant part of Z^1(F)
    """
    double_side: Tuple[Cochain, ...]
    f_side: Tuple[Cochain, ...]
    report: CheckReport = field(compare=False)

    @property
    def dim(self) -> int:
        return len(self.f_side)

    def as_dict(self) -> Dict[str, object]:
        return {
            'double_side': len(self.double_side),
            'f_side': len(self.f_side),
            'checks': self.report.as_dict(),
        }


def cocycles_vanishing_on_u(module: CoefficientBimodule, rho: DoubleRepresentation) -> List[Cochain]:
    D = rho.D
    extra = []
    for x in range(D.U.dim):
        for r in range(module.width):
            row: Vector = {}
            for a, c in D.F.unit_vector.items():
                accumulate(row, module.encode((D.index(a, x),), r), c)
            extra.append(row)
    return [Cochain(module, 1, v) for v in cocycle_basis(module, 1, extra)]


def invariant_cocycle_correspondence(rho: DoubleRepresentation) -> CocycleCorrespondence:
    """
    Both sides of the correspondence and the checks that restriction to F and
    composition with the universal cocycle are mutually inverse.
    """
    D = rho.D
    module_d = inv_gamma_bimodule(rho, 'D')
    module_f = inv_gamma_bimodule(rho, 'F')
    phi_hat = universal_cocycle(D)
    double_side = cocycles_vanishing_on_u(module_d, rho)
    f_cocycles = [Cochain(module_f, 1, v) for v in cocycle_basis(module_f, 1)]
    f_side = invariant_subspace(f_cocycles, rho)

    report = CheckReport(title=f"invariant cocycles of {rho!r}")
    report.add('dimensions_agree', None if len(double_side) == len(f_side) else (len(double_side), len(f_side)))
    restricted = [restrict_to_f(phi, rho, module_f) for phi in double_side]
    report.add('restriction_is_invariant', next((
        i for i, psi in enumerate(restricted) if coboundary(psi).values or not is_invariant(psi, rho)
    ), None))
    report.add('round_trip_double', next((
        i for i, (phi, psi) in enumerate(zip(double_side, restricted))
        if extend_from_f(psi, rho, module_d, phi_hat) != phi
    ), None))
    extended = [extend_from_f(psi, rho, module_d, phi_hat) for psi in f_side]
    report.add('extension_vanishes_on_U', next((
        i for i, phi in enumerate(extended) if coboundary(phi).values or not vanishes_on_u(phi, D)
    ), None))
    report.add('round_trip_F', next((
        i for i, (psi, phi) in enumerate(zip(f_side, extended))
        if restrict_to_f(phi, rho, module_f) != psi
    ), None))
    invariant_constants = invariant_subspace(
        [constant_cochain(module_f, [int(r == s) for r in range(rho.n)]) for s in range(rho.n)], rho
    )
    report.add('coboundaries_of_invariants', next((
        i for i, gamma in enumerate(invariant_constants) if not is_invariant(coboundary(gamma), rho)
    ), None))
    logger.debug("%s: %d = %d", report.title, len(double_side), len(f_side))
    return CocycleCorrespondence(double_side=tuple(double_side), f_side=tuple(f_side), report=report)


# Inner differentials

@dataclass(frozen=True)
class InnerDifferential:
    """
    d a = Σ a_(1) (δγ)(a_(2)) = a·γ − γ·a for a U-invariant 0-cochain γ,
    where (δγ)(a) = ε(a)γ − [ρ(a)]^t γ.
    """
    bimodule: BicovariantBimodule
    rep: DoubleRepresentation = field(repr=False)
    gamma: Tuple[Fraction, ...]

    def delta(self, a: int) -> Tuple[Fraction, ...]:
        F = self.bimodule.F
        moved = mat_vec(transpose(self.rep.rhoF[a]), self.gamma)
        return tuple(F.counit[a] * g - m for g, m in zip(self.gamma, moved))

    def __call__(self, a: Vector) -> GammaElement:
        F = self.bimodule.F
        coords: List[Vector] = [{} for _ in range(self.bimodule.n)]
        for (p, q), c in F.coproduct(a).items():
            for i, v in enumerate(self.delta(q)):
                if v:
                    accumulate(coords[i], p, c * v)
        return GammaElement(self.bimodule, tuple(coords))

    @property
    def form(self) -> GammaElement:
        """γ = Σ γ_i ω_i"""
        unit = self.bimodule.F.unit_vector
        return GammaElement(self.bimodule, tuple({k: g * u for k, u in unit.items()} if g else {} for g in self.gamma))


def inner_differential(
    gamma: Sequence,
    rho: DoubleRepresentation,
    bimodule: Optional[BicovariantBimodule] = None,
) -> InnerDifferential:
    """
    Raises:
        CochainError: [ρ(X)]^t γ ≠ ε(X)γ for some basis X of U
    """
    gamma = tuple(Fraction(g) for g in gamma)
    if len(gamma) != rho.n:
        raise CochainError(f"γ has {len(gamma)} entries, expected {rho.n}")
    U = rho.D.U
    for x in range(U.dim):
        if mat_vec(transpose(rho.rhoU[x]), gamma) != tuple(U.counit[x] * g for g in gamma):
            raise CochainError(f"γ is not invariant under e^{x}", x)
    return InnerDifferential(bimodule=bimodule or rep_to_bimodule(rho), rep=rho, gamma=gamma)


def verify_inner(d: InnerDifferential) -> CheckReport:
    b = d.bimodule
    F = b.F
    form = d.form
    report = CheckReport(title=f"inner differential γ = {list(map(str, d.gamma))}")
    # δ(γ) = γ ⊗ 1 keyed (q, j, p); δ_Γ(γ) = 1 ⊗ γ keyed (p, q, j)
    expected_right: TensorVector = {}
    expected_left: TensorVector = {}
    for j, g in enumerate(d.gamma):
        if g:
            for q, u in F.unit_vector.items():
                for p, v in F.unit_vector.items():
                    accumulate(expected_right, (q, j, p), g * u * v)
                    accumulate(expected_left, (q, p, j), g * u * v)
    report.add('left_invariant', None if left_coaction(form) == expected_left else 'γ')
    report.add('right_invariant', None if right_coaction(form) == expected_right else 'γ')
    report.add('commutator', next((
        a for a in range(F.dim)
        if d(basis_vector(a)) != left_multiply(basis_vector(a), form) - right_multiply(form, basis_vector(a))
    ), None))
    report.add('leibniz', next((
        (x, y) for x in range(F.dim) for y in range(F.dim)
        if d(F.product(basis_vector(x), basis_vector(y)))
        != left_multiply(basis_vector(x), d(basis_vector(y))) + right_multiply(d(basis_vector(x)), basis_vector(y))
    ), None))
    report.add('d_one', None if d(F.unit_vector).is_zero else 'one')
    return report
