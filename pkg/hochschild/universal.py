"""
The universal calculus of F seen from the double.

The kernel of the counit is a bimodule over D with

    α·h = ε(α) h,    h·a = h a,    h·X = Ad_{S̃(X)}(h),

and φ̂(aX) = Ad_{S̃(X)}(a) − ε(X)ε(a)1 is a 1-cocycle vanishing on U. The
carrier used below is all of F; the values of φ̂ lie in ker ε.
"""
import logging
from typing import Dict, Optional, Tuple

from core.hopf import HopfAlgebra, big_ad_vector
from core.linalg import as_matrix, identity_matrix, mat_scale, nullspace, rank
from core.reports import CheckReport
from core.tensors import TensorVector, Vector, accumulate, axpy, basis_vector, to_sparse
from double.double import DrinfeldDouble

from .cochains import Cochain, CoefficientBimodule, coboundary, verify_coefficient_bimodule

logger = logging.getLogger(__name__)


def kernel_counit_bimodule(D: DrinfeldDouble) -> CoefficientBimodule:
    F, U = D.F, D.U
    d = F.dim
    one = identity_matrix(d)
    left = tuple(mat_scale(one, c) for c in D.algebra.counit)
    right = []
    for alpha in range(D.dim):
        a, x = D.split(alpha)
        S_x = U.antipode[x]
        columns = [big_ad_vector(F, S_x, F.product(basis_vector(h), basis_vector(a))) for h in range(d)]
        right.append(as_matrix([[columns[h].get(r, 0) for h in range(d)] for r in range(d)]))
    return CoefficientBimodule(
        algebra=D.algebra,
        width=d,
        left=left,
        right=tuple(right),
        base='D',
        name='ker ε',
    )


def universal_cocycle(D: DrinfeldDouble, module: Optional[CoefficientBimodule] = None) -> Cochain:
    """φ̂(e_A e^B) = Ad_{S̃(e^B)}(e_A) − ε(e^B)ε(e_A)1"""
    F, U = D.F, D.U
    module = module or kernel_counit_bimodule(D)
    values: Vector = {}
    for a in range(F.dim):
        for x in range(U.dim):
            image = big_ad_vector(F, U.antipode[x], basis_vector(a))
            axpy(image, -U.counit[x] * F.counit[a], F.unit_vector)
            for r, v in image.items():
                values[module.encode((D.index(a, x),), r)] = v
    return Cochain(module, 1, values)


def verify_universal_cocycle(D: DrinfeldDouble, phi: Optional[Cochain] = None) -> CheckReport:
    F, U = D.F, D.U
    phi = phi or universal_cocycle(D)
    report = CheckReport(title=f"universal cocycle over {D!r}")
    report.extend(verify_coefficient_bimodule(phi.module), prefix='bimodule_')
    report.add('closed', next(iter(coboundary(phi).values), None))
    report.add('vanishes_on_U', next((
        x for x in range(U.dim) if any(phi.at(D.embed_u_vector(basis_vector(x))))
    ), None))
    report.add('restriction_to_F', next((
        a for a in range(F.dim)
        if to_sparse(phi.at(D.embed_f_vector(basis_vector(a)))) != axpy(basis_vector(a), -F.counit[a], F.unit_vector)
    ), None))
    report.add('values_in_kernel', next((
        alpha for alpha in range(D.dim) if F.apply_counit(to_sparse(phi.value(alpha)))
    ), None))
    logger.debug("%s: %s", report.title, report.passed)
    return report


# The map r(a⊗b) = (a⊗1)Δb on F⊗F

def r_map(F: HopfAlgebra, t: TensorVector) -> TensorVector:
    out: TensorVector = {}
    for (a, b), c in t.items():
        for (p, q), v in F.coproduct(basis_vector(b)).items():
            for s, w in F.product(basis_vector(a), basis_vector(p)).items():
                accumulate(out, (s, q), c * v * w)
    return out


def universal_d(F: HopfAlgebra, a: Vector) -> TensorVector:
    """Da = 1⊗a − a⊗1"""
    out: TensorVector = {}
    for k, c in a.items():
        for u, v in F.unit_vector.items():
            accumulate(out, (u, k), c * v)
            accumulate(out, (k, u), -c * v)
    return out


def universal_d_prime(F: HopfAlgebra, a: Vector) -> TensorVector:
    """D'a = Δa − a⊗1"""
    out = dict(F.coproduct(a))
    for k, c in a.items():
        for u, v in F.unit_vector.items():
            accumulate(out, (k, u), -c * v)
    return out


def _flat(t: TensorVector, d: int) -> Vector:
    return {i * d + j: c for (i, j), c in t.items()}


def multiplication_kernel(F: HopfAlgebra) -> Tuple[TensorVector, ...]:
    """Basis of ker(m: F⊗F → F)."""
    d = F.dim
    rows: Dict[int, Vector] = {}
    for (a, b, c), v in F.mult.entries.items():
        rows.setdefault(c, {})[a * d + b] = v
    return tuple(
        {divmod(k, d): c for k, c in to_sparse(v).items()}
        for v in nullspace(list(rows.values()), d * d)
    )


def universal_differential_check(D: DrinfeldDouble) -> CheckReport:
    """
    r identifies the universal calculus ker m with F ⊗ ker ε and carries D
    to D'.
    """
    F = D.F
    d = F.dim
    report = CheckReport(title=f"universal differential of {F!r}")
    report.add('r_of_D', next((
        a for a in range(d) if r_map(F, universal_d(F, basis_vector(a))) != universal_d_prime(F, basis_vector(a))
    ), None))
    report.add('d_one', None if not universal_d(F, F.unit_vector) and not universal_d_prime(F, F.unit_vector) else 'one')
    kernel = multiplication_kernel(F)
    images = [r_map(F, t) for t in kernel]

    def lands_outside(image: TensorVector) -> bool:
        collapsed: Vector = {}
        for (s, q), c in image.items():
            accumulate(collapsed, s, c * F.counit[q])
        return bool(collapsed)

    report.add('r_into_kernel_of_counit', next((i for i, image in enumerate(images) if lands_outside(image)), None))
    injective = rank([_flat(image, d) for image in images], d * d) == len(kernel)
    report.add('r_injective', None if injective else len(kernel), detail=f"dim ker m = {len(kernel)}")
    report.add('D_in_kernel', next((
        a for a in range(d)
        if _mult_flat(F, universal_d(F, basis_vector(a)))
    ), None))
    logger.debug("%s: %s", report.title, report.passed)
    return report


def _mult_flat(F: HopfAlgebra, t: TensorVector) -> Vector:
    out: Vector = {}
    for (a, b), c in t.items():
        axpy(out, c, F.product(basis_vector(a), basis_vector(b)))
    return out
