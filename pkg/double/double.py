"""
The Drinfeld double D = F ⊗ U of a finite-dimensional Hopf algebra F.

The basis of D is the ordered product e_A e^B, stored at index A·dim + B.
Products e^P e_Q are rewritten in that basis with the straightening rule

    X a = Σ a_(2) X_(2) ⟨X_(1), a_(3)⟩ ⟨X_(3), S^{-1} a_(1)⟩

which, evaluated on basis elements, reads

    e^P e_Q = Σ_{(e_Q)} e_j ⊗ Y,   Y_D = [e_k e_D S^{-1}(e_i)]_P
    where Δ²(e_Q) = Σ e_i ⊗ e_j ⊗ e_k.

U is the dual with the opposite coproduct, so the coproduct of D is the
tensor product coproduct Δ̃(e_A e^B) = Δ_F(e_A) Δ_U(e^B).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Optional, Tuple

from core.exceptions import ConsistencyError, DimensionMismatch
from core.hopf import (
    AlgebraElement,
    HopfAlgebra,
    check_size_guard,
    dual_hopf,
    require_dual,
)
from core.reports import CheckReport
from core.tensors import (
    SparseTensor3,
    TensorVector,
    Vector,
    accumulate,
    axpy,
    basis_vector,
    flip,
    outer,
)

logger = logging.getLogger(__name__)

StraighteningTable = Dict[Tuple[int, int], Vector]

# Elements of the double are AlgebraElements whose parent is DrinfeldDouble.algebra.
DoubleElement = AlgebraElement


@dataclass(frozen=True)
class DrinfeldDouble:
    """
    The double of F together with its two factors.

    Attributes:
        F: The Hopf algebra
        U: dual_hopf(F)
        algebra: D as a dim(F)²-dimensional HopfAlgebra on the basis e_A e^B
        straightening: (P, Q) -> coordinates of e^P e_Q in D
    """
    F: HopfAlgebra
    U: HopfAlgebra
    algebra: HopfAlgebra
    straightening: StraighteningTable = field(compare=False, repr=False)

    def __repr__(self) -> str:
        return f"DrinfeldDouble({self.F.name or 'F'}, dim={self.dim})"

    @property
    def n(self) -> int:
        return self.F.dim

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def mult(self) -> SparseTensor3:
        return self.algebra.mult

    @property
    def comult(self) -> SparseTensor3:
        return self.algebra.comult

    @property
    def counit(self) -> Tuple[Fraction, ...]:
        return self.algebra.counit

    @property
    def antipode(self) -> Tuple[Vector, ...]:
        return self.algebra.antipode

    def index(self, a: int, b: int) -> int:
        return a * self.n + b

    def split(self, k: int) -> Tuple[int, int]:
        return divmod(k, self.n)

    def element(self, coords) -> DoubleElement:
        return self.algebra.element(coords)

    def embed_f_vector(self, a: Vector) -> Vector:
        """a ↦ a ⊗ 1_U"""
        out: Vector = {}
        for k, v in a.items():
            for b, w in self.U.unit_vector.items():
                accumulate(out, self.index(k, b), v * w)
        return out

    def embed_u_vector(self, x: Vector) -> Vector:
        """X ↦ 1_F ⊗ X"""
        out: Vector = {}
        for a, w in self.F.unit_vector.items():
            for k, v in x.items():
                accumulate(out, self.index(a, k), v * w)
        return out

    def embed_f(self, a: AlgebraElement) -> DoubleElement:
        if a.parent != self.F:
            raise DimensionMismatch(f"{a.parent} is not the first factor of {self}")
        return AlgebraElement(self.algebra, self.embed_f_vector(a.coords))

    def embed_u(self, x: AlgebraElement) -> DoubleElement:
        if x.parent != self.U:
            raise DimensionMismatch(f"{x.parent} is not the second factor of {self}")
        return AlgebraElement(self.algebra, self.embed_u_vector(x.coords))

    def ordered(self, a: Vector, x: Vector) -> Vector:
        """Coordinates of the ordered product a X (a ∈ F, X ∈ U)."""
        return {self.index(i, k): u * v for i, u in a.items() for k, v in x.items()}

    def straighten_vector(self, x: Vector, a: Vector) -> Vector:
        """Coordinates of X a in the ordered basis."""
        out: Vector = {}
        for p, u in x.items():
            for q, v in a.items():
                axpy(out, u * v, self.straightening[(p, q)])
        return out

    def straighten(self, x: AlgebraElement, a: AlgebraElement) -> DoubleElement:
        require_dual(x.parent, a.parent)
        return AlgebraElement(self.algebra, self.straighten_vector(x.coords, a.coords))

    @cached_property
    def embeddings(self) -> CheckReport:
        return verify_embeddings(self)


def straighten(D: DrinfeldDouble, x: AlgebraElement, a: AlgebraElement) -> DoubleElement:
    """
    Rewrite the product X·a in the ordered basis F⊗U.

    Args:
        D: The double hosting the result
        x: Element of U = D.U
        a: Element of F = D.F

    Returns:
        DoubleElement equal to X a

    Raises:
        ParentMismatch: x is not in the dual of a's algebra
    """
    return D.straighten(x, a)


def straightening_table(F: HopfAlgebra) -> StraighteningTable:
    """e^P e_Q for every basis pair, straight from the rule in the module docstring."""
    n = F.dim
    s_inv = F.antipode_inverse
    table: StraighteningTable = {(p, q): {} for p in range(n) for q in range(n)}
    for q in range(n):
        for (i, j, k), c in F.coproduct_twice(basis_vector(q)).items():
            for d in range(n):
                y = F.product(F.product(basis_vector(k), basis_vector(d)), s_inv[i])
                for p, v in y.items():
                    accumulate(table[(p, q)], j * n + d, c * v)
    return table


def _double_mult(F: HopfAlgebra, U: HopfAlgebra, table: StraighteningTable) -> SparseTensor3:
    """(e_A e^B)(e_C e^E) = e_A · (e^B e_C) · e^E"""
    n = F.dim
    f_products = F.basis_products
    u_products = U.basis_products
    entries: Dict[Tuple[int, int, int], Fraction] = {}
    for b in range(n):
        for c in range(n):
            middle = [(divmod(jd, n), w) for jd, w in table[(b, c)].items()]
            if not middle:
                continue
            for a in range(n):
                for e in range(n):
                    key = (a * n + b, c * n + e)
                    for (j, d), w in middle:
                        left = f_products.get((a, j))
                        right = u_products.get((d, e))
                        if not left or not right:
                            continue
                        for p, x in left.items():
                            for q, y in right.items():
                                accumulate(entries, key + (p * n + q,), w * x * y)
    return SparseTensor3((n * n,) * 3, entries)


def _double_comult(F: HopfAlgebra, U: HopfAlgebra) -> SparseTensor3:
    n = F.dim
    entries: Dict[Tuple[int, int, int], Fraction] = {}
    for a, f_terms in F.comult.by_first.items():
        for b, u_terms in U.comult.by_first.items():
            for i, j, v in f_terms:
                for k, l, w in u_terms:
                    accumulate(entries, (a * n + b, i * n + k, j * n + l), v * w)
    return SparseTensor3((n * n,) * 3, entries)


def build_double(F: HopfAlgebra, max_dim: Optional[int] = None, verify: bool = False) -> DrinfeldDouble:
    """
    Construct the Drinfeld double of F.

    The embedding checks always run. The full axiom check of D is cubic in
    dim(D) and runs only when verify is set; D.algebra.axioms computes it on
    demand otherwise.

    Args:
        F: A Hopf algebra passing the axiom checker
        max_dim: Size guard override for dim(F)
        verify: Also run the axiom checker on D and raise on failure

    Returns:
        DrinfeldDouble whose embeddings passed

    Raises:
        AxiomViolation: verify is set and the constructed double fails an axiom
        ConsistencyError: an embedding of F or U into D is not a Hopf map
    """
    check_size_guard(F.dim, max_dim)
    U = dual_hopf(F)
    n = F.dim
    table = straightening_table(F)

    antipode = []
    for a in range(n):
        for b in range(n):
            # S̃(e_A e^B) = S̃(e^B) S(e_A)
            row: Vector = {}
            for p, u in U.antipode[b].items():
                for q, v in F.antipode[a].items():
                    axpy(row, u * v, table[(p, q)])
            antipode.append(row)

    labels = tuple(f"{fa}·{ub}" for fa in F.basis_labels for ub in U.basis_labels)
    algebra = HopfAlgebra(
        dim=n * n,
        mult=_double_mult(F, U, table),
        comult=_double_comult(F, U),
        counit=tuple(F.counit[a] * U.counit[b] for a in range(n) for b in range(n)),
        antipode=tuple(antipode),
        unit=tuple(F.unit[a] * U.unit[b] for a in range(n) for b in range(n)),
        basis_labels=labels,
        name=f"D({F.name or 'F'})",
    )
    logger.debug("double of %s: %d multiplication entries", F, algebra.mult.nnz)
    if verify:
        algebra.require_axioms()
    D = DrinfeldDouble(F=F, U=U, algebra=algebra, straightening=table)
    if not D.embeddings.passed:
        failure = D.embeddings.first_failure()
        raise ConsistencyError(f"{D}: embedding check '{failure.name}' fails at {failure.witness}", failure.witness)
    logger.info("built %r", D)
    return D


def _map_tensor(t: TensorVector, maps: Tuple[Callable[[Vector], Vector], ...]) -> TensorVector:
    out: TensorVector = {}
    for key, c in t.items():
        partial = {(): c}
        for k, f in zip(key, maps):
            image = f(basis_vector(k))
            partial = {pk + (q,): v * w for pk, v in partial.items() for q, w in image.items()}
        for pk, v in partial.items():
            accumulate(out, pk, v)
    return out


def verify_embeddings(D: DrinfeldDouble) -> CheckReport:
    """F ∋ a ↦ a⊗1 and U ∋ X ↦ 1⊗X are unital algebra and coalgebra maps."""
    report = CheckReport(title=f"embeddings into {D}")
    H = D.algebra
    for label, factor, embed in (('F', D.F, D.embed_f_vector), ('U', D.U, D.embed_u_vector)):
        n = factor.dim
        report.add(f'{label}_unit', None if embed(factor.unit_vector) == H.unit_vector else 'unit')
        report.add(f'{label}_multiplicative', next((
            (a, b) for a in range(n) for b in range(n)
            if embed(factor.product(basis_vector(a), basis_vector(b)))
            != H.product(embed(basis_vector(a)), embed(basis_vector(b)))
        ), None))
        report.add(f'{label}_comultiplicative', next((
            a for a in range(n)
            if H.coproduct(embed(basis_vector(a)))
            != _map_tensor(factor.coproduct(basis_vector(a)), (embed, embed))
        ), None))
        report.add(f'{label}_counit', next((
            a for a in range(n)
            if H.apply_counit(embed(basis_vector(a))) != factor.counit[a]
        ), None))
    return report


@dataclass(frozen=True)
class CanonicalElement:
    """R = Σ_A e_A ⊗ e^A and its inverse Σ_A S(e_A) ⊗ e^A, as elements of D⊗D."""
    r: TensorVector
    r_inverse: TensorVector
    summands: int


def canonical_r(D: DrinfeldDouble) -> CanonicalElement:
    n = D.n
    r: TensorVector = {}
    r_inverse: TensorVector = {}
    for a in range(n):
        upper = D.embed_u_vector(basis_vector(a))
        axpy(r, 1, outer(D.embed_f_vector(basis_vector(a)), upper))
        axpy(r_inverse, 1, outer(D.embed_f_vector(D.F.antipode[a]), upper))
    return CanonicalElement(r=r, r_inverse=r_inverse, summands=n)


def _leg_embed(t: TensorVector, positions: Tuple[int, int], unit: Vector) -> TensorVector:
    """Place a D⊗D element on legs `positions` of D⊗D⊗D, 1 on the remaining leg."""
    free = ({0, 1, 2} - set(positions)).pop()
    out: TensorVector = {}
    for (x, y), c in t.items():
        for u, w in unit.items():
            key = [0, 0, 0]
            key[positions[0]], key[positions[1]], key[free] = x, y, u
            accumulate(out, tuple(key), c * w)
    return out


def verify_quasitriangular(D: DrinfeldDouble, R: Optional[CanonicalElement] = None) -> CheckReport:
    """
    Check that D is quasitriangular with the canonical element R.

    Checks R R^{-1} = R^{-1} R = 1⊗1, σ(Δ̃x) R = R Δ̃x for every basis x, and
    the hexagon identities (Δ̃⊗id)R = R13 R23 and (id⊗Δ̃)R = R13 R12.
    """
    H = D.algebra
    R = R or canonical_r(D)
    report = CheckReport(title=f"quasitriangularity of {D}")
    one_one = outer(H.unit_vector, H.unit_vector)
    report.add('r_inverse', None if H.tensor_multiply(R.r, R.r_inverse) == one_one else 'R R^-1')
    report.add('r_inverse_left', None if H.tensor_multiply(R.r_inverse, R.r) == one_one else 'R^-1 R')

    def fails(x: int) -> bool:
        delta = H.coproduct(basis_vector(x))
        return H.tensor_multiply(flip(delta), R.r) != H.tensor_multiply(R.r, delta)

    report.add('quasitriangularity', next((x for x in range(D.dim) if fails(x)), None))

    unit = H.unit_vector
    r13 = _leg_embed(R.r, (0, 2), unit)
    left: TensorVector = {}
    for (x, y), c in R.r.items():
        for (p, q), v in H.coproduct(basis_vector(x)).items():
            accumulate(left, (p, q, y), c * v)
    rhs = H.tensor_multiply(r13, _leg_embed(R.r, (1, 2), unit))
    report.add('hexagon_left', None if left == rhs else '(Δ⊗id)R')

    right: TensorVector = {}
    for (x, y), c in R.r.items():
        for (p, q), v in H.coproduct(basis_vector(y)).items():
            accumulate(right, (x, p, q), c * v)
    rhs = H.tensor_multiply(r13, _leg_embed(R.r, (0, 1), unit))
    report.add('hexagon_right', None if right == rhs else '(id⊗Δ)R')
    logger.debug("%s: %s", report.title, report.passed)
    return report


def structure_constant_relation(D: DrinfeldDouble) -> CheckReport:
    """
    Cross-check the straightening table against the relation

        Σ Δ_C^{AB} m_BD^E e_A e^D = Σ Δ_C^{BA} m_DB^E e^D e_A

    for every pair (C, E). A failure is reported, never raised.
    """
    F = D.F
    n = F.dim
    report = CheckReport(title=f"structure constant relation of {D}")
    witness = None
    for c in range(n):
        for e in range(n):
            lhs: Vector = {}
            rhs: Vector = {}
            for a, b, v in F.comult.by_first.get(c, ()):
                for d in range(n):
                    w = F.mult.get(b, d, e)
                    if w:
                        accumulate(lhs, D.index(a, d), v * w)
                    # second sum, with the roles of the coproduct legs exchanged
                    w = F.mult.get(d, a, e)
                    if w:
                        axpy(rhs, v * w, D.straightening[(d, b)])
            if lhs != rhs:
                witness = (c, e)
                break
        if witness is not None:
            break
    report.add('straightening_relation', witness)
    if witness is not None:
        logger.warning("%s disagrees with the straightening table at %s", report.title, witness)
    return report
