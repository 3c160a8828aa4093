"""
Finite-dimensional Hopf algebras given by structure constants.

Conventions:
    e_A e_B = Σ_C mult[A, B, C] e_C
    Δ(e_A) = Σ_{B,C} comult[A, B, C] e_B ⊗ e_C
    S(e_A) = Σ_B antipode[A][B] e_B
    1 = Σ_A unit[A] e_A,  ε(e_A) = counit[A]

The dual U of F is materialized with the opposite coproduct, which is how it
sits inside the double. Formulas that need the plain coproduct of U
(⟨ΔX, a⊗b⟩ = ⟨X, ab⟩) go through plain_coproduct / plain_antipode.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .conf import get_setting
from .exceptions import (
    AxiomViolation,
    DimensionMismatch,
    FieldError,
    ParentMismatch,
    SizeGuardError,
)
from .linalg import inverse
from .reports import CheckReport
from .scalars import QQ, ScalarLike
from .tensors import (
    SparseTensor3,
    TensorVector,
    Vector,
    accumulate,
    axpy,
    basis_vector,
    flip,
    to_dense,
    to_sparse,
    vec_scale,
    vec_sub,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HopfAlgebra:
    """
    A Hopf algebra by structure constants.

    Structural equality ignores labels, name and the dual_of back-reference.
    The axiom report is computed on first access and cached.
    """
    dim: int
    mult: SparseTensor3
    comult: SparseTensor3
    counit: Tuple[Fraction, ...]
    antipode: Tuple[Vector, ...]
    unit: Tuple[Fraction, ...]
    basis_labels: Tuple[str, ...] = field(default=(), compare=False)
    name: str = field(default='', compare=False)
    dual_of: Optional['HopfAlgebra'] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        d = self.dim
        if d <= 0:
            raise DimensionMismatch(f"dimension must be positive, got {d}")
        if self.mult.dims != (d, d, d):
            raise DimensionMismatch(f"mult has dims {self.mult.dims}, expected {(d, d, d)}")
        if self.comult.dims != (d, d, d):
            raise DimensionMismatch(f"comult has dims {self.comult.dims}, expected {(d, d, d)}")
        for attr in ('counit', 'unit', 'antipode'):
            if len(getattr(self, attr)) != d:
                raise DimensionMismatch(f"{attr} has length {len(getattr(self, attr))}, expected {d}")
        for row, images in enumerate(self.antipode):
            if any(not 0 <= b < d for b in images):
                raise DimensionMismatch(f"antipode row {row} has an index outside 0..{d - 1}", row)
        if not self.basis_labels:
            object.__setattr__(self, 'basis_labels', tuple(f"e{i}" for i in range(d)))
        elif len(self.basis_labels) != d:
            raise DimensionMismatch(f"{len(self.basis_labels)} basis labels for dimension {d}")

    def __repr__(self) -> str:
        return f"HopfAlgebra({self.name or 'unnamed'}, dim={self.dim})"

    # Elements

    def element(self, coords: Union[Vector, Sequence[ScalarLike]]) -> 'AlgebraElement':
        if isinstance(coords, dict):
            if any(not 0 <= k < self.dim for k in coords):
                raise DimensionMismatch(f"coordinate index outside 0..{self.dim - 1}")
            vector = {k: QQ.coerce(v) for k, v in coords.items() if v}
        else:
            if len(coords) != self.dim:
                raise DimensionMismatch(f"{len(coords)} coordinates for dimension {self.dim}")
            vector = to_sparse(coords)
        return AlgebraElement(self, vector)

    def basis(self, index: int) -> 'AlgebraElement':
        return self.element(basis_vector(index))

    @property
    def one(self) -> 'AlgebraElement':
        return self.element(to_sparse(self.unit))

    @cached_property
    def unit_vector(self) -> Vector:
        return to_sparse(self.unit)

    # Structure maps on coordinate vectors

    def product(self, x: Vector, y: Vector) -> Vector:
        return self.mult.contract_first_two(x, y)

    def coproduct(self, x: Vector) -> TensorVector:
        return self.comult.contract_first(x)

    def coproduct_twice(self, x: Vector) -> Dict[Tuple[int, int, int], Fraction]:
        """(Δ⊗id)Δ(x)"""
        out: Dict[Tuple[int, int, int], Fraction] = {}
        for (b, c), v in self.coproduct(x).items():
            for (i, j), w in self.coproduct(basis_vector(b)).items():
                accumulate(out, (i, j, c), v * w)
        return out

    def apply_counit(self, x: Vector) -> Fraction:
        return sum((self.counit[a] * v for a, v in x.items()), Fraction(0))

    def apply_antipode(self, x: Vector) -> Vector:
        out: Vector = {}
        for a, v in x.items():
            axpy(out, v, self.antipode[a])
        return out

    @cached_property
    def antipode_inverse(self) -> Tuple[Vector, ...]:
        """Rows S^{-1}(e_A); raises FieldError when S is singular."""
        return tuple(inverse(self.antipode, self.dim))

    def apply_antipode_inverse(self, x: Vector) -> Vector:
        rows = self.antipode_inverse
        out: Vector = {}
        for a, v in x.items():
            axpy(out, v, rows[a])
        return out

    @cached_property
    def basis_products(self) -> Dict[Tuple[int, int], Vector]:
        products: Dict[Tuple[int, int], Vector] = {}
        for (a, b), terms in self.mult.by_pair.items():
            products[(a, b)] = {c: v for c, v in terms}
        return products

    def tensor_multiply(self, s: TensorVector, t: TensorVector) -> TensorVector:
        """Product in H⊗...⊗H, leg by leg: (a⊗b)(c⊗d) = ac⊗bd."""
        products = self.basis_products
        out: TensorVector = {}
        for left_key, u in s.items():
            for right_key, v in t.items():
                partial = {(): u * v}
                for i, k in zip(left_key, right_key):
                    leg = products.get((i, k))
                    if not leg:
                        partial = {}
                        break
                    partial = {key + (p,): c * x for key, c in partial.items() for p, x in leg.items()}
                for key, c in partial.items():
                    accumulate(out, key, c)
        return out

    @cached_property
    def is_commutative(self) -> bool:
        return all(self.mult.get(a, b, c) == self.mult.get(b, a, c) for (a, b, c) in self.mult.entries)

    @cached_property
    def is_cocommutative(self) -> bool:
        return all(self.comult.get(a, b, c) == self.comult.get(a, c, b) for (a, b, c) in self.comult.entries)

    # Axioms

    @cached_property
    def axioms(self) -> CheckReport:
        return verify_hopf_axioms(self)

    def require_axioms(self) -> 'HopfAlgebra':
        report = self.axioms
        if not report.passed:
            failure = report.first_failure()
            raise AxiomViolation(f"{self}: axiom '{failure.name}' fails at {failure.witness}", report)
        return self


@dataclass(frozen=True)
class AlgebraElement:
    """An element of a HopfAlgebra, stored as sparse coordinates."""
    parent: HopfAlgebra
    coords: Vector

    def _check(self, other: 'AlgebraElement') -> None:
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected an AlgebraElement, got {type(other).__name__}")
        if not same_algebra(self.parent, other.parent):
            raise ParentMismatch(f"elements of {self.parent} and {other.parent} cannot be combined")

    def __add__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        self._check(other)
        return AlgebraElement(self.parent, axpy(dict(self.coords), 1, other.coords))

    def __sub__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        self._check(other)
        return AlgebraElement(self.parent, vec_sub(self.coords, other.coords))

    def __neg__(self) -> 'AlgebraElement':
        return AlgebraElement(self.parent, vec_scale(self.coords, Fraction(-1)))

    def __mul__(self, other) -> 'AlgebraElement':
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.parent, self.parent.product(self.coords, other.coords))
        return AlgebraElement(self.parent, vec_scale(self.coords, QQ.coerce(other)))

    def __rmul__(self, scalar) -> 'AlgebraElement':
        return AlgebraElement(self.parent, vec_scale(self.coords, QQ.coerce(scalar)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return same_algebra(self.parent, other.parent) and self.coords == other.coords

    def __repr__(self) -> str:
        if not self.coords:
            return '0'
        labels = self.parent.basis_labels
        return ' + '.join(f"{QQ.format(c)}*{labels[i]}" for i, c in sorted(self.coords.items()))

    @property
    def dense(self) -> List[Fraction]:
        return to_dense(self.coords, self.parent.dim)

    def counit(self) -> Fraction:
        return self.parent.apply_counit(self.coords)

    def antipode(self) -> 'AlgebraElement':
        return AlgebraElement(self.parent, self.parent.apply_antipode(self.coords))

    def coproduct(self) -> TensorVector:
        return self.parent.coproduct(self.coords)


def same_algebra(a: HopfAlgebra, b: HopfAlgebra) -> bool:
    return a is b or a == b


def make_hopf_algebra(
    dim: int,
    mult: Iterable[Tuple[int, int, int, ScalarLike]],
    comult: Iterable[Tuple[int, int, int, ScalarLike]],
    counit: Sequence[ScalarLike],
    antipode: Sequence[Union[Vector, Sequence[ScalarLike]]],
    unit: Sequence[ScalarLike],
    basis_labels: Optional[Sequence[str]] = None,
    name: str = '',
    verify: bool = True,
) -> HopfAlgebra:
    """
    Build a HopfAlgebra from plain Python data.

    Args:
        dim: Dimension
        mult: (A, B, C, value) rows of m_AB^C
        comult: (A, B, C, value) rows of Δ_A^{BC}
        counit: ε(e_A) for each A
        antipode: S(e_A) per row, dense or sparse
        unit: coordinates of 1
        basis_labels: Optional labels
        name: Display name
        verify: Run the axiom checker now and raise on failure

    Returns:
        HopfAlgebra (verified unless verify is False)
    """
    rows = []
    for row in antipode:
        if isinstance(row, dict):
            rows.append({int(k): QQ.coerce(v) for k, v in row.items() if v})
        else:
            if len(row) != dim:
                raise DimensionMismatch(f"antipode row of length {len(row)} for dimension {dim}")
            rows.append(to_sparse(row))
    algebra = HopfAlgebra(
        dim=dim,
        mult=SparseTensor3.from_items((dim, dim, dim), mult),
        comult=SparseTensor3.from_items((dim, dim, dim), comult),
        counit=tuple(QQ.coerce(v) for v in counit),
        antipode=tuple(rows),
        unit=tuple(QQ.coerce(v) for v in unit),
        basis_labels=tuple(basis_labels or ()),
        name=name,
    )
    if verify:
        algebra.require_axioms()
    return algebra


def trivial_hopf() -> HopfAlgebra:
    """The 1-dimensional Hopf algebra (the ground field)."""
    return make_hopf_algebra(1, [(0, 0, 0, 1)], [(0, 0, 0, 1)], [1], [[1]], [1], ['1'], name='k')


def check_size_guard(dim: int, max_dim: Optional[int] = None, what: str = 'dim(F)') -> None:
    """Raise SizeGuardError when dim exceeds the configured bound."""
    bound = get_setting('HOPFDOUBLE_MAX_DIM') if max_dim is None else max_dim
    if dim > bound:
        raise SizeGuardError(f"{what} = {dim} exceeds the size guard {bound}", dim)


def verify_hopf_axioms(H: HopfAlgebra) -> CheckReport:
    """
    Check every Hopf algebra axiom exactly over all basis indices.

    Each entry of the report carries the first failing index tuple as its
    witness.
    """
    d = H.dim
    report = CheckReport(title=f"hopf axioms of {H.name or 'algebra'} (dim {d})")
    e = [basis_vector(i) for i in range(d)]
    products = {(a, b): H.product(e[a], e[b]) for a in range(d) for b in range(d)}

    def mul(x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for a, u in x.items():
            for b, v in y.items():
                axpy(out, u * v, products[(a, b)])
        return out

    report.add('associativity', _first(
        (a, b, c) for a in range(d) for b in range(d) for c in range(d)
        if mul(products[(a, b)], e[c]) != mul(e[a], products[(b, c)])
    ))

    one = H.unit_vector
    report.add('unit', _first(
        a for a in range(d) if mul(one, e[a]) != e[a] or mul(e[a], one) != e[a]
    ))

    coproducts = [H.coproduct(e[a]) for a in range(d)]

    def coassoc_failure(a: int) -> bool:
        left: Dict[Tuple[int, int, int], Fraction] = {}
        right: Dict[Tuple[int, int, int], Fraction] = {}
        for (b, c), v in coproducts[a].items():
            for (i, j), w in coproducts[b].items():
                accumulate(left, (i, j, c), v * w)
            for (i, j), w in coproducts[c].items():
                accumulate(right, (b, i, j), v * w)
        return left != right

    report.add('coassociativity', _first(a for a in range(d) if coassoc_failure(a)))

    def counit_failure(a: int) -> bool:
        left: Vector = {}
        right: Vector = {}
        for (b, c), v in coproducts[a].items():
            accumulate(left, c, H.counit[b] * v)
            accumulate(right, b, H.counit[c] * v)
        return left != e[a] or right != e[a]

    report.add('counit', _first(a for a in range(d) if counit_failure(a)))

    def tensor_mul(s: TensorVector, t: TensorVector) -> TensorVector:
        out: TensorVector = {}
        for (i, j), u in s.items():
            for (k, l), v in t.items():
                left = products[(i, k)]
                if not left:
                    continue
                right = products[(j, l)]
                for p, x in left.items():
                    for q, y in right.items():
                        accumulate(out, (p, q), u * v * x * y)
        return out

    def coproduct_of(x: Vector) -> TensorVector:
        out: TensorVector = {}
        for a, v in x.items():
            axpy(out, v, coproducts[a])
        return out

    report.add('comultiplication_multiplicative', _first(
        (a, b) for a in range(d) for b in range(d)
        if coproduct_of(products[(a, b)]) != tensor_mul(coproducts[a], coproducts[b])
    ))

    one_one = {(i, j): u * v for i, u in one.items() for j, v in one.items()}
    report.add('comultiplication_unit', None if coproduct_of(one) == one_one else 'unit')
    report.add('counit_unit', None if H.apply_counit(one) == 1 else 'unit')
    report.add('counit_multiplicative', _first(
        (a, b) for a in range(d) for b in range(d)
        if H.apply_counit(products[(a, b)]) != H.counit[a] * H.counit[b]
    ))

    def antipode_failure(a: int) -> bool:
        left: Vector = {}
        right: Vector = {}
        for (b, c), v in coproducts[a].items():
            axpy(left, v, mul(H.antipode[b], e[c]))
            axpy(right, v, mul(e[b], H.antipode[c]))
        target = vec_scale(one, H.counit[a])
        return left != target or right != target

    report.add('antipode', _first(a for a in range(d) if antipode_failure(a)))

    try:
        H.antipode_inverse
        report.add('antipode_invertible')
    except FieldError:
        report.add('antipode_invertible', 'singular')

    logger.debug("%s: %s", report.title, 'pass' if report.passed else report.first_failure().name)
    return report


def _first(candidates):
    return next(iter(candidates), None)


# Duality

def dual_hopf(F: HopfAlgebra) -> HopfAlgebra:
    """
    The dual U = F* with the opposite coproduct.

        e^A e^B = Σ_C Δ_F[C, A, B] e^C
        Δ̃(e^A) = Σ m_F[C, B, A] e^B ⊗ e^C
        S̃(e^A) = Σ_B (S^{-1})[B, A] e^B
        1_U = ε_F,  ε_U = evaluation at 1_F

    Raises:
        AxiomViolation: F fails an axiom (including a singular antipode)
    """
    F.require_axioms()
    s_inv = F.antipode_inverse
    antipode = [dict() for _ in range(F.dim)]
    for b, row in enumerate(s_inv):
        for a, value in row.items():
            antipode[a][b] = value
    labels = tuple(f"{label}*" for label in F.basis_labels)
    U = HopfAlgebra(
        dim=F.dim,
        mult=F.comult.permuted((1, 2, 0)),
        comult=F.mult.permuted((2, 1, 0)),
        counit=F.unit,
        antipode=tuple(antipode),
        unit=F.counit,
        basis_labels=labels,
        name=f"{F.name or 'F'}*",
        dual_of=F,
    )
    logger.debug("dual of %s built", F)
    return U.require_axioms()


def require_dual(U: HopfAlgebra, F: HopfAlgebra) -> None:
    if U.dual_of is None or not same_algebra(U.dual_of, F):
        raise ParentMismatch(f"{U} is not the dual of {F}")


def _split(f: AlgebraElement, a: AlgebraElement) -> Tuple[HopfAlgebra, HopfAlgebra]:
    require_dual(f.parent, a.parent)
    return f.parent, a.parent


def pair(f: AlgebraElement, a: AlgebraElement) -> Fraction:
    """⟨f, a⟩ with ⟨e^A, e_B⟩ = δ^A_B."""
    _split(f, a)
    return sum((v * a.coords[k] for k, v in f.coords.items() if k in a.coords), Fraction(0))


def star_left_vector(F: HopfAlgebra, f: Vector, a: Vector) -> Vector:
    out: Vector = {}
    for k, v in a.items():
        for b, c, w in F.comult.by_first.get(k, ()):
            if c in f:
                accumulate(out, b, v * w * f[c])
    return out


def star_right_vector(F: HopfAlgebra, a: Vector, f: Vector) -> Vector:
    out: Vector = {}
    for k, v in a.items():
        for b, c, w in F.comult.by_first.get(k, ()):
            if b in f:
                accumulate(out, c, v * w * f[b])
    return out


def star_left(f: AlgebraElement, a: AlgebraElement) -> AlgebraElement:
    """f⋆a = Σ a_(1) ⟨f, a_(2)⟩"""
    _, F = _split(f, a)
    return AlgebraElement(F, star_left_vector(F, f.coords, a.coords))


def star_right(a: AlgebraElement, f: AlgebraElement) -> AlgebraElement:
    """a⋆f = Σ ⟨f, a_(1)⟩ a_(2)"""
    _, F = _split(f, a)
    return AlgebraElement(F, star_right_vector(F, a.coords, f.coords))


def plain_coproduct(X: AlgebraElement) -> TensorVector:
    """Coproduct of U with ⟨ΔX, a⊗b⟩ = ⟨X, ab⟩ (the flip of U's own)."""
    return flip(X.parent.coproduct(X.coords))


def plain_antipode(X: AlgebraElement) -> AlgebraElement:
    """⟨S X, a⟩ = ⟨X, S a⟩; equals S̃^{-1} on U."""
    return AlgebraElement(X.parent, X.parent.apply_antipode_inverse(X.coords))


def adjoint_action(X: AlgebraElement, Y: AlgebraElement) -> AlgebraElement:
    """ad_X(Y) = Σ S(X_(1)) Y X_(2), plain coproduct and antipode of U."""
    X._check(Y)
    U = X.parent
    out: Vector = {}
    for (i, j), c in plain_coproduct(X).items():
        left = U.apply_antipode_inverse(basis_vector(i))
        axpy(out, c, U.product(U.product(left, Y.coords), basis_vector(j)))
    return AlgebraElement(U, out)


def ad_star_vector(F: HopfAlgebra, a: Vector) -> TensorVector:
    out: TensorVector = {}
    for (i, j, k), c in F.coproduct_twice(a).items():
        right = F.product(F.antipode[i], basis_vector(k))
        for q, v in right.items():
            accumulate(out, (j, q), c * v)
    return out


def ad_star(a: AlgebraElement) -> TensorVector:
    """ad*(a) = Σ a_(2) ⊗ S(a_(1)) a_(3), as a dict (i, j) -> coefficient of e_i⊗e_j."""
    return ad_star_vector(a.parent, a.coords)


def big_ad_vector(F: HopfAlgebra, X: Vector, a: Vector) -> Vector:
    out: Vector = {}
    for (j, q), c in ad_star_vector(F, a).items():
        if q in X:
            accumulate(out, j, c * X[q])
    return out


def big_ad(X: AlgebraElement, a: AlgebraElement) -> AlgebraElement:
    """Ad_X(a) = (id⊗X) ad*(a); a left action of U on F."""
    _, F = _split(X, a)
    return AlgebraElement(F, big_ad_vector(F, X.coords, a.coords))
