"""
Bicovariant first-order differential calculi.

A calculus over the bimodule of a representation ρ of the double is an
n-tuple of functionals χ_i ∈ U with

    ⟨χ_i, ab⟩ = Σ_j ⟨χ_j, a⟩⟨f_ji, b⟩ + ε(a)⟨χ_i, b⟩,    ⟨χ_i, 1⟩ = 0
    ad_X χ_i = Σ_k ⟨X, R_ik⟩ χ_k

and the differential da = Σ_i (χ_i ⋆ a) ω_i. Such tuples are the same thing
as (n+1)-dimensional representations of the double of the block form

    ρ'(e_A) = [[ε(e_A), ⟨χ_i, e_A⟩], [0, ρ(e_A)]]
    ρ'(e^B) = [[ε(e^B), 0], [0, ρ(e^B)]]

In the linear system the unknown ⟨χ_i, e_A⟩ sits in column i·dim(F) + A.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from bicovariant.bimodules import (
    BicovariantBimodule,
    GammaElement,
    check_qybe,
    lambda_matrix,
    left_multiply,
    rep_to_bimodule,
    right_multiply,
)
from bicovariant.representations import DoubleRepresentation, verify_double_rep
from core.conf import get_setting
from core.exceptions import BimoduleError, ConsistencyError, DimensionMismatch, ParentMismatch, RepresentationError
from core.hopf import AlgebraElement, HopfAlgebra, ad_star_vector, adjoint_action, star_left_vector, star_right_vector
from core.linalg import Matrix, as_matrix, first_difference, in_span, nullspace, rank
from core.reports import CheckReport
from core.tensors import Vector, accumulate, axpy, basis_vector, clean, to_sparse, vec_scale

logger = logging.getLogger(__name__)

ChiTuple = Tuple[Vector, ...]

FOUND = 'found'
NONE = 'none'
EXHAUSTED = 'exhausted'

PAIR_COEFFICIENTS = (-2, -1, 1, 2)


def flatten_chi(chi: Sequence[Vector], d: int) -> Vector:
    return {i * d + a: v for i, x in enumerate(chi) for a, v in x.items() if v}


def unflatten_chi(v: Vector, n: int, d: int) -> ChiTuple:
    parts: List[Vector] = [dict() for _ in range(n)]
    for k, value in v.items():
        if value:
            i, a = divmod(k, d)
            parts[i][a] = value
    return tuple(parts)


def _dot(row: Vector, v: Vector) -> Fraction:
    return sum((c * v[k] for k, c in row.items() if k in v), Fraction(0))


def adjoint_table(U: HopfAlgebra) -> Dict[Tuple[int, int], Vector]:
    """(P, Q) -> coordinates of ad_{e^P}(e^Q)"""
    return {
        (p, q): adjoint_action(U.basis(p), U.basis(q)).coords
        for p in range(U.dim)
        for q in range(U.dim)
    }


# The linear system

def _coproduct_rows(b: BicovariantBimodule) -> Iterator[Tuple[Tuple[int, int, int], Vector]]:
    F, n = b.F, b.n
    d = F.dim
    for a in range(d):
        for bb in range(d):
            product = F.basis_products.get((a, bb), {})
            for i in range(n):
                row: Vector = {}
                for c, v in product.items():
                    accumulate(row, i * d + c, v)
                for j in range(n):
                    f_ji = b.f[j][i].get(bb)
                    if f_ji:
                        accumulate(row, j * d + a, -f_ji)
                if F.counit[a]:
                    accumulate(row, i * d + bb, -F.counit[a])
                yield (a, bb, i), row


def _counit_rows(b: BicovariantBimodule) -> Iterator[Tuple[int, Vector]]:
    d = b.F.dim
    for i in range(b.n):
        yield i, {i * d + a: v for a, v in b.F.unit_vector.items()}


def _adjoint_rows(b: BicovariantBimodule, ad: Dict[Tuple[int, int], Vector]) -> Iterator[Tuple[Tuple[int, int, int], Vector]]:
    n = b.n
    d = b.F.dim
    for p in range(d):
        for e in range(d):
            for i in range(n):
                row: Vector = {}
                for q in range(d):
                    v = ad[(p, q)].get(e)
                    if v:
                        accumulate(row, i * d + q, v)
                for k in range(n):
                    r = b.R[i][k].get(p)
                    if r:
                        accumulate(row, k * d + e, -r)
                yield (p, e, i), row


def chi_equations(b: BicovariantBimodule) -> Dict[str, list]:
    """The three blocks of the system as name -> [(label, row), ...]."""
    return {
        'chi_coproduct': list(_coproduct_rows(b)),
        'chi_counit': list(_counit_rows(b)),
        'chi_adjoint': list(_adjoint_rows(b, adjoint_table(b.U))),
    }


def verify_chi(b: BicovariantBimodule, chi: Sequence[Vector], equations: Optional[Dict[str, list]] = None) -> CheckReport:
    """
    Check a candidate tuple against the calculus equations.

    Returns:
        CheckReport with one entry per block; the witness is the label of the
        first violated equation
    """
    if len(chi) != b.n:
        raise DimensionMismatch(f"{len(chi)} functionals for a bimodule of rank {b.n}")
    equations = equations or chi_equations(b)
    flat = flatten_chi(chi, b.F.dim)
    report = CheckReport(title=f"calculus equations over {b!r}")
    for name, rows in equations.items():
        report.add(name, next((label for label, row in rows if _dot(row, flat)), None))
    return report


@dataclass(frozen=True)
class ChiSpace:
    """Basis of the solution space V ⊆ U^n."""
    bimodule: BicovariantBimodule
    basis: Tuple[ChiTuple, ...]
    equations: int = 0

    @property
    def n(self) -> int:
        return self.bimodule.n

    @property
    def d(self) -> int:
        return self.bimodule.F.dim

    @property
    def dim(self) -> int:
        return len(self.basis)

    def flat_basis(self) -> List[Vector]:
        return [flatten_chi(v, self.d) for v in self.basis]

    def contains(self, chi: Sequence[Vector]) -> bool:
        flat = flatten_chi(chi, self.d)
        if not flat:
            return True
        return bool(self.basis) and in_span(self.flat_basis(), flat)


def solve_chi_space(rho: DoubleRepresentation, bimodule: Optional[BicovariantBimodule] = None) -> ChiSpace:
    """
    Solve the calculus equations for the bimodule of ρ.

    Args:
        rho: A verified representation of the double
        bimodule: rep_to_bimodule(rho), when already at hand

    Returns:
        ChiSpace; an empty basis means there is no calculus over this bimodule
    """
    b = bimodule or rep_to_bimodule(rho)
    n, d = b.n, b.F.dim
    rows = [row for block in chi_equations(b).values() for _, row in block]
    kernel = nullspace(rows, n * d)
    basis = tuple(unflatten_chi(to_sparse(v), n, d) for v in kernel)
    logger.debug("%d equations in %d unknowns over %r: solution space of dimension %d",
                 len(rows), n * d, b, len(basis))
    return ChiSpace(bimodule=b, basis=basis, equations=len(rows))


# Choosing independent functionals

@dataclass(frozen=True)
class ChiSelection:
    """
    Outcome of the search for an independent tuple.

    status is FOUND, NONE (no tuple in V can be independent) or EXHAUSTED
    (the bounded search failed; this proves nothing).
    """
    status: str
    chi: Optional[ChiTuple] = None
    stage: str = ''
    tried: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND


def is_independent(chi: Sequence[Vector], d: int) -> bool:
    return rank(list(chi), d) == len(chi)


def normalize_chi(flat: Vector) -> Vector:
    """Scale so the last nonzero coordinate is 1."""
    return vec_scale(flat, Fraction(1) / flat[max(flat)])


def _combine(vectors: Sequence[Vector], coefficients: Sequence[int]) -> Vector:
    out: Vector = {}
    for c, v in zip(coefficients, vectors):
        axpy(out, Fraction(int(c)), v)
    return out


def select_independent_chi(space: ChiSpace, draws: Optional[int] = None, seed: Optional[int] = None) -> ChiSelection:
    """
    Pick a tuple in V whose components are linearly independent in U.

    Candidates are tried in stages: the basis vectors, then pairwise
    combinations with coefficients in {-2, -1, 1, 2}, then seeded random
    combinations with coefficients in -2..2. Within a stage the smallest
    normalized candidate (lexicographically, over flattened coordinates)
    wins.
    """
    n, d = space.n, space.d
    if not space.basis:
        return ChiSelection(status=NONE)
    components = [x for v in space.basis for x in v]
    if rank(components, d) < n:
        return ChiSelection(status=NONE)

    draws = get_setting('HOPFDOUBLE_CHI_RANDOM_DRAWS') if draws is None else draws
    seed = get_setting('HOPFDOUBLE_CHI_SEED') if seed is None else seed
    flat = space.flat_basis()
    m = len(flat)
    width = n * d

    def singles():
        for v in flat:
            yield v

    def pairs():
        for i in range(m):
            for j in range(i + 1, m):
                for a in PAIR_COEFFICIENTS:
                    for c in PAIR_COEFFICIENTS:
                        yield axpy(vec_scale(flat[i], Fraction(a)), Fraction(c), flat[j])

    def random_draws():
        rng = np.random.default_rng(seed)
        for _ in range(draws):
            coefficients = rng.integers(-2, 3, size=m)
            if coefficients.any():
                yield _combine(flat, coefficients.tolist())

    tried = 0
    for stage, candidates in (('singles', singles()), ('pairs', pairs()), ('random', random_draws())):
        best = None
        best_key = None
        for candidate in candidates:
            tried += 1
            if not candidate:
                continue
            candidate = normalize_chi(candidate)
            chi = unflatten_chi(candidate, n, d)
            if not is_independent(chi, d):
                continue
            key = tuple(candidate.get(k, Fraction(0)) for k in range(width))
            if best_key is None or key < best_key:
                best, best_key = chi, key
        if best is not None:
            logger.debug("independent tuple found in stage %s after %d candidates", stage, tried)
            return ChiSelection(status=FOUND, chi=best, stage=stage, tried=tried)
    logger.info("no independent tuple among %d candidates in a %d-dimensional solution space", tried, m)
    return ChiSelection(status=EXHAUSTED, tried=tried)


# Extended representations

def extend_representation(rho: DoubleRepresentation, chi: Sequence[Vector]) -> DoubleRepresentation:
    """
    The (n+1)-dimensional block representation built from ρ and χ.

    Raises:
        DimensionMismatch: len(chi) differs from the carrier dimension
        RepresentationError: the block matrices are not multiplicative,
            naming the failing product pair
    """
    D, n = rho.D, rho.n
    if len(chi) != n:
        raise DimensionMismatch(f"{len(chi)} functionals for a representation of dimension {n}")
    F, U = D.F, D.U
    rho_f = []
    for a in range(D.n):
        rows = [[F.counit[a]] + [chi[i].get(a, 0) for i in range(n)]]
        rows += [[0] + list(row) for row in rho.rhoF[a]]
        rho_f.append(as_matrix(rows))
    rho_u = []
    for bb in range(D.n):
        rows = [[U.counit[bb]] + [0] * n]
        rows += [[0] + list(row) for row in rho.rhoU[bb]]
        rho_u.append(as_matrix(rows))
    extended = DoubleRepresentation(
        D=D,
        n=n + 1,
        rhoF=tuple(rho_f),
        rhoU=tuple(rho_u),
        name=f"{rho.name or 'rho'} extended",
    )
    return extended.require_valid()


def strip_extended_representation(extended: DoubleRepresentation) -> Tuple[DoubleRepresentation, ChiTuple]:
    """
    Read ρ and χ back from a representation of the extended block form.

    Raises:
        RepresentationError: row or column 0 does not have the block form
    """
    D = extended.D
    n = extended.n - 1
    if n < 1:
        raise DimensionMismatch("an extended representation has dimension at least 2")
    F, U = D.F, D.U
    for a, m in enumerate(extended.rhoF):
        if m[0][0] != F.counit[a] or any(m[i][0] for i in range(1, n + 1)):
            raise RepresentationError(f"rhoF[{a}] is not of the extended block form", ('rhoF', a))
    for bb, m in enumerate(extended.rhoU):
        if m[0][0] != U.counit[bb] or any(m[0][i] or m[i][0] for i in range(1, n + 1)):
            raise RepresentationError(f"rhoU[{bb}] is not of the extended block form", ('rhoU', bb))
    chi = tuple(
        clean({a: extended.rhoF[a][0][i + 1] for a in range(D.n)}) for i in range(n)
    )
    rho = DoubleRepresentation(
        D=D,
        n=n,
        rhoF=tuple(tuple(row[1:] for row in m[1:]) for m in extended.rhoF),
        rhoU=tuple(tuple(row[1:] for row in m[1:]) for m in extended.rhoU),
        name=f"{extended.name or 'rho'} stripped",
    )
    return rho.require_valid(), chi


# Calculi

@dataclass(frozen=True)
class FirstOrderCalculus:
    """
    Attributes:
        bimodule: The bicovariant bimodule Γ
        chi: χ_i as coordinates in U
        rep: The representation Γ came from
        extended_rep: Its extension by χ
        degenerate: χ = 0 (the differential vanishes)
    """
    bimodule: BicovariantBimodule
    chi: ChiTuple
    rep: DoubleRepresentation = field(repr=False)
    extended_rep: DoubleRepresentation = field(repr=False)
    degenerate: bool = False

    def __repr__(self) -> str:
        flag = ', degenerate' if self.degenerate else ''
        return f"FirstOrderCalculus({self.rep.name or 'rho'}, n={self.n}{flag})"

    @property
    def n(self) -> int:
        return self.bimodule.n

    @property
    def F(self) -> HopfAlgebra:
        return self.bimodule.F

    @property
    def U(self) -> HopfAlgebra:
        return self.bimodule.U

    def chi_element(self, i: int) -> AlgebraElement:
        return AlgebraElement(self.U, self.chi[i])

    @cached_property
    def report(self) -> CheckReport:
        return verify_calculus(self)


def make_calculus(
    rho: DoubleRepresentation,
    chi: Sequence[Vector],
    bimodule: Optional[BicovariantBimodule] = None,
    allow_degenerate: bool = False,
) -> FirstOrderCalculus:
    """
    Build a calculus from ρ and a solution χ.

    Args:
        rho: A verified representation of the double
        chi: One functional per generator ω_i
        bimodule: rep_to_bimodule(rho), when already at hand
        allow_degenerate: Accept χ = 0

    Raises:
        BimoduleError: χ violates an equation or is not independent
    """
    b = bimodule or rep_to_bimodule(rho)
    chi = tuple(clean(dict(x)) for x in chi)
    equations = verify_chi(b, chi)
    if not equations.passed:
        failure = equations.first_failure()
        raise BimoduleError(f"χ violates '{failure.name}' at {failure.witness}", failure.witness)
    degenerate = not any(chi)
    if degenerate and not allow_degenerate:
        raise BimoduleError(f"χ = 0 over {b!r} gives the degenerate calculus")
    if not degenerate and not is_independent(chi, b.F.dim):
        raise BimoduleError(f"the functionals χ over {b!r} are linearly dependent")
    extended = extend_representation(rho, chi)
    return FirstOrderCalculus(bimodule=b, chi=chi, rep=rho, extended_rep=extended, degenerate=degenerate)


def trivial_calculus(rho: DoubleRepresentation) -> FirstOrderCalculus:
    """χ = 0 over the bimodule of ρ, flagged as degenerate."""
    return make_calculus(rho, tuple({} for _ in range(rho.n)), allow_degenerate=True)


@dataclass(frozen=True)
class CalculusSearch:
    space: ChiSpace
    selection: ChiSelection
    calculus: Optional[FirstOrderCalculus] = None


def find_calculus(rho: DoubleRepresentation, draws: Optional[int] = None, seed: Optional[int] = None) -> CalculusSearch:
    """Solve for χ over the bimodule of ρ and build the calculus when one is found."""
    space = solve_chi_space(rho)
    selection = select_independent_chi(space, draws=draws, seed=seed)
    calculus = None
    if selection.found:
        calculus = make_calculus(rho, selection.chi, bimodule=space.bimodule)
    return CalculusSearch(space=space, selection=selection, calculus=calculus)


# The differential

def differential_vector(c: FirstOrderCalculus, a: Vector) -> GammaElement:
    return GammaElement(c.bimodule, tuple(star_left_vector(c.F, x, a) for x in c.chi))


def differential(a: AlgebraElement, c: FirstOrderCalculus) -> GammaElement:
    """da = Σ_i (χ_i ⋆ a) ω_i"""
    if a.parent != c.F:
        raise ParentMismatch(f"{a.parent} is not the base algebra of {c!r}")
    return differential_vector(c, a.coords)


def left_right_relation_check(c: FirstOrderCalculus, a: AlgebraElement) -> CheckReport:
    """a ⋆ χ_i = Σ_j (χ_j ⋆ a) R_ij for every i; the witness is the failing i."""
    F = c.F
    b = c.bimodule
    report = CheckReport(title=f"left-right relation of {c!r}")
    witness = None
    for i in range(c.n):
        lhs = star_right_vector(F, a.coords, c.chi[i])
        rhs: Vector = {}
        for j in range(c.n):
            axpy(rhs, 1, F.product(star_left_vector(F, c.chi[j], a.coords), b.R[i][j]))
        if lhs != rhs:
            witness = i
            break
    report.add('left_right_relation', witness)
    return report


def _coproduct_relation_failure(c: FirstOrderCalculus) -> Optional[Tuple[int, int, int]]:
    """
    Σ Δ_C^{AB} m_BD^E ⟨χ_i, e_A⟩ ρ(e^D)_ij = Σ Δ_C^{EA} ⟨χ_j, e_A⟩
    for every C, E and j.
    """
    F, n = c.F, c.n
    rho_u = c.rep.rhoU
    for cc in range(F.dim):
        lhs: Dict[Tuple[int, int], Fraction] = {}
        rhs: Dict[Tuple[int, int], Fraction] = {}
        for a, bb, v in F.comult.by_first.get(cc, ()):
            for dd, e, w in F.mult.by_first.get(bb, ()):
                for j in range(n):
                    total = sum((c.chi[i].get(a, 0) * rho_u[dd][i][j] for i in range(n)), Fraction(0))
                    if total:
                        accumulate(lhs, (e, j), v * w * total)
        for e, a, v in F.comult.by_first.get(cc, ()):
            for j in range(n):
                x = c.chi[j].get(a)
                if x:
                    accumulate(rhs, (e, j), v * x)
        if lhs != rhs:
            e, j = min(k for k in set(lhs) | set(rhs) if lhs.get(k) != rhs.get(k))
            return (cc, e, j)
    return None


def verify_calculus(c: FirstOrderCalculus, exhaustive: bool = True) -> CheckReport:
    """
    Check every property of a calculus exactly: the χ equations, independence,
    the extended representation (on all pairs of basis elements of D when
    exhaustive), the coproduct relation, d1 = 0, the Leibniz rule on all
    basis pairs and the left-right relation on all basis elements.
    """
    F = c.F
    d = F.dim
    report = CheckReport(title=f"checks of {c!r}")
    report.extend(verify_chi(c.bimodule, c.chi))
    if c.degenerate:
        report.add('degenerate', detail='χ = 0, the differential vanishes')
    else:
        report.add('independent', None if is_independent(c.chi, d) else 'dependent')
    report.extend(verify_double_rep(c.extended_rep, exhaustive=exhaustive), prefix='extended_')
    report.add('coproduct_relation', _coproduct_relation_failure(c))

    e = [basis_vector(k) for k in range(d)]
    report.add('d_one', None if differential_vector(c, F.unit_vector).is_zero else 'd1')
    forms = [differential_vector(c, e[k]) for k in range(d)]

    def leibniz_failure():
        for x in range(d):
            for y in range(d):
                lhs = differential_vector(c, F.basis_products.get((x, y), {}))
                rhs = left_multiply(e[x], forms[y]) + right_multiply(forms[x], e[y])
                if lhs != rhs:
                    return (x, y)
        return None

    report.add('leibniz', leibniz_failure())
    report.add('left_right_relation', next((
        x for x in range(d) if not left_right_relation_check(c, F.basis(x)).passed
    ), None))
    logger.debug("%s: %s", report.title, report.passed)
    return report


# The ideal J

@dataclass(frozen=True)
class IdealJ:
    """J = {a ∈ ker ε : ⟨χ_i, a⟩ = 0 for all i} with its ad*-invariance report."""
    basis: Tuple[Vector, ...]
    report: CheckReport

    @property
    def dim(self) -> int:
        return len(self.basis)


def ideal_J(c: FirstOrderCalculus) -> IdealJ:
    F = c.F
    d = F.dim
    constraints = [to_sparse(F.counit)] + [dict(x) for x in c.chi]
    basis = tuple(to_sparse(v) for v in nullspace(constraints, d))

    def invariance_failure():
        # ad*(a) ∈ J⊗F: every slice along the second leg lies in J
        for index, a in enumerate(basis):
            slices: Dict[int, Vector] = {}
            for (j, q), v in ad_star_vector(F, a).items():
                slices.setdefault(q, {})[j] = v
            for q, part in sorted(slices.items()):
                if any(_dot(row, part) for row in constraints):
                    return (index, q)
        return None

    report = CheckReport(title=f"ideal J of {c!r}")
    report.add('ad_star_invariant', invariance_failure())
    logger.debug("J of %r has dimension %d", c, len(basis))
    return IdealJ(basis=basis, report=report)


# Braiding of the extended bimodule

def expected_extended_lambda(c: FirstOrderCalculus, inner: Matrix) -> Matrix:
    """
    Λ of the extended bimodule predicted from χ and the inner Λ; index 0 is
    the added generator.
    """
    n = c.n
    m = n + 1
    R = c.bimodule.R
    rows = [[Fraction(0)] * (m * m) for _ in range(m * m)]
    for i in range(m):
        for j in range(m):
            for k in range(m):
                for l in range(m):
                    if i == 0:
                        value = int(k == 0 and j == l)
                    elif j == 0:
                        if l == 0:
                            value = int(k == i)
                        elif k == 0:
                            value = 0
                        else:
                            r = R[k - 1][i - 1]
                            value = sum((x * r[a] for a, x in c.chi[l - 1].items() if a in r), Fraction(0))
                    elif k == 0 or l == 0:
                        value = 0
                    else:
                        value = inner[(i - 1) * n + (j - 1)][(k - 1) * n + (l - 1)]
                    rows[i * m + j][k * m + l] = value
    return as_matrix(rows)


def extended_lambda(c: FirstOrderCalculus) -> Tuple[Matrix, CheckReport]:
    """
    Λ of the bimodule of the extended representation, its block pattern and
    the Yang-Baxter equation.

    Raises:
        ConsistencyError: the block pattern is violated
    """
    extended_bimodule = rep_to_bimodule(c.extended_rep)
    lam = lambda_matrix(extended_bimodule, c.extended_rep)
    inner = lambda_matrix(c.bimodule, c.rep)
    report = CheckReport(title=f"extended braiding of {c!r}")
    report.add('pattern', first_difference(lam, expected_extended_lambda(c, inner)))
    report.extend(check_qybe(lam))
    pattern = report.get('pattern')
    if not pattern.passed:
        raise ConsistencyError(f"extended Λ breaks the block pattern at {pattern.witness}", pattern.witness)
    return lam, report
