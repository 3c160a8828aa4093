"""
Conjugacy classes of a finite group and the representations of D(F(G))
attached to them.

For a class C the carrier has basis ω_g (g ∈ C) and

    ρ_D(h) ω_g = ω_{hgh^{-1}},   ρ_D(a) ω_g = a(g) ω_g.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from bicovariant.bimodules import check_qybe, lambda_matrix, rep_to_bimodule
from bicovariant.representations import DoubleRepresentation
from calculus.calculus import ChiTuple, FirstOrderCalculus, make_calculus, solve_chi_space, trivial_calculus
from core.exceptions import ConsistencyError, GroupError
from core.linalg import as_matrix
from core.reports import CheckReport
from double.double import DrinfeldDouble, build_double
from hochschild.cochains import Cochain, CoefficientBimodule, coboundary, cochain_from_values, constant_cochain, inv_gamma_bimodule
from hochschild.correspondence import calculus_to_cocycle, restrict_to_f

from .groups import FiniteGroup, function_hopf

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConjugacyClass:
    """Members as sorted element indices; the representative is the smallest."""
    members: Tuple[int, ...]

    @property
    def representative(self) -> int:
        return self.members[0]

    @property
    def size(self) -> int:
        return len(self.members)

    def position(self, g: int) -> int:
        return self.members.index(g)

    def labels(self, G: FiniteGroup) -> List[str]:
        return [G.labels[g] for g in self.members]

    def is_trivial(self, G: FiniteGroup) -> bool:
        return self.members == (G.identity,)


def conjugacy_classes(G: FiniteGroup) -> List[ConjugacyClass]:
    """Classes ordered by representative index."""
    seen = set()
    classes = []
    for g in range(G.order):
        if g in seen:
            continue
        members = tuple(sorted({G.conjugate(h, g) for h in range(G.order)}))
        seen.update(members)
        classes.append(ConjugacyClass(members))
    logger.debug("%r has %d conjugacy classes", G, len(classes))
    return classes


def group_double(G: FiniteGroup) -> DrinfeldDouble:
    return build_double(function_hopf(G))


def class_representation(G: FiniteGroup, C: ConjugacyClass, D: Optional[DrinfeldDouble] = None) -> DoubleRepresentation:
    """
    The |C|-dimensional representation of D(F(G)) on span{ω_g : g ∈ C}.

    Args:
        G: The group
        C: One of its conjugacy classes
        D: The double of F(G), built when not given

    Returns:
        Verified DoubleRepresentation
    """
    D = D or group_double(G)
    n = C.size
    rho_f = []
    for a in range(G.order):
        rho_f.append(as_matrix([[int(i == j and C.members[i] == a) for j in range(n)] for i in range(n)]))
    rho_u = []
    for h in range(G.order):
        rows = [[0] * n for _ in range(n)]
        for j, g in enumerate(C.members):
            rows[C.position(G.conjugate(h, g))][j] = 1
        rho_u.append(as_matrix(rows))
    rho = DoubleRepresentation(
        D=D,
        n=n,
        rhoF=tuple(rho_f),
        rhoU=tuple(rho_u),
        name=f"class {{{', '.join(C.labels(G))}}}",
    )
    return rho.require_valid()


def trivial_restriction_representation(G: FiniteGroup, D: Optional[DrinfeldDouble] = None) -> DoubleRepresentation:
    """
    ρ_D|_F = ε·1 and ρ_D|_U the permutation action on sum-zero vectors,
    written in the basis v_k = e_k − e_{k+1}.

    Raises:
        GroupError: G was not built from permutations
    """
    if G.permutations is None:
        raise GroupError(f"{G!r} carries no permutation action")
    D = D or group_double(G)
    degree = len(G.permutations[0])
    n = degree - 1
    rho_u = []
    for perm in G.permutations:
        columns = []
        for k in range(n):
            image = [Fraction(0)] * degree
            image[perm[k]] += 1
            image[perm[k + 1]] -= 1
            # coordinates in v_0..v_{n-1} are prefix sums of the image
            coords, total = [], Fraction(0)
            for m in range(n):
                total += image[m]
                coords.append(total)
            columns.append(coords)
        rho_u.append(as_matrix([[columns[j][i] for j in range(n)] for i in range(n)]))
    rho_f = tuple(
        as_matrix([[c if i == j else 0 for j in range(n)] for i in range(n)]) for c in D.F.counit
    )
    rho = DoubleRepresentation(D=D, n=n, rhoF=rho_f, rhoU=tuple(rho_u), name='trivial restriction')
    return rho.require_valid()


# Class calculi

def class_chi(G: FiniteGroup, C: ConjugacyClass) -> ChiTuple:
    """χ_g = g − e in kG, i.e. ⟨χ_g, a⟩ = a(g) − a(e); zero on the trivial class."""
    if C.is_trivial(G):
        return ({},)
    return tuple({g: Fraction(1), G.identity: Fraction(-1)} for g in C.members)


def class_cocycle(G: FiniteGroup, C: ConjugacyClass, module: CoefficientBimodule) -> Cochain:
    """[ψ(δ_a)]_g = ε(δ_a) − δ_a(g)"""
    table = {
        (a,): [int(a == G.identity) - int(a == g) for g in C.members]
        for a in range(G.order)
    }
    return cochain_from_values(module, 1, table)


@dataclass(frozen=True)
class ClassCalculus:
    """
    The calculus of a conjugacy class together with its cocycle ψ over F.

    Attributes:
        conjugacy_class: The class C
        calculus: Calculus with χ_g = g − e (degenerate for C = {e})
        psi: ψ with values in invΓ over F
        report: Checks against the generic solver and the cohomology
    """
    conjugacy_class: ConjugacyClass
    calculus: FirstOrderCalculus
    psi: Cochain
    report: CheckReport = field(compare=False)


def class_calculus(G: FiniteGroup, C: ConjugacyClass, D: Optional[DrinfeldDouble] = None) -> ClassCalculus:
    """
    Raises:
        ConsistencyError: χ_g = g − e is not a solution of the generic calculus equations
    """
    rho = class_representation(G, C, D)
    bimodule = rep_to_bimodule(rho)
    chi = class_chi(G, C)
    space = solve_chi_space(rho, bimodule)
    if not space.contains(chi):
        raise ConsistencyError(f"χ_g = g − e is not in the solution space of class {C.labels(G)}", C.members)
    if C.is_trivial(G):
        c = trivial_calculus(rho)
    else:
        c = make_calculus(rho, chi, bimodule)
    module = inv_gamma_bimodule(rho, 'F')
    psi = class_cocycle(G, C, module)
    report = CheckReport(title=f"class calculus {{{', '.join(C.labels(G))}}}")
    report.add('psi_cocycle', next(iter(coboundary(psi).values), None))
    report.add('psi_coboundary', None if coboundary(constant_cochain(module, [1] * C.size)) == psi else 'Σω')
    restricted = restrict_to_f(calculus_to_cocycle(c), rho, module)
    report.add('psi_from_calculus', None if restricted == -psi else 'ψ')
    qybe = check_qybe(lambda_matrix(bimodule, rho))
    report.add('qybe', qybe.first_failure().witness if not qybe.passed else None)
    logger.debug("%s: %s", report.title, report.passed)
    return ClassCalculus(conjugacy_class=C, calculus=c, psi=psi, report=report)


def class_calculi(G: FiniteGroup, D: Optional[DrinfeldDouble] = None) -> List[ClassCalculus]:
    """One calculus per nontrivial class, in class order."""
    D = D or group_double(G)
    return [class_calculus(G, C, D) for C in conjugacy_classes(G) if not C.is_trivial(G)]
