"""
Commutation relations of the E_q(2) double, checked as 5×5 matrix identities.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np

from core.reports import CheckReport

from .matrices import CHI_NAMES, Eq2Rep, eq2_matrices, exponential_residuals

logger = logging.getLogger(__name__)


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


# name -> residual matrix (lhs − rhs) as a function of the representation
Relation = Callable[[Eq2Rep], np.ndarray]

RELATIONS: Tuple[Tuple[str, Relation], ...] = (
    ('[J,b+] = b+', lambda r: commutator(r['J'], r['b+']) - r['b+']),
    ('[J,b-] = -b-', lambda r: commutator(r['J'], r['b-']) + r['b-']),
    ('[b+,b-] = 0', lambda r: commutator(r['b+'], r['b-'])),
    ('[pi,pi+] = -z pi+', lambda r: commutator(r['pi'], r['pi+']) + r.z * r['pi+']),
    ('[pi,pi-] = -z pi-', lambda r: commutator(r['pi'], r['pi-']) + r.z * r['pi-']),
    ('[pi-,pi+] = 0', lambda r: commutator(r['pi-'], r['pi+'])),
    ('[b-,pi-] = exp(-pi) - exp(-zJ)',
     lambda r: commutator(r['b-'], r['pi-']) - (r['exp(-pi)'] - r['exp(-zJ)'])),
    ('[b-,pi] = -z b-', lambda r: commutator(r['b-'], r['pi']) + r.z * r['b-']),
    ('b- pi+ - e^z pi+ b- = 0',
     lambda r: r['b-'] @ r['pi+'] - np.exp(r.z) * r['pi+'] @ r['b-']),
    ('[J,pi-] = pi-', lambda r: commutator(r['J'], r['pi-']) - r['pi-']),
    ('[J,pi] = 0', lambda r: commutator(r['J'], r['pi'])),
    ('[J,pi+] = -pi+', lambda r: commutator(r['J'], r['pi+']) + r['pi+']),
    ('[b+,pi+] = -exp(-pi) + exp(zJ)',
     lambda r: commutator(r['b+'], r['pi+']) - (r['exp(zJ)'] - r['exp(-pi)'])),
    ('[b+,pi] = -z b+', lambda r: commutator(r['b+'], r['pi']) + r.z * r['b+']),
    ('b+ pi- - e^z pi- b+ = 0',
     lambda r: r['b+'] @ r['pi-'] - np.exp(r.z) * r['pi-'] @ r['b+']),
)


def max_norm(m: np.ndarray) -> float:
    return float(np.max(np.abs(m)))


@dataclass
class ResidualReport:
    """
    Per-relation max-norm residuals at one z.

    Attributes:
        z: Deformation parameter
        tol: Pass threshold
        residuals: Relation name -> residual, in RELATIONS order
        report: The same residuals as pass/fail checks
    """
    z: float
    tol: float
    residuals: Dict[str, float] = field(default_factory=dict)
    report: CheckReport = field(default_factory=lambda: CheckReport('relations'))

    @property
    def passed(self) -> bool:
        return self.report.passed

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def as_dict(self) -> Dict:
        return {
            'z': self.z,
            'tol': self.tol,
            'residuals': [{'relation': name, 'residual': value} for name, value in self.residuals.items()],
            'max_residual': self.max_residual,
            'passed': self.passed,
        }


def _record(report: CheckReport, name: str, residual: float, tol: float) -> None:
    report.add(name, witness=None if residual < tol else residual, detail=f"{residual:.3e}")


def eq2_verify_relations(z: float, tol: float = 1e-10) -> ResidualReport:
    """
    Evaluate every relation at z, plus the closed-form exponentials against
    scipy's expm.

    Raises:
        ParameterError: z = 0
    """
    rep = eq2_matrices(z)
    result = ResidualReport(z=rep.z, tol=tol, report=CheckReport(f"relations at z={rep.z:g}"))
    for name, relation in RELATIONS:
        residual = max_norm(relation(rep))
        result.residuals[name] = residual
        _record(result.report, name, residual, tol)
    for name, residual in exponential_residuals(rep).items():
        _record(result.report, f"{name} = expm", residual, tol)
    logger.debug("z = %g: max relation residual %.3e", rep.z, result.max_residual)
    return result


def eq2_verify_block(z: float, tol: float = 1e-10) -> CheckReport:
    """
    Row 0 of ρ(J), ρ(b_±) and of every χ vanishes, χ_1 also has a zero
    column 0, and row 0 of ρ(π), ρ(π_±) carries the pairings with χ_4, χ_3, χ_2.

    Raises:
        ParameterError: z = 0
    """
    rep = eq2_matrices(z)
    report = CheckReport(f"block structure at z={rep.z:g}")
    for name in ('J', 'b+', 'b-') + CHI_NAMES:
        _record(report, f"row0({name}) = 0", max_norm(rep[name][0, :]), tol)
    _record(report, 'col0(chi1) = 0', max_norm(rep['chi1'][:, 0]), tol)
    expected_rows: List[Tuple[str, np.ndarray]] = [
        ('pi', np.array([0.0, 0.0, 0.0, 0.0, -rep.z / rep.kappa])),
        ('pi+', np.array([0.0, 0.0, 0.0, np.exp(rep.z / 2), 0.0])),
        ('pi-', np.array([0.0, 0.0, -np.exp(-rep.z / 2), 0.0, 0.0])),
    ]
    for name, expected in expected_rows:
        _record(report, f"row0({name}) = pairing", max_norm(rep[name][0, :] - expected), tol)
    return report
