"""
Calculus search runs.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence

from bicovariant.representations import DoubleRepresentation
from bicovariant.services import load_representation
from core.exceptions import BimoduleError, ConsistencyError, RepresentationError
from core.services import algebra_summary, format_matrix, format_vector, load_algebra_file, read_json_file
from core.tensors import Vector
from double.double import build_double

from .calculus import FirstOrderCalculus, extended_lambda, find_calculus, ideal_J, verify_calculus

logger = logging.getLogger(__name__)


def chi_to_list(chi: Sequence[Vector], d: int) -> List[List[str]]:
    return [format_vector(x, d) for x in chi]


def calculus_details(c: FirstOrderCalculus, log_messages: List[str], exhaustive: bool = True) -> Dict[str, Any]:
    """
    Run every check of a calculus.

    Args:
        c: The calculus
        log_messages: Run log to append to
        exhaustive: Check the extended representation on all basis pairs of D

    Returns:
        Report section with χ, the ideal J, the extended Λ and all checks
    """
    d = c.F.dim
    report = verify_calculus(c, exhaustive=exhaustive)
    J = ideal_J(c)
    section: Dict[str, Any] = {
        'n': c.n,
        'degenerate': c.degenerate,
        'chi': chi_to_list(c.chi, d),
        'checks': report.as_dict(),
        'ideal_J': {
            'dim': J.dim,
            'basis': [format_vector(v, d) for v in J.basis],
            'invariance': J.report.as_dict(),
        },
    }
    passed = report.passed and J.report.passed
    try:
        lam, lam_report = extended_lambda(c)
        section['extended_lambda'] = format_matrix(lam)
        section['extended_lambda_checks'] = lam_report.as_dict()
        passed = passed and lam_report.passed
    except ConsistencyError as exc:
        log_messages.append(f"Extended braiding of {c!r}: {exc}")
        section['extended_lambda_error'] = str(exc)
        passed = False
    log_messages.append(f"{c!r}: dim J = {J.dim}, checks {'passed' if passed else 'failed'}")
    section['passed'] = passed
    return section


def calculus_section(rho: DoubleRepresentation, log_messages: List[str], exhaustive: bool = True) -> Dict[str, Any]:
    """
    Search for a calculus over the bimodule of ρ and check it.

    Finding no calculus is a valid outcome; the section passes unless a
    found calculus fails one of its checks.
    """
    try:
        search = find_calculus(rho)
    except (BimoduleError, RepresentationError) as exc:
        log_messages.append(f"Calculus search over {rho!r} failed: {exc}")
        return {'representation': rho.name, 'n': rho.n, 'found': False, 'passed': False, 'error': str(exc)}
    section: Dict[str, Any] = {
        'representation': rho.name,
        'n': rho.n,
        'solution_dim': search.space.dim,
        'equations': search.space.equations,
        'selection': search.selection.status,
        'found': search.calculus is not None,
    }
    log_messages.append(
        f"{rho!r}: solution space of dimension {search.space.dim}, selection {search.selection.status}"
    )
    if search.calculus is None:
        section['passed'] = True
        return section
    section['stage'] = search.selection.stage
    section['calculus'] = calculus_details(search.calculus, log_messages, exhaustive)
    section['passed'] = section['calculus']['passed']
    return section


def calculi_from_files(algebra_path: str, rep_path: str, max_dim: Optional[int] = None) -> Dict[str, Any]:
    """Load an algebra and a representation of its double, and search for a calculus."""
    log_messages = [f"Loading algebra from {algebra_path}"]
    F = load_algebra_file(algebra_path, max_dim).require_axioms()
    D = build_double(F, max_dim)
    rho = load_representation(read_json_file(rep_path), D, source=rep_path).require_valid()
    log_messages.append(f"Loaded {rho!r} from {rep_path}")
    section = calculus_section(rho, log_messages)
    logger.info("calculi %s: %s", rep_path, section['passed'])
    return {
        'status': 'success' if section['passed'] else 'failed',
        'passed': section['passed'],
        'algebra': algebra_summary(F),
        'calculi': [section],
        'log': log_messages,
    }
