"""
Double construction runs.
"""
import logging
from typing import Any, Dict, List, Optional

from core.hopf import HopfAlgebra
from core.services import algebra_summary, load_algebra_file

from .double import DrinfeldDouble, build_double, canonical_r, structure_constant_relation, verify_quasitriangular

logger = logging.getLogger(__name__)


def double_summary(D: DrinfeldDouble, log_messages: List[str]) -> Dict[str, Any]:
    """
    Collect every check of a built double into one report section.

    Args:
        D: The double
        log_messages: Run log to append to

    Returns:
        Dictionary with the axiom, embedding, quasitriangularity and
        structure constant reports
    """
    R = canonical_r(D)
    quasitriangular = verify_quasitriangular(D, R)
    relation = structure_constant_relation(D)
    log_messages.append(f"Double of dimension {D.dim}, R has {R.summands} terms")
    log_messages.append(f"Quasitriangularity {'passed' if quasitriangular.passed else 'failed'}")
    if not relation.passed:
        log_messages.append(f"Structure constant relation disagrees at {relation.first_failure().witness}")
    passed = D.algebra.axioms.passed and D.embeddings.passed and quasitriangular.passed
    return {
        'passed': passed,
        'dim': D.dim,
        'commutative': D.algebra.is_commutative,
        'cocommutative': D.algebra.is_cocommutative,
        'r_terms': R.summands,
        'axioms': D.algebra.axioms.as_dict(),
        'embeddings': D.embeddings.as_dict(),
        'quasitriangular': quasitriangular.as_dict(),
        'structure_constant_relation': relation.as_dict(),
    }


def run_double(F: HopfAlgebra, max_dim: Optional[int] = None) -> Dict[str, Any]:
    log_messages = [f"Building the double of {F}"]
    D = build_double(F, max_dim)
    section = double_summary(D, log_messages)
    logger.info("double %s: %s", F, section['passed'])
    return {
        'status': 'success' if section['passed'] else 'failed',
        'passed': section['passed'],
        'algebra': algebra_summary(F),
        'double': section,
        'log': log_messages,
    }


def double_from_file(path: str, max_dim: Optional[int] = None) -> Dict[str, Any]:
    """Load an algebra file and build and check its double."""
    return run_double(load_algebra_file(path, max_dim).require_axioms(), max_dim)
