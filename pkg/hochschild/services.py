"""
Cohomology runs.
"""
import logging
from typing import Any, Dict, List, Optional

from bicovariant.representations import DoubleRepresentation
from bicovariant.services import load_representation
from calculus.calculus import FirstOrderCalculus, find_calculus
from core.exceptions import BimoduleError, CochainError, ConsistencyError
from core.services import algebra_summary, load_algebra_file, read_json_file
from double.double import DrinfeldDouble, build_double

from .cochains import cohomology_spaces, coboundary_preimage, inv_gamma_bimodule
from .correspondence import calculus_to_cocycle, cocycle_to_calculus, invariant_cocycle_correspondence, restrict_to_f
from .universal import universal_differential_check, verify_universal_cocycle

logger = logging.getLogger(__name__)


def calculus_cocycle_section(c: FirstOrderCalculus, log_messages: List[str]) -> Dict[str, Any]:
    """The cocycle of a calculus, its class over D and over F, and the round trip back."""
    rho = c.rep
    try:
        phi = calculus_to_cocycle(c)
    except ConsistencyError as exc:
        log_messages.append(f"Cocycle of {c!r}: {exc}")
        return {'passed': False, 'error': str(exc)}
    psi = restrict_to_f(phi, rho)
    try:
        back = cocycle_to_calculus(phi, rho, c.bimodule)
        round_trip = back.chi == c.chi
    except (BimoduleError, CochainError) as exc:
        log_messages.append(f"Calculus from the cocycle of {c!r}: {exc}")
        round_trip = False
    section = {
        'coboundary_over_D': coboundary_preimage(phi) is not None,
        'coboundary_over_F': coboundary_preimage(psi) is not None,
        'round_trip': round_trip,
        'passed': round_trip,
    }
    log_messages.append(
        f"{c!r}: coboundary over D {section['coboundary_over_D']}, over F {section['coboundary_over_F']}"
    )
    return section


def cohomology_section(
    rho: DoubleRepresentation,
    log_messages: List[str],
    calculus: Optional[FirstOrderCalculus] = None,
    bases: tuple = ('F', 'D'),
) -> Dict[str, Any]:
    """
    H^0 and H^1 with values in invΓ, the invariant-cocycle correspondence
    and, when a calculus is given, its cocycle.
    """
    section: Dict[str, Any] = {'representation': rho.name, 'n': rho.n}
    passed = True
    for base in bases:
        module = inv_gamma_bimodule(rho, base)
        reports = [cohomology_spaces(module, k) for k in (0, 1)]
        section[base] = {f"H{r.degree}": r.as_dict() for r in reports}
        passed = passed and all(r.report.passed for r in reports)
        log_messages.append(
            f"{rho!r} over {base}: " + ', '.join(f"dim H^{r.degree} = {r.h_dim}" for r in reports)
        )
    correspondence = invariant_cocycle_correspondence(rho)
    section['invariant_cocycles'] = correspondence.as_dict()
    passed = passed and correspondence.report.passed
    if calculus is not None:
        section['calculus'] = calculus_cocycle_section(calculus, log_messages)
        passed = passed and section['calculus']['passed']
    section['passed'] = passed
    return section


def universal_section(D: DrinfeldDouble, log_messages: List[str]) -> Dict[str, Any]:
    cocycle = verify_universal_cocycle(D)
    differential = universal_differential_check(D)
    log_messages.append(f"Universal cocycle over {D!r}: {'passed' if cocycle.passed and differential.passed else 'failed'}")
    return {
        'cocycle': cocycle.as_dict(),
        'differential': differential.as_dict(),
        'passed': cocycle.passed and differential.passed,
    }


def cohomology_from_files(algebra_path: str, rep_path: str, max_dim: Optional[int] = None) -> Dict[str, Any]:
    """Load an algebra and a representation, then compute cohomology and the calculus cocycle."""
    log_messages = [f"Loading algebra from {algebra_path}"]
    F = load_algebra_file(algebra_path, max_dim).require_axioms()
    D = build_double(F, max_dim)
    rho = load_representation(read_json_file(rep_path), D, source=rep_path).require_valid()
    log_messages.append(f"Loaded {rho!r} from {rep_path}")
    search = find_calculus(rho)
    section = cohomology_section(rho, log_messages, calculus=search.calculus)
    universal = universal_section(D, log_messages)
    passed = section['passed'] and universal['passed']
    logger.info("cohomology %s: %s", rep_path, passed)
    return {
        'status': 'success' if passed else 'failed',
        'passed': passed,
        'algebra': algebra_summary(F),
        'cohomology': section,
        'universal': universal,
        'log': log_messages,
    }
