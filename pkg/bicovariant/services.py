"""
Representation file I/O and the bimodule run.
"""
import logging
from typing import Any, Dict, List, Optional

from core.exceptions import BimoduleError, ConsistencyError, SpecFileError
from core.services import algebra_summary, format_matrix, format_vector, load_algebra_file, read_json_file
from core.serializers import validated
from double.double import DrinfeldDouble, build_double

from .bimodules import (
    BicovariantBimodule,
    bimodule_to_rep,
    check_qybe,
    lambda_matrix,
    rep_to_bimodule,
    verify_covariance,
)
from .representations import DoubleRepresentation, make_representation, verify_double_rep
from .serializers import REPRESENTATION_FORMAT, REPRESENTATION_VERSION, RepresentationSpecSerializer

logger = logging.getLogger(__name__)


def load_representation(data: Any, D: DrinfeldDouble, source: str = '') -> DoubleRepresentation:
    """
    Build a representation of D from a parsed representation file.

    Raises:
        SpecFileError: malformed file, or matrix count not equal to dim(F)
    """
    if not isinstance(data, dict):
        raise SpecFileError('expected a JSON object', location=source or None)
    attrs = validated(RepresentationSpecSerializer(data=data), source)
    if len(attrs['rhoF']) != D.n:
        location = f"{source}:rhoF" if source else 'rhoF'
        raise SpecFileError(f"expected {D.n} matrices, one per basis element", location=location)
    return make_representation(D, attrs['rhoF'], attrs['rhoU'], name=attrs['name'])


def representation_to_spec(rho: DoubleRepresentation) -> Dict[str, Any]:
    return {
        'format': REPRESENTATION_FORMAT,
        'version': REPRESENTATION_VERSION,
        'name': rho.name,
        'n': rho.n,
        'rhoF': [format_matrix(m) for m in rho.rhoF],
        'rhoU': [format_matrix(m) for m in rho.rhoU],
    }


def bimodule_to_dict(b: BicovariantBimodule) -> Dict[str, Any]:
    """f and R as n×n tables of coordinate lists."""
    d = b.F.dim
    return {
        'n': b.n,
        'f': [[format_vector(b.f[i][j], d) for j in range(b.n)] for i in range(b.n)],
        'R': [[format_vector(b.R[i][j], d) for j in range(b.n)] for i in range(b.n)],
    }


def bimodule_section(rho: DoubleRepresentation, log_messages: List[str], exhaustive: bool = False) -> Dict[str, Any]:
    """
    Verify a representation and everything derived from it.

    Returns:
        Report section with the bimodule data, Λ and every check
    """
    report = verify_double_rep(rho, exhaustive=exhaustive)
    section: Dict[str, Any] = {'representation': report.as_dict()}
    if not report.passed:
        log_messages.append(f"{rho!r} is not a representation")
        section['passed'] = False
        return section
    try:
        b = rep_to_bimodule(rho)
        lam = lambda_matrix(b, rho)
    except (BimoduleError, ConsistencyError) as exc:
        log_messages.append(f"Bimodule construction failed: {exc}")
        section.update({'passed': False, 'error': str(exc)})
        return section
    qybe = check_qybe(lam)
    covariance = verify_covariance(b, rho)
    rebuilt = bimodule_to_rep(b)
    round_trip = rebuilt == rho and rep_to_bimodule(rebuilt) == b
    log_messages.append(f"Bimodule of rank {b.n}: QYBE {'holds' if qybe.passed else 'fails'}")
    section.update({
        'passed': b.report.passed and qybe.passed and covariance.passed and round_trip,
        'bimodule': bimodule_to_dict(b),
        'bimodule_relations': b.report.as_dict(),
        'lambda': format_matrix(lam),
        'qybe': qybe.as_dict(),
        'covariance': covariance.as_dict(),
        'round_trip': round_trip,
    })
    return section


def bimodule_from_files(algebra_path: str, rep_path: str, max_dim: Optional[int] = None) -> Dict[str, Any]:
    """Load an algebra and a representation of its double, and run every bimodule check."""
    log_messages = [f"Loading algebra from {algebra_path}"]
    F = load_algebra_file(algebra_path, max_dim).require_axioms()
    D = build_double(F, max_dim)
    rho = load_representation(read_json_file(rep_path), D, source=rep_path)
    log_messages.append(f"Loaded {rho!r} from {rep_path}")
    section = bimodule_section(rho, log_messages)
    logger.info("bimodule %s: %s", rep_path, section['passed'])
    return {
        'status': 'success' if section['passed'] else 'failed',
        'passed': section['passed'],
        'algebra': algebra_summary(F),
        'bimodule': section,
        'log': log_messages,
    }
