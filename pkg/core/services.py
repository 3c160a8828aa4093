"""
Core services: algebra file I/O, report serialization and the verify-hopf run.
"""
import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from .exceptions import SpecFileError
from .hopf import HopfAlgebra, check_size_guard, make_hopf_algebra
from .scalars import QQ
from .serializers import ALGEBRA_FORMAT, FORMAT_VERSION, AlgebraSpecSerializer, validated
from .tensors import Vector, to_dense

logger = logging.getLogger(__name__)


def read_json_file(path: str) -> Any:
    """
    Read a JSON input file.

    Raises:
        SpecFileError: file missing, unreadable, not UTF-8 or not valid JSON
            (location is path:line for JSON errors, path otherwise)
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError as exc:
        raise SpecFileError('file not found', location=path) from exc
    except json.JSONDecodeError as exc:
        raise SpecFileError(exc.msg, location=f"{path}:{exc.lineno}") from exc
    except UnicodeDecodeError as exc:
        raise SpecFileError(f"not UTF-8: {exc.reason} at byte {exc.start}", location=path) from exc
    except OSError as exc:
        raise SpecFileError(exc.strerror or str(exc), location=path) from exc


def load_algebra(data: Any, source: str = '', max_dim: Optional[int] = None) -> HopfAlgebra:
    """
    Build a HopfAlgebra from parsed JSON without enforcing the axioms.

    Args:
        data: Parsed JSON document
        source: Name used in error locations
        max_dim: Size guard override

    Returns:
        HopfAlgebra whose .axioms report is still to be consulted
    """
    if not isinstance(data, dict):
        raise SpecFileError('expected a JSON object', location=source or None)
    attrs = validated(AlgebraSpecSerializer(data=data), source)
    check_size_guard(attrs['dim'], max_dim)
    antipode: List[Vector] = [dict() for _ in range(attrs['dim'])]
    for a, b, value in attrs['antipode']:
        antipode[a][b] = antipode[a].get(b, 0) + value
    return make_hopf_algebra(
        dim=attrs['dim'],
        mult=attrs['mult'],
        comult=attrs['comult'],
        counit=attrs['counit'],
        antipode=antipode,
        unit=attrs['unit'],
        basis_labels=attrs.get('basis'),
        name=attrs['name'],
        verify=False,
    )


def load_algebra_file(path: str, max_dim: Optional[int] = None) -> HopfAlgebra:
    return load_algebra(read_json_file(path), source=path, max_dim=max_dim)


def algebra_to_spec(H: HopfAlgebra) -> Dict[str, Any]:
    """Serialize a HopfAlgebra to the JSON file format (stable ordering)."""
    return {
        'format': ALGEBRA_FORMAT,
        'version': FORMAT_VERSION,
        'name': H.name,
        'dim': H.dim,
        'basis': list(H.basis_labels),
        'mult': [[a, b, c, QQ.format(v)] for a, b, c, v in H.mult.items()],
        'comult': [[a, b, c, QQ.format(v)] for a, b, c, v in H.comult.items()],
        'counit': [QQ.format(v) for v in H.counit],
        'antipode': [
            [a, b, QQ.format(v)]
            for a, row in enumerate(H.antipode) for b, v in sorted(row.items())
        ],
        'unit': [QQ.format(v) for v in H.unit],
    }


def format_scalar(value: Fraction) -> str:
    return QQ.format(value)


def format_vector(v: Vector, dim: int) -> List[str]:
    return [QQ.format(x) for x in to_dense(v, dim)]


def format_dense(values: Sequence[Fraction]) -> List[str]:
    return [QQ.format(x) for x in values]


def format_matrix(matrix: Sequence[Sequence[Fraction]]) -> List[List[str]]:
    return [[QQ.format(x) for x in row] for row in matrix]


def dumps_report(report: Dict[str, Any]) -> str:
    """Deterministic JSON text of a report."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def algebra_summary(H: HopfAlgebra) -> Dict[str, Any]:
    return {
        'name': H.name,
        'dim': H.dim,
        'commutative': H.is_commutative,
        'cocommutative': H.is_cocommutative,
    }


def verify_hopf(path: str, max_dim: Optional[int] = None) -> Dict[str, Any]:
    """
    Load an algebra file and run the axiom checker.

    Args:
        path: Algebra JSON file
        max_dim: Size guard override

    Returns:
        Dictionary with the axiom report
    """
    log_messages = [f"Loading algebra from {path}"]
    H = load_algebra_file(path, max_dim)
    report = H.axioms
    log_messages.append(f"Axiom check {'passed' if report.passed else 'failed'} for {H}")
    logger.info("verify-hopf %s: %s", path, report.passed)
    return {
        'status': 'success' if report.passed else 'failed',
        'passed': report.passed,
        'algebra': algebra_summary(H),
        'axioms': report.as_dict(),
        'log': log_messages,
    }
