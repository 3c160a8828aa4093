"""
E_q(2) runs over a set of sampled deformation parameters.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from core.conf import get_setting

from .reference import reference_data
from .relations import eq2_verify_block, eq2_verify_relations

logger = logging.getLogger(__name__)

RANDOM_RANGE = (0.1, 2.0)


def sample_parameters(zs: Optional[Sequence[float]] = None, random_samples: Optional[int] = None) -> List[float]:
    """
    The z values to check: the given ones (or the configured samples)
    followed by seeded uniform draws from RANDOM_RANGE.
    """
    fixed = [float(z) for z in (zs if zs else get_setting('HOPFDOUBLE_EQ2_SAMPLES'))]
    if random_samples is None:
        random_samples = 0 if zs else get_setting('HOPFDOUBLE_EQ2_RANDOM_SAMPLES')
    rng = np.random.default_rng(get_setting('HOPFDOUBLE_EQ2_SEED'))
    drawn = rng.uniform(*RANDOM_RANGE, size=random_samples)
    return fixed + [float(z) for z in drawn]


def run_eq2(
    zs: Optional[Sequence[float]] = None,
    tol: Optional[float] = None,
    random_samples: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Check the relations and the block structure at every sampled z.

    Args:
        zs: Explicit parameters; without them the configured samples and
            random draws are used
        tol: Residual threshold, HOPFDOUBLE_EQ2_TOL by default
        random_samples: Number of extra random parameters

    Raises:
        ParameterError: Some z is 0
    """
    tol = get_setting('HOPFDOUBLE_EQ2_TOL') if tol is None else float(tol)
    samples = sample_parameters(zs, random_samples)
    log_messages = [f"Checking E_q(2) relations at {len(samples)} values of z, tol {tol:g}"]
    runs = []
    passed = True
    for z in samples:
        relations = eq2_verify_relations(z, tol)
        block = eq2_verify_block(z, tol)
        ok = relations.passed and block.passed
        passed = passed and ok
        log_messages.append(f"z = {z:.6g}: max residual {relations.max_residual:.3e}, {'passed' if ok else 'failed'}")
        runs.append({
            'z': z,
            'relations': relations.as_dict(),
            'checks': relations.report.as_dict(),
            'block': block.as_dict(),
            'passed': ok,
        })
    logger.info("eq2 over %d samples: %s", len(samples), passed)
    return {
        'status': 'success' if passed else 'failed',
        'passed': passed,
        'tol': tol,
        'samples': runs,
        'max_residual': max((r['relations']['max_residual'] for r in runs), default=0.0),
        'reference': reference_data(),
        'log': log_messages,
    }
