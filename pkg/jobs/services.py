"""
Jobs application services: dispatch a subcommand to its app service and
keep the run ledger.
"""
import json
import logging
from typing import Any, Callable, Dict

from django.utils import timezone

from core.exceptions import (
    AxiomViolation,
    GroupError,
    HopfDoubleError,
    SizeGuardError,
    SpecFileError,
)
from core.services import dumps_report

from .models import Job

logger = logging.getLogger(__name__)

# Raised while reading arguments or input files; the CLI exits with 2.
INPUT_ERRORS = (SpecFileError, SizeGuardError, GroupError, ValueError)


def _verify_hopf(p: Dict[str, Any]) -> Dict[str, Any]:
    from core.services import verify_hopf
    return verify_hopf(p['algebra'], p.get('max_dim'))


def _double(p: Dict[str, Any]) -> Dict[str, Any]:
    from double.services import double_from_file
    return double_from_file(p['algebra'], p.get('max_dim'))


def _bimodule(p: Dict[str, Any]) -> Dict[str, Any]:
    from bicovariant.services import bimodule_from_files
    return bimodule_from_files(p['algebra'], p['representation'], p.get('max_dim'))


def _calculi(p: Dict[str, Any]) -> Dict[str, Any]:
    from calculus.services import calculi_from_files
    return calculi_from_files(p['algebra'], p['representation'], p.get('max_dim'))


def _cohomology(p: Dict[str, Any]) -> Dict[str, Any]:
    from hochschild.services import cohomology_from_files
    return cohomology_from_files(p['algebra'], p['representation'], p.get('max_dim'))


def _group(p: Dict[str, Any]) -> Dict[str, Any]:
    from groups.services import group_from_options, run_group
    G = group_from_options(p.get('generators'), p.get('table'), p.get('max_dim'))
    return run_group(G, p['action'], exhaustive=p.get('exhaustive', False))


def _eq2(p: Dict[str, Any]) -> Dict[str, Any]:
    from eq2.services import run_eq2
    return run_eq2(p.get('z'), p.get('tol'))


RUNNERS: Dict[str, Callable[[Dict[str, Any]], Dict[str, Any]]] = {
    'verify-hopf': _verify_hopf,
    'double': _double,
    'bimodule': _bimodule,
    'calculi': _calculi,
    'cohomology': _cohomology,
    'group': _group,
    'eq2': _eq2,
}


def failure_report(exc: HopfDoubleError) -> Dict[str, Any]:
    """Report of a run stopped by a violated property of its input."""
    report: Dict[str, Any] = {
        'status': 'failed',
        'passed': False,
        'error': str(exc),
        'error_type': type(exc).__name__,
    }
    if exc.witness is not None:
        report['witness'] = str(exc.witness)
    if isinstance(exc, AxiomViolation) and exc.report is not None:
        report['axioms'] = exc.report.as_dict()
    return report


def run_job(job_type: str, parameters: Dict[str, Any]) -> Dict[str, Any]:
    """
    Run one subcommand and return its report, echoing the command.

    Input errors (INPUT_ERRORS) propagate; any other HopfDoubleError, such
    as an axiom violation of an input algebra or a non-multiplicative
    representation, becomes a failed report.

    Args:
        job_type: One of RUNNERS
        parameters: Arguments of the subcommand

    Returns:
        Report dictionary with 'command', 'status' and 'passed'
    """
    if job_type not in RUNNERS:
        raise ValueError(f"Unknown job type: {job_type}")
    try:
        result = RUNNERS[job_type](parameters)
    except INPUT_ERRORS:
        raise
    except HopfDoubleError as exc:
        logger.info("%s stopped: %s", job_type, exc)
        result = failure_report(exc)
        result['log'] = [f"{type(exc).__name__}: {exc}"]
    return {'command': {'name': job_type, 'parameters': parameters}, **result}


def create_job(job_type: str, parameters: Dict[str, Any]) -> Job:
    """
    Create a pending job.

    Args:
        job_type: Subcommand name
        parameters: Arguments of the subcommand, stored as JSON text

    Returns:
        Created Job instance
    """
    return Job.objects.create(
        job_type=job_type,
        parameters=json.dumps(parameters, sort_keys=True),
        status='pending',
    )


def execute_job(job_id: int) -> Dict[str, Any]:
    """
    Execute a job synchronously and store its report and log.

    Args:
        job_id: ID of the job to execute

    Returns:
        Dictionary with the status, the report or the input error, and the log
    """
    job = Job.objects.get(id=job_id)

    job.status = 'running'
    job.started_at = timezone.now()
    job.save()

    log_messages = [f"Starting job {job_id}", f"Job type: {job.job_type}"]

    try:
        report = run_job(job.job_type, job.get_parameters())
    except INPUT_ERRORS as e:
        log_messages.append(f"Input error: {e}")
        job.status = 'failed'
        job.finished_at = timezone.now()
        job.log = '\n'.join(log_messages)
        job.save()
        return {
            'status': 'failed',
            'error': str(e),
            'input_error': True,
            'log': log_messages,
        }

    log_messages.extend(report.get('log', []))
    log_messages.append(f"Job completed with status: {report.get('status', 'unknown')}")

    job.status = 'success' if report.get('passed') else 'failed'
    job.finished_at = timezone.now()
    job.report = dumps_report(report)
    job.log = '\n'.join(log_messages)
    job.save()

    return {
        'status': job.status,
        'report': report,
        'log': log_messages,
    }

