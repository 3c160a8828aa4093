"""
Group runs: conjugacy classes, class calculi and F(G) export.
"""
import logging
from typing import Any, Dict, List, Optional

from calculus.services import calculus_section, chi_to_list
from core.exceptions import ConsistencyError
from core.services import algebra_summary, algebra_to_spec, format_vector, read_json_file

from .classes import class_calculus, class_representation, conjugacy_classes, group_double
from .groups import FiniteGroup, function_hopf, load_group

logger = logging.getLogger(__name__)

GROUP_ACTIONS = ('classes', 'calculi', 'export')


def group_from_options(
    generators: Optional[str] = None,
    table_path: Optional[str] = None,
    max_order: Optional[int] = None,
) -> FiniteGroup:
    """The group named by exactly one of a generator string or a group file."""
    if (generators is None) == (table_path is None):
        raise ValueError("give exactly one of generators and a group file")
    if generators is not None:
        return load_group(generators, max_order=max_order)
    return load_group(read_json_file(table_path), max_order=max_order)


def group_summary(G: FiniteGroup) -> Dict[str, Any]:
    classes = conjugacy_classes(G)
    return {
        'name': G.name,
        'order': G.order,
        'elements': list(G.labels),
        'classes': [
            {'representative': G.labels[C.representative], 'members': C.labels(G), 'size': C.size}
            for C in classes
        ],
    }


def class_calculi_section(G: FiniteGroup, log_messages: List[str], exhaustive: bool = False) -> Dict[str, Any]:
    """
    For each nontrivial class: the generic calculus search over its
    representation and the closed-form calculus χ_g = g − e with its cocycle.
    """
    D = group_double(G)
    F = D.F
    sections = []
    passed = True
    found = 0
    nontrivial = [C for C in conjugacy_classes(G) if not C.is_trivial(G)]
    for C in nontrivial:
        rho = class_representation(G, C, D)
        search = calculus_section(rho, log_messages, exhaustive=exhaustive)
        found += int(search['found'])
        section: Dict[str, Any] = {
            'class': C.labels(G),
            'size': C.size,
            'search': search,
        }
        try:
            closed_form = class_calculus(G, C, D)
        except ConsistencyError as exc:
            log_messages.append(f"Class {C.labels(G)}: {exc}")
            section['error'] = str(exc)
            section['passed'] = False
            passed = False
            sections.append(section)
            continue
        section['chi'] = chi_to_list(closed_form.calculus.chi, F.dim)
        section['psi'] = [format_vector(dict(enumerate(closed_form.psi.value(a))), C.size) for a in range(F.dim)]
        section['checks'] = closed_form.report.as_dict()
        section['passed'] = search['passed'] and closed_form.report.passed
        passed = passed and section['passed']
        sections.append(section)
    counts_agree = found == len(nontrivial)
    log_messages.append(f"{G!r}: {found} calculi over {len(nontrivial)} nontrivial classes")
    return {
        'calculi': sections,
        'found': found,
        'nontrivial_classes': len(nontrivial),
        'dims': [s['size'] for s in sections if s['search']['found']],
        'counts_agree': counts_agree,
        'passed': passed and counts_agree,
    }


def run_group(G: FiniteGroup, action: str, exhaustive: bool = False) -> Dict[str, Any]:
    """
    Args:
        G: A validated group
        action: One of GROUP_ACTIONS
        exhaustive: Check extended representations on all basis pairs of D
    """
    if action not in GROUP_ACTIONS:
        raise ValueError(f"action must be one of {GROUP_ACTIONS}, got {action!r}")
    log_messages = [f"Group {G.name or 'G'} of order {G.order}"]
    result: Dict[str, Any] = {'group': group_summary(G)}
    passed = True
    if action == 'export':
        F = function_hopf(G)
        result['algebra'] = algebra_summary(F)
        result['spec'] = algebra_to_spec(F)
    elif action == 'calculi':
        section = class_calculi_section(G, log_messages, exhaustive=exhaustive)
        result.update(section)
        passed = section['passed']
    logger.info("group %s %s: %s", G.name, action, passed)
    result.update({'status': 'success' if passed else 'failed', 'passed': passed, 'log': log_messages})
    return result
