"""
Access to project settings with built-in defaults.

Library modules read tunables through get_setting so they stay importable
(and testable) without a configured Django project.
"""
from typing import Any

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS = {
    'HOPFDOUBLE_MAX_DIM': 24,
    'HOPFDOUBLE_MAX_GROUP_ORDER': 24,
    'HOPFDOUBLE_CHI_RANDOM_DRAWS': 64,
    'HOPFDOUBLE_CHI_SEED': 0,
    'HOPFDOUBLE_EQ2_TOL': 1e-10,
    'HOPFDOUBLE_EQ2_SAMPLES': [0.3, 0.7, 1.1],
    'HOPFDOUBLE_EQ2_RANDOM_SAMPLES': 5,
    'HOPFDOUBLE_EQ2_SEED': 0,
}


def get_setting(name: str) -> Any:
    """
    Return a project setting, falling back to DEFAULTS.

    Args:
        name: Setting name, e.g. HOPFDOUBLE_MAX_DIM

    Returns:
        The configured value or its default
    """
    try:
        return getattr(settings, name, DEFAULTS[name])
    except ImproperlyConfigured:
        return DEFAULTS[name]
