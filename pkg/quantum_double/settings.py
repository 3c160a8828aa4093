"""
Django settings for the quantum_double project.

The project has no web surface: Django provides configuration, management
commands, the run ledger and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    'DJANGO_SECRET_KEY',
    'django-insecure-hopfdouble-local-key-not-for-deployment'
)

DEBUG = os.environ.get('DJANGO_DEBUG', 'False').lower() in ('true', '1', 'yes')

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'rest_framework',
    'core',
    'double',
    'bicovariant',
    'calculus',
    'hochschild',
    'groups',
    'eq2',
    'jobs',
]


# Database
# Default: SQLite, only used by the run ledger (--record)

DATABASE_ENGINE = os.environ.get('DATABASE_ENGINE', 'django.db.backends.sqlite3')
DATABASE_NAME = os.environ.get('DATABASE_NAME', str(BASE_DIR / 'db.sqlite3'))

DATABASES = {
    'default': {
        'ENGINE': DATABASE_ENGINE,
        'NAME': DATABASE_NAME,
    }
}

if DATABASE_ENGINE == 'django.db.backends.postgresql':
    DATABASES['default'].update({
        'USER': os.environ.get('DATABASE_USER', 'postgres'),
        'PASSWORD': os.environ.get('DATABASE_PASSWORD', ''),
        'HOST': os.environ.get('DATABASE_HOST', 'localhost'),
        'PORT': os.environ.get('DATABASE_PORT', '5432'),
    })


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Computation guards and search parameters

# Largest admissible dim(F); the double has dim(F)**2 basis elements.
HOPFDOUBLE_MAX_DIM = int(os.environ.get('HOPFDOUBLE_MAX_DIM', '24'))

HOPFDOUBLE_MAX_GROUP_ORDER = int(
    os.environ.get('HOPFDOUBLE_MAX_GROUP_ORDER', str(HOPFDOUBLE_MAX_DIM))
)

# Bounded random stage of the independent chi-tuple search
HOPFDOUBLE_CHI_RANDOM_DRAWS = int(os.environ.get('HOPFDOUBLE_CHI_RANDOM_DRAWS', '64'))
HOPFDOUBLE_CHI_SEED = int(os.environ.get('HOPFDOUBLE_CHI_SEED', '0'))

# E_q(2) numeric checks
HOPFDOUBLE_EQ2_TOL = float(os.environ.get('HOPFDOUBLE_EQ2_TOL', '1e-10'))
HOPFDOUBLE_EQ2_SAMPLES = [
    float(value) for value in
    os.environ.get('HOPFDOUBLE_EQ2_SAMPLES', '0.3,0.7,1.1').split(',') if value
]
HOPFDOUBLE_EQ2_RANDOM_SAMPLES = int(os.environ.get('HOPFDOUBLE_EQ2_RANDOM_SAMPLES', '5'))
HOPFDOUBLE_EQ2_SEED = int(os.environ.get('HOPFDOUBLE_EQ2_SEED', '0'))


# Logging

HOPFDOUBLE_LOG_LEVEL = os.environ.get('HOPFDOUBLE_LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        name: {
            'handlers': ['console'],
            'level': HOPFDOUBLE_LOG_LEVEL,
            'propagate': False,
        }
        for name in (
            'core', 'double', 'bicovariant', 'calculus',
            'hochschild', 'groups', 'eq2', 'jobs',
        )
    },
}
