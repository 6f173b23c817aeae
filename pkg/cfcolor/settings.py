"""
Django settings for the cfcolor project.

Django is used for its settings layer, logging configuration and the
management-command framework that provides the command-line surface.
There are no URL routes, views or database tables.
"""

import environ
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Environment variables
env = environ.Env(
    DEBUG=(bool, False),
    CFCOLOR_ORACLE_LIMIT=(int, 16),
    CFCOLOR_HARDNESS_LIMIT=(int, 16),
    CFCOLOR_AUTO_BUDGET=(int, 6),
    CFCOLOR_KERNEL_ORACLE_LIMIT=(int, 24),
    CFCOLOR_JOBS=(int, 1),
    CFCOLOR_SEED=(int, 0),
)

# Take environment variables from .env file
environ.Env.read_env(BASE_DIR / '.env')

DEBUG = env('DEBUG')

SECRET_KEY = env('SECRET_KEY', default='cfcolor-local-only-not-a-secret')

ALLOWED_HOSTS = []

# Application definition
LOCAL_APPS = [
    'apps.core',
    'apps.graphs',
    'apps.coloring',
    'apps.oracle',
    'apps.classes',
    'apps.polysolve',
    'apps.interval',
    'apps.fpt',
    'apps.hardness',
    'apps.generators',
]

INSTALLED_APPS = LOCAL_APPS

# No tables are defined.
DATABASES = {}

USE_TZ = True
TIME_ZONE = 'UTC'

# Solver configuration
CFCOLOR = {
    # Exhaustive oracle refuses graphs above this many vertices.
    'ORACLE_LIMIT': env('CFCOLOR_ORACLE_LIMIT'),
    # Largest gadget graph H the hardness cross-validation will hand to the oracle.
    'HARDNESS_LIMIT': env('CFCOLOR_HARDNESS_LIMIT'),
    # Modulator budget cap used by `solve --strategy auto`.
    'AUTO_BUDGET': env('CFCOLOR_AUTO_BUDGET'),
    # Kernels may exceed ORACLE_LIMIT up to this size (with a warning).
    'KERNEL_ORACLE_LIMIT': env('CFCOLOR_KERNEL_ORACLE_LIMIT'),
    'JOBS': env('CFCOLOR_JOBS'),
    'SEED': env('CFCOLOR_SEED'),
}

# Logging Configuration
# stdout carries run reports and artifacts, so every handler writes to stderr.
LOG_LEVEL = env('LOG_LEVEL', default='INFO')
LOG_FILE = env('LOG_FILE', default=None)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': True,
        },
        'apps': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'cfcolor': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}

if LOG_FILE:
    LOGGING['handlers']['file'] = {
        'level': 'INFO',
        'class': 'logging.FileHandler',
        'filename': LOG_FILE,
        'formatter': 'verbose',
    }
    for logger_name in ('apps', 'cfcolor'):
        LOGGING['loggers'][logger_name]['handlers'].append('file')
