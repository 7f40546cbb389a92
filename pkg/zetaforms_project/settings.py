"""
Django settings for zetaforms_project project.

The project hosts no web application: its apps are libraries plus the
management commands of the ``cli`` app. Settings only carry configuration
for those commands.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# No sessions or signing happen here, but Django insists on a key.
SECRET_KEY = config('SECRET_KEY', default='django-insecure-zetaforms-local-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'exact_core',
    'hyper_forms',
    'pade_verify',
    'analytic_eval',
    'independence_pipeline',
    'cli',
]

MIDDLEWARE = []


# Database
# Certificates and dumps are flat files; nothing is persisted in a database.

DATABASES = {}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Logging
# Everything goes to stderr so that stdout stays pure JSON.

LOG_LEVEL = config('LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': LOG_LEVEL,
    },
}


# Zetaforms settings

ZETAFORMS_THREADS = config('ZETAFORMS_THREADS', default=os.cpu_count() or 1, cast=int)
ZETAFORMS_PRECISION_BITS = config('ZETAFORMS_PRECISION_BITS', default=256, cast=int)
ZETAFORMS_DEFAULT_KMAX_FACTOR = config('ZETAFORMS_DEFAULT_KMAX_FACTOR', default=3, cast=int)
ZETAFORMS_LAMBDA_LEVELS = config('ZETAFORMS_LAMBDA_LEVELS', default=3, cast=int)
ZETAFORMS_TRANSFER_LEVELS = config('ZETAFORMS_TRANSFER_LEVELS', default=3, cast=int)
