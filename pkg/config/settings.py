"""
Django settings for the artifact-sieve project.

The project has no HTTP surface and no database: the Django runtime is used for
its app registry, management commands, logging configuration and test runner.
Environment-dependent values are read with python-decouple.
"""

from pathlib import Path

from decouple import Csv, config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# Application definition

INSTALLED_APPS = [
    # third party apps
    "rest_framework",
    # local apps
    "apps.corpus",
    "apps.preprocess",
    "apps.features",
    "apps.autolabel",
    "apps.classifier",
    "apps.evaluation",
    "apps.baseline",
]

# Every stage reads and writes plain files.
DATABASES = {}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Logging
# Diagnostics go to stderr; stdout is reserved for command output.

LOG_LEVEL = config("ARTIFACT_SIEVE_LOG_LEVEL", default="INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "apps": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
    },
}


# Pipeline

ARTIFACT_SIEVE = {
    "SEED": config("ARTIFACT_SIEVE_SEED", default=0, cast=int),
    "ISSUE_LABELS": config(
        "ARTIFACT_SIEVE_ISSUE_LABELS", default="bug,defect,regression", cast=Csv()
    ),
    "TOKEN": config("ARTIFACT_SIEVE_TOKEN", default=None),
    "FETCH_RETRIES": config("ARTIFACT_SIEVE_FETCH_RETRIES", default=3, cast=int),
    "FETCH_TIMEOUT": config("ARTIFACT_SIEVE_FETCH_TIMEOUT", default=30, cast=int),
    "PER_PAGE": 100,
}
