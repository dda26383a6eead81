"""
Entry point for the ``artifact-sieve`` console script.

Every pipeline step is a Django management command, so the executable is a
thin wrapper around ``execute_from_command_line`` with the project settings
preselected.
"""

import os
import sys


def main(argv=None):
    """Run a pipeline command, e.g. ``artifact-sieve train --dataset ...``."""
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    execute_from_command_line(argv if argv is not None else sys.argv)
