#!/usr/bin/env python
"""Command-line utility for the cfcolor solvers."""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'cfcolor.settings')
    try:
        import django  # noqa: F401
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    from cfcolor.cli import dispatch
    sys.exit(dispatch(sys.argv))


if __name__ == '__main__':
    main()
