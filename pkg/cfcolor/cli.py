"""Command-line entry point: ``manage.py <subcommand> ...``.

Returns the process exit code instead of raising SystemExit so it can be
called from tests and wrapper scripts.
"""

import os
import sys
from typing import List, Optional

import cfcolor

SUBCOMMANDS = (
    'verify', 'oracle', 'solve', 'recognize', 'modulator',
    'kernelize', 'gadget', 'gen', 'sweep',
)

USAGE = f"usage: manage.py <subcommand> [options]\nsubcommands: {', '.join(SUBCOMMANDS)}\n"


def dispatch(argv: Optional[List[str]] = None) -> int:
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'cfcolor.settings')
    argv = list(sys.argv if argv is None else argv)

    if len(argv) < 2 or argv[1] in ('-h', '--help', 'help'):
        sys.stdout.write(USAGE)
        return 0 if len(argv) >= 2 else 2
    if argv[1] == '--version':
        sys.stdout.write(f"{cfcolor.__version__}\n")
        return 0
    if argv[1] not in SUBCOMMANDS:
        sys.stderr.write(f"unknown subcommand {argv[1]!r}\n{USAGE}")
        return 2

    from django.core.management import execute_from_command_line
    try:
        execute_from_command_line(argv)
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 2
    return 0
