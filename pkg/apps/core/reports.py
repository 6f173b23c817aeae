"""Run reports: one ``key: value`` line per entry on stdout."""

import hashlib
import time
from pathlib import Path
from typing import List, Tuple


def digest(data: bytes) -> str:
    return 'sha256:' + hashlib.sha256(data).hexdigest()


class RunReport:
    """Ordered record of one command run.

    ``command`` always comes first and ``elapsed_seconds`` is appended when
    the report is rendered, followed by the artifact paths.
    """

    def __init__(self, command: str):
        self.command = command
        self.entries: List[Tuple[str, str]] = []
        self.artifacts: List[Tuple[str, str]] = []
        self._started = time.perf_counter()

    def add(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = 'yes' if value else 'no'
        elif isinstance(value, (list, tuple, set, frozenset)):
            value = ' '.join(str(v) for v in (sorted(value) if isinstance(value, (set, frozenset)) else value))
        self.entries.append((key, str(value)))

    def input(self, role: str, data: bytes) -> None:
        self.entries.append((f"input.{role}", digest(data)))

    def artifact(self, role: str, path) -> None:
        self.artifacts.append((f"artifact.{role}", str(Path(path))))

    def get(self, key: str):
        return next((value for k, value in self.entries if k == key), None)

    @property
    def elapsed(self) -> float:
        return max(0.0, time.perf_counter() - self._started)

    def render(self) -> str:
        lines = [f"command: {self.command}"]
        lines.extend(f"{key}: {value}" for key, value in self.entries)
        lines.append(f"elapsed_seconds: {self.elapsed:.6f}")
        lines.extend(f"{key}: {value}" for key, value in self.artifacts)
        return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict:
    """Read a rendered report back into a dict (last value wins)"""
    parsed = {}
    for line in text.splitlines():
        key, sep, value = line.partition(': ')
        if sep:
            parsed[key] = value
    return parsed
