"""Shared plumbing for every cfcolor management command.

Subclasses implement ``run(report, **options)`` and return the exit code for
results (0 valid/YES, 1 invalid/NO). Library errors become ``CommandError``
with the exit code carried by the exception.
"""

import logging
import sys
from pathlib import Path
from typing import Optional

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

import cfcolor
from apps.classes.models import Modulator, ResidualClass
from apps.classes.serializers import parse_modulator, parse_vertex_list
from apps.classes.services import cluster_modulator, threshold_modulator
from apps.coloring.models import Coloring, SolveOutcome, Variant
from apps.coloring.serializers import parse_coloring, write_coloring
from apps.coloring.services import verify
from apps.core.exceptions import CFColorError, FormatError, PreconditionError, SolverDefectError
from apps.core.reports import RunReport
from apps.graphs.models import Graph
from apps.graphs.serializers import parse_graph

logger = logging.getLogger(__name__)


class CFCommand(BaseCommand):
    requires_system_checks = []
    requires_migrations_checks = False

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.exit_code = 0
        self.report: Optional[RunReport] = None

    @property
    def name(self) -> str:
        return self.__class__.__module__.rsplit('.', 1)[-1]

    def get_version(self):
        return cfcolor.__version__

    def run(self, report: RunReport, **options) -> int:
        raise NotImplementedError

    def handle(self, *args, **options):
        self.exit_code = 0
        self.report = RunReport(self.name)
        try:
            self.exit_code = self.run(self.report, **options) or 0
        except CFColorError as e:
            logger.error(f"{self.name}: {e}")
            self._fail(str(e), e.exit_code)
        except OSError as e:
            logger.error(f"{self.name}: {e}")
            self._fail(f"{e.filename or 'I/O'}: {e.strerror or e}", 2)
        self.report.add('exit_code', self.exit_code)
        self.stdout.write(self.report.render(), ending='')

    def _fail(self, message: str, code: int):
        self.report.add('error', message)
        self.report.add('exit_code', code)
        self.stdout.write(self.report.render(), ending='')
        raise CommandError(message, returncode=code)

    def run_from_argv(self, argv):
        super().run_from_argv(argv)
        if self.exit_code:
            sys.exit(self.exit_code)

    # -- arguments ----------------------------------------------------------

    @staticmethod
    def add_variant_argument(parser, required=True):
        parser.add_argument('--variant', choices=[v.value for v in Variant], required=required,
                            default=None if required else Variant.CLOSED.value,
                            help='cn = closed neighborhoods, on = open neighborhoods')

    @staticmethod
    def add_modulator_arguments(parser):
        parser.add_argument('--modulator', default='auto',
                            help='comma-separated vertex list, or "auto" to search for a minimum one')
        parser.add_argument('--modulator-file', help='modulator file (class line plus x lines)')
        parser.add_argument('--budget', type=int, default=None,
                            help='largest modulator to search for with --modulator auto')

    # -- input and output ---------------------------------------------------

    def read_input(self, role: str, path) -> str:
        data = Path(path).read_bytes()
        self.report.input(role, data)
        try:
            return data.decode('utf-8')
        except UnicodeDecodeError:
            raise FormatError(f"{path} is not UTF-8 text")

    def load_graph(self, path, role='graph') -> Graph:
        g = parse_graph(self.read_input(role, path))
        self.report.add(f"{role}.n", g.n)
        self.report.add(f"{role}.m", g.m)
        return g

    def load_coloring(self, path, host: Graph) -> Coloring:
        return parse_coloring(self.read_input('coloring', path), host)

    def write_artifact(self, role: str, path, text: str) -> None:
        Path(path).write_text(text, encoding='utf-8')
        self.report.artifact(role, path)
        logger.debug(f"wrote {role} to {path}")

    def resolve_modulator(self, g: Graph, residual_class: ResidualClass, options) -> Modulator:
        given = options.get('modulator') or 'auto'
        if options.get('modulator_file'):
            modulator = parse_modulator(self.read_input('modulator', options['modulator_file']), g, residual_class)
        elif given.strip().lower() != 'auto':
            modulator = parse_vertex_list(given, g, residual_class)
        else:
            budget = options.get('budget')
            budget = settings.CFCOLOR['AUTO_BUDGET'] if budget is None else budget
            search = cluster_modulator if residual_class is ResidualClass.CLUSTER else threshold_modulator
            modulator = search(g, budget)
            if modulator is None:
                raise PreconditionError(f"no {residual_class.value} modulator of size at most {budget}")
        self.report.add('modulator.class', modulator.residual_class.value)
        self.report.add('modulator.d', modulator.d)
        self.report.add('modulator.vertices', modulator.ordered)
        return modulator

    def emit_coloring(self, coloring: Coloring, out=None) -> None:
        if out:
            self.write_artifact('coloring', out, write_coloring(coloring))
        else:
            self.report.add('coloring', coloring.assignment)

    def report_outcome(self, outcome: SolveOutcome, out=None) -> None:
        """Re-verify, then record the outcome and its coloring"""
        verdict = verify(outcome.coloring, outcome.variant)
        if not verdict:
            raise SolverDefectError(f"strategy {outcome.strategy} returned an invalid coloring: {verdict}")
        self.report.add('variant', outcome.variant.value)
        self.report.add('strategy', outcome.strategy)
        self.report.add('colors_used', outcome.colors_used)
        self.report.add('optimality', outcome.optimality.value)
        self.report.add('verified', True)
        for note in outcome.notes:
            self.report.add('note', note)
        self.emit_coloring(outcome.coloring, out)
