import io
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

import cfcolor
from apps.classes.management.commands.modulator import Command as ModulatorCommand
from apps.coloring.management.commands.verify import Command as VerifyCommand
from apps.coloring.models import Variant
from apps.coloring.serializers import parse_coloring
from apps.coloring.services import verify
from apps.graphs.serializers import parse_graph
from apps.oracle.management.commands.oracle import Command as OracleCommand
from apps.polysolve.management.commands.solve import Command as SolveCommand
from cfcolor.cli import dispatch

from .exceptions import (
    CFColorError,
    FormatError,
    InfeasibleError,
    PreconditionError,
    SizeGuardError,
    SolverDefectError,
)
from .reports import RunReport, digest, parse_report

K2 = "p cf 2 1\ne 0 1\n"
P3 = "p cf 3 2\ne 0 1\ne 1 2\n"
P4 = "p cf 4 3\ne 0 1\ne 1 2\ne 2 3\n"
C5 = "p cf 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 0 4\n"
K3 = "p cf 3 3\ne 0 1\ne 0 2\ne 1 2\n"
STAR5 = "p cf 6 5\ne 0 1\ne 0 2\ne 0 3\ne 0 4\ne 0 5\n"


class ReportTestCase(SimpleTestCase):
    """Test cases for run reports"""

    def test_render_order(self):
        """Test command first, then entries, elapsed time and artifacts"""
        report = RunReport('verify')
        report.artifact('coloring', 'out.col')
        report.add('valid', True)
        report.add('vertices', frozenset({2, 0}))
        lines = report.render().splitlines()
        self.assertEqual(lines[0], 'command: verify')
        self.assertEqual(lines[1:3], ['valid: yes', 'vertices: 0 2'])
        self.assertTrue(lines[3].startswith('elapsed_seconds: '))
        self.assertEqual(lines[4], 'artifact.coloring: out.col')

    def test_inputs_are_digested(self):
        """Test inputs are recorded as sha256 digests"""
        report = RunReport('oracle')
        report.input('graph', b'p cf 1 0\n')
        self.assertEqual(report.get('input.graph'), digest(b'p cf 1 0\n'))
        self.assertTrue(report.get('input.graph').startswith('sha256:'))
        self.assertEqual(parse_report(report.render())['command'], 'oracle')


class ExceptionTestCase(SimpleTestCase):
    """Test cases for the error hierarchy"""

    def test_exit_codes(self):
        """Test every error maps to its exit code"""
        self.assertEqual(FormatError('bad', line=3).exit_code, 2)
        self.assertEqual(str(FormatError('bad', line=3)), 'line 3: bad')
        self.assertEqual(PreconditionError('x').exit_code, 2)
        self.assertEqual(InfeasibleError('x').exit_code, 1)
        self.assertEqual(SizeGuardError(20, 16).exit_code, 3)
        self.assertEqual(SolverDefectError('x').exit_code, 4)
        self.assertTrue(issubclass(SizeGuardError, CFColorError))


class CommandTestCase(SimpleTestCase):
    """Shared temporary directory for command tests"""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def write(self, name: str, text: str) -> str:
        path = self.tmp / name
        path.write_text(text, encoding='utf-8')
        return str(path)

    def run_command(self, command, *args, **options):
        out = io.StringIO()
        call_command(command, *args, stdout=out, **options)
        return parse_report(out.getvalue())

    def fails_with(self, code, command, *args, **options):
        with self.assertRaises(CommandError) as ctx:
            self.run_command(command, *args, **options)
        self.assertEqual(ctx.exception.returncode, code)

    def quiet(self, argv):
        with redirect_stdout(io.StringIO()) as out, redirect_stderr(io.StringIO()):
            code = dispatch(argv)
        return code, out.getvalue()


class DispatchTestCase(CommandTestCase):
    """Test cases for the top-level dispatcher"""

    def test_usage(self):
        """Test no subcommand is a usage error and help succeeds"""
        self.assertEqual(self.quiet(['manage.py'])[0], 2)
        code, out = self.quiet(['manage.py', 'help'])
        self.assertEqual(code, 0)
        self.assertIn('verify', out)

    def test_version(self):
        """Test --version prints the package version"""
        code, out = self.quiet(['manage.py', '--version'])
        self.assertEqual(code, 0)
        self.assertEqual(out.strip(), cfcolor.__version__)

    def test_unknown_subcommand(self):
        """Test an unknown subcommand exits 2"""
        self.assertEqual(self.quiet(['manage.py', 'runserver'])[0], 2)

    def test_exit_codes_pass_through(self):
        """Test valid, invalid and malformed inputs exit 0, 1 and 2"""
        graph = self.write('k2.graph', K2)
        good = self.write('good.col', "v 0 0\nv 1 1\n")
        bad = self.write('bad.col', "v 0 0\nv 1 0\n")
        broken = self.write('broken.col', "v 0 0\n")
        for coloring, code in [(good, 0), (bad, 1), (broken, 2)]:
            with self.subTest(coloring=coloring):
                self.assertEqual(self.quiet(['manage.py', 'verify', '--variant', 'cn', graph, coloring])[0], code)

    def test_size_guard_exit(self):
        """Test the oracle size guard exits 3"""
        graph = self.write('c5.graph', C5)
        self.assertEqual(self.quiet(['manage.py', 'oracle', '--variant', 'cn', '--limit', '4', graph])[0], 3)


class VerifyCommandTestCase(CommandTestCase):
    """Test cases for the verify command"""

    def test_valid(self):
        """Test a valid coloring of K2"""
        report = self.run_command('verify', self.write('g', K2), self.write('c', "v 0 0\nv 1 1\n"), variant='cn')
        self.assertEqual(report['valid'], 'yes')
        self.assertEqual(report['exit_code'], '0')
        self.assertTrue(report['input.graph'].startswith('sha256:'))

    def test_invalid_reports_vertex(self):
        """Test the failing vertex is reported with exit code 1"""
        command = VerifyCommand()
        out = io.StringIO()
        call_command(command, self.write('g', K2), self.write('c', "v 0 0\nv 1 0\n"), variant='cn', stdout=out)
        report = parse_report(out.getvalue())
        self.assertEqual(command.exit_code, 1)
        self.assertEqual(report['failing_vertex'], '0')

    def test_open_variant(self):
        """Test the same coloring is valid for open neighborhoods"""
        report = self.run_command('verify', self.write('g', K2), self.write('c', "v 0 0\nv 1 0\n"), variant='on')
        self.assertEqual(report['valid'], 'yes')

    def test_missing_file(self):
        """Test an unreadable file is an input error"""
        self.fails_with(2, 'verify', str(self.tmp / 'nope'), str(self.tmp / 'nope'), variant='cn')


class OracleCommandTestCase(CommandTestCase):
    """Test cases for the oracle command"""

    def test_chromatic(self):
        """Test P3 has CF-CN chromatic number 2 and a witness file is written"""
        out = self.tmp / 'witness.col'
        report = self.run_command('oracle', self.write('g', P3), variant='cn', out=str(out))
        self.assertEqual(report['chromatic'], '2')
        witness = parse_coloring(out.read_text(), parse_graph(P3))
        self.assertTrue(verify(witness, Variant.CLOSED))

    def test_decision(self):
        """Test K3 has no open two-coloring"""
        command = OracleCommand()
        call_command(command, self.write('g', K3), variant='on', k=2, stdout=io.StringIO())
        self.assertEqual(command.exit_code, 1)

    def test_isolated_vertex(self):
        """Test an isolated vertex is infeasible for open neighborhoods"""
        command = OracleCommand()
        out = io.StringIO()
        call_command(command, self.write('g', "p cf 1 0\n"), variant='on', stdout=out)
        self.assertEqual(command.exit_code, 1)
        self.assertEqual(parse_report(out.getvalue())['feasible'], 'no')

    @override_settings(CFCOLOR={'ORACLE_LIMIT': 3})
    def test_guard_from_settings(self):
        """Test the default limit comes from settings"""
        self.fails_with(3, 'oracle', self.write('g', P4), variant='cn')


class SolveCommandTestCase(CommandTestCase):
    """Test cases for the solve command"""

    def test_auto_then_verify(self):
        """Test an auto coloring written to disk verifies"""
        graph = self.write('p4.graph', P4)
        out = self.tmp / 'p4.col'
        report = self.run_command('solve', graph, variant='cn', out=str(out))
        self.assertEqual(report['strategy'], 'split')
        self.assertEqual(report['colors_used'], '2')
        self.assertEqual(report['optimality'], 'exact')
        self.assertEqual(report['artifact.coloring'], str(out))
        self.assertEqual(self.run_command('verify', graph, str(out), variant='cn')['valid'], 'yes')

    def test_interval_strategy(self):
        """Test the interval sweep reads its representation"""
        intervals = self.write('p4.int', "i 0 0 2\ni 1 1 4\ni 2 3 6\ni 3 5 7\n")
        report = self.run_command('solve', self.write('g', P4), variant='cn', strategy='interval', intervals=intervals)
        self.assertEqual(report['coloring'], '1 2 3 1')

    def test_interval_needs_representation(self):
        """Test the interval strategy without --intervals"""
        self.fails_with(2, 'solve', self.write('g', P4), variant='cn', strategy='interval')

    def test_split_refuses_open(self):
        """Test closed-only strategies refuse open neighborhoods"""
        self.fails_with(2, 'solve', self.write('g', P4), variant='on', strategy='split')

    def test_threshold_strategy(self):
        """Test the threshold approximation reports its lower bound"""
        report = self.run_command('solve', self.write('g', C5), variant='cn', strategy='threshold', budget=2)
        self.assertIn('partial_optimum', report)
        self.assertEqual(report['verified'], 'yes')

    def test_fpt_decision(self):
        """Test fpt with --k answers through the kernel"""
        command = SolveCommand()
        out = io.StringIO()
        call_command(command, self.write('g', STAR5), variant='cn', strategy='fpt', k=1, budget=1, stdout=out)
        self.assertEqual(command.exit_code, 1)
        report = self.run_command('solve', self.write('g', STAR5), variant='cn', strategy='fpt', k=2, budget=1)
        self.assertEqual(report['feasible'], 'yes')

    def test_infeasible_open(self):
        """Test an isolated vertex exits 1 under open neighborhoods"""
        self.fails_with(1, 'solve', self.write('g', "p cf 2 0\n"), variant='on')


class ClassCommandTestCase(CommandTestCase):
    """Test cases for recognize and modulator"""

    def test_recognize(self):
        """Test P4 is bipartite and split with certificates"""
        report = self.run_command('recognize', self.write('g', P4))
        self.assertEqual(report['classes'], 'bipartite split')
        self.assertEqual(report['split.clique'], '1 2')

    def test_recognize_tree(self):
        """Test --tree prints the cotree"""
        report = self.run_command('recognize', self.write('g', P3), tree=True)
        self.assertIn('cograph.tree', report)

    def test_modulator(self):
        """Test C5 needs two deletions to become a cluster graph"""
        command = ModulatorCommand()
        out = io.StringIO()
        call_command(command, self.write('g', C5), residual_class='cluster', budget=1, stdout=out)
        self.assertEqual(command.exit_code, 1)
        self.assertEqual(parse_report(out.getvalue())['modulator'], 'none')
        path = self.tmp / 'c5.mod'
        report = self.run_command('modulator', self.write('g', C5), residual_class='cluster', budget=2,
                                  out=str(path))
        self.assertEqual(report['d'], '2')
        self.assertEqual(report['modulator'], '0,2')
        self.assertIn('class cluster', path.read_text())

    def test_modulator_from_argv(self):
        """Test the --class option on the command line, found and not found"""
        graph = self.write('c5.graph', C5)
        code, out = self.quiet(['manage.py', 'modulator', '--class', 'cluster', '--budget', '1', graph])
        self.assertEqual(code, 1)
        self.assertEqual(parse_report(out)['modulator'], 'none')
        code, out = self.quiet(['manage.py', 'modulator', '--class', 'threshold', '--budget', '2', graph])
        self.assertEqual(code, 0)
        self.assertEqual(parse_report(out)['class'], 'threshold')
        self.assertNotEqual(parse_report(out)['modulator'], 'none')

    def test_modulator_file_feeds_solve(self):
        """Test a written modulator file drives the lemma1 strategy"""
        graph = self.write('g', C5)
        mod = self.tmp / 'c5.mod'
        self.run_command('modulator', graph, residual_class='cluster', budget=2, out=str(mod))
        report = self.run_command('solve', graph, variant='on', strategy='lemma1', modulator_file=str(mod))
        self.assertEqual(report['modulator.d'], '2')
        self.assertEqual(report['strategy'], 'lemma1')

    def test_modulator_vertex_list(self):
        """Test --modulator takes a comma-separated vertex list or auto"""
        graph = self.write('g', C5)
        report = self.run_command('solve', graph, variant='cn', strategy='lemma1', modulator='1,3')
        self.assertEqual(report['modulator.vertices'], '1 3')
        report = self.run_command('solve', graph, variant='cn', strategy='lemma1', modulator='auto', budget=2)
        self.assertEqual(report['modulator.vertices'], '0 2')

    def test_bad_vertex_list(self):
        """Test malformed, out-of-range and non-modulator vertex lists exit 2"""
        graph = self.write('g', C5)
        for value in ('1,x', '1,9', '1,1', '0'):
            with self.subTest(modulator=value):
                self.fails_with(2, 'solve', graph, variant='cn', strategy='lemma1', modulator=value)


class KernelizeCommandTestCase(CommandTestCase):
    """Test cases for the kernelize command"""

    def test_kernel_and_lift(self):
        """Test the star kernel is written and a kernel coloring lifts back"""
        kernel_path = self.tmp / 'kernel.graph'
        lifted_path = self.tmp / 'lifted.col'
        lift = self.write('kernel.col', "v 0 1\nv 1 0\nv 2 0\n")
        report = self.run_command(
            'kernelize', self.write('g', STAR5), variant='cn', k=2, budget=1,
            out=str(kernel_path), provenance=str(self.tmp / 'prov'), lift=lift, lift_out=str(lifted_path),
        )
        self.assertEqual(report['kernel.n'], '3')
        self.assertEqual(report['deleted_cliques'], '3')
        self.assertEqual(report['lifted.valid'], 'yes')
        self.assertEqual(parse_graph(kernel_path.read_text()).n, 3)
        lifted = parse_coloring(lifted_path.read_text(), parse_graph(STAR5))
        self.assertTrue(verify(lifted, Variant.CLOSED))

    def test_explicit_modulator(self):
        """Test --modulator 0 on the star gives the same kernel as the search"""
        report = self.run_command('kernelize', self.write('g', STAR5), variant='cn', k=2, modulator='0')
        self.assertEqual(report['modulator.vertices'], '0')
        self.assertEqual(report['kernel.n'], '3')

    def test_argv_vertex_list(self):
        """Test a vertex list given on the command line is used as the modulator"""
        graph = self.write('g', STAR5)
        code, out = self.quiet(['manage.py', 'kernelize', '--variant', 'cn', '--k', '2', '--modulator', '0', graph])
        self.assertEqual(code, 0)
        self.assertEqual(parse_report(out)['modulator.d'], '1')


class GadgetCommandTestCase(CommandTestCase):
    """Test cases for the gadget command"""

    def test_encode(self):
        """Test the K3 gadget and its map"""
        out, sidecar = self.tmp / 'h.graph', self.tmp / 'h.map'
        report = self.run_command('gadget', 'encode', self.write('g', K3), out=str(out), map=str(sidecar))
        self.assertEqual(report['gadget.n'], '15')
        self.assertEqual(parse_graph(out.read_text()).m, 30)
        self.assertIn('x 3', sidecar.read_text())

    def test_validate(self):
        """Test both sides agree on K3"""
        report = self.run_command('gadget', 'validate', self.write('g', K3))
        self.assertEqual(report['agree'], 'yes')

    def test_small_k(self):
        """Test k below three is a precondition error"""
        self.fails_with(2, 'gadget', 'encode', self.write('g', K3), k=2)


class GeneratorCommandTestCase(CommandTestCase):
    """Test cases for gen and sweep"""

    def test_gen_with_modulator(self):
        """Test a generated cluster+modulator graph and its modulator file"""
        out, mod = self.tmp / 'g.graph', self.tmp / 'g.mod'
        report = self.run_command('gen', graph_class='cluster+modulator', n=7, d=2, seed=4,
                                  out=str(out), modulator_out=str(mod))
        self.assertEqual(parse_graph(out.read_text()).n, 7)
        self.assertEqual(report['modulator.vertices'], '5 6')
        self.assertTrue(mod.exists())

    def test_gen_rejects_bad_cliques(self):
        """Test malformed clique sizes"""
        self.fails_with(2, 'gen', graph_class='cluster', n=4, cliques='2,x', out=str(self.tmp / 'g'))

    def test_sweep(self):
        """Test a split sweep writes its table and finds no gap"""
        table = self.tmp / 'sweep.csv'
        report = self.run_command('sweep', variant='cn', strategy='split', family='atlas', graph_class='split',
                                  max_n=4, jobs=1, csv=str(table))
        self.assertEqual(report['status.ok'], '8')
        self.assertEqual(report['max_gap'], '0')
        self.assertEqual(report['exit_code'], '0')
        self.assertTrue(table.read_text().startswith('label,'))
