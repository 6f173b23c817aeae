from apps.classes.models import ResidualClass
from apps.classes.services import bipartition, split_partition
from apps.coloring.models import Variant
from apps.coloring.services import verify
from apps.core.exceptions import PreconditionError, SolverDefectError
from apps.core.management.base import CFCommand
from apps.fpt.approx import approx_threshold
from apps.fpt.services import minimize_via_kernel, solve_via_kernel
from apps.interval.serializers import parse_intervals
from apps.interval.services import solve_interval
from apps.polysolve.services import (
    color_by_components,
    solve_auto,
    solve_bipartite_cfcn,
    solve_lemma1,
    solve_split_cfcn,
    solve_with_tree,
)

STRATEGIES = ('auto', 'bipartite', 'split', 'cograph', 'lemma1', 'interval', 'fpt', 'threshold')


class Command(CFCommand):
    help = 'Compute a conflict-free coloring with the chosen strategy and verify it'

    def add_arguments(self, parser):
        self.add_variant_argument(parser)
        parser.add_argument('graph', help='graph file')
        parser.add_argument('--strategy', choices=STRATEGIES, default='auto')
        parser.add_argument('--intervals', help='interval representation file (interval strategy)')
        self.add_modulator_arguments(parser)
        parser.add_argument('--k', type=int, default=None, help='fpt: decide k-colorability instead of minimizing')
        parser.add_argument('--limit', type=int, default=None, help='oracle vertex limit for auto')
        parser.add_argument('--seed', type=int, default=None, help='recorded in the report; solvers are deterministic')
        parser.add_argument('--out', help='write the coloring here')

    def run(self, report, **options):
        g = self.load_graph(options['graph'])
        variant = Variant.parse(options['variant'])
        strategy = options['strategy']
        report.add('requested_strategy', strategy)
        if options['seed'] is not None:
            report.add('seed', options['seed'])

        if strategy == 'fpt' and options['k'] is not None:
            return self._decide(g, variant, options)

        outcome = getattr(self, f"_solve_{strategy}")(g, variant, options)
        self.report_outcome(outcome, options['out'])
        return 0

    def _closed_only(self, variant, strategy):
        if variant is not Variant.CLOSED:
            raise PreconditionError(f"the {strategy} strategy colors closed neighborhoods only")

    def _solve_auto(self, g, variant, options):
        return solve_auto(g, variant, budget=options['budget'], limit=options['limit'])

    def _solve_bipartite(self, g, variant, options):
        self._closed_only(variant, 'bipartite')
        sides = bipartition(g)
        if sides is None:
            raise PreconditionError("graph is not bipartite")
        return solve_bipartite_cfcn(g, sides)

    def _solve_split(self, g, variant, options):
        self._closed_only(variant, 'split')
        partition = split_partition(g)
        if partition is None:
            raise PreconditionError("graph is not split")
        return solve_split_cfcn(g, partition)

    def _solve_cograph(self, g, variant, options):
        return color_by_components(g, lambda sub: solve_with_tree(sub, variant))

    def _solve_lemma1(self, g, variant, options):
        return solve_lemma1(g, self.resolve_modulator(g, ResidualClass.CLUSTER, options), variant)

    def _solve_interval(self, g, variant, options):
        if not options['intervals']:
            raise PreconditionError("the interval strategy needs --intervals")
        rep = parse_intervals(self.read_input('intervals', options['intervals']), g.n)
        return solve_interval(g, rep, variant)

    def _solve_fpt(self, g, variant, options):
        return minimize_via_kernel(g, self.resolve_modulator(g, ResidualClass.CLUSTER, options), variant)

    def _solve_threshold(self, g, variant, options):
        approximation = approx_threshold(g, self.resolve_modulator(g, ResidualClass.THRESHOLD, options), variant)
        self.report.add('partial_optimum', approximation.partial_optimum)
        self.report.add('fresh_colors', approximation.fresh_colors)
        self.report.add('bound_guaranteed', approximation.bound_guaranteed)
        return approximation.outcome

    def _decide(self, g, variant, options):
        modulator = self.resolve_modulator(g, ResidualClass.CLUSTER, options)
        decision = solve_via_kernel(g, modulator, variant, options['k'])
        self.report.add('variant', variant.value)
        self.report.add('k', options['k'])
        self.report.add('kernel.n', decision.kernel.graph.n)
        self.report.add('kernel.bound', decision.kernel.size_bound)
        self.report.add('feasible', decision.feasible)
        if not decision.feasible:
            return 1
        if not verify(decision.coloring, variant):
            raise SolverDefectError("lifted kernel coloring failed verification")
        self.report.add('colors_used', decision.coloring.size)
        self.report.add('verified', True)
        self.emit_coloring(decision.coloring, options['out'])
        return 0
