from apps.coloring.models import Variant
from apps.core.management.base import CFCommand
from apps.oracle.services import decide_cf, exact_cf


class Command(CFCommand):
    help = 'Exact conflict-free chromatic number by exhaustive search (or a yes/no answer for --k)'

    def add_arguments(self, parser):
        self.add_variant_argument(parser)
        parser.add_argument('graph', help='graph file')
        parser.add_argument('--k', type=int, default=None, help='decide colorability with at most k colors')
        parser.add_argument('--limit', type=int, default=None, help='vertex limit (default CFCOLOR_ORACLE_LIMIT)')
        parser.add_argument('--out', help='write the witness coloring here')

    def run(self, report, **options):
        g = self.load_graph(options['graph'])
        variant = Variant.parse(options['variant'])
        report.add('variant', variant.value)

        if options['k'] is not None:
            feasible, witness = decide_cf(g, variant, options['k'], limit=options['limit'])
            report.add('k', options['k'])
            report.add('feasible', feasible)
            if witness is not None:
                self.emit_coloring(witness, options['out'])
            return 0 if feasible else 1

        result = exact_cf(g, variant, limit=options['limit'])
        if result.infeasible:
            report.add('feasible', False)
            report.add('reason', 'isolated vertex, open neighborhood is empty')
            return 1
        report.add('chromatic', result.chromatic)
        report.add('nodes_explored', result.nodes_explored)
        self.emit_coloring(result.witness, options['out'])
        return 0
