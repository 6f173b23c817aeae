from apps.coloring.models import Variant
from apps.coloring.services import verify
from apps.core.management.base import CFCommand


class Command(CFCommand):
    help = 'Check that a coloring is conflict-free for closed (cn) or open (on) neighborhoods'

    def add_arguments(self, parser):
        self.add_variant_argument(parser)
        parser.add_argument('graph', help='graph file')
        parser.add_argument('coloring', help='coloring file')

    def run(self, report, **options):
        g = self.load_graph(options['graph'])
        coloring = self.load_coloring(options['coloring'], g)
        verdict = verify(coloring, Variant.parse(options['variant']))

        report.add('variant', verdict.variant.value)
        report.add('colors_used', coloring.size)
        report.add('valid', verdict.valid)
        if not verdict:
            report.add('failing_vertex', verdict.failing_vertex)
            return 1
        return 0
