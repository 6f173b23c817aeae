from apps.core.management.base import CFCommand
from apps.graphs.serializers import write_graph
from apps.hardness.serializers import write_gadget_map
from apps.hardness.services import cross_validate, encode


class Command(CFCommand):
    help = 'Build the split graph H for (G, k), or check G k-colorable iff H CF-ON (k+2)-colorable'

    def add_arguments(self, parser):
        parser.add_argument('action', choices=['encode', 'validate'])
        parser.add_argument('graph', help='graph file for G')
        parser.add_argument('--k', type=int, default=3, help='colors for G (at least 3)')
        parser.add_argument('--out', help='encode: write H here')
        parser.add_argument('--map', help='encode: write the vertex map sidecar here')
        parser.add_argument('--limit', type=int, default=None, help='validate: largest H (default CFCOLOR_HARDNESS_LIMIT)')

    def run(self, report, **options):
        g = self.load_graph(options['graph'])
        report.add('action', options['action'])
        report.add('k', options['k'])

        if options['action'] == 'encode':
            inst = encode(g, options['k'])
            report.add('gadget.n', inst.graph.n)
            report.add('gadget.m', inst.graph.m)
            report.add('gadget.x', inst.x)
            report.add('gadget.y', inst.y)
            if options['out']:
                comments = [f"CF-ON gadget for k={inst.k}; clique side 0..{inst.y}"]
                self.write_artifact('gadget', options['out'], write_graph(inst.graph, comments))
            if options['map']:
                self.write_artifact('map', options['map'], write_gadget_map(inst))
            return 0

        result = cross_validate(g, options['k'], limit=options['limit'])
        report.add('gadget.n', result.instance.graph.n)
        report.add('source_colorable', result.source_colorable)
        report.add('gadget_colorable', result.gadget_colorable)
        report.add('agree', result.agree)
        if not result.agree:
            report.add('defect', 'the two sides of the reduction disagree')
            return 4
        return 0
