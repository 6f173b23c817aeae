from apps.classes.services import recognize
from apps.core.management.base import CFCommand


class Command(CFCommand):
    help = 'Report every graph class the input belongs to, with certificates'

    def add_arguments(self, parser):
        parser.add_argument('graph', help='graph file')
        parser.add_argument('--tree', action='store_true', help='include the cotree of a cograph')

    def run(self, report, **options):
        g = self.load_graph(options['graph'])
        recognition = recognize(g)
        report.add('classes', ' '.join(sorted(label.value for label in recognition.labels)))

        if recognition.bipartition is not None:
            report.add('bipartite.a', recognition.bipartition[0])
            report.add('bipartite.b', recognition.bipartition[1])
        if recognition.cliques is not None:
            for i, clique in enumerate(recognition.cliques):
                report.add(f"cluster.clique.{i}", clique)
        if recognition.split is not None:
            report.add('split.clique', recognition.split.clique)
            report.add('split.independent', recognition.split.independent)
        if recognition.threshold_order is not None:
            report.add('threshold.elimination', [f"{v}:{kind}" for v, kind in recognition.threshold_order])
        if options['tree'] and recognition.decomposition is not None:
            for line in recognition.decomposition.render(g).splitlines():
                report.add('cograph.tree', line)
        return 0
