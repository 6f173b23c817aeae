from apps.classes.models import Modulator, ResidualClass
from apps.classes.serializers import write_modulator
from apps.coloring.models import Variant
from apps.coloring.serializers import parse_coloring, write_coloring
from apps.coloring.services import verify
from apps.core.management.base import CFCommand
from apps.fpt.serializers import write_provenance
from apps.fpt.services import lift_coloring, reduce_instance
from apps.graphs.serializers import write_graph


class Command(CFCommand):
    help = 'Reduce a graph with a cluster modulator to a kernel, or lift a kernel coloring back'

    def add_arguments(self, parser):
        self.add_variant_argument(parser)
        parser.add_argument('graph', help='graph file')
        parser.add_argument('--k', type=int, required=True, help='number of colors asked for')
        self.add_modulator_arguments(parser)
        parser.add_argument('--out', help='write the kernel graph here')
        parser.add_argument('--provenance', help='write the provenance sidecar here')
        parser.add_argument('--kernel-modulator', help='write the modulator in kernel ids here')
        parser.add_argument('--lift', help='kernel coloring to lift back to the input graph')
        parser.add_argument('--lift-out', help='write the lifted coloring here')

    def run(self, report, **options):
        g = self.load_graph(options['graph'])
        variant = Variant.parse(options['variant'])
        modulator = self.resolve_modulator(g, ResidualClass.CLUSTER, options)
        kernel = reduce_instance(g, modulator, variant, options['k'])

        report.add('variant', variant.value)
        report.add('k', kernel.k)
        report.add('type_cap', kernel.cap)
        report.add('kernel.n', kernel.graph.n)
        report.add('kernel.m', kernel.graph.m)
        report.add('kernel.bound', kernel.size_bound)
        report.add('deleted_vertices', len(kernel.deleted_vertices))
        report.add('deleted_cliques', len(kernel.deleted_cliques))
        report.add('shortcut', kernel.shortcut is not None)

        if options['out']:
            comments = [f"kernel of a {g.n}-vertex graph, {variant.value}, k={kernel.k}"]
            self.write_artifact('kernel', options['out'], write_graph(kernel.graph, comments))
        if options['provenance']:
            self.write_artifact('provenance', options['provenance'], write_provenance(kernel))
        if options['kernel_modulator']:
            relabeled = Modulator(kernel.kernel_modulator, ResidualClass.CLUSTER)
            self.write_artifact('kernel_modulator', options['kernel_modulator'], write_modulator(relabeled))

        if options['lift']:
            kernel_coloring = parse_coloring(self.read_input('kernel_coloring', options['lift']), kernel.graph)
            lifted = lift_coloring(kernel, kernel_coloring)
            verdict = verify(lifted, variant)
            report.add('lifted.colors_used', lifted.size)
            report.add('lifted.valid', verdict.valid)
            if options['lift_out']:
                self.write_artifact('lifted', options['lift_out'], write_coloring(lifted))
            return 0 if verdict else 1
        return 0