from django.conf import settings

from apps.classes.serializers import write_modulator
from apps.core.exceptions import PreconditionError
from apps.core.management.base import CFCommand
from apps.generators.models import GenClass, GenSpec
from apps.generators.services import gen
from apps.graphs.serializers import write_graph
from apps.interval.serializers import write_intervals


def clique_sizes(value: str):
    try:
        return tuple(int(part) for part in value.split(',') if part.strip())
    except ValueError:
        raise PreconditionError(f"--cliques takes comma-separated integers, got {value!r}")


class Command(CFCommand):
    help = 'Generate a seeded random instance of a graph class, with its certificate'

    def add_arguments(self, parser):
        parser.add_argument('--class', dest='graph_class', choices=[c.value for c in GenClass], required=True)
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--seed', type=int, default=None, help='default CFCOLOR_SEED')
        parser.add_argument('--d', type=int, default=0, help='modulator size for the +modulator classes')
        parser.add_argument('--cliques', default='', help='comma-separated clique sizes')
        parser.add_argument('--p', type=float, default=0.5, help='edge probability')
        parser.add_argument('--connected', action='store_true', help='redraw until connected')
        parser.add_argument('--out', required=True, help='write the graph here')
        parser.add_argument('--intervals-out', help='interval class: write the representation here')
        parser.add_argument('--modulator-out', help='+modulator classes: write X here')

    def run(self, report, **options):
        seed = settings.CFCOLOR['SEED'] if options['seed'] is None else options['seed']
        spec = GenSpec(
            graph_class=GenClass.parse(options['graph_class']),
            n=options['n'],
            seed=seed,
            d=options['d'],
            clique_sizes=clique_sizes(options['cliques']),
            p=options['p'],
            connected=options['connected'],
        )
        instance = gen(spec)
        g = instance.graph

        report.add('class', spec.graph_class.value)
        report.add('seed', seed)
        report.add('graph.n', g.n)
        report.add('graph.m', g.m)
        report.add('attempts', instance.attempts)
        if instance.partition is not None:
            report.add('split.clique', instance.partition.clique)
        if instance.sides is not None:
            report.add('bipartite.a', instance.sides[0])
        if instance.creation is not None:
            report.add('threshold.creation', [f"{v}:{kind}" for v, kind in instance.creation])
        if instance.modulator is not None:
            report.add('modulator.vertices', instance.modulator.ordered)

        comments = [f"generated {spec.graph_class.value} n={spec.n} seed={seed}"]
        self.write_artifact('graph', options['out'], write_graph(g, comments))
        if instance.representation is not None and options['intervals_out']:
            self.write_artifact('intervals', options['intervals_out'], write_intervals(instance.representation))
        if instance.modulator is not None and options['modulator_out']:
            self.write_artifact('modulator', options['modulator_out'], write_modulator(instance.modulator))
        return 0
