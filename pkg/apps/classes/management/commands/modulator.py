from django.conf import settings

from apps.classes.models import ResidualClass
from apps.classes.serializers import write_modulator
from apps.classes.services import find_modulator
from apps.core.management.base import CFCommand


class Command(CFCommand):
    help = 'Find a minimum vertex set whose deletion leaves a cluster or threshold graph'

    def add_arguments(self, parser):
        parser.add_argument('graph', help='graph file')
        parser.add_argument('--class', dest='residual_class', choices=[c.value for c in ResidualClass],
                            required=True, help='class left after deleting the modulator')
        parser.add_argument('--budget', type=int, default=None, help='largest modulator size to try')
        parser.add_argument('--out', help='write the modulator file here')

    def run(self, report, **options):
        g = self.load_graph(options['graph'])
        residual_class = ResidualClass(options['residual_class'])
        budget = settings.CFCOLOR['AUTO_BUDGET'] if options['budget'] is None else options['budget']
        report.add('class', residual_class.value)
        report.add('budget', budget)

        modulator = find_modulator(g, residual_class, budget)
        if modulator is None:
            report.add('modulator', 'none')
            return 1
        report.add('d', modulator.d)
        report.add('modulator', ','.join(str(v) for v in modulator.ordered))
        if options['out']:
            self.write_artifact('modulator', options['out'], write_modulator(modulator))
        return 0
