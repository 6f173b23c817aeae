from django.conf import settings

from apps.coloring.models import Variant
from apps.core.management.base import CFCommand
from apps.generators.models import GenClass
from apps.generators.sweeps import FAMILIES, STRATEGIES, SweepConfig, build_cases, run_sweep, summarize


class Command(CFCommand):
    help = 'Run a strategy over an instance family and compare it with the exhaustive oracle'

    def add_arguments(self, parser):
        self.add_variant_argument(parser)
        parser.add_argument('--strategy', choices=STRATEGIES, default='auto')
        parser.add_argument('--family', choices=FAMILIES, default='atlas')
        parser.add_argument('--class', dest='graph_class', default=None,
                            help='class filter (atlas) or generator class (random): '
                                 + ', '.join(c.value for c in GenClass))
        parser.add_argument('--min-n', type=int, default=2)
        parser.add_argument('--max-n', type=int, default=5)
        parser.add_argument('--count', type=int, default=100, help='random family: number of instances')
        parser.add_argument('--seed', type=int, default=None, help='random family: first seed (default CFCOLOR_SEED)')
        parser.add_argument('--d', type=int, default=1, help='random family: modulator size')
        parser.add_argument('--p', type=float, default=0.5, help='random family: edge probability')
        parser.add_argument('--jobs', type=int, default=None, help='parallel workers (default CFCOLOR_JOBS)')
        parser.add_argument('--csv', help='write one row per case here')

    def run(self, report, **options):
        config = SweepConfig(
            oracle_limit=settings.CFCOLOR['ORACLE_LIMIT'],
            kernel_limit=settings.CFCOLOR['KERNEL_ORACLE_LIMIT'],
            budget=settings.CFCOLOR['AUTO_BUDGET'],
        )
        jobs = settings.CFCOLOR['JOBS'] if options['jobs'] is None else options['jobs']
        seed = settings.CFCOLOR['SEED'] if options['seed'] is None else options['seed']
        variant = Variant.parse(options['variant'])

        cases = list(build_cases(
            options['family'],
            options['strategy'],
            variant,
            graph_class=options['graph_class'],
            min_n=options['min_n'],
            max_n=options['max_n'],
            count=options['count'],
            seed=seed,
            d=options['d'],
            p=options['p'],
        ))
        report.add('family', options['family'])
        report.add('strategy', options['strategy'])
        report.add('variant', variant.value)
        report.add('seed', seed)
        report.add('jobs', jobs)

        frame = run_sweep(cases, config, jobs=jobs)
        summary = summarize(frame)
        for key, value in summary.items():
            report.add(key, value)
        if options['csv']:
            frame.to_csv(options['csv'], index=False)
            report.artifact('table', options['csv'])

        if summary['status.defect']:
            return 4
        if summary['status.bound']:
            return 1
        return 0
