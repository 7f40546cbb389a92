from cli.base import ZetaFormsCommand
from cli.forms import BoundsForm
from cli.instances import usage_error
from exact_core.exceptions import ParameterError
from independence_pipeline.bounds import theorem1_bound, theorem3_report
from independence_pipeline.elimination import plan_report, primorial_D, theorem2_choice


class Command(ZetaFormsCommand):
    help = 'Print alpha, beta and the dimension lower bound for (a, N) as JSON.'

    def add_arguments(self, parser):
        parser.add_argument('a', type=int)
        parser.add_argument('N', type=int)
        parser.add_argument('--epsilon', help='Rational epsilon for the elimination and subspace reports')
        parser.add_argument('--precision-bits', type=int, dest='precision_bits')

    def handle(self, *args, **options):
        cleaned = self.validated(BoundsForm({
            'a': options['a'],
            'N': options['N'],
            'epsilon': options['epsilon'] or '',
            'precision_bits': options['precision_bits'],
        }))
        bits = self.precision_bits(cleaned)
        try:
            report = theorem1_bound(cleaned['a'], cleaned['N'], bits).to_json()
            epsilon = cleaned['epsilon']
            if epsilon is not None:
                report['subspace'] = theorem3_report(epsilon, cleaned['a'], bits)
                if epsilon < 1 / 4:
                    plan = primorial_D(epsilon, cleaned['a'])
                    report['elimination'] = {**plan.to_json(), **plan_report(plan), **theorem2_choice(plan)}
        except ParameterError as exc:
            raise usage_error(str(exc))
        self.emit(report)
