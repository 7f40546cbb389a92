from analytic_eval.balls import PrecisionContext
from cli.base import ZetaFormsCommand
from cli.forms import PlanForm
from cli.instances import load_json, usage_error
from exact_core.exceptions import ParameterError
from hyper_forms.fourier import PeriodicFunction
from independence_pipeline.elimination import check_g_identity
from independence_pipeline.fsz import fsz_equivalence


class Command(ZetaFormsCommand):
    help = 'Compare the linear forms of an elimination plan with their triple-sum expression.'

    def add_arguments(self, parser):
        parser.add_argument('plan', help='Plan JSON file {epsilon, a, D, divisors, delta, exponents, w}')
        parser.add_argument('--n', required=True, help='Comma-separated multiples of 2D')
        parser.add_argument('--r', type=int)
        parser.add_argument('--p', type=int, help='Parity (default a mod 2)')
        parser.add_argument('--relaxed', action='store_true')
        parser.add_argument('--precision-bits', type=int, dest='precision_bits')

    def handle(self, *args, **options):
        cleaned = self.validated(PlanForm({
            'plan': load_json(options['plan']),
            'n': options['n'],
            'r': options['r'],
            'p': options['p'],
            'relaxed': options['relaxed'],
        }))
        plan = cleaned['plan']
        f = PeriodicFunction.constant()
        try:
            ctx = PrecisionContext(bits=self.precision_bits(options))
            results = []
            for params in cleaned['instances']:
                result = fsz_equivalence(params, plan, ctx)
                results.append({'n': params.n, **result.to_json()})
        except ParameterError as exc:
            raise usage_error(str(exc))
        g_identity = {str(i): agree for i, (agree, _) in check_g_identity(f, plan, ctx).items()}
        holds = all(r['holds'] for r in results) and all(g_identity.values())
        self.emit({
            'plan': plan.to_json(),
            'results': results,
            'g_identity': g_identity,
            'status': 'pass' if holds else 'fail',
        })
        if not holds:
            raise self.check_failure(f'triple-sum identity fails for the plan with D={plan.D}')
