import json
import tempfile
from functools import lru_cache
from io import StringIO
from pathlib import Path

import openpyxl
from django.apps import apps
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings
from mpmath import mpf

from hyper_forms.fourier import PeriodicFunction
from hyper_forms.params import Params
from independence_pipeline.bounds import alpha_beta

from .certificates import build_certificate, write_atomic
from .forms import CHECKS, SWEEP_CHECKS, InstanceForm, PlanForm, SweepForm, VerifyForm

SWEEP_TEMPLATES = (
    (Params(a=4, r=1, N=1, n=1), PeriodicFunction.constant()),
    (Params(a=7, r=1, N=2, n=2, T=2), PeriodicFunction((1, 0))),
    (Params(a=10, r=1, N=3, n=3, T=3), PeriodicFunction((1, 0, 0))),
)

EXACT_CHECKS = ['integrality', 'denominators', 'cross_oracle', 'orders', 'transfer', 'product']


def sweep_grid(template):
    return [template.N * j for j in range(1, 5)]


@lru_cache(maxsize=None)
def certificate(params, checks, f=None):
    return build_certificate(params, f or PeriodicFunction.constant(), list(checks))


def write_json(directory, name, data):
    path = Path(directory) / name
    path.write_text(json.dumps(data), encoding='utf-8')
    return str(path)


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


class FormTests(SimpleTestCase):
    def test_instance_form(self):
        form = InstanceForm({'a': 7, 'r': 1, 'N': 2, 'n': 4, 'p': 1, 'T': 2, 'f': ['1', '0']})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['params'], Params(a=7, r=1, N=2, n=4, p=1, T=2))
        self.assertEqual(form.cleaned_data['function'].period, 2)

    def test_instance_form_kmax(self):
        form = InstanceForm({'a': 4, 'r': 1, 'N': 1, 'n': 2, 'K_max': 2})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['K_max'], 2)
        form = InstanceForm({'a': 4, 'r': 1, 'N': 1, 'n': 2})
        self.assertTrue(form.is_valid())
        self.assertIsNone(form.cleaned_data['K_max'])
        self.assertFalse(InstanceForm({'a': 4, 'r': 1, 'N': 1, 'n': 2, 'K_max': 0}).is_valid())

    def test_instance_form_names_invariant(self):
        form = InstanceForm({'a': 4, 'r': 2, 'N': 1, 'n': 2})
        self.assertFalse(form.is_valid())
        self.assertIn('r < a/(3N) violated', form.non_field_errors()[0])

    def test_instance_form_period(self):
        form = InstanceForm({'a': 7, 'r': 1, 'N': 2, 'n': 4, 'T': 2, 'f': ['1', '0', '0']})
        self.assertFalse(form.is_valid())

    def test_verify_form(self):
        form = VerifyForm({'checks': ''})
        self.assertTrue(form.is_valid())
        self.assertIn('lambda', form.cleaned_data['checks'])
        form = VerifyForm({'checks': 'all'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['checks'], list(CHECKS))
        self.assertFalse(VerifyForm({'checks': 'rank,bogus'}).is_valid())
        self.assertFalse(VerifyForm({'precision_bits': 32}).is_valid())
        form = SweepForm({'checks': ''})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['checks'], list(SWEEP_CHECKS))
        self.assertIn('siegel', form.cleaned_data['checks'])

    def test_plan_form(self):
        plan = {'epsilon': '1/5', 'a': 5, 'D': 2, 'divisors': [1, 2], 'delta': 2, 'exponents': [3], 'w': [8, -1]}
        form = PlanForm({'plan': plan, 'n': '4,8', 'relaxed': True})
        self.assertTrue(form.is_valid())
        self.assertEqual([params.n for params in form.cleaned_data['instances']], [4, 8])
        self.assertEqual(form.cleaned_data['instances'][0].p, 1)
        plan['w'] = [1, 1]
        self.assertFalse(PlanForm({'plan': plan, 'n': '4', 'relaxed': True}).is_valid())


class CertificateTests(SimpleTestCase):
    def test_statuses(self):
        data = certificate(Params(a=4, r=1, N=1, n=2, p=1), tuple(CHECKS))
        for name in CHECKS:
            self.assertIn(data['checks'][name]['status'], ('pass', 'fail', 'skipped'))
        self.assertEqual(data['checks']['zero_row']['status'], 'skipped')
        self.assertIn('reason', data['checks']['zero_row'])

    def test_flat_fields(self):
        data = certificate(Params(a=4, r=1, N=1, n=2, p=1), tuple(CHECKS))
        for name in ('order_zero', 'order_infinity', 'order_unity', 'transfer_agrees', 'product_ok'):
            self.assertIs(data[name], True, name)
        self.assertEqual(data['rank'], data['checks']['rank']['rank'])
        self.assertEqual(data['rank'], data['rank_target'])
        self.assertIsNone(data['zero_row'])
        self.assertEqual(len(data['basis_hash']), 64)

    def test_flat_fields_of_unrun_checks(self):
        data = certificate(Params(a=4, r=1, N=1, n=2, p=1), ('integrality',))
        for name in ('order_zero', 'order_infinity', 'order_unity', 'transfer_agrees', 'product_ok', 'rank',
                     'rank_target', 'zero_row'):
            self.assertIsNone(data[name], name)
        self.assertIsNotNone(data['basis_hash'])

    def test_structural_checks(self):
        data = certificate(Params(a=4, r=1, N=1, n=2, p=1), tuple(CHECKS))
        for name in ('counting', 'p_size', 'polylog_expansion'):
            self.assertEqual(data['checks'][name]['status'], 'pass', name)
        self.assertEqual(data['checks']['counting']['equations'], data['checks']['counting']['unknowns'])
        self.assertEqual(data['checks']['polylog_expansion']['points'], {'0:0': True, 'inf:0': True})
        self.assertEqual(data['checks']['well_poised']['status'], 'skipped')
        self.assertEqual(data['checks']['siegel']['status'], 'skipped')

    def test_well_poised_check(self):
        data = certificate(Params(a=4, r=1, N=1, n=2, p=0), ('well_poised',))
        result = data['checks']['well_poised']
        self.assertEqual(result['status'], 'pass')
        self.assertTrue(result['symmetry'])
        self.assertEqual(result['collapse'], {'0': True})

    def test_value_digits_follow_precision(self):
        data = certificate(Params(a=4, r=1, N=1, n=2, p=1), ('lambda',))
        value = data['checks']['lambda']['levels'][0]['value']
        self.assertGreaterEqual(sum(ch.isdigit() for ch in value['mid_re'].split('e')[0]), 70)
        self.assertGreater(mpf(value['rad']), 0)

    def test_deterministic(self):
        params = Params(a=4, r=1, N=1, n=2, p=1)
        first = build_certificate(params, PeriodicFunction.constant(), ['integrality', 'product'])
        second = build_certificate(params, PeriodicFunction.constant(), ['integrality', 'product'])
        first.pop('generated_at')
        second.pop('generated_at')
        self.assertEqual(first, second)

    def test_write_atomic(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'nested' / 'certificate.json'
            write_atomic(path, '{"status": "pass"}')
            write_atomic(path, '{"status": "fail"}')
            self.assertEqual(json.loads(path.read_text(encoding='utf-8')), {'status': 'fail'})
            self.assertEqual([p.name for p in path.parent.iterdir()], ['certificate.json'])


class CommandTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.instance = write_json(self.directory.name, 'instance.json',
                                   {'a': 4, 'r': 1, 'N': 1, 'n': 2, 'p': 1, 'f': ['1']})

    def test_construct(self):
        out = str(Path(self.directory.name) / 'family.json')
        run('construct', self.instance, '--out', out)
        dump = json.loads(Path(out).read_text(encoding='utf-8'))
        self.assertEqual(dump['family']['params']['a'], 4)
        self.assertEqual(len(dump['family']['s'][0]), 4)
        p_size = dump['family']['p_size']
        self.assertTrue(p_size['within_bound'])
        self.assertAlmostEqual(float(p_size['bound_exponent']), 6.23832462504)

    def test_construct_instance_kmax(self):
        instance = write_json(self.directory.name, 'short.json',
                              {'a': 4, 'r': 1, 'N': 1, 'n': 2, 'p': 1, 'K_max': 2})
        dump = json.loads(run('construct', instance))
        self.assertEqual(len(dump['family']['levels']), 2)
        self.assertEqual(len(dump['family']['s']), 2)
        dump = json.loads(run('construct', instance, '--kmax', '3'))
        self.assertEqual(len(dump['family']['levels']), 3)


    def test_construct_invalid_params(self):
        bad = write_json(self.directory.name, 'bad.json', {'a': 4, 'r': 2, 'N': 1, 'n': 2})
        with self.assertRaises(CommandError) as caught:
            run('construct', bad)
        self.assertEqual(caught.exception.returncode, 2)
        self.assertIn('r < a/(3N) violated', str(caught.exception))
        bad = write_json(self.directory.name, 'bad_n.json', {'a': 7, 'r': 1, 'N': 2, 'n': 3})
        with self.assertRaises(CommandError) as caught:
            run('construct', bad)
        self.assertEqual(caught.exception.returncode, 2)

    def test_missing_file(self):
        with self.assertRaises(CommandError) as caught:
            run('construct', str(Path(self.directory.name) / 'missing.json'))
        self.assertEqual(caught.exception.returncode, 2)

    def test_verify_default(self):
        out = str(Path(self.directory.name) / 'certificate.json')
        run('verify', self.instance, '--out', out)
        data = json.loads(Path(out).read_text(encoding='utf-8'))
        self.assertEqual(data['status'], 'pass')
        self.assertEqual(sorted(data['checks']), ['integrality', 'lambda', 'orders', 'product', 'rank'])
        self.assertTrue(data['order_zero'] and data['order_infinity'] and data['order_unity'])
        self.assertTrue(data['product_ok'])
        self.assertEqual(data['rank'], data['rank_target'])
        self.assertIsNone(data['transfer_agrees'])
        self.assertIsNone(data['zero_row'])
        self.assertIsInstance(data['basis_hash'], str)

    def test_verify_instance_kmax(self):
        instance = write_json(self.directory.name, 'short.json',
                              {'a': 4, 'r': 1, 'N': 1, 'n': 2, 'p': 1, 'K_max': 2})
        out = str(Path(self.directory.name) / 'certificate.json')
        with self.assertRaises(CommandError) as caught:
            run('verify', instance, '--checks', 'rank', '--out', out)
        self.assertEqual(caught.exception.returncode, 1)
        data = json.loads(Path(out).read_text(encoding='utf-8'))
        self.assertEqual(data['k_max'], 2)
        self.assertLess(data['rank'], data['rank_target'])


    def test_verify_rank_below_target(self):
        out = str(Path(self.directory.name) / 'certificate.json')
        with self.assertRaises(CommandError) as caught:
            run('verify', self.instance, '--checks', 'rank', '--kmax', '2', '--out', out)
        self.assertEqual(caught.exception.returncode, 1)
        data = json.loads(Path(out).read_text(encoding='utf-8'))
        self.assertLess(data['checks']['rank']['rank'], data['checks']['rank']['rank_target'])

    def test_verify_unknown_check(self):
        with self.assertRaises(CommandError) as caught:
            run('verify', self.instance, '--checks', 'integrality,telepathy')
        self.assertEqual(caught.exception.returncode, 2)

    def test_bounds(self):
        data = json.loads(run('bounds', '1000000', '1'))
        self.assertEqual(set(data), {'a', 'N', 'r', 'alpha', 'beta', 'bound', 'ratio_to_limit'})
        self.assertLess(0, float(data['ratio_to_limit']))
        self.assertLess(float(data['ratio_to_limit']), 1)

    def test_bounds_with_epsilon(self):
        data = json.loads(run('bounds', '1000000', '1', '--epsilon', '1/10'))
        self.assertEqual(data['elimination']['D'], 2 * 3 * 5 * 7)
        self.assertIn('subspace', data)

    def test_bounds_out_of_range(self):
        with self.assertRaises(CommandError) as caught:
            run('bounds', '30', '5')
        self.assertEqual(caught.exception.returncode, 2)

    @override_settings(ZETAFORMS_THREADS=1)
    def test_sweep(self):
        xlsx = str(Path(self.directory.name) / 'sweep.xlsx')
        out = run('sweep', self.instance, '--n-list', '2,4,6', '--out', self.directory.name, '--xlsx', xlsx)
        lines = out.strip().splitlines()
        self.assertEqual(len(lines), 4)
        certificates = [json.loads(line) for line in lines[:3]]
        self.assertEqual([c['instance']['n'] for c in certificates], [2, 4, 6])
        for data in certificates:
            self.assertEqual(data['status'], 'pass', data['checks'])
            self.assertNotIn('siegel', data['checks'])
        summary = json.loads(lines[3])['summary']
        self.assertEqual(summary['status'], 'pass')
        self.assertEqual((summary['passed'], summary['failed']), (3, 0))
        self.assertIs(summary['column_space_stable'], True)
        self.assertEqual(summary['siegel']['status'], 'pass')
        self.assertEqual(summary['siegel']['points'], 3)
        self.assertEqual(summary['siegel']['column_space_hash'], certificates[-1]['basis_hash'])
        for n in (2, 4, 6):
            self.assertTrue((Path(self.directory.name) / f'certificate_n{n}.json').exists())
        sheet = openpyxl.load_workbook(xlsx)['Sweep']
        self.assertEqual(sheet.cell(row=1, column=1).value, 'n')
        self.assertEqual(sheet.max_row, 4)

    @override_settings(ZETAFORMS_THREADS=1)
    def test_sweep_failure_still_writes_certificates(self):
        out = StringIO()
        with self.assertRaises(CommandError) as caught:
            call_command('sweep', self.instance, '--n-list', '2,4', '--checks', 'rank', '--kmax', '2',
                         '--out', self.directory.name, stdout=out)
        self.assertEqual(caught.exception.returncode, 1)
        lines = out.getvalue().strip().splitlines()
        summary = json.loads(lines[-1])['summary']
        self.assertEqual(summary['status'], 'fail')
        self.assertEqual(summary['failed'], 2)
        self.assertIsNone(summary['siegel'])
        for n in (2, 4):
            data = json.loads((Path(self.directory.name) / f'certificate_n{n}.json').read_text(encoding='utf-8'))
            self.assertEqual(data['status'], 'fail')
            self.assertEqual(data['k_max'], 2)


    def test_sweep_bad_n(self):
        template = write_json(self.directory.name, 'template.json', {'a': 7, 'r': 1, 'N': 2, 'n': 2, 'T': 2})
        with self.assertRaises(CommandError) as caught:
            run('sweep', template, '--n-list', '2,3')
        self.assertEqual(caught.exception.returncode, 2)

    def test_fsz(self):
        plan = write_json(self.directory.name, 'plan.json', {
            'epsilon': '1/5', 'a': 5, 'D': 2, 'divisors': [1, 2], 'delta': 2, 'exponents': [3], 'w': [8, -1],
        })
        data = json.loads(run('fsz', plan, '--n', '4', '--relaxed'))
        self.assertEqual(data['status'], 'pass')
        self.assertTrue(data['g_identity']['3'])


class AppConfigTests(SimpleTestCase):
    def test_apps_declare_no_model_settings(self):
        for label in ('exact_core', 'hyper_forms', 'pade_verify', 'analytic_eval', 'independence_pipeline', 'cli'):
            config = apps.get_app_config(label)
            with self.subTest(app=label):
                self.assertNotIn('default_auto_field', vars(type(config)))
                self.assertEqual(list(config.get_models()), [])


class AcceptanceTests(SimpleTestCase):

    """Sweep-level properties of the construction."""

    def test_exact_identities(self):
        for template, _ in SWEEP_TEMPLATES:
            for n in sweep_grid(template):
                for p in (0, 1):
                    params = Params(a=template.a, r=template.r, N=template.N, n=n, p=p, T=template.T)
                    with self.subTest(params=params):
                        data = certificate(params, tuple(EXACT_CHECKS))
                        self.assertEqual(data['status'], 'pass', data['checks'])

    def test_rank_saturates(self):
        for template, _ in SWEEP_TEMPLATES:
            ranks = []
            for n in sweep_grid(template):
                rank = certificate(template.with_n(n), ('rank',))['checks']['rank']
                self.assertLessEqual(rank['rank'], rank['rank_target'])
                ranks.append(rank['rank'] == rank['rank_target'])
            with self.subTest(template=template):
                self.assertTrue(ranks[-1])
                first = ranks.index(True)
                self.assertTrue(all(ranks[first:]))

    def test_column_space_stable(self):
        for template, _ in SWEEP_TEMPLATES:
            grid = sweep_grid(template)
            hashes = [certificate(template.with_n(n), ('integrality',))['basis_hash'] for n in grid[-2:]]
            with self.subTest(template=template):
                self.assertEqual(hashes[0], hashes[1])

    def test_zero_row(self):
        for params in (Params(a=7, r=1, N=2, n=4, p=0, T=2), Params(a=13, r=1, N=4, n=4, p=0)):
            with self.subTest(params=params):
                self.assertEqual(certificate(params, ('zero_row',))['checks']['zero_row']['status'], 'pass')

    def test_central_identity(self):
        for template, f in SWEEP_TEMPLATES:
            for n in sweep_grid(template):
                for p in (0, 1):
                    params = template.with_n(n).with_p(p)
                    with self.subTest(params=params):
                        result = certificate(params, ('lambda',), f)['checks']['lambda']
                        self.assertEqual(result['status'], 'pass')
                        for level in result['levels']:
                            self.assertLess(mpf(level['error_bound']), mpf(10) ** -30)

    def test_growth_within_beta(self):
        for template, f in SWEEP_TEMPLATES:
            n = sweep_grid(template)[-1]
            growth = certificate(template.with_n(n).with_p(1), ('lambda',), f)['checks']['lambda']['growth']
            bounds = alpha_beta(template.a, template.r, template.N)
            with self.subTest(template=template):
                self.assertLessEqual(mpf(growth['log_max_s_over_n']), bounds.log_beta + 2)
                if bounds.log_alpha < 0 and growth['log_lambda_over_n'] != '-inf':
                    self.assertLessEqual(mpf(growth['log_lambda_over_n']), bounds.log_alpha + 2)

    def test_fsz_specialization(self):
        with tempfile.TemporaryDirectory() as directory:
            plan = write_json(directory, 'plan.json', {
                'epsilon': '1/5', 'a': 5, 'D': 2, 'divisors': [1, 2], 'delta': 2, 'exponents': [3], 'w': [8, -1],
            })
            data = json.loads(run('fsz', plan, '--n', '4,8', '--p', '1', '--relaxed'))
        self.assertEqual(data['status'], 'pass')
        for result in data['results']:
            self.assertLess(mpf(result['error_bound']), mpf(10) ** -20)

    def test_asymptotic_constant(self):
        ratios = [mpf(json.loads(run('bounds', str(10 ** e), '1'))['ratio_to_limit']) for e in (4, 6, 8, 12)]
        epsilons = [abs(ratio - 1) for ratio in ratios]
        self.assertTrue(all(x > y for x, y in zip(epsilons, epsilons[1:])))
