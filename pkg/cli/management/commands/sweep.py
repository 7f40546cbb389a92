import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from django.conf import settings
from mpmath import mpf

from analytic_eval.balls import PrecisionContext
from analytic_eval.growth import GrowthReport, GrowthRow
from cli.base import ZetaFormsCommand
from cli.certificates import certificate_passed, certificate_text, run_instance, skipped, verdict, write_atomic
from cli.exports import generate_sweep_workbook
from cli.forms import SweepForm
from cli.instances import load_instance, usage_error
from exact_core.exceptions import CriterionHypothesisError, DivergentSeriesError, ParameterError
from exact_core.serialization import dumps
from independence_pipeline.bounds import alpha_beta
from independence_pipeline.siegel import siegel_from_family

logger = logging.getLogger(__name__)


def parse_n_list(text):
    try:
        values = sorted({int(v) for v in text.split(',') if v.strip()})
    except ValueError:
        raise usage_error(f'--n-list must be comma-separated integers, got {text!r}')
    if not values:
        raise usage_error('--n-list is empty')
    return values


def growth_report(template, certificates, bits):
    rows = []
    for certificate in certificates:
        growth = certificate['checks'].get('lambda', {}).get('growth')
        if growth is None:
            return None
        rows.append(GrowthRow(certificate['instance']['n'], mpf(growth['log_lambda_over_n']),
                              mpf(growth['log_max_s_over_n'])))
    bounds = alpha_beta(template.a, template.r, template.N, bits)
    return GrowthReport(template, tuple(rows), bounds.log_alpha, bounds.log_beta)


def siegel_summary(template, f, instances, k_max, bits):
    """Heuristic criterion fit over the swept n; fails when the column spaces differ."""
    try:
        fit = siegel_from_family(template, f, [params.n for params in instances], PrecisionContext(bits=bits),
                                 k_max=k_max, form_levels=settings.ZETAFORMS_LAMBDA_LEVELS)
    except CriterionHypothesisError as exc:
        return verdict(False, reason=str(exc))
    except (ParameterError, DivergentSeriesError) as exc:
        return skipped(str(exc))
    return verdict(True, **fit.to_json())


class Command(ZetaFormsCommand):
    help = 'Verify a template instance along a list of n; one certificate per line, then a summary.'

    def add_arguments(self, parser):
        parser.add_argument('template', help='Instance JSON file; its n is replaced by each entry of --n-list')
        parser.add_argument('--n-list', required=True, dest='n_list', help='Comma-separated multiples of N')
        parser.add_argument('--checks', default='')
        parser.add_argument('--kmax', type=int, help='Number of levels k (default: K_max of the instance)')
        parser.add_argument('--precision-bits', type=int, dest='precision_bits')
        parser.add_argument('--relaxed', action='store_true')
        parser.add_argument('--out', help='Directory for the certificate files')
        parser.add_argument('--xlsx', help='Also export the sweep table to this Excel file')

    def handle(self, *args, **options):
        cleaned = self.validated(SweepForm({
            'checks': options['checks'],
            'kmax': options['kmax'],
            'precision_bits': options['precision_bits'],
        }))
        template, f, instance_kmax = load_instance(options['template'],
                                                   {'relaxed': True} if options['relaxed'] else None)
        try:
            instances = [template.with_n(n) for n in parse_n_list(options['n_list'])]
        except ParameterError as exc:
            raise usage_error(str(exc))

        bits = self.precision_bits(cleaned)
        k_max = cleaned.get('kmax') or instance_kmax
        job_options = {
            'checks': [name for name in cleaned['checks'] if name != 'siegel'],
            'k_max': k_max,
            'bits': bits,
            'lambda_levels': settings.ZETAFORMS_LAMBDA_LEVELS,
            'transfer_levels': settings.ZETAFORMS_TRANSFER_LEVELS,
            'kmax_factor': settings.ZETAFORMS_DEFAULT_KMAX_FACTOR,
        }
        jobs = [(params, f, job_options) for params in instances]
        workers = max(1, min(settings.ZETAFORMS_THREADS, len(jobs)))
        logger.info(f'Sweeping {len(jobs)} instances with {workers} worker(s)')
        if workers == 1:
            certificates = [run_instance(job) for job in jobs]
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                certificates = list(pool.map(run_instance, jobs))

        for params, certificate in zip(instances, certificates):
            if options['out']:
                write_atomic(Path(options['out']) / f'certificate_n{params.n}.json', certificate_text(certificate))
            self.stdout.write(certificate_text(certificate))

        hashes = {str(c['instance']['n']): c['basis_hash'] for c in certificates}
        stable = None
        if len(certificates) >= 2:
            stable = certificates[-1]['basis_hash'] == certificates[-2]['basis_hash']
        report = growth_report(template, certificates, bits)
        siegel = siegel_summary(template, f, instances, k_max, bits) if 'siegel' in cleaned['checks'] else None
        summary = {
            'template': template.to_json(),
            'n': [params.n for params in instances],
            'basis_hashes': hashes,
            'column_space_stable': stable,
            'growth': report.to_json() if report is not None else None,
            'siegel': siegel,
            'passed': sum(certificate_passed(c) for c in certificates),
            'failed': sum(not certificate_passed(c) for c in certificates),
        }
        siegel_failed = siegel is not None and siegel['status'] == 'fail'
        failed = summary['failed'] or stable is False or siegel_failed
        summary['status'] = 'fail' if failed else 'pass'
        self.stdout.write(dumps({'summary': summary}))

        if options['xlsx']:
            output = generate_sweep_workbook(certificates, {
                'column_space_stable': stable,
                'growth_verdict': report.verdict if report is not None else None,
                'criterion_fit': siegel['status'] if siegel is not None else None,
                'status': summary['status'],
            })
            write_xlsx(options['xlsx'], output)
        if failed:
            raise self.check_failure(f"sweep of {template} failed: {summary['failed']} certificate(s), "
                                     f'column space stable: {stable}, criterion fit failed: {siegel_failed}')


def write_xlsx(path, output):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(output.read())
    logger.info(f'Wrote {path}')
