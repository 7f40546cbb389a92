from django.conf import settings

from cli.base import ZetaFormsCommand
from cli.certificates import build_certificate, certificate_passed
from cli.forms import VerifyForm
from cli.instances import load_instance


class Command(ZetaFormsCommand):
    help = 'Run the selected checks on an instance and write its certificate.'

    def add_arguments(self, parser):
        parser.add_argument('instance', help='Instance JSON file')
        parser.add_argument('--checks', default='', help='Comma-separated checks, or "all"')
        parser.add_argument('--kmax', type=int, help='Number of levels k (default: K_max of the instance)')
        parser.add_argument('--precision-bits', type=int, dest='precision_bits')
        parser.add_argument('--relaxed', action='store_true', help='Accept r >= a/(3N)')
        parser.add_argument('--out', help='Certificate path (default stdout)')

    def handle(self, *args, **options):
        cleaned = self.validated(VerifyForm({
            'checks': options['checks'],
            'kmax': options['kmax'],
            'precision_bits': options['precision_bits'],
        }))
        params, f, instance_kmax = load_instance(options['instance'], {'relaxed': True} if options['relaxed'] else None)
        certificate = build_certificate(
            params, f, cleaned['checks'],
            k_max=cleaned.get('kmax') or instance_kmax,
            bits=self.precision_bits(cleaned),
            lambda_levels=settings.ZETAFORMS_LAMBDA_LEVELS,
            transfer_levels=settings.ZETAFORMS_TRANSFER_LEVELS,
            kmax_factor=settings.ZETAFORMS_DEFAULT_KMAX_FACTOR,
        )
        self.emit(certificate, options['out'])
        if not certificate_passed(certificate):
            failed = [name for name, result in certificate['checks'].items() if result['status'] == 'fail']
            raise self.check_failure(f"checks failed for {params}: {', '.join(failed)}")
