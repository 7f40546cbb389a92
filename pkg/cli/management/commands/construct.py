from django.conf import settings
from django.utils import timezone

from cli import __version__
from cli.base import ZetaFormsCommand
from cli.instances import load_instance, usage_error
from exact_core.exceptions import IntegralityError, RecurrenceRangeError, ZetaFormsError
from hyper_forms.families import build_family


class Command(ZetaFormsCommand):
    help = 'Build P_{k,j}, U_k, V_k and the s-matrix of an instance and dump them as JSON.'

    def add_arguments(self, parser):
        parser.add_argument('instance', help='Instance JSON file')
        parser.add_argument('--kmax', type=int,
                            help='Number of levels k (default: K_max of the instance, else min(d_0 - 1, factor (a+N)))')
        parser.add_argument('--relaxed', action='store_true', help='Accept r >= a/(3N)')
        parser.add_argument('--out', help='Write the dump here instead of stdout')

    def handle(self, *args, **options):
        params, f, instance_kmax = load_instance(options['instance'], {'relaxed': True} if options['relaxed'] else None)
        k_max = options['kmax']
        if k_max is not None and k_max < 1:
            raise usage_error(f'--kmax must be at least 1, got {k_max}')
        if k_max is None:
            k_max = instance_kmax or params.k_max(factor=settings.ZETAFORMS_DEFAULT_KMAX_FACTOR)
        try:
            family = build_family(params, k_max=k_max)
        except (IntegralityError, RecurrenceRangeError) as exc:
            raise self.check_failure(f'construction of {params} failed: {exc}')
        except ZetaFormsError as exc:
            raise usage_error(str(exc))
        self.emit({
            'version': __version__,
            'generated_at': timezone.now().isoformat(),
            'f': f.to_json(),
            'family': family.to_json(),
        }, options['out'])
