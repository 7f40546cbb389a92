import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from exact_core.serialization import dumps

from .certificates import write_atomic
from .instances import CHECK_FAILURE, form_errors_text, usage_error

logger = logging.getLogger(__name__)


class ZetaFormsCommand(BaseCommand):
    """Shared plumbing: validated options, JSON output and exit codes."""

    def validated(self, form):
        if not form.is_valid():
            raise usage_error(form_errors_text(form))
        return form.cleaned_data

    def precision_bits(self, cleaned_data):
        return cleaned_data.get('precision_bits') or settings.ZETAFORMS_PRECISION_BITS

    def emit(self, data, out=None):
        text = dumps(data)
        if out:
            write_atomic(out, text)
        else:
            self.stdout.write(text)

    def check_failure(self, message):
        logger.error(message)
        return CommandError(message, returncode=CHECK_FAILURE)
