"""Reading instance files and turning form errors into diagnostics."""
import json
import logging

from django.core.management.base import CommandError

from .forms import InstanceForm

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
CHECK_FAILURE = 1


def form_errors_text(form):
    """Errors of a bound form as one line, non-field errors first."""
    messages = list(form.non_field_errors())
    for name, errors in form.errors.items():
        if name == '__all__':
            continue
        messages.extend(f'{name}: {error}' for error in errors)
    return '; '.join(messages)


def usage_error(message):
    logger.error(message)
    return CommandError(message, returncode=USAGE_ERROR)


def load_json(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except OSError as exc:
        raise usage_error(f'cannot read {path}: {exc.strerror}')
    except json.JSONDecodeError as exc:
        raise usage_error(f'{path} is not valid JSON: {exc}')


def load_instance(path, overrides=None):
    """(Params, PeriodicFunction, K_max or None) from an instance file; exit code 2 when invalid."""
    data = load_json(path)
    if not isinstance(data, dict):
        raise usage_error(f'{path} must hold a JSON object')
    data = {**data, **(overrides or {})}
    form = InstanceForm(data)
    if not form.is_valid():
        raise usage_error(form_errors_text(form))
    cleaned = form.cleaned_data
    return cleaned['params'], cleaned['function'], cleaned.get('K_max')
