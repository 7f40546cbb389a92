from django import forms
from django.core.exceptions import ValidationError

from exact_core.exceptions import ParameterError
from exact_core.serialization import cyclo_from_json, rational_from_str
from hyper_forms.fourier import PeriodicFunction
from hyper_forms.params import Params
from independence_pipeline.elimination import EliminationPlan

CHECKS = (
    'integrality',
    'denominators',
    'cross_oracle',
    'p_size',
    'counting',
    'orders',
    'transfer',
    'product',
    'rank',
    'zero_row',
    'column_space',
    'well_poised',
    'polylog_expansion',
    'lambda',
    'growth',
    'siegel',
)

DEFAULT_CHECKS = ('integrality', 'orders', 'product', 'rank', 'lambda')

# siegel needs several n and only runs in a sweep
SWEEP_CHECKS = DEFAULT_CHECKS + ('counting', 'column_space', 'well_poised', 'polylog_expansion', 'siegel')


def parse_value(item):
    """A value of f: a rational "p/q" or a cyclotomic number {N, coefficients}."""
    if isinstance(item, dict):
        return cyclo_from_json(item)
    return rational_from_str(item)


class InstanceForm(forms.Form):
    """One construction instance, as read from an instance file."""
    a = forms.IntegerField()
    r = forms.IntegerField()
    N = forms.IntegerField()
    n = forms.IntegerField()
    p = forms.IntegerField(required=False)
    T = forms.IntegerField(required=False)
    relaxed = forms.BooleanField(required=False)
    f = forms.JSONField(required=False)
    K_max = forms.IntegerField(required=False, min_value=1)

    def clean_f(self):
        values = self.cleaned_data.get('f')
        if values in (None, ''):
            return None
        if not isinstance(values, list):
            raise ValidationError('f must be a list of values f(0), ..., f(T-1)')
        try:
            return PeriodicFunction(tuple(parse_value(v) for v in values))
        except (ParameterError, ValueError, KeyError) as exc:
            raise ValidationError(str(exc))

    def clean(self):
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data
        try:
            params = Params(
                a=cleaned_data['a'],
                r=cleaned_data['r'],
                N=cleaned_data['N'],
                n=cleaned_data['n'],
                p=cleaned_data.get('p') or 0,
                T=cleaned_data.get('T') or 1,
                relaxed=cleaned_data.get('relaxed', False),
            )
        except ParameterError as exc:
            raise ValidationError(str(exc), code='invalid_params')
        f = cleaned_data.get('f') or PeriodicFunction.constant()
        if f.period not in (1, params.T):
            raise ValidationError(f'f has period {f.period}, expected T={params.T}', code='invalid_f')
        cleaned_data['params'] = params
        cleaned_data['function'] = f
        return cleaned_data


class VerifyForm(forms.Form):
    default_checks = DEFAULT_CHECKS

    checks = forms.CharField(required=False)
    kmax = forms.IntegerField(required=False, min_value=1)
    precision_bits = forms.IntegerField(required=False, min_value=64)

    def clean_checks(self):
        text = self.cleaned_data.get('checks') or ''
        if not text.strip():
            return list(self.default_checks)
        names = [name.strip() for name in text.split(',') if name.strip()]
        if names == ['all']:
            return list(CHECKS)
        unknown = [name for name in names if name not in CHECKS]
        if unknown:
            raise ValidationError(f"unknown check(s): {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
        return names


class SweepForm(VerifyForm):
    default_checks = SWEEP_CHECKS


class BoundsForm(forms.Form):
    a = forms.IntegerField(min_value=2)
    N = forms.IntegerField(min_value=1)
    epsilon = forms.CharField(required=False)
    precision_bits = forms.IntegerField(required=False, min_value=64)

    def clean_epsilon(self):
        text = self.cleaned_data.get('epsilon')
        if not text:
            return None
        try:
            epsilon = rational_from_str(text)
        except ValueError as exc:
            raise ValidationError(str(exc))
        if not 0 < epsilon < 1:
            raise ValidationError(f'0 < ε < 1 violated (ε={epsilon})')
        return epsilon


class PlanForm(forms.Form):
    """An elimination plan file plus the instances it is checked on."""
    plan = forms.JSONField()
    n = forms.CharField()
    r = forms.IntegerField(required=False, min_value=1)
    p = forms.IntegerField(required=False, min_value=0, max_value=1)
    relaxed = forms.BooleanField(required=False)

    def clean_plan(self):
        data = self.cleaned_data['plan']
        if not isinstance(data, dict):
            raise ValidationError('plan must be a JSON object')
        try:
            plan = EliminationPlan.from_json(data)
        except (KeyError, ValueError, TypeError) as exc:
            raise ValidationError(f'malformed plan: {exc}')
        if not plan.w:
            raise ValidationError('plan has no weights w')
        if not plan.is_solved():
            raise ValidationError('sum_d w_d d^i = 0 violated for the plan exponents')
        return plan

    def clean_n(self):
        try:
            values = [int(v) for v in self.cleaned_data['n'].split(',') if v.strip()]
        except ValueError:
            raise ValidationError('n must be a comma-separated list of integers')
        if not values:
            raise ValidationError('at least one n is required')
        return values

    def clean(self):
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data
        plan = cleaned_data['plan']
        p = cleaned_data.get('p')
        if p is None:
            p = plan.a % 2
        instances = []
        try:
            for n in cleaned_data['n']:
                instances.append(Params(a=plan.a, r=cleaned_data.get('r') or 1, N=plan.D, n=n, p=p,
                                        relaxed=cleaned_data.get('relaxed', False)))
        except ParameterError as exc:
            raise ValidationError(str(exc), code='invalid_params')
        cleaned_data['instances'] = instances
        return cleaned_data
