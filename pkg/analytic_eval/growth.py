"""Empirical growth exponents of |Lambda_1| and max |s_{1,i}| along a grid of n.

The asymptotic rates log alpha and log beta hold up to an unquantified o(n),
so the verdict only compares the largest n against them with a slack.
"""
import logging
from dataclasses import dataclass, field

from mpmath import mp, mpf, nstr

from hyper_forms.families import build_family
from independence_pipeline.bounds import alpha_beta

from .identity import lambda_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GrowthRow:
    n: int
    lambda_exponent: object
    s_exponent: object

    def to_json(self):
        return {
            'n': self.n,
            'log_lambda_over_n': nstr(self.lambda_exponent, 12),
            'log_max_s_over_n': nstr(self.s_exponent, 12),
        }


@dataclass(frozen=True)
class GrowthReport:
    params: object
    rows: tuple
    log_alpha: object
    log_beta: object
    slack: int = 2
    notes: tuple = field(default=())

    @property
    def s_within_beta(self):
        if len(self.rows) < 2:
            return None
        return self.rows[-1].s_exponent <= self.log_beta + self.slack

    @property
    def lambda_within_alpha(self):
        """Only meaningful when alpha < 1; None otherwise or for a single row."""
        if len(self.rows) < 2 or self.log_alpha >= 0:
            return None
        return self.rows[-1].lambda_exponent <= self.log_alpha + self.slack

    @property
    def verdict(self):
        if len(self.rows) < 2:
            return None
        return all(c for c in (self.s_within_beta, self.lambda_within_alpha) if c is not None)

    def to_json(self):
        return {
            'params': self.params.to_json(),
            'rows': [row.to_json() for row in self.rows],
            'log_alpha': nstr(self.log_alpha, 12),
            'log_beta': nstr(self.log_beta, 12),
            'slack': self.slack,
            's_within_beta': self.s_within_beta,
            'lambda_within_alpha': self.lambda_within_alpha,
            'verdict': self.verdict,
            'notes': list(self.notes),
        }


def _log_over_n(value, n):
    if not value:
        return -mp.inf
    return mp.log(value) / n


def _monotonicity_note(name, values):
    if len(values) < 2:
        return None
    pairs = list(zip(values, values[1:]))
    if all(x <= y for x, y in pairs):
        return f'{name} non-decreasing in n'
    if all(x >= y for x, y in pairs):
        return f'{name} non-increasing in n'
    return f'{name} not monotone in n'


def growth_study(template, f, n_grid, ctx, slack=2):
    """One row (n, log|Lambda_1|/n, max_i log|s_{1,i}|/n) per n of ``n_grid``."""
    n_grid = sorted(n_grid)
    rows = []
    for n in n_grid:
        family = build_family(template.with_n(n), k_max=1)
        value = lambda_check(family, f, 1, ctx)
        s_max = max((abs(v) for v in family.s[0]), default=0)
        with ctx.workprec():
            lambda_exponent = _log_over_n(value.value.abs_upper(), n)
            s_exponent = _log_over_n(mpf(s_max), n)
        rows.append(GrowthRow(n, lambda_exponent, s_exponent))
        logger.info(f'Growth at n={n}: log|Λ_1|/n ≤ {nstr(lambda_exponent, 8)}, '
                    f'max log|s_1i|/n = {nstr(s_exponent, 8)}')

    bounds = alpha_beta(template.a, template.r, template.N, ctx.bits)
    notes = [note for note in (
        _monotonicity_note('log|Λ_1|/n', [row.lambda_exponent for row in rows]),
        _monotonicity_note('max log|s_1i|/n', [row.s_exponent for row in rows]),
    ) if note]
    if len(rows) < 2:
        notes.append('single row, no trend verdict')
    report = GrowthReport(template, tuple(rows), bounds.log_alpha, bounds.log_beta, slack, tuple(notes))
    logger.info(f'Growth study for {template}: verdict {report.verdict}')
    return report

