"""The linear forms with f = 1, N = D as triple sums of R(t) = F(D t).

When 2N | n and p = a (mod 2),

    (-1)^p / (2 delta_n) Lambda_n = sum_{d | D} w_d sum_{j=1}^{d} sum_{m >= 1} R(m + j/d),

where Lambda_n is the first linear form built from g.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from analytic_eval.balls import Ball, ball_sum, format_upper, to_mpf
from analytic_eval.identity import lambda_check
from analytic_eval.s_series import progression_expansion, progression_term
from analytic_eval.summation import progression_tail_sum
from exact_core.exceptions import ParameterError
from hyper_forms.families import build_family
from hyper_forms.fourier import PeriodicFunction

from .elimination import build_g

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FSZResult:
    lhs: Ball
    rhs: Ball
    zero_start: bool

    @property
    def holds(self):
        return self.zero_start and self.lhs.overlaps(self.rhs)

    @property
    def error_bound(self):
        return self.lhs.rad + self.rhs.rad

    def to_json(self):
        return {
            'lhs': self.lhs.to_json(),
            'rhs': self.rhs.to_json(),
            'error_bound': format_upper(self.error_bound),
            'zero_start': self.zero_start,
            'holds': self.holds,
        }


def check_fsz_params(params, plan):
    if params.T != 1:
        raise ParameterError(f'T = 1 violated (T={params.T})')
    if params.N != plan.D:
        raise ParameterError(f'N = D violated (N={params.N}, D={plan.D})')
    if not params.well_poised:
        raise ParameterError(f'2N | n and p ≡ a (mod 2) violated ({params})')
    if not plan.w:
        raise ParameterError('plan has no weights; solve it first')


def zero_start(F, plan):
    """F(j D / d) = 0 for every d | D and 1 <= j <= d."""
    return all(F(j * plan.D // d) == 0 for d in plan.divisors for j in range(1, d + 1))


def triple_sum(family, plan, ctx):
    """sum_d w_d sum_j sum_{m >= 1} F(m D + j D / d)."""
    D = plan.D
    base = family.table.as_expansion()
    active = [(d, w) for d, w in zip(plan.divisors, plan.w) if w]
    weight = sum(abs(w) * d for d, w in active)
    inner = ctx.with_target(ctx.tolerance / (4 * to_mpf(Fraction(weight))))
    terms = []
    for d, w in active:
        for j in range(1, d + 1):
            u = j * D // d
            expansion = progression_expansion(base, 'inf', u, D, 1)
            term = progression_term(family.F, 'inf', u, D, 1)
            tail = progression_tail_sum(expansion, term, 1, inner)
            with ctx.workprec(32):
                terms.append(tail.value * w)
    with ctx.workprec(32):
        return ball_sum(terms)


def fsz_equivalence(params, plan, ctx):
    """Both sides of the triple-sum identity for f = 1 and the plan's g."""
    check_fsz_params(params, plan)
    family = build_family(params, k_max=1)
    g = build_g(PeriodicFunction.constant(), plan)
    value = lambda_check(family, g, 1, ctx).value
    scale = Fraction(-1 if params.p else 1, 2 * family.delta_n)
    with ctx.workprec(32):
        lhs = value * scale
    rhs = triple_sum(family, plan, ctx)
    result = FSZResult(lhs, rhs, zero_start(family.F, plan))
    logger.info(f'Triple-sum identity for {params}, w={list(plan.w)}: holds={result.holds}, '
                f'bound {result.error_bound}')
    return result
