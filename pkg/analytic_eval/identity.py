"""Numerical check of the central linear-form identity.

For 1 <= k <= d_0 - 1,

    delta_n sum_l f^(l) [omega^{l(k-1)} S_0^(k-1)(omega^l) + (-1)^p omega^{l(1-k)} S_inf^(k-1)(omega^-l)]
      = 2 (-1)^p sum_{2 <= i <= a, i = p mod 2} s_{k,i} L(f, i) + sum_{0 <= i < N} s_{k,a+1+i} f(i).

Summing the Fourier transform first collapses the left side to
delta_n sum_u f(u) [A0_u + (-1)^{p+k-1} Ainf_u], which is evaluated too.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from exact_core.cyclotomic import CycloNumber
from hyper_forms.fourier import fourier_hat

from .balls import Ball, ball_sum, format_upper, root_of_unity_ball, to_mpf
from .s_series import progression_parts
from .special import L_value

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearFormValue:
    k: int
    value: Ball
    reconstruction: Ball
    collapsed: Ball
    holds: bool
    collapse_agrees: bool

    @property
    def difference(self):
        with mp.workprec(self.value.prec):
            return abs(self.value.mid - self.reconstruction.mid)

    @property
    def error_bound(self):
        return self.value.rad + self.reconstruction.rad

    def to_json(self):
        return {
            'k': self.k,
            'value': self.value.to_json(),
            'reconstruction': self.reconstruction.to_json(),
            'collapsed': self.collapsed.to_json(),
            'difference': str(self.difference),
            'error_bound': format_upper(self.error_bound),
            'holds': self.holds,
            'collapse_agrees': self.collapse_agrees,
        }


def _size(value):
    """Crude upper bound on |value| for a rational or cyclotomic number."""
    if isinstance(value, CycloNumber):
        return sum((abs(c) for c in value.coeffs), Fraction(0))
    return abs(Fraction(value))


def lambda_check(family, f, k, ctx):
    """Evaluate both sides of the identity at level k and compare them within their bounds."""
    params = family.params
    a, N, p = params.a, params.N, params.p
    sign = -1 if p else 1
    delta = family.delta_n
    f = f.extend(N)
    hats = fourier_hat(f, N)

    f_size = 1 + sum(_size(f(u)) for u in range(N))
    s_row = family.s[k - 1]
    s_size = 1 + sum(abs(v) for v in s_row)
    series_ctx = ctx.with_target(ctx.tolerance / (4 * N * delta * to_mpf(f_size)))
    values_ctx = ctx.with_target(ctx.tolerance / (4 * a * to_mpf(s_size)))

    zero_side = progression_parts(family, '0', k, series_ctx)
    infinity_side = progression_parts(family, 'inf', k, series_ctx)
    with ctx.workprec(32):
        lhs_terms = []
        for ell, hat in enumerate(hats, start=1):
            if not hat:
                continue
            bracket = (root_of_unity_ball(ell * (k - 1), N) * zero_side.at(ell, N)
                       + root_of_unity_ball(ell * (1 - k), N) * infinity_side.at(ell, N) * sign)
            lhs_terms.append(Ball.exact(hat) * bracket)
        lhs = ball_sum(lhs_terms) * delta

        collapse_sign = sign * (-1 if (k - 1) % 2 else 1)
        collapsed = ball_sum(
            Ball.exact(f(u)) * (zero_side.values[u] + infinity_side.values[u] * collapse_sign)
            for u in range(N) if f(u)
        ) * delta

        rhs_terms = []
        for i in range(2, a + 1):
            if (i - p) % 2 == 0 and family.s_at(k, i):
                rhs_terms.append(L_value(f, i, values_ctx) * (2 * sign * family.s_at(k, i)))
        for i in range(N):
            s_value = family.s_at(k, a + 1 + i)
            if s_value and f(i):
                rhs_terms.append(Ball.exact(f(i)) * s_value)
        rhs = ball_sum(rhs_terms)

        result = LinearFormValue(
            k=k,
            value=lhs,
            reconstruction=rhs,
            collapsed=collapsed,
            holds=lhs.overlaps(rhs),
            collapse_agrees=collapsed.overlaps(lhs),
        )
    logger.info(f'Lambda identity for {params}, k={k}: difference {result.difference}, '
                f'bound {result.error_bound}, holds={result.holds}')
    return result
