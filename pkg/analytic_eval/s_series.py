"""Numerical values of S_0^(k-1)(omega^l) and S_inf^(k-1)(omega^-l).

With t = u + N q both series split into N progressions; along each one the
summand is a rational function of q, summed by ``progression_tail_sum``:

    S_0^(k-1)(omega^l)    = sum_u omega^{l(u-k+1)} A0_u,
    A0_u = sum_{t > n, t = u mod N} F(-t) t (t-1) ... (t-k+2),
    S_inf^(k-1)(omega^-l) = (-1)^(k-1) sum_u omega^{l(u+k-1)} Ainf_u,
    Ainf_u = sum_{t >= 1, t = u mod N} F(t) t (t+1) ... (t+k-2).
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from exact_core.cyclotomic import evaluate_at_root
from exact_core.exceptions import DivergentSeriesError, ParameterError

from .balls import Ball, ball_sum, root_of_unity_ball, to_mpf
from .special import eval_polylog
from .summation import progression_tail_sum

logger = logging.getLogger(__name__)

SIDES = ('0', 'inf')


def _check_side(side):
    side = str(side)
    if side in ('∞', 'infinity'):
        side = 'inf'
    if side not in SIDES:
        raise ParameterError(f"side must be '0' or 'inf', got {side!r}")
    return side


def check_decay(params, k):
    if params.d0 < k + 2:
        raise DivergentSeriesError(f'insufficient decay: d_0 = {params.d0} < k + 2 = {k + 2}')


def progression_term(F, side, u, N, k):
    """The exact summand as a function of q."""
    def term(q):
        t = u + N * q
        if side == '0':
            return F(-t) * math.prod(Fraction(t - i) for i in range(k - 1))
        return F(t) * math.prod(Fraction(t + i) for i in range(k - 1))
    return term


def progression_expansion(base, side, u, N, k):
    """Partial fractions in q of the summand, from those of F(t) in ``base``."""
    if side == '0':
        expansion = base.shift_argument(-u, -N)
        roots = [Fraction(i - u, N) for i in range(k - 1)]
    else:
        expansion = base.shift_argument(u, N)
        roots = [Fraction(-u - i, N) for i in range(k - 1)]
    for beta in roots:
        expansion = expansion.times_linear(beta)
    return expansion.scale(N ** (k - 1))


def progression_start(params, side, u):
    """Smallest q with t = u + N q in the summation range."""
    if side == '0':
        return -((u - params.n - 1) // params.N)
    return -((u - 1) // params.N)


@dataclass(frozen=True)
class ProgressionParts:
    """The sums A_u, u = 0..N-1, for one side and level k."""

    side: str
    k: int
    values: tuple

    def at(self, ell, N):
        """S_0^(k-1)(omega^l) or S_inf^(k-1)(omega^-l)."""
        if self.side == '0':
            return ball_sum(root_of_unity_ball(ell * (u - self.k + 1), N) * A for u, A in enumerate(self.values))
        total = ball_sum(root_of_unity_ball(ell * (u + self.k - 1), N) * A for u, A in enumerate(self.values))
        return total if self.k % 2 else -total


def progression_parts(family, side, k, ctx):
    side = _check_side(side)
    params = family.params
    check_decay(params, k)
    N = params.N
    base = family.table.as_expansion()
    values = []
    for u in range(N):
        expansion = progression_expansion(base, side, u, N, k)
        term = progression_term(family.F, side, u, N, k)
        values.append(progression_tail_sum(expansion, term, progression_start(params, side, u), ctx).value)
    logger.debug(f'S-series parts for side {side}, k={k}: {values}')
    return ProgressionParts(side, k, tuple(values))


def eval_S_derivative(family, side, k, ell, ctx):
    """(k-1)-th derivative of S_0 at omega^l (side '0') or of S_inf at omega^-l (side 'inf')."""
    if k < 1 or k > family.levels:
        raise ParameterError(f'k must lie in 1..{family.levels}, got {k}')
    parts = progression_parts(family, side, k, ctx)
    with ctx.workprec(32):
        return parts.at(ell, family.params.N)


def polylog_expansion_value(family, side, k, ell, ctx):
    """U_k(z) + sum_j P_{k,j}(z) (-1)^j Li_j(z) at z = omega^l, or
    V_k(z) + sum_j P_{k,j}(z) Li_j(1/z) at z = omega^-l.

    At z = 1 the j = 1 term is dropped, which needs P_{k,1}(1) = 0.
    """
    side = _check_side(side)
    params = family.params
    N = params.N
    at_one = ell % N == 0
    point = ell if side == '0' else -ell
    weight = 1 + sum(abs(c) for j in range(1, params.a + 1) for c in family.P_at(k, j).coeffs)
    inner = ctx.with_target(ctx.tolerance / (params.a * to_mpf(weight)))
    with ctx.workprec(32):
        base = family.U[k - 1] if side == '0' else family.V[k - 1]
        total = Ball.exact(evaluate_at_root(base, point, N))
        for j in range(1, params.a + 1):
            poly = family.P_at(k, j)
            if at_one and j == 1:
                if poly.value_at_one():
                    raise DivergentSeriesError('divergent')
                continue
            coefficient = Ball.exact(evaluate_at_root(poly, point, N))
            if side == '0' and j % 2:
                coefficient = -coefficient
            total = total + coefficient * eval_polylog(j, ell, N, inner)
        return total


def check_polylog_expansion(family, side, k, ell, ctx):
    """Direct tail summation against the polylogarithm expansion; (agree, direct, expansion)."""
    direct = eval_S_derivative(family, side, k, ell, ctx)
    expansion = polylog_expansion_value(family, side, k, ell, ctx)
    agree = direct.overlaps(expansion)
    if not agree:
        logger.info(f'S-series side {side}, k={k}, l={ell}: {direct} vs {expansion}')
    return agree, direct, expansion


def well_poised_collapse(family, ell, ctx):
    """S_0(omega^l) + (-1)^p S_inf(omega^-l) against 2 (-1)^p sum_{t >= 1} F(t) omega^{l t}."""
    params = family.params
    if not params.well_poised:
        raise ParameterError(f'well-poised collapse needs 2N | n and p ≡ a (mod 2), got {params}')
    N = params.N
    sign = -1 if params.p else 1
    zero_side = progression_parts(family, '0', 1, ctx)
    infinity_side = progression_parts(family, 'inf', 1, ctx)
    with ctx.workprec(32):
        left = zero_side.at(ell, N) + infinity_side.at(ell, N) * sign
        one_sided = ball_sum(root_of_unity_ball(ell * u, N) * A for u, A in enumerate(infinity_side.values))
        right = one_sided * (2 * sign)
        return left.overlaps(right), left, right
