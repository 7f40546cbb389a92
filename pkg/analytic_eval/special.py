"""Hurwitz zeta, Dirichlet L-values of periodic functions and polylogarithms at roots of unity."""
import math
from fractions import Fraction

from exact_core.exceptions import DivergentSeriesError, ParameterError
from exact_core.pole_expansions import PoleExpansion

from .balls import Ball, ball_sum, root_of_unity_ball
from .summation import progression_tail_sum


def hurwitz_zeta(s, x, ctx):
    """zeta(s, x) = sum_{q >= 0} (q + x)^-s for integers s >= 2 and 0 < x <= 1."""
    if s <= 1:
        raise DivergentSeriesError('divergent')
    x = Fraction(x)
    if not 0 < x <= 1:
        raise ParameterError(f'0 < x ≤ 1 violated (x={x})')
    expansion = PoleExpansion({(-x, s): 1})
    return progression_tail_sum(expansion, lambda q: 1 / (q + x) ** s, 0, ctx).value


def L_value(f, s, ctx):
    """L(f, s) = sum_u f(u) T^-s zeta(s, u/T) over u = 1..T."""
    if s <= 1:
        raise DivergentSeriesError('divergent')
    T = f.period
    inner = ctx.with_target(ctx.tolerance / T)
    with ctx.workprec(32):
        terms = []
        for u in range(1, T + 1):
            value = f(u)
            if value:
                scale = Fraction(1, T ** s)
                terms.append(Ball.exact(value) * Ball.exact(scale) * hurwitz_zeta(s, Fraction(u, T), inner))
        return ball_sum(terms)


def eval_polylog(j, e, N, ctx):
    """Li_j(z) at z = exp(2 pi i e / N)."""
    if j < 1:
        raise ParameterError(f'j ≥ 1 violated (j={j})')
    e %= N
    g = math.gcd(e, N)
    e, N = e // g, N // g
    if j == 1:
        if e == 0:
            raise DivergentSeriesError('divergent')
        with ctx.workprec(32):
            return root_of_unity_ball(e, N).log_one_minus()
    inner = ctx.with_target(ctx.tolerance / N)
    with ctx.workprec(32):
        terms = []
        for u in range(1, N + 1):
            weight = root_of_unity_ball(e * u, N) * Ball.exact(Fraction(1, N ** j))
            terms.append(weight * hurwitz_zeta(j, Fraction(u, N), inner))
        return ball_sum(terms)
