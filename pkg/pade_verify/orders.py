"""Exact checks of the vanishing orders at 0, infinity and the N-th roots of unity."""
import logging
import math
from fractions import Fraction

from exact_core.series import TruncatedSeries, series_log_at_one, taylor_at_one

logger = logging.getLogger(__name__)


def check_order_at_zero(family):
    """F(-t) = 0 for n+1 <= t <= (r+1)n, i.e. R_{0,l} = O(z^{(r+1)n+1})."""
    params = family.params
    for t in range(params.n + 1, (params.r + 1) * params.n + 1):
        if family.F(-t) != 0:
            logger.info(f'Order at zero fails: F(-{t}) = {family.F(-t)}')
            return False
    return True


def check_order_at_infinity(family):
    """F(t) = 0 for 1 <= t <= rn, i.e. R_{inf,l} = O(z^{-rn-1})."""
    params = family.params
    for t in range(1, params.r * params.n + 1):
        if family.F(t) != 0:
            logger.info(f'Order at infinity fails: F({t}) = {family.F(t)}')
            return False
    return True


def unity_remainder_series(polys, order):
    """sum_j P_j(1+w) (-1)^{j-1} log(1+w)^{j-1}/(j-1)! truncated at ``order``."""
    log = series_log_at_one(order)
    power = TruncatedSeries.constant(1, order)
    total = TruncatedSeries.constant(0, order)
    for j, poly in enumerate(polys, start=1):
        sign = -1 if (j - 1) % 2 else 1
        total = total + taylor_at_one(poly, order) * power * Fraction(sign, math.factorial(j - 1))
        power = power * log
    return total


def order_at_unity(polys, order):
    """Vanishing order at z = 1 of the remainder, capped at ``order``."""
    return unity_remainder_series(polys, order).valuation()


def check_order_at_unity(family):
    """The w^0..w^{d_0-2} coefficients of the remainder at z = 1+w all vanish.

    Since every P_j lies in Q[z^N], this covers all the points omega^l.
    """
    params = family.params
    polys = [family.P_at(1, j) for j in range(1, params.a + 1)]
    order = order_at_unity(polys, params.d0)
    if order < params.d0 - 1:
        logger.info(f'Order at unity is {order}, expected at least {params.d0 - 1}')
        return False
    return True
