"""Euler–Maclaurin summation of rational functions with a rigorous remainder.

For g(q) = sum c / (q - rho)^j with every pole left of the cutoff M,

    sum_{q >= M} g(q) = int_M^oo g + g(M)/2 - sum_{i=1}^{p} B_{2i}/(2i)! g^(2i-1)(M) + R,
    |R| <= 2 |B_{2p+2}|/(2p+2)! sum |c| (j)_{2p+2} / ((j+2p+1) (M - rho)^(j+2p+1)).

Terms below the cutoff are summed directly from exact values, and the
integral and correction terms are exact except for the logarithms coming
from simple poles. The pieces are combined as mpmath intervals.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy
from mpmath import iv, mpf

from exact_core.exceptions import DivergentSeriesError

from .balls import Ball, guard_bits, to_interval, upper

logger = logging.getLogger(__name__)

INITIAL_CUTOFF = 16
MAX_ORDER = 400
MAX_DOUBLINGS = 10


@lru_cache(maxsize=None)
def bernoulli(k):
    value = sympy.bernoulli(k)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class TailSum:
    value: Ball
    start: int
    cutoff: int
    corrections: int
    remainder_bound: object

    def to_json(self):
        return {
            'value': self.value.to_json(),
            'start': self.start,
            'cutoff': self.cutoff,
            'corrections': self.corrections,
            'remainder_bound': str(self.remainder_bound),
        }


def _first_cutoff(expansion, start):
    rightmost = max(expansion.poles, default=Fraction(start - 1))
    if rightmost >= start:
        raise ValueError(f'pole at q={rightmost} inside the summation range q >= {start}')
    return max(start, math.floor(rightmost) + 1, INITIAL_CUTOFF)


def remainder_bound(expansion, cutoff, order):
    """Upper bound on R after ``order`` correction terms (see the module docstring)."""
    m = 2 * order + 2
    total = iv.mpf(0)
    for (rho, j), c in expansion.terms.items():
        distance = to_interval(Fraction(cutoff) - rho)
        total += to_interval(abs(c)) * math.prod(range(j, j + m)) / ((j + m - 1) * distance ** (j + m - 1))
    return upper(total * to_interval(Fraction(2 * abs(bernoulli(m)), math.factorial(m))))



def choose_order(expansion, cutoff, target):
    """(order, bound) with the smallest bound found, stopping once it meets ``target``."""
    best_order, best_bound = 0, None
    rising = 0
    for order in range(1, MAX_ORDER + 1):
        bound = remainder_bound(expansion, cutoff, order)
        if best_bound is None or bound < best_bound:
            best_order, best_bound = order, bound
            rising = 0
        else:
            rising += 1
        if best_bound <= target or rising >= 3:
            break
    return best_order, best_bound


def _exact_corrections(expansion, cutoff, order):
    """int_M^oo g without the logarithms, plus g(M)/2 and the Bernoulli terms."""
    M = Fraction(cutoff)
    total = expansion(M) / 2
    for (rho, j), c in expansion.terms.items():
        if j >= 2:
            total += c / ((j - 1) * (M - rho) ** (j - 1))
    for i in range(1, order + 1):
        derivative = expansion.derivative_terms(2 * i - 1)
        total -= bernoulli(2 * i) / math.factorial(2 * i) * derivative(M)
    return total


def progression_tail_sum(expansion, term, start, ctx):
    """sum_{q >= start} g(q) where ``expansion`` is g and ``term(q)`` is g(q) exactly.

    g must be proper with residues summing to zero, i.e. O(q^-2).
    """
    if not expansion.terms:
        if not expansion.is_proper():
            raise DivergentSeriesError('divergent')
        return TailSum(Ball.zero(), start, start, 0, mpf(0))
    if not expansion.is_proper() or expansion.simple_residue_sum() != 0:
        raise DivergentSeriesError('divergent')
    magnitude = sum((abs(c) for c in expansion.terms.values()), Fraction(0))
    with ctx.workprec(guard_bits(magnitude)):
        target = ctx.tolerance
        cutoff = _first_cutoff(expansion, start)
        for _ in range(MAX_DOUBLINGS):
            order, bound = choose_order(expansion, cutoff, target)
            if bound <= target:
                break
            logger.debug(f'Remainder bound {bound} above {target} at cutoff {cutoff}; doubling')
            cutoff *= 2
        else:
            logger.warning(f'Remainder bound {bound} still above the target {target} at cutoff {cutoff}')

        direct = iv.mpf(0)
        for q in range(start, cutoff):
            direct += to_interval(term(q))

        logs = iv.mpf(0)
        for (rho, j), c in expansion.terms.items():
            if j == 1:
                logs -= to_interval(c) * iv.ln(to_interval(Fraction(cutoff) - rho))

        exact_part = to_interval(_exact_corrections(expansion, cutoff, order))
        remainder = iv.mpf([-bound, bound])
        value = Ball.from_interval(iv.mpc(direct + logs + exact_part + remainder, 0))

    logger.debug(f'Tail sum from q={start}: cutoff {cutoff}, {order} corrections, bound {bound}')
    return TailSum(value, start, cutoff, order, bound)
