"""Elimination plans: the primorial D, the weights w_d and the function g.

With D the product of the primes up to (1 - 3 eps) log a and integers w_d
(d | D) solving sum_d w_d d^{i_j} = 0 for delta - 1 exponents i_j,

    g(m) = sum_{d | D, D | m d} w_d f(m d / D)

satisfies L(g, i) = D^-i (sum_d w_d d^i) L(f, i), so L(g, i_j) = 0.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import sympy
from mpmath import mp, nstr

from analytic_eval.balls import Ball
from analytic_eval.special import L_value
from exact_core.exceptions import ParameterError, ZetaFormsError
from exact_core.integers import content
from exact_core.linalg import nullspace
from exact_core.serialization import rational_from_str, rational_to_str
from hyper_forms.fourier import PeriodicFunction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EliminationPlan:
    epsilon: Fraction
    a: int
    D: int
    divisors: tuple
    exponents: tuple = field(default=())
    w: tuple = field(default=())

    @property
    def delta(self):
        return len(self.divisors)

    def weight(self, i):
        """sum_d w_d d^i."""
        return sum(w * d ** i for w, d in zip(self.w, self.divisors))

    def is_solved(self):
        return bool(self.w) and any(self.w) and all(self.weight(i) == 0 for i in self.exponents)

    def to_json(self):
        return {
            'epsilon': rational_to_str(self.epsilon),
            'a': self.a,
            'D': self.D,
            'divisors': list(self.divisors),
            'delta': self.delta,
            'exponents': list(self.exponents),
            'w': list(self.w),
        }

    @classmethod
    def from_json(cls, data):
        plan = cls(
            epsilon=rational_from_str(data['epsilon']),
            a=int(data['a']),
            D=int(data['D']),
            divisors=tuple(int(d) for d in data['divisors']),
            exponents=tuple(int(i) for i in data.get('exponents', ())),
            w=tuple(int(w) for w in data.get('w', ())),
        )
        if list(plan.divisors) != sympy.divisors(plan.D):
            raise ParameterError(f'divisors do not list the divisors of D={plan.D}')
        if 'delta' in data and int(data['delta']) != plan.delta:
            raise ParameterError(f"delta = {data['delta']} does not match {plan.delta} divisors")
        if plan.w and len(plan.w) != plan.delta:
            raise ParameterError(f'w needs one entry per divisor ({plan.delta}), got {len(plan.w)}')
        return plan


def _check_epsilon(epsilon):
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < Fraction(1, 4):
        raise ParameterError(f'0 < ε < 1/4 violated (ε={epsilon})')
    return epsilon


def prime_threshold(epsilon, a):
    """(1 - 3 eps) log a."""
    return float(1 - 3 * Fraction(epsilon)) * math.log(a)


def primorial_D(epsilon, a):
    epsilon = _check_epsilon(epsilon)
    if a < 2:
        raise ParameterError(f'a ≥ 2 violated (a={a})')
    threshold = prime_threshold(epsilon, a)
    primes = list(sympy.primerange(2, math.floor(threshold) + 1))
    D = math.prod(primes)
    plan = EliminationPlan(epsilon, a, D, tuple(sympy.divisors(D)))
    logger.info(f'Primorial plan for ε={epsilon}, a={a}: D={D}, δ={plan.delta}')
    return plan


def plan_report(plan):
    """D against a^(1 - 2 eps) and log delta against (1 - 4 eps) log 2 log a / log log a."""
    with mp.workprec(128):
        log_a = mp.log(plan.a)
        eps = mp.mpf(plan.epsilon.numerator) / plan.epsilon.denominator
        expected = (1 - 4 * eps) * mp.log(2) * log_a / mp.log(log_a) if log_a > 1 else mp.mpf(0)
        return {
            'D': plan.D,
            'delta': plan.delta,
            'D_within_bound': bool(mp.log(plan.D) <= (1 - 2 * eps) * log_a),
            'log_delta': nstr(mp.log(plan.delta), 12),
            'log_delta_expected': nstr(expected, 12),
        }


def default_exponents(count, p, a=None):
    """The ``count`` smallest integers i >= 2 with i = p (mod 2)."""
    start = 2 if p % 2 == 0 else 3
    exponents = tuple(range(start, start + 2 * count, 2))
    if a is not None and exponents and exponents[-1] > a:
        raise ParameterError(f'i ≤ a violated: {count} exponents of parity {p} do not fit below a={a}')
    return exponents


def solve_w(divisors, exponents):
    """Primitive integer kernel vector of [d^i], first nonzero entry positive."""
    divisors, exponents = list(divisors), list(exponents)
    if len(exponents) != len(divisors) - 1:
        raise ParameterError(f'{len(divisors) - 1} exponents needed, got {len(exponents)}')
    if len(set(exponents)) != len(exponents) or any(i < 2 for i in exponents):
        raise ParameterError(f'exponents must be distinct and ≥ 2, got {exponents}')
    rows = [[Fraction(d) ** i for d in divisors] for i in exponents]
    kernel = nullspace(rows, n_cols=len(divisors))
    if not kernel:
        raise ZetaFormsError(f'empty kernel for divisors {divisors} and exponents {exponents}')
    vector = kernel[0]
    scale = math.lcm(*(Fraction(v).denominator for v in vector))
    integers = [int(Fraction(v) * scale) for v in vector]
    g = content(integers)
    integers = [v // g for v in integers]
    if next(v for v in integers if v) < 0:
        integers = [-v for v in integers]
    return tuple(integers)


def solve_plan(plan, p=1, exponents=None):
    """Fill in exponents (default: smallest of parity p) and w."""
    if exponents is None:
        exponents = default_exponents(plan.delta - 1, p, plan.a)
    exponents = tuple(sorted(exponents))
    solved = replace(plan, exponents=exponents, w=solve_w(plan.divisors, exponents))
    logger.info(f'Weights for D={plan.D} eliminating {list(exponents)}: w = {list(solved.w)}')
    return solved


def theorem2_choice(plan, T=1):
    """r = floor(a^eps) and N = D T; valid when 3 N r < a."""
    r = int(sympy.integer_nthroot(plan.a ** plan.epsilon.numerator, plan.epsilon.denominator)[0])
    N = plan.D * T
    return {'r': r, 'N': N, 'valid': r >= 1 and 3 * N * r < plan.a}


def build_g(f, plan):
    """g = sum_d w_d g_{D/d}, of period D T, with g_e(m) = f(m/e) when e | m."""
    if not plan.w:
        raise ParameterError('plan has no weights; solve it first')
    D = plan.D
    N = D * f.period
    values = []
    for m in range(N):
        total = Fraction(0)
        for d, w in zip(plan.divisors, plan.w):
            if w and (m * d) % D == 0:
                total = total + w * f(m * d // D)
        values.append(total)
    return PeriodicFunction(tuple(values))


def check_g_identity(f, plan, ctx, exponents=(2, 3, 4)):
    """L(g, i) against D^-i (sum_d w_d d^i) L(f, i) for each i; {i: (agree, L(g, i))}."""
    g = build_g(f, plan)
    results = {}
    for i in exponents:
        factor = Fraction(plan.weight(i), plan.D ** i)
        lhs = L_value(g, i, ctx)
        with ctx.workprec(32):
            rhs = L_value(f, i, ctx) * factor if factor else Ball.zero()
            results[i] = (lhs.overlaps(rhs), lhs)
        logger.debug(f'L(g, {i}) = {lhs}, expected factor {factor}')
    return results

