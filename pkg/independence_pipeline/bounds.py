"""The constants alpha, beta and the dimension lower bounds they give.

    alpha = (4e)^{(a+1)/N} (2N)^{2r+2} r^{-(a+1)/N + 4(r+1)}
    beta  = (2e)^{(a+1)/N} (r+1)^{2r+2} N^{2r+2}

Both are computed in the log domain; alpha itself underflows any float
once a is large.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf, nstr

from exact_core.exceptions import ParameterError

logger = logging.getLogger(__name__)

# Dimension threshold (epsilon / DIMENSION_CONSTANT) log a; needs 4 (1 + log 2) > DIMENSION_CONSTANT.
DIMENSION_CONSTANT = 7


@dataclass(frozen=True)
class BoundParams:
    a: int
    r: int
    N: int
    log_alpha: object
    log_beta: object

    @property
    def alpha(self):
        return mp.exp(self.log_alpha)

    @property
    def beta(self):
        return mp.exp(self.log_beta)

    @property
    def tau_siegel(self):
        """-log alpha / log beta; infinite when beta <= 1."""
        if self.log_beta <= 0:
            return mp.inf
        return -self.log_alpha / self.log_beta

    @property
    def dimension_bound(self):
        return 1 + self.tau_siegel

    def to_json(self, digits=30):
        return {
            'a': self.a,
            'r': self.r,
            'N': self.N,
            'log_alpha': nstr(self.log_alpha, digits),
            'log_beta': nstr(self.log_beta, digits),
            'alpha': nstr(self.alpha, digits),
            'beta': nstr(self.beta, digits),
            'tau_siegel': nstr(self.tau_siegel, digits),
            'dimension_bound': nstr(self.dimension_bound, digits),
        }


def alpha_beta(a, r, N, bits=256):
    if a < 1 or r < 1 or N < 1:
        raise ParameterError(f'a, r, N ≥ 1 violated (a={a}, r={r}, N={N})')
    with mp.workprec(bits):
        weight = mpf(a + 1) / N
        log_alpha = (weight * mp.log(4 * mp.e) + (2 * r + 2) * mp.log(2 * N)
                     + (4 * (r + 1) - weight) * mp.log(r))
        log_beta = weight * mp.log(2 * mp.e) + (2 * r + 2) * (mp.log(r + 1) + mp.log(N))
    return BoundParams(a, r, N, +log_alpha, +log_beta)


def theorem1_r(a):
    """r = floor(a / (log a)^2)."""
    return math.floor(a / math.log(a) ** 2) if a > 1 else 0


@dataclass(frozen=True)
class DimensionBound:
    a: int
    N: int
    params: BoundParams
    value: object

    @property
    def ratio_to_limit(self):
        """value (1 + log 2) / log a, which tends to 1 as a grows."""
        return self.value * (1 + mp.log(2)) / mp.log(self.a)

    @property
    def epsilon_a(self):
        return self.ratio_to_limit - 1

    def to_json(self, digits=30):
        return {
            'a': self.a,
            'N': self.N,
            'r': self.params.r,
            'alpha': nstr(self.params.alpha, digits),
            'beta': nstr(self.params.beta, digits),
            'bound': nstr(self.value, digits),
            'ratio_to_limit': nstr(self.ratio_to_limit, digits),
        }


def theorem1_bound(a, N, bits=256):
    """1 - log alpha / log beta - N with r = floor(a / (log a)^2)."""
    r = theorem1_r(a)
    if r < 1 or 3 * N * r >= a:
        raise ParameterError(f'a too small for N (a={a}, N={N}, r={r})')
    params = alpha_beta(a, r, N, bits)
    with mp.workprec(bits):
        value = 1 - params.log_alpha / params.log_beta - N
    result = DimensionBound(a, N, params, value)
    logger.info(f'Dimension bound for a={a}, N={N}: {nstr(value, 12)} (r={r})')
    return result


def theorem3_report(epsilon, a, bits=256):
    """Subspace threshold (eps/7) log a together with the constant comparison it relies on."""
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise ParameterError(f'0 < ε < 1 violated (ε={epsilon})')
    if a < 2:
        raise ParameterError(f'a ≥ 2 violated (a={a})')
    with mp.workprec(bits):
        log_a = mp.log(a)
        eps = mpf(epsilon.numerator) / epsilon.denominator
        lhs = 4 * (1 + mp.log(2))
        report = {
            'epsilon': f'{epsilon.numerator}/{epsilon.denominator}',
            'a': a,
            'dimension_threshold': nstr(eps / DIMENSION_CONSTANT * log_a, 20),
            'constant_lhs': nstr(lhs, 20),
            'constant_rhs': DIMENSION_CONSTANT,
            'constant_holds': bool(lhs > DIMENSION_CONSTANT),
            'corollary_dimension': nstr(log_a / 8, 20),
        }
    if not report['constant_holds']:
        logger.warning(f"4(1 + log 2) = {report['constant_lhs']} does not exceed {DIMENSION_CONSTANT}")
    return report
