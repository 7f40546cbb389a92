"""The rational function F(t) in factored form."""
import logging
import math
from collections import Counter
from fractions import Fraction

from exact_core.exceptions import ParameterError
from exact_core.polynomials import DensePoly
from exact_core.serialization import rational_to_str

logger = logging.getLogger(__name__)


class FactoredRationalFunction:
    """scalar * prod (t - beta)^mult / prod (t - rho)^mult, fully cancelled."""

    __slots__ = ('scalar', 'numerator_roots', 'denominator_roots')

    def __init__(self, scalar, numerator_roots=(), denominator_roots=()):
        numerator = _as_counter(numerator_roots)
        denominator = _as_counter(denominator_roots)
        for root in list(numerator):
            common = min(numerator[root], denominator.get(root, 0))
            if common:
                numerator[root] -= common
                denominator[root] -= common
        object.__setattr__(self, 'scalar', Fraction(scalar))
        object.__setattr__(self, 'numerator_roots', _as_pairs(numerator))
        object.__setattr__(self, 'denominator_roots', _as_pairs(denominator))

    def __setattr__(self, name, value):
        raise AttributeError('FactoredRationalFunction is immutable')

    def __eq__(self, other):
        if not isinstance(other, FactoredRationalFunction):
            return NotImplemented
        return (self.scalar, self.numerator_roots, self.denominator_roots) == (
            other.scalar, other.numerator_roots, other.denominator_roots)

    def __hash__(self):
        return hash((self.scalar, self.numerator_roots, self.denominator_roots))

    def __repr__(self):
        return (f'FactoredRationalFunction({self.scalar}, num={self.numerator_roots}, '
                f'den={self.denominator_roots})')

    @property
    def numerator_degree(self):
        return sum(mult for _, mult in self.numerator_roots)

    @property
    def denominator_degree(self):
        return sum(mult for _, mult in self.denominator_roots)

    @property
    def degree(self):
        return self.numerator_degree - self.denominator_degree

    @property
    def poles(self):
        return dict(self.denominator_roots)

    @property
    def zeros(self):
        return dict(self.numerator_roots)

    def is_pole(self, t):
        return Fraction(t) in self.poles

    def pole_order(self, rho):
        return self.poles.get(Fraction(rho), 0)

    def __call__(self, t):
        t = Fraction(t)
        value = self.scalar
        for rho, mult in self.denominator_roots:
            if t == rho:
                raise ZeroDivisionError(f'F has a pole at t = {t}')
        for beta, mult in self.numerator_roots:
            value *= (t - beta) ** mult
            if not value:
                return value
        for rho, mult in self.denominator_roots:
            value /= (t - rho) ** mult
        return value

    def numerator(self):
        roots = [beta for beta, mult in self.numerator_roots for _ in range(mult)]
        return DensePoly.from_roots(roots, self.scalar)

    def denominator(self):
        roots = [rho for rho, mult in self.denominator_roots for _ in range(mult)]
        return DensePoly.from_roots(roots)

    def to_json(self):
        return {
            'scalar': rational_to_str(self.scalar),
            'numerator_roots': [[rational_to_str(beta), mult] for beta, mult in self.numerator_roots],
            'denominator_roots': [[rational_to_str(rho), mult] for rho, mult in self.denominator_roots],
        }


def _as_counter(roots):
    counter = Counter()
    for item in roots:
        if isinstance(item, tuple):
            root, mult = item
        else:
            root, mult = item, 1
        counter[Fraction(root)] += mult
    return counter


def _as_pairs(counter):
    return tuple(sorted((root, mult) for root, mult in counter.items() if mult > 0))


def build_F(params):
    """F(t) = m!^{a+1-(2r+1)N} (t - rn)_{(2r+1)n+1} / prod_{h=0}^{m} (t + Nh)^{a+1}.

    The Pochhammer numerator has roots rn - i for i = 0..(2r+1)n, which
    cancel one copy of every denominator factor.
    """
    a, r, N, n, m = params.a, params.r, params.N, params.n, params.m
    scalar = Fraction(math.factorial(m)) ** (a + 1 - (2 * r + 1) * N)
    numerator = [r * n - i for i in range((2 * r + 1) * n + 1)]
    denominator = [(-N * h, a + 1) for h in range(m + 1)]
    F = FactoredRationalFunction(scalar, numerator, denominator)
    if -F.degree != params.d0:
        raise ParameterError(f'deg F = {F.degree} does not match d_0 = {params.d0}')
    logger.debug(f'Built F for {params}: d_0={params.d0}, {len(F.numerator_roots)} numerator roots')
    return F


def symmetry_points(params):
    """Half-integer sample points t = k + 1/2, k = 1..d_0 + (2r+1)n + 2.

    Both F(t) and F(-n-t) have their poles at integers, and the numerator of
    F(-n-t) - (-1)^p F(t) over the common denominator has degree below the
    number of points, so agreement at all of them is an identity.
    """
    count = params.d0 + (2 * params.r + 1) * params.n + 2
    return [Fraction(2 * k + 1, 2) for k in range(1, count + 1)]


def check_well_poised_symmetry(F, params):
    """True iff F(-n-t) = (-1)^p F(t) identically."""
    if params.n % (2 * params.N):
        raise ParameterError(f'2N | n violated (n={params.n}, N={params.N})')
    if (params.p - params.a) % 2:
        raise ParameterError(f'p ≡ a (mod 2) violated (p={params.p}, a={params.a})')
    sign = -1 if params.p else 1
    for t in symmetry_points(params):
        if F(-params.n - t) != sign * F(t):
            logger.info(f'Well-poised symmetry fails at t={t} for {params}')
            return False
    return True
