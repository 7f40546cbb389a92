import logging
from dataclasses import dataclass, replace

from exact_core.exceptions import ParameterError
from exact_core.integers import lcm_upto

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PoleLayout:
    """Poles at t = -spacing*h for h = 0..count-1, each of order at most ``order``."""

    order: int
    spacing: int
    count: int

    @property
    def poles(self):
        return [-self.spacing * h for h in range(self.count)]

    @property
    def size(self):
        return self.order * self.count


@dataclass(frozen=True)
class Params:
    """Integer data (a, r, N, n, p, T) of one construction instance.

    With ``relaxed`` the strict inequality r < a/(3N) is replaced by the
    construction's own requirements r >= 1 and d_0 >= 2.
    """

    a: int
    r: int
    N: int
    n: int
    p: int = 0
    T: int = 1
    relaxed: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.a < 2:
            raise ParameterError('a ≥ 2 violated')
        if self.r < 1:
            raise ParameterError('r ≥ 1 violated')
        if self.N < 1:
            raise ParameterError('N ≥ 1 violated')
        if self.n < 1:
            raise ParameterError('n ≥ 1 violated')
        if self.T < 1:
            raise ParameterError('T ≥ 1 violated')
        if self.p not in (0, 1):
            raise ParameterError('p ∈ {0, 1} violated')
        if self.n % self.N:
            raise ParameterError(f'N | n violated (n={self.n} is not a multiple of N={self.N})')
        if self.N % self.T:
            raise ParameterError(f'T | N violated (T={self.T}, N={self.N})')
        if 3 * self.N * self.r >= self.a:
            if not self.relaxed:
                raise ParameterError(f'r < a/(3N) violated (a={self.a}, r={self.r}, N={self.N})')
            logger.warning(f'Relaxed instance: r={self.r} is not below a/(3N) for a={self.a}, N={self.N}')
        if self.d0 < 2:
            raise ParameterError(f'd_0 ≥ 2 violated (d_0={self.d0})')

    @property
    def m(self):
        """n / N."""
        return self.n // self.N

    @property
    def d0(self):
        return (self.a + 1) * (self.m + 1) - (2 * self.r + 1) * self.n - 1

    @property
    def q(self):
        return self.a + self.N + 1

    @property
    def tau(self):
        return self.a + 1 - self.a * self.N

    @property
    def delta_n(self):
        """(N d_{n/N})^{a+1} N^{(a+1) n/N}."""
        return (self.N * lcm_upto(self.m)) ** (self.a + 1) * self.N ** ((self.a + 1) * self.m)

    @property
    def pole_layout(self):
        return PoleLayout(order=self.a, spacing=self.N, count=self.m + 1)

    @property
    def well_poised(self):
        """True when 2N | n and p = a (mod 2)."""
        return self.n % (2 * self.N) == 0 and (self.p - self.a) % 2 == 0

    def k_max(self, cap=None, factor=3):
        """min(d_0 - 1, cap, factor*(a+N))."""
        bound = min(self.d0 - 1, factor * (self.a + self.N))
        if cap is not None:
            bound = min(bound, cap)
        return max(bound, 1)

    def with_n(self, n):
        return replace(self, n=n)

    def with_p(self, p):
        return replace(self, p=p)

    def to_json(self):
        return {'a': self.a, 'r': self.r, 'N': self.N, 'n': self.n, 'p': self.p, 'T': self.T,
                'relaxed': self.relaxed}
