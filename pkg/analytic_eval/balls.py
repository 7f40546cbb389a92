"""Complex enclosures on top of mpmath interval arithmetic.

A ``Ball`` wraps an ``iv.mpc``: real and imaginary parts are intervals with
outward rounding, so every operation keeps the true value inside. ``mid``
and ``rad`` describe the enclosure as a disk for reporting and comparisons.
The interval precision follows ``PrecisionContext.workprec``.
"""
import logging
import math
from contextlib import contextmanager
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from mpmath import iv, mp, mpc, mpf, nstr

from exact_core.cyclotomic import CycloNumber
from exact_core.exceptions import ParameterError

logger = logging.getLogger(__name__)

MIN_PRECISION_BITS = 64
RADIUS_DIGITS = 6


@contextmanager
def interval_precision(bits):
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in bits and the absolute error each evaluation aims for.

    Without an explicit ``target`` the tolerance is 2^-(bits - 64).
    """

    bits: int = 256
    target: object = None

    def __post_init__(self):
        if self.bits < MIN_PRECISION_BITS:
            raise ParameterError(f'precision ≥ {MIN_PRECISION_BITS} bits violated (got {self.bits})')

    @property
    def tolerance(self):
        if self.target is not None:
            return mpf(self.target)
        return mpf(2) ** (MIN_PRECISION_BITS - self.bits)

    def with_target(self, target):
        return replace(self, target=target)

    def doubled(self):
        return replace(self, bits=2 * self.bits)

    @contextmanager
    def workprec(self, extra=0):
        """Point and interval arithmetic both at bits + extra."""
        with mp.workprec(self.bits + extra), interval_precision(self.bits + extra):
            yield

    @property
    def digits(self):
        return bits_to_digits(self.bits)


def bits_to_digits(bits):
    return int(bits * math.log10(2)) + 1


def guard_bits(magnitude):
    """Extra bits that absorb cancellation among terms of total size ``magnitude``."""
    magnitude = abs(Fraction(magnitude))
    if magnitude <= 1:
        return 32
    return 32 + magnitude.numerator.bit_length() - magnitude.denominator.bit_length() + 1


def to_mpf(value):
    """Nearest mpf to an exact rational."""
    value = Fraction(value)
    return mpf(value.numerator) / value.denominator


def upper(interval):
    """Right endpoint of an ``iv.mpf`` as an mpf, rounded up."""
    return mpf(interval._mpi_[1], rounding='u')


def format_upper(value, digits=RADIUS_DIGITS):
    """Decimal string of a nonnegative bound that is never below ``value``."""
    value = mpf(value, rounding='u')
    if not value or not mp.isfinite(value):
        return nstr(value, digits)
    return nstr(value * (1 + mpf(10) ** (1 - digits)), digits)


def to_interval(value):
    """Enclosure of an exact rational as an ``iv.mpf``."""
    value = Fraction(value)
    if value.denominator == 1:
        return iv.mpf(value.numerator)
    return iv.mpf(value.numerator) / value.denominator


class Ball:
    __slots__ = ('value', 'prec')

    def __init__(self, mid, rad=0):
        mid = mpc(mid)
        rad = abs(mpf(rad))
        spread = iv.mpf([-rad, rad])
        self.value = iv.mpc(iv.mpf(mid.real) + spread, iv.mpf(mid.imag) + spread)
        self.prec = iv.prec

    @classmethod
    def from_interval(cls, value):
        ball = cls.__new__(cls)
        ball.value = value if isinstance(value, iv.mpc) else iv.mpc(value)
        ball.prec = iv.prec
        return ball

    @classmethod
    def exact(cls, value):
        """Enclosure of a rational, an int or a cyclotomic number."""
        if isinstance(value, Ball):
            return value
        if isinstance(value, CycloNumber):
            return cyclo_to_ball(value)
        if isinstance(value, (mpf, mpc)):
            return cls(value, 0)
        return cls.from_interval(to_interval(value))

    @classmethod
    def zero(cls):
        return cls.from_interval(iv.mpc(0, 0))

    def __repr__(self):
        return f'Ball({nstr(self.mid, 15)} ± {nstr(self.rad, 3)})'

    def mid_parts(self):
        """(real, imaginary) centre of the enclosure at the precision it was computed with."""
        with interval_precision(self.prec):
            re = self.value.real.mid._mpi_[0]
            im = self.value.imag.mid._mpi_[0]
        return mpf(re, prec=self.prec), mpf(im, prec=self.prec)

    @property
    def mid(self):
        re, im = self.mid_parts()
        return mpc(re, im)

    @property
    def rad(self):
        """Upper bound on |z - mid| over the enclosure."""
        re, im = self.mid_parts()
        with interval_precision(self.prec):
            offset = iv.mpc(self.value.real - re, self.value.imag - im)
            return upper(abs(offset))

    def _lift(self, other):
        if isinstance(other, Ball):
            return other
        return Ball.exact(other)

    def __add__(self, other):
        return Ball.from_interval(self.value + self._lift(other).value)

    __radd__ = __add__

    def __neg__(self):
        return Ball.from_interval(-self.value)

    def __sub__(self, other):
        return Ball.from_interval(self.value - self._lift(other).value)

    def __rsub__(self, other):
        return Ball.from_interval(self._lift(other).value - self.value)

    def __mul__(self, other):
        return Ball.from_interval(self.value * self._lift(other).value)

    __rmul__ = __mul__

    def conjugate(self):
        return Ball.from_interval(self.value.conjugate())

    def log_one_minus(self):
        """Enclosure of -log(1 - z); the interval logarithm tracks the 1/|1 - z| conditioning."""
        return Ball.from_interval(-iv.ln(1 - self.value))

    def abs_upper(self):
        with interval_precision(self.prec):
            return upper(abs(self.value))

    def overlaps(self, other):
        """True iff the two enclosures intersect, i.e. the values may be equal."""
        return self.value.overlap(self._lift(other).value)

    def contains(self, value):
        return value in self.value

    def to_json(self, digits=None):
        """Midpoint at full working precision, radius rounded up."""
        digits = digits or bits_to_digits(self.prec)
        re, im = self.mid_parts()
        return {
            'mid_re': nstr(re, digits),
            'mid_im': nstr(im, digits),
            'rad': format_upper(self.rad),
        }


@lru_cache(maxsize=4096)
def _root_of_unity(e, N, bits):
    with interval_precision(bits):
        if (4 * e) % N == 0:
            return iv.mpc(*((1, 0), (0, 1), (-1, 0), (0, -1))[4 * e // N])
        angle = iv.pi * (2 * e) / N
        return iv.mpc(iv.cos(angle), iv.sin(angle))


def root_of_unity_ball(e, N):
    """exp(2 pi i e / N)."""
    return Ball.from_interval(_root_of_unity(e % N, N, iv.prec))


def cyclo_to_ball(value):
    """Enclosure of sum_i c_i omega^i with omega = exp(2 pi i / N)."""
    total = Ball.zero()
    for i, c in enumerate(value.coeffs):
        if c:
            total = total + root_of_unity_ball(i, value.N) * Ball.exact(c)
    return total


def ball_sum(balls):
    total = Ball.zero()
    for ball in balls:
        total = total + ball
    return total
