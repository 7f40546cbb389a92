"""Integer utilities: lcm(1..m), Pochhammer symbols, integrality tests."""
import math
from fractions import Fraction
from functools import lru_cache, reduce


@lru_cache(maxsize=None)
def lcm_upto(m):
    """Return d_m = lcm(1, 2, ..., m), with d_0 = 1."""
    if m < 0:
        raise ValueError(f'lcm_upto needs m >= 0, got {m}')
    return reduce(math.lcm, range(1, m + 1), 1)


def pochhammer(x, p):
    """Rising factorial (x)_p = x (x+1) ... (x+p-1).

    ``x`` may be an int, a Fraction or any polynomial type supporting
    ``+ int`` and ``*``; (x)_0 is the integer 1.
    """
    if p < 0:
        raise ValueError(f'pochhammer needs p >= 0, got {p}')
    result = 1
    for i in range(p):
        result = (x + i) * result
    return result


def is_integer(value):
    return Fraction(value).denominator == 1


def as_integer(value):
    """Return ``value`` as an int, or None if it is not integral."""
    value = Fraction(value)
    if value.denominator != 1:
        return None
    return value.numerator


def content(values):
    """Positive gcd of a list of integers (0 for the zero list)."""
    return reduce(math.gcd, (abs(v) for v in values), 0)
