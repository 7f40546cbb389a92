"""Truncated power series in w with exact coefficients.

Used for the local expansions at z = 1 (z = 1 + w).
"""
import math
from fractions import Fraction


class TruncatedSeries:
    """c_0 + c_1 w + ... + c_{order-1} w^{order-1} + O(w^order)."""

    __slots__ = ('order', 'coeffs')

    def __init__(self, coeffs, order=None):
        coeffs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
        if order is None:
            order = len(coeffs)
        if order < 0:
            raise ValueError(f'series order must be >= 0, got {order}')
        coeffs = coeffs[:order] + [Fraction(0)] * (order - len(coeffs))
        object.__setattr__(self, 'order', order)
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError('TruncatedSeries is immutable')

    @classmethod
    def constant(cls, value, order):
        return cls([value], order)

    def __repr__(self):
        return f'TruncatedSeries({[str(c) for c in self.coeffs]}, order={self.order})'

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(other, self.order)

    def __add__(self, other):
        other = self._lift(other)
        order = min(self.order, other.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[:order], other.coeffs[:order])], order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        order = min(self.order, other.order)
        product = [Fraction(0)] * order
        for i, a in enumerate(self.coeffs[:order]):
            if not a:
                continue
            for j in range(order - i):
                b = other.coeffs[j]
                if b:
                    product[i + j] += a * b
        return TruncatedSeries(product, order)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError('negative power of a truncated series')
        result = TruncatedSeries.constant(1, self.order)
        for _ in range(exponent):
            result = result * self
        return result

    def valuation(self):
        """Index of the first nonzero coefficient, or ``order`` if none."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.order

    def vanishes_through(self, degree):
        """True iff the coefficients of w^0..w^degree are all zero."""
        if degree >= self.order:
            raise ValueError(f'series known only through w^{self.order - 1}')
        return self.valuation() > degree


def series_log_at_one(order):
    """log(1 + w) = sum_{m >= 1} (-1)^{m+1} w^m / m, truncated at ``order``."""
    if order < 1:
        raise ValueError(f'series order must be >= 1, got {order}')
    return TruncatedSeries(
        [Fraction(0)] + [Fraction((-1) ** (m + 1), m) for m in range(1, order)], order
    )


def taylor_at_one(poly, order):
    """Coefficients of P(1 + w) for a polynomial P with nonnegative powers.

    The coefficient of w^k is sum_i c_i binom(i, k).
    """
    out = []
    coeffs = poly.to_dense().coeffs if hasattr(poly, 'to_dense') else poly.coeffs
    for k in range(order):
        out.append(sum((c * math.comb(i, k) for i, c in enumerate(coeffs) if i >= k), Fraction(0)))
    return TruncatedSeries(out, order)
