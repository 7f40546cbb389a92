"""Exact partial-fraction expansions sum c / (t - rho)^j + polynomial.

Poles are rational numbers; the polynomial part is a DensePoly in t.
"""
import math
from fractions import Fraction

from .polynomials import DensePoly


class PoleExpansion:
    __slots__ = ('terms', 'polynomial')

    def __init__(self, terms=None, polynomial=None):
        cleaned = {}
        for (rho, j), c in (terms or {}).items():
            if j < 1:
                raise ValueError(f'pole order must be >= 1, got {j}')
            if c:
                cleaned[(Fraction(rho), j)] = Fraction(c)
        object.__setattr__(self, 'terms', cleaned)
        object.__setattr__(self, 'polynomial', polynomial if polynomial is not None else DensePoly())

    def __setattr__(self, name, value):
        raise AttributeError('PoleExpansion is immutable')

    @classmethod
    def from_factored(cls, poles, numerator_roots=(), scalar=1):
        """Expansion of scalar * prod (t - beta) / prod (t - rho), simple poles.

        Needs distinct poles and fewer numerator roots than poles. The residue
        at rho is scalar * prod (rho - beta) / prod_{rho' != rho} (rho - rho').
        """
        poles = [Fraction(rho) for rho in poles]
        if len(set(poles)) != len(poles):
            raise ValueError('poles must be distinct')
        if len(numerator_roots) >= len(poles):
            raise ValueError('expansion must be proper')
        terms = {}
        for rho in poles:
            residue = Fraction(scalar)
            for beta in numerator_roots:
                residue *= rho - Fraction(beta)
            for other in poles:
                if other != rho:
                    residue /= rho - other
            terms[(rho, 1)] = residue
        return cls(terms)

    def __eq__(self, other):
        if not isinstance(other, PoleExpansion):
            return NotImplemented
        return self.terms == other.terms and self.polynomial == other.polynomial

    def __repr__(self):
        body = ', '.join(f'{c}/(t-{rho})^{j}' for (rho, j), c in sorted(self.terms.items()))
        return f'PoleExpansion({body}; {self.polynomial!r})'

    @property
    def poles(self):
        return sorted({rho for rho, _ in self.terms})

    @property
    def max_order(self):
        return max((j for _, j in self.terms), default=0)

    def coefficient(self, rho, j):
        return self.terms.get((Fraction(rho), j), Fraction(0))

    def is_proper(self):
        return self.polynomial.is_zero()

    def is_simple(self):
        return self.is_proper() and all(j == 1 for _, j in self.terms)

    def scale(self, factor):
        factor = Fraction(factor)
        return PoleExpansion({key: c * factor for key, c in self.terms.items()}, self.polynomial * factor)

    def __add__(self, other):
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + c
        return PoleExpansion(terms, self.polynomial + other.polynomial)

    def times_simple(self, other):
        """Product with an expansion having only simple poles.

        Uses, for x != y,
        1/((t-x)(t-y)^l) = 1/((x-y)^l (t-x)) - sum_{i=1}^{l} 1/((x-y)^{l+1-i} (t-y)^i).
        """
        if not self.is_proper():
            raise ValueError('left factor must have zero polynomial part')
        if not other.is_simple():
            raise ValueError('right factor must have only simple poles')
        terms = {}

        def add(rho, j, value):
            terms[(rho, j)] = terms.get((rho, j), Fraction(0)) + value

        for (y, ell), c in self.terms.items():
            for (x, _), e in other.terms.items():
                ce = c * e
                if x == y:
                    add(y, ell + 1, ce)
                    continue
                u = x - y
                add(x, 1, ce / u ** ell)
                for i in range(1, ell + 1):
                    add(y, i, -ce / u ** (ell + 1 - i))
        return PoleExpansion(terms)

    def times_linear(self, beta):
        """Product with (t - beta), using
        (t - beta)/(t - rho)^j = 1/(t - rho)^{j-1} + (rho - beta)/(t - rho)^j.
        """
        beta = Fraction(beta)
        terms = {}
        constant = Fraction(0)
        for (rho, j), c in self.terms.items():
            terms[(rho, j)] = terms.get((rho, j), Fraction(0)) + c * (rho - beta)
            if j == 1:
                constant += c
            else:
                terms[(rho, j - 1)] = terms.get((rho, j - 1), Fraction(0)) + c
        polynomial = self.polynomial * DensePoly((-beta, 1)) + DensePoly.constant(constant)
        return PoleExpansion(terms, polynomial)

    def __call__(self, t):
        t = Fraction(t)
        value = self.polynomial(t)
        for (rho, j), c in self.terms.items():
            value += c / (t - rho) ** j
        return value

    def simple_residue_sum(self):
        return sum((c for (_, j), c in self.terms.items() if j == 1), Fraction(0))

    def derivative_terms(self, order):
        """Terms of the ``order``-th derivative: c (-1)^p (j)_p / (t - rho)^{j+p}."""
        sign = -1 if order % 2 else 1
        out = {}
        for (rho, j), c in self.terms.items():
            rising = math.prod(range(j, j + order))
            out[(rho, j + order)] = out.get((rho, j + order), Fraction(0)) + sign * rising * c
        return PoleExpansion(out, _poly_derivative(self.polynomial, order))

    def shift_argument(self, start, step):
        """Expansion of g(q) = self(start + step * q) as a function of q."""
        start, step = Fraction(start), Fraction(step)
        terms = {}
        for (rho, j), c in self.terms.items():
            # (start + step q - rho)^j = step^j (q - (rho - start)/step)^j
            key = ((rho - start) / step, j)
            terms[key] = terms.get(key, Fraction(0)) + c / step ** j
        polynomial = DensePoly()
        power = DensePoly.constant(1)
        linear = DensePoly((start, step))
        for coefficient in self.polynomial.coeffs:
            polynomial = polynomial + power * coefficient
            power = power * linear
        return PoleExpansion(terms, polynomial)


def _poly_derivative(poly, order):
    for _ in range(order):
        poly = poly.derivative()
    return poly
