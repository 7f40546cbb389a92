"""Exact arithmetic in the cyclotomic field Q(omega), omega = exp(2 i pi / N).

Elements are polynomials in x reduced modulo the cyclotomic polynomial
Phi_N, so the representation is canonical and the ring is a field.
"""
from fractions import Fraction
from functools import lru_cache

from sympy import Poly, symbols
from sympy.polys.specialpolys import cyclotomic_poly

from .exceptions import CyclotomicDivisionError
from .polynomials import DensePoly

_x = symbols('x')


@lru_cache(maxsize=None)
def cyclotomic_min_poly(N):
    """Phi_N as a monic DensePoly with integer coefficients."""
    if N < 1:
        raise ValueError(f'cyclotomic_min_poly needs N >= 1, got {N}')
    poly = Poly(cyclotomic_poly(N, _x), _x)
    return DensePoly(Fraction(int(c)) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _modulus(N):
    return cyclotomic_min_poly(N).coeffs


def _reduce(N, coeffs):
    """Reduce a coefficient list modulo Phi_N; returns a tuple of length phi(N)."""
    phi = _modulus(N)
    degree = len(phi) - 1
    work = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
    for top in range(len(work) - 1, degree - 1, -1):
        c = work[top]
        if not c:
            continue
        # x^top = -sum_{j<degree} phi_j x^{top-degree+j} modulo Phi_N.
        base = top - degree
        for j in range(degree):
            if phi[j]:
                work[base + j] -= c * phi[j]
        work[top] = Fraction(0)
    work = work[:degree] + [Fraction(0)] * (degree - len(work))
    return tuple(work)


class CycloNumber:
    """sum_i coeffs[i] omega^i with omega a primitive N-th root of unity."""

    __slots__ = ('N', 'coeffs')

    def __init__(self, N, coeffs=()):
        object.__setattr__(self, 'N', N)
        object.__setattr__(self, 'coeffs', _reduce(N, coeffs))

    def __setattr__(self, name, value):
        raise AttributeError('CycloNumber is immutable')

    @classmethod
    def rational(cls, N, value):
        return cls(N, (Fraction(value),))

    @classmethod
    def zero(cls, N):
        return cls(N)

    @classmethod
    def one(cls, N):
        return cls.rational(N, 1)

    @property
    def degree(self):
        return len(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f'{self!r} is not rational')
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f'CycloNumber({self.N}, {[str(c) for c in self.coeffs]})'

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_rational())
        return hash((self.N, self.coeffs))

    def _coerce(self, other):
        if isinstance(other, CycloNumber):
            if other.N == self.N:
                return other
            raise ValueError(f'cannot combine Q(zeta_{self.N}) and Q(zeta_{other.N}) elements')
        if isinstance(other, (int, Fraction)):
            return CycloNumber.rational(self.N, other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_rational() == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self.N == other.N and self.coeffs == other.coeffs

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNumber(self.N, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.N, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.N, [c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        product = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    product[i + j] += a * b
        return CycloNumber(self.N, product)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via extended Euclid against Phi_N."""
        if not self:
            raise CyclotomicDivisionError()
        s, _, g = DensePoly(self.coeffs).gcdex(cyclotomic_min_poly(self.N))
        # Phi_N is irreducible, so the monic gcd of a nonzero element is 1.
        assert g == DensePoly.constant(1), g
        return CycloNumber(self.N, s.coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise CyclotomicDivisionError()
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycloNumber.one(self.N)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self):
        """Complex conjugate: omega -> omega^{-1}."""
        sums = [Fraction(0)] * self.N
        for i, c in enumerate(self.coeffs):
            sums[(-i) % self.N] += c
        return CycloNumber(self.N, sums)

    def lift(self, M):
        """Embed into Q(zeta_M) for a multiple M of N (omega_N = omega_M^{M/N})."""
        if M % self.N:
            raise ValueError(f'{M} is not a multiple of {self.N}')
        step = M // self.N
        sums = [Fraction(0)] * (step * max(len(self.coeffs) - 1, 0) + 1)
        for i, c in enumerate(self.coeffs):
            sums[i * step] += c
        return CycloNumber(M, sums)


def root_power(N, e):
    """omega^e in Q(zeta_N)."""
    sums = [Fraction(0)] * N
    sums[e % N] = Fraction(1)
    return CycloNumber(N, sums)


def cyclo_mul(x, y):
    return x * y


def cyclo_inverse(x):
    return x.inverse()


def evaluate_at_root(poly, ell, N):
    """Value of a Laurent polynomial with rational coefficients at omega^ell.

    Exponents are folded modulo N before a single reduction.
    """
    sums = [Fraction(0)] * N
    for exponent, coefficient in poly.terms():
        sums[(ell * exponent) % N] += coefficient
    return CycloNumber(N, sums)
