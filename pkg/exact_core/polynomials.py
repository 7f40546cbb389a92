"""Dense and Laurent polynomials with exact coefficients.

Coefficients are ``Fraction`` by default; any exact field element that
supports the arithmetic operators (``CycloNumber`` for instance) works too.
Both classes are immutable and hashable.
"""
from fractions import Fraction

# Degree of the zero polynomial.
NEG_INFINITY = float('-inf')


def _coerce(value):
    if isinstance(value, int):
        return Fraction(value)
    return value


def _strip(coeffs):
    coeffs = [_coerce(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class DensePoly:
    """c_0 + c_1 z + ... + c_d z^d stored as (c_0, ..., c_d)."""

    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        object.__setattr__(self, 'coeffs', _strip(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError('DensePoly is immutable')

    @classmethod
    def constant(cls, value):
        return cls((value,))

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls([0] * exponent + [coefficient])

    @classmethod
    def from_roots(cls, roots, scalar=1):
        """scalar * prod (z - root)."""
        result = cls.constant(scalar)
        for root in roots:
            result = result * cls((-_coerce(root), 1))
        return result

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def leading_coefficient(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, exponent):
        if 0 <= exponent < len(self.coeffs):
            return self.coeffs[exponent]
        return Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, DensePoly):
            return self.coeffs == other.coeffs
        if isinstance(other, LaurentPoly):
            return LaurentPoly.from_dense(self) == other
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self):
        return hash(('DensePoly', self.coeffs))

    def __repr__(self):
        return f'DensePoly({[str(c) for c in self.coeffs]})'

    # Arithmetic

    def _lift(self, other):
        if isinstance(other, DensePoly):
            return other
        return DensePoly.constant(other)

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            return NotImplemented
        other = self._lift(other)
        length = max(len(self.coeffs), len(other.coeffs))
        return DensePoly(self.coefficient(i) + other.coefficient(i) for i in range(length))

    __radd__ = __add__

    def __neg__(self):
        return DensePoly(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return NotImplemented
        if not isinstance(other, DensePoly):
            other = _coerce(other)
            return DensePoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return DensePoly()
        product = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    product[i + j] = a * b + product[i + j]
        return DensePoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError('negative power of a polynomial')
        result = DensePoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, divisor):
        divisor = self._lift(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError('polynomial division by zero')
        remainder = list(self.coeffs)
        shift = len(remainder) - len(divisor.coeffs)
        if shift < 0:
            return DensePoly(), self
        lead_inverse = 1 / divisor.leading_coefficient
        quotient = [Fraction(0)] * (shift + 1)
        for i in range(shift, -1, -1):
            c = remainder[i + len(divisor.coeffs) - 1]
            if not c:
                continue
            c = c * lead_inverse
            quotient[i] = c
            for j, d in enumerate(divisor.coeffs):
                if d:
                    remainder[i + j] = remainder[i + j] - c * d
        return DensePoly(quotient), DensePoly(remainder)

    def __floordiv__(self, divisor):
        return divmod(self, divisor)[0]

    def __mod__(self, divisor):
        return divmod(self, divisor)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / self.leading_coefficient)

    def gcdex(self, other):
        """Return (s, t, g) with s*self + t*other = g = monic gcd."""
        r0, r1 = self, self._lift(other)
        s0, s1 = DensePoly.constant(1), DensePoly()
        t0, t1 = DensePoly(), DensePoly.constant(1)
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return s0, t0, r0
        scale = 1 / r0.leading_coefficient
        return s0 * scale, t0 * scale, r0 * scale

    def gcd(self, other):
        return self.gcdex(other)[2]

    # Calculus and evaluation

    def derivative(self):
        return DensePoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        """Horner evaluation at any ring element ``x``."""
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def scale_argument(self, c):
        """Return P(c z)."""
        c = _coerce(c)
        out, power = [], Fraction(1)
        for coefficient in self.coeffs:
            out.append(coefficient * power)
            power = power * c
        return DensePoly(out)

    def map_coefficients(self, fn):
        return DensePoly(fn(c) for c in self.coeffs)

    def to_laurent(self):
        return LaurentPoly.from_dense(self)


class LaurentPoly:
    """Sum of c_e z^e for e in [min_degree, max_degree]."""

    __slots__ = ('min_degree', 'coeffs')

    def __init__(self, min_degree=0, coeffs=()):
        coeffs = list(_strip(coeffs))
        lead = 0
        while lead < len(coeffs) and not coeffs[lead]:
            lead += 1
        coeffs = coeffs[lead:]
        object.__setattr__(self, 'min_degree', min_degree + lead if coeffs else 0)
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError('LaurentPoly is immutable')

    @classmethod
    def from_dense(cls, poly, shift=0):
        if isinstance(poly, LaurentPoly):
            return poly.shift(shift)
        return cls(shift, poly.coeffs)

    @classmethod
    def from_terms(cls, terms):
        """Build from an iterable of (exponent, coefficient) pairs."""
        collected = {}
        for exponent, coefficient in terms:
            collected[exponent] = collected.get(exponent, Fraction(0)) + _coerce(coefficient)
        collected = {e: c for e, c in collected.items() if c}
        if not collected:
            return cls()
        low, high = min(collected), max(collected)
        return cls(low, [collected.get(e, Fraction(0)) for e in range(low, high + 1)])

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls(exponent, (coefficient,))

    @property
    def max_degree(self):
        if not self.coeffs:
            return NEG_INFINITY
        return self.min_degree + len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, exponent):
        index = exponent - self.min_degree
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return Fraction(0)

    def terms(self):
        """Nonzero (exponent, coefficient) pairs in increasing order."""
        return [(self.min_degree + i, c) for i, c in enumerate(self.coeffs) if c]

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.min_degree == other.min_degree and self.coeffs == other.coeffs
        if isinstance(other, DensePoly):
            return self == LaurentPoly.from_dense(other)
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly(0, (other,))
        return NotImplemented

    def __hash__(self):
        return hash(('LaurentPoly', self.min_degree, self.coeffs))

    def __repr__(self):
        return f'LaurentPoly({self.min_degree}, {[str(c) for c in self.coeffs]})'

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, DensePoly):
            return LaurentPoly.from_dense(other)
        return LaurentPoly(0, (other,))

    def __add__(self, other):
        other = self._lift(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        low = min(self.min_degree, other.min_degree)
        high = max(self.max_degree, other.max_degree)
        return LaurentPoly(low, [self.coefficient(e) + other.coefficient(e) for e in range(low, high + 1)])

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.min_degree, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (LaurentPoly, DensePoly)):
            other = _coerce(other)
            return LaurentPoly(self.min_degree, [c * other for c in self.coeffs])
        other = self._lift(other)
        product = DensePoly(self.coeffs) * DensePoly(other.coeffs)
        return LaurentPoly(self.min_degree + other.min_degree, product.coeffs)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by z^k."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.min_degree + k, self.coeffs)

    def derivative(self):
        return LaurentPoly.from_terms((e - 1, e * c) for e, c in self.terms() if e)

    def scale_argument(self, c):
        """Return P(c z) for a nonzero scalar ``c``."""
        return LaurentPoly.from_terms((e, coefficient * c ** e) for e, coefficient in self.terms())

    def __call__(self, x):
        """Evaluate at a nonzero field element ``x``."""
        result = Fraction(0)
        for exponent, coefficient in self.terms():
            result = result + coefficient * x ** exponent
        return result

    def value_at_one(self):
        return sum(self.coeffs, Fraction(0))

    def to_dense(self):
        if self.coeffs and self.min_degree < 0:
            raise ValueError(f'{self!r} has negative powers')
        return DensePoly([0] * self.min_degree + list(self.coeffs))

    def divide_by_linear(self, c):
        """Exact quotient by (1 - c z), or None when it does not divide.

        The quotient coefficients satisfy q_e = c_e + c q_{e-1}; the division
        is exact iff the same recursion gives zero at the top degree.
        """
        if not self.coeffs:
            return self
        running, quotient = Fraction(0), []
        for coefficient in self.coeffs[:-1]:
            running = coefficient + c * running
            quotient.append(running)
        if self.coeffs[-1] + c * running:
            return None
        return LaurentPoly(self.min_degree, quotient)

    def divide_by_one_minus_z(self):
        """Exact quotient by (1 - z); the remainder is P(1)."""
        return self.divide_by_linear(1)

    def exponents_congruent(self, modulus, residue=0):
        return all((e - residue) % modulus == 0 for e, _ in self.terms())

    def split_by_residue(self, modulus):
        """Return pieces Q_0..Q_{N-1} in Q[z^N, z^-N] with self = sum z^lam Q_lam."""
        buckets = [[] for _ in range(modulus)]
        for exponent, coefficient in self.terms():
            lam = exponent % modulus
            buckets[lam].append((exponent - lam, coefficient))
        return tuple(LaurentPoly.from_terms(bucket) for bucket in buckets)

    def map_coefficients(self, fn):
        return LaurentPoly(self.min_degree, [fn(c) for c in self.coeffs])
