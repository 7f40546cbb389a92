"""Periodic coefficient functions f and their discrete Fourier transform."""
from dataclasses import dataclass
from fractions import Fraction

from exact_core.cyclotomic import CycloNumber, root_power
from exact_core.exceptions import ParameterError
from exact_core.serialization import scalar_to_json


@dataclass(frozen=True)
class PeriodicFunction:
    """f(0), ..., f(T-1) extended T-periodically.

    Values are rationals or elements of one cyclotomic field Q(zeta_M).
    """

    values: tuple

    def __post_init__(self):
        values = tuple(Fraction(v) if isinstance(v, int) else v for v in self.values)
        if not values:
            raise ParameterError('f needs at least one value')
        if not any(values):
            raise ParameterError('f must not vanish identically')
        fields = {v.N for v in values if isinstance(v, CycloNumber)}
        if len(fields) > 1:
            raise ParameterError(f'f mixes cyclotomic fields {sorted(fields)}')
        object.__setattr__(self, 'values', values)

    @classmethod
    def constant(cls, value=1):
        return cls((Fraction(value),))

    @classmethod
    def indicator(cls, residue, period):
        return cls(tuple(Fraction(int(u == residue % period)) for u in range(period)))

    @property
    def period(self):
        return len(self.values)

    @property
    def field(self):
        """M such that all values lie in Q(zeta_M) (1 for rational f)."""
        for v in self.values:
            if isinstance(v, CycloNumber):
                return v.N
        return 1

    def is_rational(self):
        return all(not isinstance(v, CycloNumber) or v.is_rational() for v in self.values)

    def __call__(self, m):
        return self.values[m % self.period]

    def extend(self, N):
        """The same function seen with period N (a multiple of T)."""
        if N % self.period:
            raise ParameterError(f'T | N violated (T={self.period}, N={N})')
        return PeriodicFunction(tuple(self(u) for u in range(N)))

    def in_field(self, M, u):
        """f(u) as an element of Q(zeta_M)."""
        value = self(u)
        if isinstance(value, CycloNumber):
            return value if value.N == M else value.lift(M)
        return CycloNumber.rational(M, value)

    def to_json(self):
        return [scalar_to_json(v) for v in self.values]


def fourier_hat(f, N):
    """[f^(1), ..., f^(N)] with f^(l) = (1/N) sum_{lam=1}^{N} f(lam) omega^{-l lam}.

    Values live in Q(zeta_N); f's own field must divide N.
    """
    if N % f.period:
        raise ParameterError(f'T | N violated (T={f.period}, N={N})')
    if N % f.field:
        raise ParameterError(f'values of f live in Q(zeta_{f.field}), not inside Q(zeta_{N})')
    hats = []
    for ell in range(1, N + 1):
        total = CycloNumber.zero(N)
        for lam in range(1, N + 1):
            value = f.in_field(N, lam)
            if value:
                total = total + value * root_power(N, -ell * lam)
        hats.append(total / N)
    return hats


def fourier_inverse(hats, N, m):
    """sum_l f^(l) omega^{m l}, which equals f(m)."""
    total = CycloNumber.zero(N)
    for ell, hat in enumerate(hats, start=1):
        total = total + hat * root_power(N, m * ell)
    return total
