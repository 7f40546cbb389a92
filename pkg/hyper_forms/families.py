"""Polynomial families P_{k,j}, U_k, V_k and the integer matrix s_{k,i}."""
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction

from exact_core.exceptions import IntegralityError, RecurrenceRangeError
from exact_core.polynomials import LaurentPoly
from exact_core.serialization import poly_to_json

from .partial_fractions import partial_fractions_product, size_report
from .rational_function import build_F

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FormFamily:
    """Levels k = 1..levels of the construction for one Params.

    ``P[k-1][j-1]`` is P_{k,j}; ``s[k-1][i-2]`` is s_{k,i} for 2 <= i <= a+N.
    """

    params: object
    F: object
    table: object
    delta_n: int
    P: tuple
    U: tuple
    V: tuple
    U_split: tuple
    V_split: tuple
    s: tuple = field(default=None)

    @property
    def levels(self):
        return len(self.P)

    def P_at(self, k, j):
        if j == self.params.a + 1:
            return LaurentPoly()
        return self.P[k - 1][j - 1]

    def s_at(self, k, i):
        return self.s[k - 1][i - 2]

    def s_columns(self):
        """The matrix [s_{k,i}] with rows i = 2..a+N and columns k."""
        if self.s is None:
            return []
        return [list(column) for column in zip(*self.s)]

    def to_json(self):
        return {
            'params': self.params.to_json(),
            'F': self.F.to_json(),
            'd0': self.params.d0,
            'delta_n': str(self.delta_n),
            'partial_fractions': self.table.to_json(),
            'p_size': size_report(self.table, self.params),
            'levels': [
                {
                    'k': k,
                    'P': [poly_to_json(p) for p in self.P[k - 1]],
                    'U': poly_to_json(self.U[k - 1]),
                    'V': poly_to_json(self.V[k - 1]),
                    'U_split': [poly_to_json(p) for p in self.U_split[k - 1]],
                    'V_split': [poly_to_json(p) for p in self.V_split[k - 1]],
                }
                for k in range(1, self.levels + 1)
            ],
            's': [[str(v) for v in row] for row in self.s] if self.s is not None else None,
        }


def build_U1_V1(table, params):
    """Base polynomials of the recurrences.

    U_1 = -sum_{t=1}^{n} z^t sum_j sum_{Nh < t} p_{j,h} / (Nh - t)^j and
    V_1 = -sum_{t=0}^{n-1} z^t sum_j sum_{Nh > t} p_{j,h} / (Nh - t)^j.
    """
    N, n, m, a = params.N, params.n, params.m, params.a
    u_terms, v_terms = [], []
    for t in range(0, n + 1):
        lower, upper = Fraction(0), Fraction(0)
        for h in range(m + 1):
            shift = N * h - t
            if shift == 0:
                continue
            total = sum((table[j, h] / Fraction(shift) ** j for j in range(1, a + 1)), Fraction(0))
            if shift < 0:
                lower += total
            else:
                upper += total
        if t >= 1:
            u_terms.append((t, -lower))
        if t <= n - 1:
            v_terms.append((t, -upper))
    return LaurentPoly.from_terms(u_terms), LaurentPoly.from_terms(v_terms)


def split_pieces(poly, k, N):
    """Pieces Q_lam in Q[z^N, z^-N] with z^{k-1} poly = sum z^lam Q_lam."""
    return poly.shift(k - 1).split_by_residue(N)


def base_family(params, F, table):
    U1, V1 = build_U1_V1(table, params)
    P1 = tuple(table.P_poly(j) for j in range(1, params.a + 1))
    return FormFamily(
        params=params,
        F=F,
        table=table,
        delta_n=params.delta_n,
        P=(P1,),
        U=(U1,),
        V=(V1,),
        U_split=(split_pieces(U1, 1, params.N),),
        V_split=(split_pieces(V1, 1, params.N),),
    )


def split_by_residue(family, k):
    """(U_split[k], V_split[k]) computed from U_k and V_k."""
    N = family.params.N
    return split_pieces(family.U[k - 1], k, N), split_pieces(family.V[k - 1], k, N)


def recurrence_step(family, k):
    """Extend ``family`` from level k-1 to level k.

    P_{k,j} = P'_{k-1,j} - P_{k-1,j+1}/z, U_k = U'_{k-1} - P_{k-1,1}/(1-z),
    V_k = V'_{k-1} + P_{k-1,1}/(z(1-z)); the division by 1-z must be exact.
    """
    if k == 1:
        return family
    if family.levels != k - 1:
        raise ValueError(f'level {k - 1} must be the last level present, have {family.levels}')
    a = family.params.a
    previous = family.P[k - 2]
    P_k = tuple(
        previous[j - 1].derivative() - family.P_at(k - 1, j + 1).shift(-1)
        for j in range(1, a + 1)
    )
    quotient = previous[0].divide_by_one_minus_z()
    if quotient is None:
        raise RecurrenceRangeError(k, previous[0].value_at_one())
    U_k = family.U[k - 2].derivative() - quotient
    V_k = family.V[k - 2].derivative() + quotient.shift(-1)
    N = family.params.N
    return replace(
        family,
        P=family.P + (P_k,),
        U=family.U + (U_k,),
        V=family.V + (V_k,),
        U_split=family.U_split + (split_pieces(U_k, k, N),),
        V_split=family.V_split + (split_pieces(V_k, k, N),),
    )


def compute_ski(family):
    """Integer matrix s_{k,i} for all levels present; rows indexed by k.

    s_{k,i} = delta_n P_{k,i}(1) for 2 <= i <= a and
    s_{k,a+1+lam} = delta_n (U_{k,lam}(1) + (-1)^p V_{k,N-lam}(1)), V_{k,N} = V_{k,0}.
    """
    params = family.params
    a, N = params.a, params.N
    sign = -1 if params.p else 1
    delta = family.delta_n
    rows = []
    for k in range(1, family.levels + 1):
        row = []
        for i in range(2, a + 1):
            row.append((i, delta * family.P_at(k, i).value_at_one()))
        for lam in range(N):
            u = family.U_split[k - 1][lam].value_at_one()
            v = family.V_split[k - 1][(N - lam) % N].value_at_one()
            row.append((a + 1 + lam, delta * (u + sign * v)))
        integers = []
        for i, value in row:
            if value.denominator != 1:
                raise IntegralityError(k, i, value)
            integers.append(value.numerator)
        rows.append(tuple(integers))
    return tuple(rows)


def build_family(params, k_max=None, table=None):
    """F -> partial fractions -> U_1, V_1 -> levels 2..K_max -> s-matrix."""
    F = build_F(params)
    if table is None:
        table = partial_fractions_product(F, params)
    levels = k_max if k_max is not None else params.k_max()
    if levels > params.d0 - 1:
        logger.warning(f'K_max={levels} exceeds d_0 - 1 = {params.d0 - 1}; clamping')
        levels = params.d0 - 1
    family = base_family(params, F, table)
    for k in range(2, levels + 1):
        family = recurrence_step(family, k)
    family = replace(family, s=compute_ski(family))
    logger.info(f'Built family for {params} with {family.levels} levels, delta_n has '
                f'{len(str(family.delta_n))} digits')
    return family
