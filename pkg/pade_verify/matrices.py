"""The matrices M and P with [s_{k,i}] = M P, ranks and canonical column spaces."""
import hashlib
import logging
from dataclasses import dataclass
from fractions import Fraction

from exact_core.cyclotomic import CycloNumber, evaluate_at_root, root_power
from exact_core.exceptions import NonRationalEntryError
from exact_core.linalg import mat_mul, rank, row_echelon, transpose
from exact_core.serialization import dumps, rational_to_str

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MMatrix:
    """m_{i,j} for 2 <= i <= a+N and 2 <= j <= q; ``rows[i-2][j-2]``."""

    params: object
    delta_n: int
    rows: tuple

    def __getitem__(self, key):
        i, j = key
        return self.rows[i - 2][j - 2]

    def is_zero_row(self, i):
        return not any(self.rows[i - 2])


@dataclass(frozen=True)
class PMatrix:
    """P_{k,j}(1) for 2 <= j <= q and 1 <= k <= K; ``rows[j-2][k-1]``."""

    params: object
    rows: tuple

    def __getitem__(self, key):
        j, k = key
        return self.rows[j - 2][k - 1]


def build_M(params, delta_n):
    a, N = params.a, params.N
    q = params.q
    sign = -1 if params.p else 1
    zero = CycloNumber.zero(N)
    rows = [[zero] * (q - 1) for _ in range(a + N - 1)]
    for i in range(2, a + 2):
        rows[i - 2][i - 2] = CycloNumber.rational(N, delta_n)
    for ell in range(1, N + 1):
        rows[a - 1][a + ell - 1] = CycloNumber.rational(N, Fraction(delta_n * (sign - 1), N))
    for lam in range(1, N):
        for ell in range(1, N + 1):
            value = root_power(N, lam * ell) * sign - root_power(N, -lam * ell)
            rows[a + lam - 1][a + ell - 1] = value * Fraction(delta_n, N)
    return MMatrix(params, delta_n, tuple(tuple(row) for row in rows))


def build_P_matrix(family):
    """Rows j <= a from P_{k,j}(1), row a+1 from (U_k+V_k)(1), rows a+1+l from
    omega^{l(k-1)} V_k(omega^l)."""
    params = family.params
    a, N = params.a, params.N
    rows = []
    for j in range(2, a + 1):
        rows.append([CycloNumber.rational(N, family.P_at(k, j).value_at_one())
                     for k in range(1, family.levels + 1)])
    rows.append([CycloNumber.rational(N, (family.U[k - 1] + family.V[k - 1]).value_at_one())
                 for k in range(1, family.levels + 1)])
    for ell in range(1, N + 1):
        rows.append([root_power(N, ell * (k - 1)) * evaluate_at_root(family.V[k - 1], ell, N)
                     for k in range(1, family.levels + 1)])
    return PMatrix(params, tuple(tuple(row) for row in rows))


def product_entries(M, P):
    """M P with every entry reduced to a rational number."""
    product = mat_mul(M.rows, P.rows)
    out = []
    for i, row in enumerate(product, start=2):
        rational_row = []
        for k, value in enumerate(row, start=1):
            if isinstance(value, CycloNumber):
                if not value.is_rational():
                    raise NonRationalEntryError(i, k, value)
                value = value.to_rational()
            rational_row.append(Fraction(value))
        out.append(rational_row)
    return out


def verify_product(M, P, s_matrix):
    """True iff M P equals [s_{k,i}] (rows i, columns k) entrywise."""
    product = product_entries(M, P)
    if len(product) != len(s_matrix) or any(len(a) != len(b) for a, b in zip(product, s_matrix)):
        raise ValueError('dimension mismatch between M P and the s-matrix')
    for i, (left, right) in enumerate(zip(product, s_matrix), start=2):
        for k, (x, y) in enumerate(zip(left, right), start=1):
            if x != y:
                logger.info(f'M P differs from s at (i={i}, k={k}): {x} != {y}')
                return False
    return True


def rank_over_cyclotomic(rows):
    """Exact rank over Q(omega)."""
    if not rows or not rows[0]:
        return 0
    return rank(rows)


def column_space_basis(matrix):
    """Canonical basis of the column span: nonzero rows of rref(transpose)."""
    if not matrix or not matrix[0]:
        return []
    echelon, pivots = row_echelon(transpose(matrix), reduced=True)
    return [[Fraction(v) for v in row] for row in echelon[:len(pivots)]]


def basis_hash(basis):
    text = dumps([[rational_to_str(v) for v in row] for row in basis])
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def rank_report(P):
    """Rank of P against the target q-1 and the first K at which it saturates."""
    target = len(P.rows)
    total = rank_over_cyclotomic(P.rows)
    saturation = None
    levels = len(P.rows[0]) if P.rows else 0
    for K in range(1, levels + 1):
        if rank_over_cyclotomic([row[:K] for row in P.rows]) == total:
            saturation = K
            break
    return {'rank': total, 'rank_target': target, 'saturation_level': saturation}


def zero_row_index(params):
    """Index a+1+N/2 of the row forced to vanish when p and N are even, else None."""
    if params.p % 2 or params.N % 2:
        return None
    return params.a + 1 + params.N // 2


def has_zero_row(s_matrix, params):
    index = zero_row_index(params)
    if index is None:
        return False
    return not any(s_matrix[index - 2])


def column_space_matches_M(M, s_matrix):
    """Compare the span of the s-columns with the column span of M over Q(omega).

    Both reduced echelon forms are canonical, so the spaces agree iff the
    forms agree entrywise.
    """
    s_basis = column_space_basis(s_matrix)
    echelon, pivots = row_echelon(transpose(M.rows), reduced=True)
    m_basis = echelon[:len(pivots)]
    if len(s_basis) != len(m_basis):
        return False
    return all(x == y for left, right in zip(m_basis, s_basis) for x, y in zip(left, right))
