"""The differential system Y' = AY, its local solutions and the transfer operator.

Indices follow the usual 1-based convention: rows 1..a carry the
polylogarithm components, row a+1 the constant and rows a+1+l (1 <= l <= N)
the root-of-unity components.
"""
import logging
from dataclasses import dataclass

from exact_core.cyclotomic import root_power
from exact_core.polynomials import LaurentPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SystemRule:
    row: int
    column: int
    kind: str  # 'minus_inverse_z', 'inverse_z' or 'root_pole'
    ell: int = 0

    def describe(self):
        if self.kind == 'minus_inverse_z':
            return '-1/z'
        if self.kind == 'inverse_z':
            return '1/z'
        return f'1/(z(1-w^{self.ell} z))'


@dataclass(frozen=True)
class SystemMatrix:
    """Sparse description of A in M_q(Q(omega)(z))."""

    a: int
    N: int

    @property
    def q(self):
        return self.a + self.N + 1

    @property
    def rules(self):
        rules = [SystemRule(i, i - 1, 'minus_inverse_z') for i in range(2, self.a + 1)]
        rules.append(SystemRule(1, self.a + 1, 'inverse_z'))
        rules.extend(SystemRule(1, self.a + 1 + ell, 'root_pole', ell) for ell in range(1, self.N + 1))
        return tuple(rules)

    def entry(self, i, j):
        for rule in self.rules:
            if (rule.row, rule.column) == (i, j):
                return rule
        return None

    def nonzero_count(self):
        return len(self.rules)

    def apply_transpose_derivative(self, vector):
        """One application of (d/dz + A^T) to a vector of Laurent polynomials.

        Division by (1 - omega^l z) must be exact; it is, whenever the first
        component vanishes at every N-th root of unity.
        """
        a, N = self.a, self.N
        if len(vector) != self.q:
            raise ValueError(f'expected {self.q} components, got {len(vector)}')
        out = [component.derivative() for component in vector]
        first = vector[0]
        for j in range(1, a):
            out[j - 1] = out[j - 1] - vector[j].shift(-1)
        out[a] = out[a] + first.shift(-1)
        for ell in range(1, N + 1):
            quotient = first.divide_by_linear(root_power(N, ell))
            if quotient is None:
                raise ValueError(f'first component does not vanish at omega^{ell}')
            out[a + ell] = out[a + ell] + quotient.shift(-1)
        return out


def initial_vector(family):
    """(P_1, ..., P_a, U_1 + V_1, V_1(omega z), ..., V_1(omega^N z))."""
    params = family.params
    N = params.N
    vector = [family.P_at(1, j) for j in range(1, params.a + 1)]
    vector.append(family.U[0] + family.V[0])
    for ell in range(1, N + 1):
        vector.append(family.V[0].scale_argument(root_power(N, ell)))
    return vector


def transfer_operator_apply(system, vector, k):
    """(P_{k,1}, ..., P_{k,q}) = (d/dz + A^T)^{k-1} (P_1, ..., P_q)."""
    if k < 1:
        raise ValueError(f'k must be >= 1, got {k}')
    vector = list(vector)
    for _ in range(k - 1):
        vector = system.apply_transpose_derivative(vector)
    return vector


def expected_components(family, k):
    """Components a+1 and a+1+l predicted from U_k and V_k (taking l = N for row a+1)."""
    N = family.params.N
    out = [family.U[k - 1] + family.V[k - 1]]
    for ell in range(1, N + 1):
        twist = root_power(N, ell * (k - 1))
        out.append(family.V[k - 1].scale_argument(root_power(N, ell)) * twist)
    return out


def transfer_agrees(family, levels=3):
    """True iff the transfer operator reproduces the recurrences for k <= levels."""
    params = family.params
    system = SystemMatrix(params.a, params.N)
    vector = initial_vector(family)
    levels = min(levels, family.levels)
    for k in range(1, levels + 1):
        if k > 1:
            vector = system.apply_transpose_derivative(vector)
        for j in range(1, params.a + 1):
            if vector[j - 1] != family.P_at(k, j):
                logger.info(f'Transfer operator disagrees with P_{{{k},{j}}}')
                return False
        for offset, expected in enumerate(expected_components(family, k)):
            if vector[params.a + offset] != expected:
                logger.info(f'Transfer operator disagrees at level {k}, row {params.a + 1 + offset}')
                return False
    return True


@dataclass(frozen=True)
class SolutionDescriptor:
    """Symbolic description of one local solution Y_j."""

    label: str
    point: str
    ell: int
    components: tuple
    unit_position: int
    unit_value: int
    vanishing_order: int

    def to_json(self):
        return {
            'label': self.label,
            'point': self.point,
            'ell': self.ell,
            'components': list(self.components),
            'unit_position': self.unit_position,
            'unit_value': self.unit_value,
            'vanishing_order': self.vanishing_order,
        }


@dataclass(frozen=True)
class SolutionBasis:
    """Y_{0,l}, Y_{inf,l}, Y_{omega^l} with the index sets J_0, J_inf, J_{omega^l}."""

    params: object
    solutions: tuple

    @classmethod
    def from_params(cls, params):
        a, N, n, r = params.a, params.N, params.n, params.r
        q = params.q
        solutions = []
        for ell in range(1, N + 1):
            polylogs = tuple(f'{"-" if j % 2 else ""}Li_{j}(w^{ell} z)' for j in range(1, a + 1))
            tail = tuple('1' if i == a + 1 else ('-1' if i == a + 1 + ell else '0') for i in range(a + 1, q + 1))
            solutions.append(SolutionDescriptor(
                f'Y_0,{ell}', '0', ell, polylogs + tail, a + 1 + ell, -1, (r + 1) * n + 1))
        for ell in range(1, N + 1):
            polylogs = tuple(f'Li_{j}(1/(w^{ell} z))' for j in range(1, a + 1))
            tail = tuple('1' if i == a + 1 + ell else '0' for i in range(a + 1, q + 1))
            solutions.append(SolutionDescriptor(
                f'Y_inf,{ell}', 'inf', ell, polylogs + tail, a + 1 + ell, 1, r * n + 1))
        for ell in range(1, N + 1):
            logs = tuple(
                '1' if j == 0 else f'{"-" if j % 2 else ""}log(w^-{ell} z)^{j}/{j}!' for j in range(a)
            )
            tail = tuple('0' for _ in range(a + 1, q + 1))
            solutions.append(SolutionDescriptor(
                f'Y_w^{ell}', f'w^{ell}', ell, logs + tail, 1, 1, params.d0 - 1))
        return cls(params, tuple(solutions))

    def index_set(self, point):
        return [s.label for s in self.solutions if s.point == point]

    @property
    def sigma(self):
        return sorted({s.point for s in self.solutions})

    def order_sum(self):
        return sum(s.vanishing_order for s in self.solutions)

    def to_json(self):
        return [s.to_json() for s in self.solutions]


def equation_balance(params):
    """(equations, unknowns - tau) of the approximation problem; they must be equal.

    Equations: 2N((r+1)n+1) + N(d_0-1); unknowns: (a+N+1)(n+1); tau = a+1-aN.
    """
    N, n, r = params.N, params.n, params.r
    equations = N * ((r + 1) * n + 1) + N * (params.d0 - 1) + N * ((r + 1) * n + 1)
    return equations, params.q * (params.n + 1) - params.tau


def order_sum_balance(params):
    """((2r+1)Nn + N(d_0+1), (n+1)q - nN - tau); they must be equal."""
    N, n, r = params.N, params.n, params.r
    return (2 * r + 1) * N * n + N * (params.d0 + 1), (n + 1) * params.q - n * N - params.tau
