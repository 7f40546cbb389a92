"""Partial-fraction tables p_{j,h} of F(t) = sum p_{j,h} / (t + Nh)^j.

Two independent algorithms are provided: the product method multiplies the
expansions of simple-pole factors, the solve method fits the table to exact
values of F. They must agree entrywise.
"""
import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from exact_core.exceptions import ParameterError, ZetaFormsError
from exact_core.integers import lcm_upto
from exact_core.linalg import solve
from exact_core.pole_expansions import PoleExpansion
from exact_core.polynomials import LaurentPoly
from exact_core.serialization import rational_to_str

from .params import PoleLayout

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartialFractionTable:
    layout: PoleLayout
    entries: tuple  # entries[j - 1][h]

    def __getitem__(self, key):
        j, h = key
        return self.entries[j - 1][h]

    def items(self):
        for j, row in enumerate(self.entries, start=1):
            for h, value in enumerate(row):
                yield (j, h), value

    def with_entry(self, j, h, value):
        rows = [list(row) for row in self.entries]
        rows[j - 1][h] = Fraction(value)
        return PartialFractionTable(self.layout, tuple(tuple(row) for row in rows))

    def P_poly(self, j):
        """P_j(z) = sum_h p_{j,h} z^{Nh}."""
        return LaurentPoly.from_terms((self.layout.spacing * h, value)
                                      for h, value in enumerate(self.entries[j - 1]))

    def reconstruct(self, t):
        t = Fraction(t)
        value = Fraction(0)
        for (j, h), p in self.items():
            if p:
                value += p / (t + self.layout.spacing * h) ** j
        return value

    def as_expansion(self):
        return PoleExpansion({(-self.layout.spacing * h, j): p for (j, h), p in self.items()})

    def max_log_abs(self):
        values = [abs(p) for _, p in self.items() if p]
        if not values:
            return float('-inf')
        return max(math.log(v.numerator) - math.log(v.denominator) for v in values)

    def to_json(self):
        return [[rational_to_str(p) for p in row] for row in self.entries]


def _layout_of(params_or_layout):
    if isinstance(params_or_layout, PoleLayout):
        return params_or_layout
    return params_or_layout.pole_layout


def _table_from_expansion(expansion, layout):
    if not expansion.is_proper():
        raise ZetaFormsError(f'expansion keeps a polynomial part {expansion.polynomial!r}')
    rows = [[Fraction(0)] * layout.count for _ in range(layout.order)]
    for (rho, j), c in expansion.terms.items():
        h = -rho / layout.spacing
        if h.denominator != 1 or not 0 <= h < layout.count or j > layout.order:
            raise ZetaFormsError(f'term {c}/(t - {rho})^{j} does not fit the pole layout {layout}')
        rows[j - 1][int(h)] = c
    return PartialFractionTable(layout, tuple(tuple(row) for row in rows))


def simple_factor_expansions(params):
    """The simple-pole factors F_0, G_i, H_i whose product, times t, is F.

    F_0 = m!/prod (t + Nh), G_i = (t - i m)_m / prod (t + Nh) for 1 <= i <= rN,
    H_i = (t + 1 + i m)_m / prod (t + Nh) for 0 <= i < (r+1)N, and
    F = F_0^{a+1-(2r+1)N} * t * prod G_i * prod H_i.
    """
    m, N = params.m, params.N
    poles = params.pole_layout.poles
    factors = [('F_0', PoleExpansion.from_factored(poles, (), math.factorial(m)))]
    for i in range(1, params.r * N + 1):
        roots = [i * m - k for k in range(m)]
        factors.append((f'G_{i}', PoleExpansion.from_factored(poles, roots)))
    for i in range((params.r + 1) * N):
        roots = [-(1 + i * m + k) for k in range(m)]
        factors.append((f'H_{i}', PoleExpansion.from_factored(poles, roots)))
    return factors


def f0_residue(h, m, N):
    """Closed form of the residue of F_0 at t = -Nh: (-1)^h binom(m, h) / N^m."""
    return Fraction((-1) ** h * math.comb(m, h), N ** m)


def _generic_expansion(F):
    """Product of simple-pole layers, then the numerator's linear factors."""
    poles = F.poles
    expansion = None
    for level in range(1, max(poles.values(), default=0) + 1):
        layer = PoleExpansion.from_factored([rho for rho, mult in poles.items() if mult >= level])
        expansion = layer if expansion is None else expansion.times_simple(layer)
    if expansion is None:
        raise ParameterError('F has no poles')
    for beta, mult in F.numerator_roots:
        for _ in range(mult):
            expansion = expansion.times_linear(beta)
    return expansion.scale(F.scalar)


def partial_fractions_product(F, params):
    """Table of F by multiplying partial-fraction expansions exactly."""
    layout = _layout_of(params)
    exponent = None
    if not isinstance(params, PoleLayout):
        exponent = params.a + 1 - (2 * params.r + 1) * params.N
    if exponent is not None and exponent >= 0:
        factors = simple_factor_expansions(params)
        f0 = factors[0][1]
        pieces = [f0] * exponent + [expansion for _, expansion in factors[1:]]
        expansion = pieces[0]
        for piece in pieces[1:]:
            expansion = expansion.times_simple(piece)
        expansion = expansion.times_linear(0)
    else:
        logger.debug(f'Product method falls back to layered poles (F_0 exponent {exponent})')
        expansion = _generic_expansion(F)
    return _table_from_expansion(expansion, layout)


def _sample_offsets():
    denominator = 2
    while True:
        for numerator in range(1, denominator):
            if math.gcd(numerator, denominator) == 1:
                yield Fraction(numerator, denominator)
        denominator += 1


def partial_fractions_solve(F, params, max_attempts=12):
    """Table of F by solving the exact linear system of evaluations.

    The points are t = k + offset for k = 1..a(m+1); when the system is
    singular the next offset of the sequence 1/2, 1/3, 2/3, 1/4, ... is tried.
    """
    layout = _layout_of(params)
    for rho, mult in F.poles.items():
        h = -rho / layout.spacing
        if h.denominator != 1 or not 0 <= h < layout.count or mult > layout.order:
            raise ParameterError(f'F has a pole of order {mult} at {rho} outside the layout {layout}')
    if F.degree >= 0:
        raise ParameterError('F must vanish at infinity')
    size = layout.size
    offsets = _sample_offsets()
    for attempt in range(max_attempts):
        offset = next(offsets)
        points = [k + offset for k in range(1, size + 1)]
        points = [t for t in points if not F.is_pole(t)]
        if len(points) < size:
            continue
        rows = []
        for t in points:
            rows.append([1 / (t + layout.spacing * h) ** j
                         for j in range(1, layout.order + 1) for h in range(layout.count)])
        solution = solve(rows, [F(t) for t in points])
        if solution is None:
            logger.debug(f'Evaluation system singular at offset {offset}, retrying')
            continue
        entries = tuple(tuple(solution[(j - 1) * layout.count:j * layout.count])
                        for j in range(1, layout.order + 1))
        return PartialFractionTable(layout, entries)
    raise ZetaFormsError(f'evaluation system stayed singular after {max_attempts} attempts')


def check_denominators(table, params):
    """True iff (N d_m)^{a+1-j} N^{(a+1)m} p_{j,h} is an integer for all j, h."""
    N, m, a = params.N, params.m, params.a
    base = N * lcm_upto(m)
    scale = N ** ((a + 1) * m)
    for (j, h), p in table.items():
        value = base ** (a + 1 - j) * scale * p
        if value.denominator != 1:
            logger.info(f'Denominator bound fails at p[{j}][{h}] = {p}')
            return False
    return True


def size_bound_exponent(params):
    """log of 2^{(a+1)/N} N^{2(r+1)-(a+1)/N} (r+1)^{2r+2}.

    max |p_{j,h}| grows like the n-th power of this base, up to a factor
    e^{o(n)}.
    """
    a, r, N = params.a, params.r, params.N
    ratio = (a + 1) / N
    return ratio * math.log(2) + (2 * (r + 1) - ratio) * math.log(N) + (2 * r + 2) * math.log(r + 1)


def size_report(table, params):
    """Observed (1/n) log max |p_{j,h}| against the bound exponent.

    The slack (a+1) log(n+1) / n absorbs the polynomial factors hidden in
    the o(1).
    """
    observed = table.max_log_abs() / params.n
    bound = size_bound_exponent(params)
    slack = (params.a + 1) * math.log(params.n + 1) / params.n
    return {
        'log_max_p_over_n': f'{observed:.12g}',
        'bound_exponent': f'{bound:.12g}',
        'slack': f'{slack:.12g}',
        'within_bound': observed <= bound + slack,
    }


def reconstruction_points(table, F, count=None, seed=0):
    """Deterministic pseudo-random rational non-pole points."""
    layout = table.layout
    count = count or 2 * (layout.order + 1) * layout.count
    rng = random.Random(seed)
    points = []
    while len(points) < count:
        t = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 997))
        if F.is_pole(t) or any(t == rho for rho in layout.poles):
            continue
        points.append(t)
    return points


def check_reconstruction(table, F, count=None, seed=0):
    """True iff sum p_{j,h}/(t+Nh)^j equals F at ``count`` random rational points."""
    for t in reconstruction_points(table, F, count, seed):
        if table.reconstruct(t) != F(t):
            logger.info(f'Partial fractions disagree with F at t = {t}')
            return False
    return True
