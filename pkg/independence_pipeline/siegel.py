"""Empirical form of the linear independence criterion.

Given integer matrices L^(n) with a common column space, sizes Q_n and
upper bounds for the linear forms, fit

    max |l^(n)| <= Q_n^{1 + o(1)},    |forms^(n)| <= Q_n^{-tau + o(1)}

by least squares in the log domain and report tau + 1. The hypotheses are
asymptotic, so the result is a heuristic fit over the supplied n only.
"""
import logging
from dataclasses import dataclass

from mpmath import matrix, mp, mpf, nstr

from analytic_eval.identity import lambda_check
from exact_core.exceptions import CriterionHypothesisError, DivergentSeriesError, ParameterError
from hyper_forms.families import build_family
from pade_verify.matrices import basis_hash, column_space_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SiegelFit:
    tau: object
    size_exponent: object
    basis_hash: str
    points: int

    @property
    def dimension_bound(self):
        return self.tau + 1

    def to_json(self):
        return {
            'tau_fit': nstr(self.tau, 12),
            'size_exponent': nstr(self.size_exponent, 12),
            'dimension_bound': nstr(self.dimension_bound, 12),
            'column_space_hash': self.basis_hash,
            'points': self.points,
            'heuristic': True,
        }


def log_slope(xs, ys):
    """Least-squares slope of ys against xs (with intercept)."""
    design = matrix([[1, x] for x in xs])
    coefficients, _ = mp.qr_solve(design, matrix(ys))
    return coefficients[1]


def common_column_space(matrices):
    """Canonical basis shared by all matrices, or CriterionHypothesisError."""
    bases = [column_space_basis(m) for m in matrices]
    first = bases[0]
    for n_index, basis in enumerate(bases[1:], start=1):
        if basis != first:
            logger.info(f'Column space of matrix {n_index} differs from the first one')
            raise CriterionHypothesisError()
    return first


def siegel_lower_bound(matrices, Q_values, form_bounds, bits=256):
    if not (len(matrices) == len(Q_values) == len(form_bounds)):
        raise ParameterError('one matrix, one Q_n and one form bound per n required')
    if len(matrices) < 2:
        raise ParameterError('at least two values of n required for a fit')
    basis = common_column_space(matrices)
    with mp.workprec(bits):
        Q_values = [mpf(Q) for Q in Q_values]
        if any(Q <= 1 for Q in Q_values) or any(x >= y for x, y in zip(Q_values, Q_values[1:])):
            raise ParameterError('Q_n > 1 increasing violated')
        log_Q = [mp.log(Q) for Q in Q_values]
        sizes = [max((abs(v) for row in m for v in row), default=0) for m in matrices]
        log_sizes = [mp.log(max(mpf(size), 1)) for size in sizes]
        log_forms = [mp.log(mpf(bound)) for bound in form_bounds]
        size_exponent = log_slope(log_Q, log_sizes)
        tau = -log_slope(log_Q, log_forms)
    fit = SiegelFit(+tau, +size_exponent, basis_hash(basis), len(matrices))
    logger.info(f'Heuristic criterion fit over {fit.points} values of n: tau = {nstr(fit.tau, 8)}')
    return fit


def siegel_from_family(template, f, n_grid, ctx, k_max=None, form_levels=None):
    """Fit for the s-matrices of ``template`` along ``n_grid`` with Q_n = max |s_{k,i}|.

    The form bound at each n is the largest |lambda_k| over the first
    ``form_levels`` levels (all convergent levels by default).
    """
    matrices, sizes, forms = [], [], []
    for n in sorted(n_grid):
        family = build_family(template.with_n(n), k_max=k_max)
        columns = family.s_columns()
        matrices.append(columns)
        sizes.append(max(abs(v) for row in columns for v in row))
        levels = min(family.levels, family.params.d0 - 2)
        if form_levels is not None:
            levels = min(levels, form_levels)
        if levels < 1:
            raise DivergentSeriesError(f'insufficient decay: d_0 = {family.params.d0}')
        values = [lambda_check(family, f, k, ctx).value for k in range(1, levels + 1)]
        with ctx.workprec():
            forms.append(max(value.abs_upper() for value in values))
    return siegel_lower_bound(matrices, sizes, forms, ctx.bits)
