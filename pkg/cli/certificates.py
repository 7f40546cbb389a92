"""Certificates: which identities and order conditions one instance satisfies.

Every check yields {'status': 'pass' | 'fail' | 'skipped', ...}; skipped
checks carry a reason. Apart from ``generated_at`` a certificate depends
only on its inputs and the tool version.
"""
import logging
import os
from pathlib import Path

from django.core.files.move import file_move_safe
from django.core.files.temp import NamedTemporaryFile
from django.utils import timezone
from mpmath import mp, mpf, nstr

from analytic_eval.balls import PrecisionContext
from analytic_eval.growth import growth_study
from analytic_eval.identity import lambda_check
from analytic_eval.s_series import check_polylog_expansion, well_poised_collapse
from exact_core.exceptions import DivergentSeriesError, IntegralityError, NonRationalEntryError, ZetaFormsError
from exact_core.serialization import dumps
from hyper_forms.families import build_family
from hyper_forms.partial_fractions import (
    check_denominators,
    check_reconstruction,
    partial_fractions_solve,
    size_report,
)
from hyper_forms.rational_function import check_well_poised_symmetry
from pade_verify.matrices import (
    basis_hash,
    build_M,
    build_P_matrix,
    column_space_basis,
    column_space_matches_M,
    has_zero_row,
    rank_report,
    verify_product,
    zero_row_index,
)
from pade_verify.orders import check_order_at_infinity, check_order_at_unity, check_order_at_zero
from pade_verify.system import equation_balance, order_sum_balance, transfer_agrees

from . import __version__

logger = logging.getLogger(__name__)

PASS, FAIL, SKIPPED = 'pass', 'fail', 'skipped'


def verdict(passed, **details):
    return {'status': PASS if passed else FAIL, **details}


def skipped(reason, **details):
    return {'status': SKIPPED, 'reason': reason, **details}


def _orders(family):
    results = {
        'zero': check_order_at_zero(family),
        'infinity': check_order_at_infinity(family),
        'unity': check_order_at_unity(family),
    }
    return verdict(all(results.values()), orders=results)


def _cross_oracle(family):
    params = family.params
    solved = partial_fractions_solve(family.F, params)
    agree = solved == family.table
    reconstructs = check_reconstruction(family.table, family.F)
    return verdict(agree and reconstructs, tables_agree=agree, reconstruction=reconstructs)


def _p_size(family):
    report = size_report(family.table, family.params)
    return verdict(report['within_bound'], **report)


def _counting(params):
    equations, unknowns = equation_balance(params)
    left, right = order_sum_balance(params)
    return verdict(equations == unknowns and left == right,
                   equations=equations, unknowns=unknowns, order_sum=[left, right])


def _product(family):
    M = build_M(family.params, family.delta_n)
    try:
        holds = verify_product(M, build_P_matrix(family), family.s_columns())
    except NonRationalEntryError as exc:
        return verdict(False, error=str(exc))
    return verdict(holds)


def _rank(family):
    report = rank_report(build_P_matrix(family))
    return verdict(report['rank'] == report['rank_target'], **report)


def _zero_row(family):
    params = family.params
    index = zero_row_index(params)
    if index is None:
        return skipped('no forced zero row unless p and N are even')
    return verdict(has_zero_row(family.s_columns(), params), row=index)


def _column_space(family):
    M = build_M(family.params, family.delta_n)
    return verdict(column_space_matches_M(M, family.s_columns()))


def _well_poised(family, ctx):
    params = family.params
    if not params.well_poised:
        return skipped('needs 2N | n and p ≡ a (mod 2)')
    symmetric = check_well_poised_symmetry(family.F, params)
    collapse = {str(ell): well_poised_collapse(family, ell, ctx)[0] for ell in range(params.N)}
    return verdict(symmetric and all(collapse.values()), symmetry=symmetric, collapse=collapse)


def _polylog_expansion(family, ctx):
    points = {
        f'{side}:{ell}': check_polylog_expansion(family, side, 1, ell, ctx)[0]
        for side in ('0', 'inf')
        for ell in range(family.params.N)
    }
    return verdict(all(points.values()), points=points)


def _lambda(family, f, ctx, levels):
    params = family.params
    top = min(levels, family.levels, params.d0 - 2)
    if top < 1:
        return skipped(f'insufficient decay: d_0 = {params.d0}')
    values = [lambda_check(family, f, k, ctx) for k in range(1, top + 1)]
    with ctx.workprec():
        s_max = max((abs(v) for v in family.s[0]), default=0)
        lambda_size = values[0].value.abs_upper()
        growth = {
            'log_lambda_over_n': nstr(mp.log(lambda_size) / params.n, 15) if lambda_size else '-inf',
            'log_max_s_over_n': nstr(mp.log(mpf(s_max)) / params.n, 15) if s_max else '-inf',
        }
    return verdict(all(v.holds for v in values), levels=[v.to_json() for v in values], growth=growth)


def _growth(params, f, ctx):
    grid = [params.N * j for j in range(1, params.m + 1)]
    report = growth_study(params, f, grid, ctx)
    if report.verdict is None:
        return skipped('single row, no trend verdict', table=report.to_json())
    return verdict(report.verdict, table=report.to_json())


def _outcome(results, name):
    """True or False for a check that ran, None when it was skipped or not requested."""
    result = results.get(name)
    if result is None or result['status'] == SKIPPED:
        return None
    return result['status'] == PASS


def flat_fields(results):
    """Top-level summary of the individual checks, None where a check did not run."""
    orders = results.get('orders', {}).get('orders', {})
    rank = results.get('rank', {})
    return {
        'order_zero': orders.get('zero'),
        'order_infinity': orders.get('infinity'),
        'order_unity': orders.get('unity'),
        'transfer_agrees': _outcome(results, 'transfer'),
        'product_ok': _outcome(results, 'product'),
        'rank': rank.get('rank'),
        'rank_target': rank.get('rank_target'),
        'zero_row': _outcome(results, 'zero_row'),
    }


def build_certificate(params, f, checks, k_max=None, bits=256, lambda_levels=3, transfer_levels=3,
                      kmax_factor=3):
    """Run ``checks`` on one instance and return the certificate dict."""
    ctx = PrecisionContext(bits=bits)
    levels = k_max or params.k_max(factor=kmax_factor)
    results = {}
    family = None
    try:
        family = build_family(params, k_max=levels)
        results['integrality'] = verdict(True)
    except IntegralityError as exc:
        logger.error(f'Integrality fails for {params}: {exc}')
        results['integrality'] = verdict(False, k=exc.k, i=exc.i, value=str(exc.value))
    except ZetaFormsError as exc:
        logger.error(f'Construction of {params} failed: {exc}', exc_info=True)
        results['integrality'] = skipped(f'construction failed: {exc}')

    runners = {
        'denominators': lambda: verdict(check_denominators(family.table, params)),
        'cross_oracle': lambda: _cross_oracle(family),
        'p_size': lambda: _p_size(family),
        'counting': lambda: _counting(params),
        'orders': lambda: _orders(family),
        'transfer': lambda: verdict(transfer_agrees(family, transfer_levels),
                                    levels=min(transfer_levels, family.levels)),
        'product': lambda: _product(family),
        'rank': lambda: _rank(family),
        'zero_row': lambda: _zero_row(family),
        'column_space': lambda: _column_space(family),
        'well_poised': lambda: _well_poised(family, ctx),
        'polylog_expansion': lambda: _polylog_expansion(family, ctx),
        'lambda': lambda: _lambda(family, f, ctx, lambda_levels),
        'growth': lambda: _growth(params, f, ctx),
        'siegel': lambda: skipped('fitted across several n by the sweep command'),
    }
    for name in checks:
        if name == 'integrality':
            continue
        if family is None:
            results[name] = skipped('family construction failed')
            continue
        try:
            results[name] = runners[name]()
        except DivergentSeriesError as exc:
            results[name] = skipped(str(exc))
        logger.info(f"Check {name} for {params}: {results[name]['status']}")
    if 'integrality' not in checks:
        results.pop('integrality')

    certificate = {
        'version': __version__,
        'generated_at': timezone.now().isoformat(),
        'instance': {**params.to_json(), 'f': f.to_json()},
        'k_max': family.levels if family is not None else levels,
        'precision_bits': bits,
        'checks': results,
        **flat_fields(results),
        'basis_hash': basis_hash(column_space_basis(family.s_columns())) if family is not None else None,
        'status': FAIL if any(r['status'] == FAIL for r in results.values()) else PASS,
    }
    return certificate


def certificate_passed(certificate):
    return certificate['status'] == PASS


def write_atomic(path, text):
    """Write ``text`` to ``path`` through a temporary file in the same directory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with NamedTemporaryFile(mode='w', encoding='utf-8', dir=path.parent, suffix='.tmp', delete=False) as handle:
        handle.write(text)
        handle.write('\n')
        temporary = handle.name
    try:
        file_move_safe(temporary, str(path), allow_overwrite=True)
    finally:
        if os.path.exists(temporary):
            os.remove(temporary)
    logger.info(f'Wrote {path}')


def run_instance(job):
    """Pool entry point: (params, f, options) -> certificate."""
    params, f, options = job
    return build_certificate(params, f, **options)


def certificate_text(certificate, indent=None):
    return dumps(certificate, indent=indent)
