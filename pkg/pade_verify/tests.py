from dataclasses import replace
from fractions import Fraction

from django.test import SimpleTestCase

from exact_core.cyclotomic import CycloNumber
from exact_core.polynomials import LaurentPoly
from hyper_forms.families import build_family
from hyper_forms.params import Params
from hyper_forms.rational_function import FactoredRationalFunction

from .matrices import (
    basis_hash,
    build_M,
    build_P_matrix,
    column_space_basis,
    column_space_matches_M,
    has_zero_row,
    rank_over_cyclotomic,
    rank_report,
    verify_product,
)
from .orders import check_order_at_infinity, check_order_at_unity, check_order_at_zero, order_at_unity
from .system import (
    SolutionBasis,
    SystemMatrix,
    equation_balance,
    initial_vector,
    order_sum_balance,
    transfer_agrees,
    transfer_operator_apply,
)


def shifted_F(params, shift):
    """F with the Pochhammer window of zeros moved by ``shift``."""
    a, r, n, N, m = params.a, params.r, params.n, params.N, params.m
    numerator = [r * n + shift - i for i in range((2 * r + 1) * n + 1)]
    denominator = [(-N * h, a + 1) for h in range(m + 1)]
    return FactoredRationalFunction(1, numerator, denominator)


class OrderTests(SimpleTestCase):
    def test_orders_at_zero_and_infinity(self):
        for params in (Params(a=4, r=1, N=1, n=2), Params(a=7, r=2, N=2, n=2, relaxed=True)):
            family = build_family(params, k_max=1)
            self.assertTrue(check_order_at_zero(family))
            self.assertTrue(check_order_at_infinity(family))

    def test_perturbed_window(self):
        params = Params(a=4, r=1, N=1, n=2)
        family = build_family(params, k_max=1)
        self.assertFalse(check_order_at_zero(replace(family, F=shifted_F(params, 1))))
        self.assertFalse(check_order_at_infinity(replace(family, F=shifted_F(params, -1))))

    def test_order_at_unity(self):
        for n, d0 in ((1, 6), (2, 8)):
            params = Params(a=4, r=1, N=1, n=n)
            family = build_family(params, k_max=1)
            self.assertEqual(params.d0, d0)
            self.assertTrue(check_order_at_unity(family))
            polys = [family.P_at(1, j) for j in range(1, params.a + 1)]
            self.assertGreaterEqual(order_at_unity(polys, d0), d0 - 1)

    def test_order_at_unity_with_roots_of_unity(self):
        family = build_family(Params(a=7, r=1, N=2, n=2), k_max=1)
        self.assertTrue(check_order_at_unity(family))

    def test_order_at_unity_negative_control(self):
        family = build_family(Params(a=4, r=1, N=1, n=1), k_max=1)
        noise = tuple(LaurentPoly(0, (Fraction(j), Fraction(3), Fraction(-1, j))) for j in range(1, 5))
        self.assertFalse(check_order_at_unity(replace(family, P=(noise,))))


class SystemTests(SimpleTestCase):
    def test_sparse_shape(self):
        for a, N in ((4, 1), (7, 2), (10, 3)):
            system = SystemMatrix(a, N)
            self.assertEqual(system.q, a + N + 1)
            self.assertEqual(system.nonzero_count(), a - 1 + 1 + N)
            self.assertEqual(system.entry(1, a + 1).describe(), '1/z')
            self.assertEqual(system.entry(3, 2).describe(), '-1/z')
            self.assertIsNone(system.entry(2, 3))

    def test_zeroth_power_is_identity(self):
        family = build_family(Params(a=4, r=1, N=1, n=1), k_max=1)
        vector = initial_vector(family)
        system = SystemMatrix(4, 1)
        self.assertEqual(transfer_operator_apply(system, vector, 1), vector)

    def test_transfer_agrees_with_recurrences(self):
        self.assertTrue(transfer_agrees(build_family(Params(a=4, r=1, N=1, n=1), k_max=2), levels=2))
        self.assertTrue(transfer_agrees(build_family(Params(a=4, r=1, N=1, n=2), k_max=2), levels=2))
        self.assertTrue(transfer_agrees(build_family(Params(a=7, r=1, N=2, n=2), k_max=3), levels=3))

    def test_transfer_detects_tampering(self):
        family = build_family(Params(a=4, r=1, N=1, n=2), k_max=2)
        level_two = family.P[1]
        tampered = (level_two[0], level_two[1] + LaurentPoly(0, (1,))) + level_two[2:]
        self.assertFalse(transfer_agrees(replace(family, P=(family.P[0], tampered)), levels=2))

    def test_solution_basis(self):
        params = Params(a=7, r=1, N=2, n=4)
        basis = SolutionBasis.from_params(params)
        self.assertEqual(len(basis.solutions), 3 * params.N)
        self.assertEqual(len(basis.index_set('0')), params.N)
        self.assertEqual(basis.index_set('w^1'), ['Y_w^1'])
        y01 = basis.solutions[0]
        self.assertEqual(y01.unit_position, params.a + 2)
        self.assertEqual(y01.components[y01.unit_position - 1], '-1')
        self.assertEqual(y01.components[params.a], '1')

    def test_counting_identities(self):
        for params in (Params(a=4, r=1, N=1, n=2), Params(a=7, r=1, N=2, n=4),
                       Params(a=10, r=1, N=3, n=6), Params(a=7, r=2, N=2, n=2, relaxed=True)):
            equations, unknowns = equation_balance(params)
            self.assertEqual(equations, unknowns)
            left, right = order_sum_balance(params)
            self.assertEqual(left, right)
            self.assertEqual(SolutionBasis.from_params(params).order_sum(), left)
        self.assertEqual(Params(a=4, r=1, N=1, n=2).tau, 1)


class MatrixTests(SimpleTestCase):
    def test_M_diagonal(self):
        params = Params(a=4, r=1, N=1, n=2)
        M = build_M(params, params.delta_n)
        for i in range(2, params.a + 2):
            self.assertEqual(M[i, i], params.delta_n)

    def test_M_zero_row(self):
        params = Params(a=7, r=1, N=2, n=2, p=0)
        M = build_M(params, 1)
        self.assertTrue(M.is_zero_row(params.a + 2))
        self.assertFalse(build_M(params.with_p(1), 1).is_zero_row(params.a + 2))

    def test_M_block_for_N_two(self):
        params = Params(a=4, r=1, N=2, n=2, p=1, relaxed=True)
        M = build_M(params, 2)
        a = params.a
        self.assertEqual(len(M.rows), 5)
        self.assertEqual(len(M.rows[0]), 6)
        # row a+1: delta/N ((-1)^p - 1) = -2 in both root columns
        self.assertEqual(M[a + 1, a + 2], -2)
        self.assertEqual(M[a + 1, a + 3], -2)
        # row a+2 with omega = -1: (-(-1)^l - (-1)^l) = -2 (-1)^l, times delta/N = 1
        self.assertEqual(M[a + 2, a + 2], 2)
        self.assertEqual(M[a + 2, a + 3], -2)
        self.assertEqual(M[a + 2, a + 1], 0)
        self.assertEqual(M[2, 3], 0)

    def test_product_identity(self):
        for params, k_max in ((Params(a=4, r=1, N=1, n=2, p=1), 4),
                              (Params(a=7, r=2, N=2, n=2, p=0, relaxed=True), None),
                              (Params(a=7, r=1, N=2, n=4, p=1), 4)):
            family = build_family(params, k_max=k_max)
            M = build_M(params, family.delta_n)
            self.assertTrue(verify_product(M, build_P_matrix(family), family.s_columns()))

    def test_product_negative_control(self):
        params = Params(a=4, r=1, N=1, n=2, p=1)
        family = build_family(params, k_max=4)
        s = family.s_columns()
        s[1][2] += 1
        M = build_M(params, family.delta_n)
        self.assertFalse(verify_product(M, build_P_matrix(family), s))

    def test_rank(self):
        identity = [[CycloNumber.rational(3, int(i == j)) for j in range(5)] for i in range(5)]
        self.assertEqual(rank_over_cyclotomic(identity), 5)
        self.assertEqual(rank_over_cyclotomic([[CycloNumber.zero(3)] * 3] * 2), 0)
        params = Params(a=4, r=1, N=1, n=4)
        family = build_family(params, k_max=8)
        report = rank_report(build_P_matrix(family))
        self.assertEqual(report['rank'], params.q - 1)
        self.assertEqual(report['rank_target'], params.q - 1)
        self.assertLessEqual(report['saturation_level'], 8)

    def test_column_space_basis(self):
        self.assertEqual(column_space_basis([[2], [4]]), [[1, 2]])
        self.assertEqual(column_space_basis([[0, 0], [0, 0]]), [])

    def test_basis_stable_in_n(self):
        bases = []
        for n in (4, 6):
            family = build_family(Params(a=4, r=1, N=1, n=n))
            bases.append(column_space_basis(family.s_columns()))
        self.assertEqual(bases[0], bases[1])
        self.assertEqual(basis_hash(bases[0]), basis_hash(bases[1]))

    def test_column_space_of_M(self):
        params = Params(a=4, r=1, N=1, n=4)
        family = build_family(params, k_max=8)
        self.assertTrue(column_space_matches_M(build_M(params, family.delta_n), family.s_columns()))

    def test_zero_row_in_basis(self):
        params = Params(a=7, r=1, N=2, n=4, p=0)
        family = build_family(params)
        s = family.s_columns()
        self.assertTrue(has_zero_row(s, params))
        index = params.a + 1 + params.N // 2 - 2
        for vector in column_space_basis(s):
            self.assertEqual(vector[index], 0)
        self.assertFalse(has_zero_row(s, params.with_p(1)))
