import math
from dataclasses import replace
from fractions import Fraction

from django.test import SimpleTestCase

from exact_core.cyclotomic import CycloNumber, root_power
from exact_core.exceptions import ParameterError, RecurrenceRangeError
from exact_core.polynomials import LaurentPoly

from .families import build_family, build_U1_V1, compute_ski, recurrence_step, split_by_residue
from .fourier import PeriodicFunction, fourier_hat, fourier_inverse
from .params import Params, PoleLayout
from .partial_fractions import (
    check_denominators,
    check_reconstruction,
    f0_residue,
    partial_fractions_product,
    partial_fractions_solve,
    simple_factor_expansions,
    size_bound_exponent,
    size_report,
)
from .rational_function import FactoredRationalFunction, build_F, check_well_poised_symmetry


class ParamsTests(SimpleTestCase):
    def test_derived_quantities(self):
        params = Params(a=4, r=1, N=1, n=2)
        self.assertEqual(params.d0, 8)
        self.assertEqual(Params(a=4, r=1, N=1, n=1).d0, 6)
        self.assertEqual(params.q, 6)
        self.assertEqual(params.tau, 1)
        self.assertEqual(params.delta_n, 2 ** 5)

    def test_strict_inequality(self):
        with self.assertRaisesMessage(ParameterError, 'r < a/(3N) violated'):
            Params(a=7, r=2, N=2, n=2)
        relaxed = Params(a=7, r=2, N=2, n=2, relaxed=True)
        self.assertEqual(relaxed.d0, 5)

    def test_divisibility_and_range(self):
        with self.assertRaisesMessage(ParameterError, 'N | n violated'):
            Params(a=10, r=1, N=3, n=4)
        with self.assertRaisesMessage(ParameterError, 'r ≥ 1 violated'):
            Params(a=4, r=0, N=1, n=2)
        with self.assertRaisesMessage(ParameterError, 'd_0 ≥ 2 violated'):
            Params(a=7, r=2, N=2, n=6, relaxed=True)

    def test_k_max(self):
        params = Params(a=4, r=1, N=1, n=2)
        self.assertEqual(params.k_max(), 7)
        self.assertEqual(params.k_max(cap=3), 3)


class RationalFunctionTests(SimpleTestCase):
    def test_build_F_cancels_common_factors(self):
        F = build_F(Params(a=4, r=1, N=1, n=2))
        expected = FactoredRationalFunction(4, [2, 1, -3, -4], [(0, 4), (-1, 4), (-2, 4)])
        self.assertEqual(F, expected)
        self.assertEqual(-F.degree, 8)

    def test_F_zeros(self):
        params = Params(a=7, r=1, N=2, n=2)
        F = build_F(params)
        self.assertEqual(F(-1), 0)
        params = Params(a=4, r=1, N=1, n=2)
        F = build_F(params)
        for t in range(params.n + 1, (params.r + 1) * params.n + 1):
            self.assertEqual(F(-t), 0)
        for t in range(1, params.r * params.n + 1):
            self.assertEqual(F(t), 0)

    def test_F_vanishes_off_multiples_of_N(self):
        params = Params(a=10, r=1, N=3, n=6)
        F = build_F(params)
        for t in range(1, params.n + 1):
            if t % params.N:
                self.assertEqual(F(-t), 0)

    def test_well_poised_symmetry(self):
        for a, p in ((5, 1), (4, 0)):
            params = Params(a=a, r=1, N=1, n=2, p=p)
            self.assertTrue(check_well_poised_symmetry(build_F(params), params))

    def test_well_poised_symmetry_preconditions(self):
        params = Params(a=4, r=1, N=1, n=3, p=0)
        with self.assertRaises(ParameterError):
            check_well_poised_symmetry(build_F(params), params)
        params = Params(a=4, r=1, N=1, n=2, p=1)
        with self.assertRaises(ParameterError):
            check_well_poised_symmetry(build_F(params), params)


class PartialFractionTests(SimpleTestCase):
    def test_explicit_table(self):
        params = Params(a=4, r=1, N=1, n=1)
        table = partial_fractions_product(build_F(params), params)
        self.assertEqual([table[j, 0] for j in range(1, 5)], [46, -23, 9, -2])
        self.assertEqual([table[j, 1] for j in range(1, 5)], [-46, -23, -9, -2])

    def test_methods_agree(self):
        for n in (1, 2):
            params = Params(a=4, r=1, N=1, n=n)
            F = build_F(params)
            self.assertEqual(partial_fractions_product(F, params), partial_fractions_solve(F, params))

    def test_methods_agree_with_spacing(self):
        params = Params(a=7, r=1, N=2, n=4)
        F = build_F(params)
        self.assertEqual(partial_fractions_product(F, params), partial_fractions_solve(F, params))

    def test_relaxed_instance_uses_layered_product(self):
        params = Params(a=7, r=2, N=2, n=2, relaxed=True)
        F = build_F(params)
        table = partial_fractions_product(F, params)
        self.assertTrue(check_reconstruction(table, F))
        self.assertEqual(table, partial_fractions_solve(F, params))

    def test_simple_residues_sum_to_zero(self):
        for params in (Params(a=4, r=1, N=1, n=3), Params(a=10, r=1, N=3, n=3)):
            table = partial_fractions_product(build_F(params), params)
            self.assertEqual(sum(table[1, h] for h in range(params.m + 1)), 0)

    def test_leading_coefficient_at_zero(self):
        params = Params(a=4, r=1, N=1, n=2)
        table = partial_fractions_product(build_F(params), params)
        self.assertEqual(table[4, 0], 6)

    def test_textbook_inputs(self):
        single = FactoredRationalFunction(1, [], [0])
        table = partial_fractions_solve(single, PoleLayout(order=1, spacing=3, count=1))
        self.assertEqual(table[1, 0], 1)
        for N in (1, 2, 5):
            two_poles = FactoredRationalFunction(1, [], [0, -N])
            table = partial_fractions_solve(two_poles, PoleLayout(order=2, spacing=N, count=2))
            self.assertEqual(table[1, 0], Fraction(1, N))
            self.assertEqual(table[1, 1], Fraction(-1, N))
            self.assertEqual(table[2, 0], 0)

    def test_reconstruction(self):
        params = Params(a=10, r=1, N=3, n=6)
        F = build_F(params)
        table = partial_fractions_product(F, params)
        self.assertTrue(check_reconstruction(table, F, count=50))
        self.assertFalse(check_reconstruction(table.with_entry(1, 0, table[1, 0] + 1), F))

    def test_f0_closed_form(self):
        params = Params(a=10, r=1, N=3, n=9)
        f0 = simple_factor_expansions(params)[0][1]
        for h in range(params.m + 1):
            self.assertEqual(f0.coefficient(-params.N * h, 1), f0_residue(h, params.m, params.N))

    def test_denominator_bound(self):
        for params in (Params(a=4, r=1, N=1, n=2), Params(a=7, r=1, N=2, n=4)):
            table = partial_fractions_product(build_F(params), params)
            self.assertTrue(check_denominators(table, params))

    def test_denominator_counterexample(self):
        params = Params(a=4, r=1, N=1, n=2)
        table = partial_fractions_product(build_F(params), params)
        bad = table.with_entry(params.a, 0, Fraction(1, params.N * 2 + 1))
        self.assertFalse(check_denominators(bad, params))

    def test_size_bound_exponent(self):
        self.assertAlmostEqual(size_bound_exponent(Params(a=4, r=1, N=1, n=2)), 9 * math.log(2))
        self.assertAlmostEqual(size_bound_exponent(Params(a=7, r=1, N=2, n=4)), 8 * math.log(2))

    def test_size_report(self):
        for params in (Params(a=4, r=1, N=1, n=2), Params(a=7, r=1, N=2, n=4)):
            with self.subTest(params=params):
                table = partial_fractions_product(build_F(params), params)
                report = size_report(table, params)
                self.assertTrue(report['within_bound'])
                self.assertAlmostEqual(float(report['log_max_p_over_n']), table.max_log_abs() / params.n)
        params = Params(a=4, r=1, N=1, n=2)
        table = partial_fractions_product(build_F(params), params)
        self.assertFalse(size_report(table.with_entry(1, 0, 10 ** 40), params)['within_bound'])



class FamilyTests(SimpleTestCase):
    def test_base_polynomials(self):
        params = Params(a=4, r=1, N=1, n=1)
        table = partial_fractions_product(build_F(params), params)
        U1, V1 = build_U1_V1(table, params)
        self.assertEqual(U1, LaurentPoly(1, (80,)))
        self.assertEqual(V1, LaurentPoly(0, (80,)))

    def test_base_polynomial_properties(self):
        for params in (Params(a=7, r=1, N=2, n=4), Params(a=10, r=1, N=3, n=6)):
            table = partial_fractions_product(build_F(params), params)
            U1, V1 = build_U1_V1(table, params)
            self.assertLessEqual(U1.max_degree, params.n)
            self.assertLessEqual(V1.max_degree, params.n)
            for poly in (U1, V1):
                self.assertTrue(all((params.delta_n * c).denominator == 1 for c in poly.coeffs))
            self.assertTrue((U1 + V1).exponents_congruent(params.N))

    def test_recurrence_invariants(self):
        params = Params(a=7, r=1, N=2, n=4, p=0)
        family = build_family(params)
        self.assertEqual(family.levels, params.d0 - 1)
        for k in range(1, family.levels + 1):
            self.assertEqual(family.P_at(k, 1).value_at_one(), 0)
            for j in range(1, params.a + 1):
                self.assertTrue(family.P_at(k, j).shift(k - 1).exponents_congruent(params.N))
            for piece in family.U_split[k - 1] + family.V_split[k - 1]:
                self.assertTrue(piece.exponents_congruent(params.N))

    def test_recurrence_step_identity_at_level_one(self):
        params = Params(a=4, r=1, N=1, n=2)
        family = build_family(params, k_max=1)
        self.assertIs(recurrence_step(family, 1), family)

    def test_recurrence_range_error(self):
        params = Params(a=4, r=1, N=1, n=2)
        family = build_family(params, k_max=1)
        broken = replace(family, P=((LaurentPoly(0, (1,)),) + family.P[0][1:],))
        with self.assertRaises(RecurrenceRangeError):
            recurrence_step(broken, 2)

    def test_split_reassembles(self):
        params = Params(a=7, r=1, N=2, n=2)
        family = build_family(params, k_max=3)
        for k in range(1, 4):
            U_split, V_split = split_by_residue(family, k)
            self.assertEqual(U_split, family.U_split[k - 1])
            total = sum((piece.shift(lam) for lam, piece in enumerate(U_split)), LaurentPoly())
            self.assertEqual(total, family.U[k - 1].shift(k - 1))
            total = sum((piece.shift(lam) for lam, piece in enumerate(V_split)), LaurentPoly())
            self.assertEqual(total, family.V[k - 1].shift(k - 1))

    def test_split_for_N_one(self):
        params = Params(a=4, r=1, N=1, n=2)
        family = build_family(params, k_max=2)
        self.assertEqual(family.U_split[1][0], family.U[1].shift(1))

    def test_first_column_of_s(self):
        for p, last in ((0, 160), (1, 0)):
            family = build_family(Params(a=4, r=1, N=1, n=1, p=p), k_max=1)
            self.assertEqual(family.s[0], (-46, 0, -4, last))

    def test_s_integrality(self):
        for n in (2, 4):
            for p in (0, 1):
                family = build_family(Params(a=4, r=1, N=1, n=n, p=p))
                self.assertEqual(compute_ski(family), family.s)
                self.assertTrue(all(isinstance(v, int) for row in family.s for v in row))

    def test_zero_row_for_even_p_and_N(self):
        params = Params(a=7, r=1, N=2, n=4, p=0)
        family = build_family(params)
        zero_row = params.a + 1 + params.N // 2
        self.assertTrue(all(family.s_at(k, zero_row) == 0 for k in range(1, family.levels + 1)))

    def test_relaxed_family(self):
        params = Params(a=7, r=2, N=2, n=2, p=0, T=2, relaxed=True)
        family = build_family(params)
        self.assertEqual(len(family.s_columns()), params.a + params.N - 1)


class FourierTests(SimpleTestCase):
    def test_constant_function(self):
        self.assertEqual(fourier_hat(PeriodicFunction.constant(), 1), [1])
        self.assertEqual(fourier_hat(PeriodicFunction.constant(), 2), [0, 1])

    def test_indicator(self):
        N = 4
        for u in range(N):
            hats = fourier_hat(PeriodicFunction.indicator(u, N), N)
            for ell, hat in enumerate(hats, start=1):
                self.assertEqual(hat, root_power(N, -ell * u) / N)

    def test_inversion(self):
        f = PeriodicFunction((Fraction(1), Fraction(0), Fraction(-2, 3)))
        N = 6
        hats = fourier_hat(f, N)
        for m in range(N):
            self.assertEqual(fourier_inverse(hats, N, m), f(m))

    def test_cyclotomic_values(self):
        omega = root_power(4, 1)
        f = PeriodicFunction((CycloNumber.one(4), omega, -CycloNumber.one(4), -omega))
        hats = fourier_hat(f, 4)
        for m in range(4):
            self.assertEqual(fourier_inverse(hats, 4, m), f(m))

    def test_zero_function_rejected(self):
        with self.assertRaises(ParameterError):
            PeriodicFunction((Fraction(0), Fraction(0)))
