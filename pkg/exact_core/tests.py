import math
import random
from fractions import Fraction

from django.test import SimpleTestCase

from .cyclotomic import CycloNumber, cyclo_inverse, cyclo_mul, cyclotomic_min_poly, evaluate_at_root, root_power
from .exceptions import CyclotomicDivisionError
from .integers import as_integer, content, lcm_upto, pochhammer
from .linalg import nullspace, rank, row_echelon, solve
from .pole_expansions import PoleExpansion
from .polynomials import DensePoly, LaurentPoly
from .serialization import dumps, poly_from_json, poly_to_json, rational_from_str, rational_to_str
from .series import TruncatedSeries, series_log_at_one, taylor_at_one


class IntegerUtilitiesTests(SimpleTestCase):
    def test_lcm_upto_examples(self):
        self.assertEqual(lcm_upto(0), 1)
        self.assertEqual(lcm_upto(1), 1)
        self.assertEqual(lcm_upto(6), 60)

    def test_lcm_upto_divisibility(self):
        for m in range(1, 30):
            d = lcm_upto(m)
            self.assertTrue(all(d % i == 0 for i in range(1, m + 1)))
            self.assertEqual(lcm_upto(m + 1) % d, 0)

    def test_pochhammer_of_polynomial(self):
        t = DensePoly((0, 1))
        expected = DensePoly((-1, 1)) * t * DensePoly((1, 1)) * DensePoly((2, 1))
        self.assertEqual(pochhammer(t - 1, 4), expected)
        self.assertEqual(pochhammer(t, 0), 1)

    def test_pochhammer_is_factorial_ratio(self):
        self.assertEqual(pochhammer(1, 5), 120)
        t = DensePoly((0, 1))
        for p in range(9):
            poly = pochhammer(t, p) if p else DensePoly.constant(1)
            for k in range(1, 9):
                self.assertEqual(poly(Fraction(k)), math.factorial(k + p - 1) // math.factorial(k - 1))

    def test_integrality_helpers(self):
        self.assertEqual(as_integer(Fraction(6, 3)), 2)
        self.assertIsNone(as_integer(Fraction(1, 2)))
        self.assertEqual(content([4, -6, 10]), 2)


class PolynomialTests(SimpleTestCase):
    def test_zero_polynomial_degree(self):
        self.assertEqual(DensePoly().degree, float('-inf'))
        self.assertEqual(DensePoly((1, 2, 0, 0)).degree, 1)

    def test_division_with_remainder(self):
        p = DensePoly((-1, 0, 0, 1))
        q, r = divmod(p, DensePoly((-1, 1)))
        self.assertEqual(q, DensePoly((1, 1, 1)))
        self.assertTrue(r.is_zero())

    def test_gcdex_bezout_identity(self):
        a = DensePoly.from_roots([1, 2, 3])
        b = DensePoly.from_roots([2, 5])
        s, t, g = a.gcdex(b)
        self.assertEqual(g, DensePoly((-2, 1)))
        self.assertEqual(s * a + t * b, g)

    def test_laurent_normalisation(self):
        p = LaurentPoly(-3, (0, 0, 5, 0))
        self.assertEqual(p.min_degree, -1)
        self.assertEqual(p.coeffs, (Fraction(5),))
        self.assertEqual(LaurentPoly(4, (0,)).min_degree, 0)

    def test_divide_by_one_minus_z(self):
        p = LaurentPoly(-1, (1, 2, -3))
        q = p.divide_by_one_minus_z()
        self.assertEqual(q * LaurentPoly(0, (1, -1)), p)
        self.assertIsNone(LaurentPoly(0, (1, 1)).divide_by_one_minus_z())

    def test_split_by_residue_reassembles(self):
        p = LaurentPoly(-2, (1, 2, 3, 4, 5, 6, 7))
        pieces = p.split_by_residue(3)
        total = LaurentPoly()
        for lam, piece in enumerate(pieces):
            self.assertTrue(piece.exponents_congruent(3))
            total = total + piece.shift(lam)
        self.assertEqual(total, p)

    def test_derivative_of_negative_powers(self):
        p = LaurentPoly(-2, (3, 0, 1))
        self.assertEqual(p.derivative(), LaurentPoly(-3, (-6,)))


class SeriesTests(SimpleTestCase):
    def test_log_coefficients(self):
        self.assertEqual(series_log_at_one(1).coeffs, (0,))
        self.assertEqual(series_log_at_one(3).coeffs, (0, 1, Fraction(-1, 2)))
        self.assertEqual(
            series_log_at_one(5).coeffs, (0, 1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4))
        )

    def test_product_truncates(self):
        log = series_log_at_one(4)
        square = log * log
        self.assertEqual(square.coeffs, (0, 0, 1, -1))

    def test_taylor_at_one(self):
        series = taylor_at_one(DensePoly((0, 0, 1)), 4)
        self.assertEqual(series, TruncatedSeries((1, 2, 1), 4))
        self.assertTrue((series - series).vanishes_through(3))


class CyclotomicTests(SimpleTestCase):
    def test_min_poly_examples(self):
        self.assertEqual(cyclotomic_min_poly(1), DensePoly((-1, 1)))
        self.assertEqual(cyclotomic_min_poly(4), DensePoly((1, 0, 1)))
        self.assertEqual(cyclotomic_min_poly(6), DensePoly((1, -1, 1)))

    def test_root_of_unity_relations(self):
        omega = root_power(4, 1)
        self.assertEqual(cyclo_mul(omega, root_power(4, 3)), 1)
        self.assertEqual(omega ** 4, 1)
        self.assertEqual(omega ** -1, root_power(4, 3))

    def test_inverse_examples(self):
        one_plus_omega = CycloNumber(4, (1, 1))
        expected = CycloNumber(4, (Fraction(1, 2), Fraction(-1, 2)))
        self.assertEqual(cyclo_inverse(one_plus_omega), expected)
        self.assertEqual(cyclo_inverse(CycloNumber.rational(2, -1)), -1)

    def test_inverse_of_zero(self):
        with self.assertRaisesMessage(CyclotomicDivisionError, 'division by zero in cyclotomic field'):
            CycloNumber.zero(5).inverse()

    def test_random_inverses(self):
        rng = random.Random(20240517)
        for N in range(1, 31):
            for _ in range(3):
                coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(N)]
                xi = CycloNumber(N, coeffs)
                if not xi:
                    continue
                self.assertEqual(cyclo_mul(xi, cyclo_inverse(xi)), 1)

    def test_sum_of_all_roots_vanishes(self):
        for N in (2, 3, 4, 6, 12):
            self.assertFalse(sum((root_power(N, e) for e in range(N)), CycloNumber.zero(N)))

    def test_conjugate_and_lift(self):
        omega = root_power(3, 1)
        self.assertEqual(omega.conjugate(), root_power(3, 2))
        self.assertEqual(omega.lift(6), root_power(6, 2))

    def test_evaluate_laurent_at_root(self):
        p = LaurentPoly(-1, (1, 0, 1))
        self.assertEqual(evaluate_at_root(p, 1, 4), 0)
        self.assertEqual(evaluate_at_root(p, 2, 4), -2)


class LinearAlgebraTests(SimpleTestCase):
    def test_rank_and_reduced_form(self):
        rows = [[2, 4], [1, 2]]
        self.assertEqual(rank(rows), 1)
        echelon, pivots = row_echelon([[2], [4]])
        self.assertEqual(pivots, [0])
        self.assertEqual(rank([[0, 0], [0, 0]]), 0)
        identity = [[int(i == j) for j in range(5)] for i in range(5)]
        self.assertEqual(rank(identity), 5)

    def test_nullspace_vandermonde_row(self):
        basis = nullspace([[1, 8]])
        self.assertEqual(basis, [[Fraction(-8), Fraction(1)]])

    def test_solve_and_singular(self):
        self.assertEqual(solve([[1, 1], [1, -1]], [3, 1]), [2, 1])
        self.assertIsNone(solve([[1, 1], [2, 2]], [1, 2]))

    def test_rank_over_cyclotomic_entries(self):
        omega = root_power(3, 1)
        rows = [[CycloNumber.one(3), omega], [omega, omega ** 2]]
        self.assertEqual(rank(rows), 1)


class PoleExpansionTests(SimpleTestCase):
    def test_two_pole_split(self):
        expansion = PoleExpansion.from_factored([0, -2])
        self.assertEqual(expansion.coefficient(0, 1), Fraction(1, 2))
        self.assertEqual(expansion.coefficient(-2, 1), Fraction(-1, 2))

    def test_products_match_direct_evaluation(self):
        first = PoleExpansion.from_factored([0, -1], [3])
        second = PoleExpansion.from_factored([0, -1, -2])
        product = first.times_simple(second).times_linear(5)
        for t in (Fraction(1, 2), Fraction(7, 3), Fraction(-5, 4)):
            direct = (t - 3) * (t - 5) / (t * (t + 1)) / (t * (t + 1) * (t + 2))
            self.assertEqual(product(t), direct)

    def test_linear_factor_creates_polynomial_part(self):
        expansion = PoleExpansion.from_factored([1]).times_linear(0)
        self.assertEqual(expansion.polynomial, DensePoly((1,)))
        self.assertEqual(expansion.coefficient(1, 1), 1)


class SerializationTests(SimpleTestCase):
    def test_rational_strings(self):
        self.assertEqual(rational_to_str(Fraction(6, 4)), '3/2')
        self.assertEqual(rational_to_str(Fraction(-4, 2)), '-2')
        self.assertEqual(rational_from_str('-3/9'), Fraction(-1, 3))
        with self.assertRaises(ValueError):
            rational_from_str('1/0')

    def test_polynomials_and_deterministic_dump(self):
        p = LaurentPoly(-1, (Fraction(1, 2), 0, 3))
        self.assertEqual(poly_from_json(poly_to_json(p)), p)
        text = dumps({'b': Fraction(1, 3), 'a': CycloNumber(4, (0, 1))})
        self.assertEqual(text, '{"a": {"N": 4, "coefficients": ["0", "1"]}, "b": "1/3"}')
