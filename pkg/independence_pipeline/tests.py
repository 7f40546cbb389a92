from fractions import Fraction

from django.test import SimpleTestCase
from mpmath import mp, mpf

from analytic_eval.balls import PrecisionContext
from exact_core.exceptions import CriterionHypothesisError, ParameterError
from hyper_forms.families import build_family
from hyper_forms.fourier import PeriodicFunction
from hyper_forms.params import Params

from .bounds import alpha_beta, theorem1_bound, theorem3_report
from .elimination import (
    EliminationPlan,
    build_g,
    check_g_identity,
    default_exponents,
    plan_report,
    primorial_D,
    solve_plan,
    solve_w,
    theorem2_choice,
)
from .fsz import fsz_equivalence, zero_start
from .siegel import siegel_from_family, siegel_lower_bound


def two_plan(a=5):
    return EliminationPlan(Fraction(1, 5), a, 2, (1, 2), exponents=(3,), w=(8, -1))


class BoundTests(SimpleTestCase):
    def test_alpha_beta_small(self):
        bounds = alpha_beta(4, 1, 1)
        with mp.workprec(256):
            self.assertLess(abs(bounds.alpha / (16 * (4 * mp.e) ** 5) - 1), mpf(10) ** -60)
            self.assertLess(abs(bounds.beta / (16 * (2 * mp.e) ** 5) - 1), mpf(10) ** -60)

    def test_tau_and_dimension(self):
        bounds = alpha_beta(4, 1, 1)
        self.assertEqual(bounds.dimension_bound, 1 + bounds.tau_siegel)
        self.assertLess(bounds.tau_siegel, 0)
        self.assertTrue(set(bounds.to_json()).issuperset({'alpha', 'beta', 'tau_siegel'}))

    def test_r_one_factor(self):
        # r^{-(a+1)/N + 4(r+1)} = 1 for r = 1, whatever a and N
        for a, N in ((10, 1), (10, 3)):
            bounds = alpha_beta(a, 1, N)
            with mp.workprec(256):
                expected = mpf(a + 1) / N * mp.log(4 * mp.e) + 4 * mp.log(2 * N)
                self.assertLess(abs(bounds.log_alpha - expected), mpf(10) ** -60)

    def test_theorem1_ratio(self):
        result = theorem1_bound(10 ** 6, 1)
        self.assertGreater(result.value, 0)
        self.assertLess(result.value / mp.log(10 ** 6), 1 / (1 + mp.log(2)))
        data = result.to_json()
        self.assertEqual(set(data), {'a', 'N', 'r', 'alpha', 'beta', 'bound', 'ratio_to_limit'})

    def test_epsilon_a_decreases(self):
        epsilons = [abs(theorem1_bound(a, 1).epsilon_a) for a in (10 ** 4, 10 ** 6, 10 ** 8, 10 ** 12)]
        self.assertEqual(epsilons, sorted(epsilons, reverse=True))
        self.assertEqual(len(set(epsilons)), 4)

    def test_a_too_small(self):
        with self.assertRaisesMessage(ParameterError, 'a too small for N'):
            theorem1_bound(30, 5)

    def test_theorem3_report(self):
        report = theorem3_report(Fraction(7, 8), 10 ** 6)
        self.assertEqual(report['constant_rhs'], 7)
        self.assertFalse(report['constant_holds'])
        self.assertTrue(report['constant_lhs'].startswith('6.77'))
        with self.assertRaises(ParameterError):
            theorem3_report(Fraction(3, 2), 10 ** 6)


class SiegelTests(SimpleTestCase):
    def test_synthetic_exact_rate(self):
        identity = [[1, 0], [0, 1]]
        Q = [10, 100, 1000, 10000]
        forms = [mpf(q) ** -2 for q in Q]
        fit = siegel_lower_bound([identity] * 4, Q, forms)
        self.assertAlmostEqual(float(fit.dimension_bound), 3, places=10)
        self.assertTrue(fit.to_json()['heuristic'])

    def test_column_spaces_differ(self):
        with self.assertRaisesMessage(CriterionHypothesisError, 'criterion hypotheses fail'):
            siegel_lower_bound([[[1, 0], [0, 0]], [[0, 0], [0, 1]]], [10, 100], [mpf(1), mpf(2)])

    def test_needs_increasing_Q(self):
        with self.assertRaises(ParameterError):
            siegel_lower_bound([[[1]], [[1]]], [100, 10], [mpf(1), mpf(2)])

    def test_family_fit(self):
        ctx = PrecisionContext(bits=128)
        template = Params(a=4, r=1, N=1, n=2, p=0)
        fit = siegel_from_family(template, PeriodicFunction.constant(), [4, 6], ctx, k_max=8)
        self.assertEqual(fit.points, 2)
        self.assertTrue(mp.isfinite(fit.tau))

    def test_family_fit_first_level(self):
        ctx = PrecisionContext(bits=128)
        template = Params(a=4, r=1, N=1, n=2, p=1)
        fit = siegel_from_family(template, PeriodicFunction.constant(), [2, 4, 6], ctx, form_levels=1)
        self.assertEqual(fit.points, 3)
        # Q_n is the largest entry itself
        self.assertAlmostEqual(float(fit.size_exponent), 1, places=6)



class EliminationTests(SimpleTestCase):
    def test_primorial_thresholds(self):
        self.assertEqual(primorial_D(Fraction(1, 5), 5).D, 1)
        plan = primorial_D(Fraction(1, 10), 1000)
        self.assertEqual((plan.D, plan.divisors, plan.delta), (6, (1, 2, 3, 6), 4))
        plan = primorial_D(Fraction(1, 10), 10 ** 4)
        self.assertEqual((plan.D, plan.delta), (30, 8))

    def test_epsilon_range(self):
        with self.assertRaises(ParameterError):
            primorial_D(Fraction(1, 4), 1000)

    def test_primorial_size(self):
        for a in (100, 10 ** 4, 10 ** 8):
            self.assertTrue(plan_report(primorial_D(Fraction(1, 10), a))['D_within_bound'])

    def test_solve_w(self):
        self.assertEqual(solve_w([1, 2], [3]), (8, -1))
        self.assertEqual(solve_w([1], []), (1,))
        w = solve_w([1, 2, 3, 6], [3, 5, 7])
        self.assertTrue(any(w))
        for i in (3, 5, 7):
            self.assertEqual(sum(c * d ** i for c, d in zip(w, [1, 2, 3, 6])), 0)

    def test_solve_w_validation(self):
        with self.assertRaises(ParameterError):
            solve_w([1, 2, 3, 6], [3, 5])
        with self.assertRaises(ParameterError):
            solve_w([1, 2], [1])

    def test_default_exponents(self):
        self.assertEqual(default_exponents(3, 1), (3, 5, 7))
        self.assertEqual(default_exponents(2, 0), (2, 4))
        plan = solve_plan(primorial_D(Fraction(1, 10), 1000), p=1)
        self.assertEqual(plan.exponents, (3, 5, 7))
        self.assertTrue(plan.is_solved())

    def test_plan_json(self):
        data = two_plan().to_json()
        self.assertEqual(data['epsilon'], '1/5')
        self.assertEqual(EliminationPlan.from_json(data), two_plan())
        data['divisors'] = [1, 3]
        with self.assertRaises(ParameterError):
            EliminationPlan.from_json(data)

    def test_theorem2_choice(self):
        plan = primorial_D(Fraction(1, 5), 10 ** 5)
        choice = theorem2_choice(plan)
        self.assertEqual(choice['r'], 10)
        self.assertEqual(choice['N'], plan.D)

    def test_build_g(self):
        f = PeriodicFunction.constant()
        one = EliminationPlan(Fraction(1, 5), 5, 1, (1,), w=(3,))
        self.assertEqual(build_g(f, one).values, (Fraction(3),))
        g = build_g(f, two_plan())
        self.assertEqual(g.values, (Fraction(7), Fraction(-1)))

    def test_g_identity(self):
        results = check_g_identity(PeriodicFunction.constant(), two_plan(), PrecisionContext(bits=256))
        self.assertTrue(all(agree for agree, _ in results.values()))
        with mp.workprec(256):
            self.assertLess(abs(results[3][1].mid), mpf(10) ** -30)


class FSZTests(SimpleTestCase):
    def setUp(self):
        self.ctx = PrecisionContext(bits=256)

    def test_two_plan(self):
        for n in (4, 8):
            with self.subTest(n=n):
                params = Params(a=5, r=1, N=2, n=n, p=1, relaxed=True)
                result = fsz_equivalence(params, two_plan(), self.ctx)
                self.assertTrue(result.zero_start)
                self.assertTrue(result.holds)
                self.assertLess(result.error_bound, mpf(10) ** -20)

    def test_degenerate_plan(self):
        plan = EliminationPlan(Fraction(1, 5), 4, 1, (1,), w=(1,))
        result = fsz_equivalence(Params(a=4, r=1, N=1, n=4, p=0), plan, self.ctx)
        self.assertTrue(result.holds)

    def test_preconditions(self):
        with self.assertRaises(ParameterError):
            fsz_equivalence(Params(a=5, r=1, N=2, n=2, p=1, relaxed=True), two_plan(), self.ctx)
        with self.assertRaises(ParameterError):
            fsz_equivalence(Params(a=5, r=1, N=2, n=4, p=0, relaxed=True), two_plan(), self.ctx)

    def test_zero_start(self):
        family = build_family(Params(a=5, r=1, N=2, n=4, p=1, relaxed=True), k_max=1)
        self.assertTrue(zero_start(family.F, two_plan()))
