from dataclasses import replace
from fractions import Fraction

from django.test import SimpleTestCase
from mpmath import mp, mpf

from exact_core.exceptions import DivergentSeriesError, ParameterError
from exact_core.pole_expansions import PoleExpansion
from hyper_forms.families import build_family
from hyper_forms.fourier import PeriodicFunction
from hyper_forms.params import Params

from .balls import Ball, PrecisionContext, root_of_unity_ball
from .growth import growth_study
from .identity import lambda_check
from .s_series import check_decay, check_polylog_expansion, eval_S_derivative, well_poised_collapse
from .special import L_value, eval_polylog, hurwitz_zeta
from .summation import bernoulli, progression_tail_sum, remainder_bound

TIGHT = mpf(10) ** -30


class PrecisionContextTests(SimpleTestCase):
    def test_minimum_precision(self):
        with self.assertRaises(ParameterError):
            PrecisionContext(bits=32)

    def test_tolerance(self):
        ctx = PrecisionContext(bits=128)
        self.assertEqual(ctx.tolerance, mpf(2) ** -64)
        self.assertEqual(ctx.with_target(mpf('1e-10')).tolerance, mpf('1e-10'))
        self.assertEqual(ctx.doubled().bits, 256)

    def test_ball_json(self):
        ball = Ball.exact(Fraction(1, 2))
        self.assertEqual(set(ball.to_json()), {'mid_re', 'mid_im', 'rad'})

    def test_ball_json_full_precision(self):
        ctx = PrecisionContext(bits=256)
        with ctx.workprec():
            ball = Ball.exact(Fraction(1, 3))
        data = ball.to_json()
        self.assertGreaterEqual(sum(ch.isdigit() for ch in data['mid_re'].split('e')[0]), 70)
        self.assertTrue(data['mid_re'].startswith('0.3333333333333333333333333'))
        with mp.workprec(256):
            self.assertGreater(ball.rad, 0)
            self.assertGreaterEqual(mpf(data['rad']), ball.rad)

    def test_exact_ball_encloses(self):
        with PrecisionContext(bits=128).workprec():
            ball = Ball.exact(Fraction(1, 2)) + Ball.exact(Fraction(1, 3))
            self.assertTrue(ball.contains(mpf(5) / 6))
            self.assertFalse(ball.contains(mpf(1)))
            self.assertTrue((ball * 6).contains(5))


    def test_root_of_unity(self):
        with mp.workprec(128):
            self.assertTrue(root_of_unity_ball(1, 4).contains(1j))
            self.assertTrue(root_of_unity_ball(2, 4).contains(-1))


class SummationTests(SimpleTestCase):
    def test_bernoulli(self):
        self.assertEqual(bernoulli(2), Fraction(1, 6))
        self.assertEqual(bernoulli(12), Fraction(-691, 2730))

    def test_remainder_bound_encloses(self):
        # 2 |B_4| / 4! * (2)_4 / (5 * 16^5) = 1 / (15 * 2^20) for g = 1/q^2
        expansion = PoleExpansion({(Fraction(0), 2): 1})
        with PrecisionContext(bits=128).workprec():
            bound = remainder_bound(expansion, 16, 1)
            self.assertGreaterEqual(bound * 15 * 2 ** 20, 1)
            self.assertLess(bound * 15 * 2 ** 20, 1 + mpf(10) ** -30)

    def test_harmonic_tail_diverges(self):

        with self.assertRaises(DivergentSeriesError):
            progression_tail_sum(PoleExpansion({(Fraction(0), 1): 1}), lambda q: Fraction(1, q), 1,
                                 PrecisionContext())

    def test_telescoping(self):
        expansion = PoleExpansion({(Fraction(0), 1): 1, (Fraction(-1), 1): -1})
        result = progression_tail_sum(expansion, lambda q: Fraction(1, q * (q + 1)), 1, PrecisionContext())
        with mp.workprec(256):
            self.assertTrue(result.value.overlaps(Ball(1, TIGHT)))
            self.assertLess(abs(result.value.mid - 1), TIGHT)


class HurwitzTests(SimpleTestCase):
    def setUp(self):
        self.ctx = PrecisionContext(bits=256)

    def test_zeta_two(self):
        value = hurwitz_zeta(2, 1, self.ctx)
        with mp.workprec(256):
            self.assertLess(abs(value.mid - mp.pi ** 2 / 6), TIGHT)
            self.assertLess(value.rad, TIGHT)
        self.assertTrue(str(value.mid.real).startswith('1.6449340668'))

    def test_half_shift(self):
        for s in (2, 3, 4):
            with self.subTest(s=s):
                half = hurwitz_zeta(s, Fraction(1, 2), self.ctx)
                with self.ctx.workprec(32):
                    self.assertTrue(half.overlaps(hurwitz_zeta(s, 1, self.ctx) * (2 ** s - 1)))

    def test_quarter_against_L_value(self):
        zeta = hurwitz_zeta(2, Fraction(1, 4), self.ctx)
        value = L_value(PeriodicFunction.indicator(1, 4), 2, self.ctx)
        with self.ctx.workprec(32):
            self.assertTrue(value.overlaps(zeta * Fraction(1, 16)))

    def test_divergent_and_range(self):
        with self.assertRaises(DivergentSeriesError):
            hurwitz_zeta(1, 1, self.ctx)
        with self.assertRaises(ParameterError):
            hurwitz_zeta(2, 0, self.ctx)
        with self.assertRaises(ParameterError):
            hurwitz_zeta(2, Fraction(3, 2), self.ctx)

    def test_precision_doubling(self):
        low = hurwitz_zeta(3, Fraction(1, 3), self.ctx)
        high = hurwitz_zeta(3, Fraction(1, 3), self.ctx.doubled())
        with mp.workprec(512):
            self.assertTrue(low.overlaps(high))
            self.assertLess(high.rad, low.rad)


class LValueTests(SimpleTestCase):
    def setUp(self):
        self.ctx = PrecisionContext(bits=256)

    def test_riemann(self):
        value = L_value(PeriodicFunction.constant(), 2, self.ctx)
        with mp.workprec(256):
            self.assertLess(abs(value.mid - mp.zeta(2)), TIGHT)

    def test_catalan(self):
        value = L_value(PeriodicFunction((0, 1, 0, -1)), 2, self.ctx)
        with mp.workprec(256):
            self.assertLess(abs(value.mid - mp.catalan), TIGHT)
        self.assertTrue(str(value.mid.real).startswith('0.9159655941'))

    def test_alternating(self):
        value = L_value(PeriodicFunction((-1, 1)), 2, self.ctx)
        with mp.workprec(256):
            self.assertLess(abs(value.mid - mp.zeta(2) / 2), TIGHT)

    def test_divergent(self):
        with self.assertRaises(DivergentSeriesError):
            L_value(PeriodicFunction.constant(), 1, self.ctx)


class PolylogTests(SimpleTestCase):
    def setUp(self):
        self.ctx = PrecisionContext(bits=256)

    def test_dilog_at_one(self):
        value = eval_polylog(2, 0, 1, self.ctx)
        with mp.workprec(256):
            self.assertLess(abs(value.mid - mp.zeta(2)), TIGHT)

    def test_log_two(self):
        value = eval_polylog(1, 1, 2, self.ctx)
        with mp.workprec(256):
            self.assertLess(abs(value.mid + mp.log(2)), TIGHT)

    def test_log_near_one(self):
        # |1 - z| is about 6e-3 here, so the enclosure has to widen accordingly
        value = eval_polylog(1, 1, 1000, self.ctx)
        with mp.workprec(400):
            expected = -mp.log(1 - mp.exp(2j * mp.pi / 1000))
            self.assertTrue(value.contains(expected))
            self.assertLess(value.rad, TIGHT)


    def test_trilog_at_i(self):
        value = eval_polylog(3, 1, 4, self.ctx)
        # same point written as exp(2 pi i 2/8)
        reduced = eval_polylog(3, 2, 8, self.ctx)
        with mp.workprec(256):
            self.assertLess(abs(value.mid - mp.polylog(3, mp.mpc(0, 1))), TIGHT)
            self.assertTrue(value.overlaps(reduced))

    def test_divergent_at_one(self):
        with self.assertRaises(DivergentSeriesError):
            eval_polylog(1, 0, 4, self.ctx)
        with self.assertRaises(ParameterError):
            eval_polylog(0, 1, 4, self.ctx)


class SSeriesTests(SimpleTestCase):
    def setUp(self):
        self.ctx = PrecisionContext(bits=256)

    def test_polylog_expansion_at_one(self):
        family = build_family(Params(a=4, r=1, N=1, n=2, p=1), k_max=1)
        for side in ('0', 'inf'):
            with self.subTest(side=side):
                agree, direct, _ = check_polylog_expansion(family, side, 1, 1, self.ctx)
                self.assertTrue(agree)
                self.assertLess(direct.rad, TIGHT)

    def test_polylog_expansion_at_roots(self):
        family = build_family(Params(a=7, r=2, N=2, n=2, T=2, relaxed=True), k_max=1)
        for side in ('0', 'inf'):
            for ell in (1, 2):
                with self.subTest(side=side, ell=ell):
                    self.assertTrue(check_polylog_expansion(family, side, 1, ell, self.ctx)[0])

    def test_well_poised_collapse(self):
        for params in (Params(a=4, r=1, N=1, n=2, p=0), Params(a=7, r=1, N=2, n=4, p=1, T=2)):
            with self.subTest(params=params):
                family = build_family(params, k_max=1)
                holds, left, _ = well_poised_collapse(family, 1, self.ctx)
                self.assertTrue(holds)
                self.assertLess(left.rad, TIGHT)

    def test_collapse_needs_well_poised(self):
        family = build_family(Params(a=4, r=1, N=1, n=2, p=1), k_max=1)
        with self.assertRaises(ParameterError):
            well_poised_collapse(family, 1, self.ctx)

    def test_insufficient_decay(self):
        params = Params(a=7, r=2, N=2, n=2, T=2, relaxed=True)
        self.assertEqual(params.d0, 5)
        check_decay(params, 3)
        with self.assertRaisesMessage(DivergentSeriesError, 'insufficient decay'):
            check_decay(params, 4)

    def test_unknown_side(self):
        family = build_family(Params(a=4, r=1, N=1, n=2), k_max=1)
        with self.assertRaises(ParameterError):
            eval_S_derivative(family, 'left', 1, 1, self.ctx)


class LambdaCheckTests(SimpleTestCase):
    def setUp(self):
        self.ctx = PrecisionContext(bits=256)

    def test_identity_levels(self):
        family = build_family(Params(a=4, r=1, N=1, n=2, p=1), k_max=3)
        for k in (1, 2, 3):
            with self.subTest(k=k):
                result = lambda_check(family, PeriodicFunction.constant(), k, self.ctx)
                self.assertTrue(result.holds)
                self.assertTrue(result.collapse_agrees)
                self.assertLess(result.error_bound, TIGHT)

    def test_identity_with_period_two(self):
        family = build_family(Params(a=7, r=2, N=2, n=2, p=0, T=2, relaxed=True), k_max=2)
        for k in (1, 2):
            with self.subTest(k=k):
                self.assertTrue(lambda_check(family, PeriodicFunction((1, 0)), k, self.ctx).holds)

    def test_perturbed_s_fails(self):
        params = Params(a=4, r=1, N=1, n=2, p=1)
        family = build_family(params, k_max=1)
        row = list(family.s[0])
        row[params.a - 1] += 1
        tampered = replace(family, s=(tuple(row),))
        self.assertFalse(lambda_check(tampered, PeriodicFunction.constant(), 1, self.ctx).holds)

    def test_json(self):
        family = build_family(Params(a=4, r=1, N=1, n=2, p=1), k_max=1)
        data = lambda_check(family, PeriodicFunction.constant(), 1, self.ctx).to_json()
        self.assertEqual(data['k'], 1)
        self.assertTrue(data['holds'])


class GrowthTests(SimpleTestCase):
    def setUp(self):
        self.ctx = PrecisionContext(bits=256)

    def test_trend_within_beta(self):
        report = growth_study(Params(a=4, r=1, N=1, n=2, p=1), PeriodicFunction.constant(), [2, 4, 6, 8],
                              self.ctx)
        self.assertEqual([row.n for row in report.rows], [2, 4, 6, 8])
        self.assertTrue(report.s_within_beta)
        self.assertIn(report.verdict, (True, False))
        self.assertEqual(len(report.to_json()['rows']), 4)

    def test_single_row(self):
        report = growth_study(Params(a=4, r=1, N=1, n=2, p=1), PeriodicFunction.constant(), [2], self.ctx)
        self.assertIsNone(report.verdict)
        self.assertIn('single row, no trend verdict', report.notes)
