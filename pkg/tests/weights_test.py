
from fractions import Fraction
import random
from unittest import TestCase

from padlfun.errors import DomainError
from padlfun.padic import numbers
from padlfun.padic.local import (
    QuadPadic, quad_exp, quad_log, quad_power, quad_teichmuller,
)
from padlfun.padic.numbers import PadicNumber
from padlfun.padic.polys import TruncatedPoly, finite_difference_coefficients
from padlfun.padic.weights import (
    PadicWeight, check_assumption, classical_embed, weight_combine,
    weight_eval,
)


class WeightTest(TestCase):
    def test_classical_eval(self):
        self.assertEqual(
            weight_eval(classical_embed(3, 5), 2).residue(3), 8,
        )
        self.assertEqual(
            weight_eval(classical_embed(4, 5), 3).residue(3), 81,
        )
        self.assertEqual(
            weight_eval(classical_embed(-1, 5), 2) * 2, 1,
        )
        self.assertEqual(
            weight_eval(classical_embed(25, 5), 6),
            PadicNumber.from_rational(6 ** 25, 5),
        )

    def test_trivial_weight(self):
        w = PadicWeight(5, 0, PadicNumber.zero(5))
        self.assertEqual(weight_eval(w, 7), 1)
        self.assertEqual(classical_embed(0, 5).torsion, 0)

    def test_analytic_matches_classical(self):
        # omega(t)^m exp(m log<t>) = t^m
        for m in (1, 2, 7):
            w = PadicWeight(7, m, PadicNumber.from_rational(m, 7))

            for t in (2, 3, 10, 50):
                self.assertEqual(
                    weight_eval(w, t).reduce(15),
                    PadicNumber.from_rational(t ** m, 7).reduce(15),
                )

    def test_multiplicative(self):
        rng = random.Random(4)
        w = PadicWeight(5, 2, PadicNumber.from_rational(7 + 5 * 13, 5))

        for _ in range(20):
            s = rng.choice([1, 2, 3, 4]) + 5 * rng.randint(0, 1000)
            t = rng.choice([1, 2, 3, 4]) + 5 * rng.randint(0, 1000)
            self.assertEqual(
                weight_eval(w, s * t).reduce(15),
                (weight_eval(w, s) * weight_eval(w, t)).reduce(15),
            )

    def test_combine(self):
        w = weight_combine(classical_embed(2, 5), classical_embed(1, 5))
        self.assertEqual(w.classical, 4)
        self.assertEqual(
            weight_combine(classical_embed(2, 5), classical_embed(0, 5)),
            classical_embed(2, 5),
        )

        k = PadicWeight(5, 2, PadicNumber.from_rational(10, 5))
        nu = PadicWeight(5, 0, PadicNumber.from_rational(25, 5))
        kn = weight_combine(k, nu)

        for t in (2, 3, 7):
            self.assertEqual(
                weight_eval(kn, t).reduce(15),
                (weight_eval(k, t) * weight_eval(nu, t) ** 2).reduce(15),
            )

    def test_serialization(self):
        w = PadicWeight(5, 3, PadicNumber.from_rational(8, 5))
        self.assertEqual(str(PadicWeight.from_string(str(w), 5)), str(w))
        self.assertEqual(
            PadicWeight.from_string("(2 mod 4; -2)", 5),
            classical_embed(-2, 5),
        )

    def test_check_assumption(self):
        k = classical_embed(4, 5)
        nu = PadicWeight(5, 0, PadicNumber.from_rational(75, 5))
        self.assertTrue(check_assumption(k, nu).ok)

        report = check_assumption(
            k, PadicWeight(5, 0, PadicNumber.from_rational(5, 5)),
        )
        self.assertFalse(report)
        self.assertEqual(report.reason, "s not in p^2R")

        odd = PadicWeight(5, 1, PadicNumber.from_rational(5, 5))
        self.assertEqual(check_assumption(odd, nu).reason, "chi' not even")

        report = check_assumption(classical_embed(3, 5), classical_embed(1, 5))
        self.assertFalse(report)
        self.assertEqual(report.reason, "chi' not even")
        self.assertFalse(check_assumption(classical_embed(-3, 5), nu))
        self.assertTrue(check_assumption(classical_embed(6, 5), nu))

        self.assertEqual(
            check_assumption(
                PadicWeight(5, 2, PadicNumber.from_rational(2, 5)), nu,
            ).reason,
            "u not in pR",
        )
        self.assertTrue(check_assumption(k, classical_embed(-3, 5)))


class TruncatedPolyTest(TestCase):
    def test_arithmetic(self):
        t = TruncatedPoly.variable(3)
        self.assertEqual((t + 1) ** 2, TruncatedPoly([1, 2, 1], 3))
        self.assertEqual((t + 1) ** 5, TruncatedPoly([1, 5, 10, 10], 3))
        self.assertEqual(((t + 1) ** 2).evaluate(Fraction(1, 2)),
                         Fraction(9, 4))

    def test_family_weight(self):
        family = PadicWeight(5, 0, TruncatedPoly.variable(6, scale=25))

        for value in (0, 1, 3):
            direct = weight_eval(
                PadicWeight(5, 0, PadicNumber.from_rational(25 * value, 5)), 7,
            )
            self.assertEqual(
                weight_eval(family, 7).evaluate(value).reduce(12),
                direct.reduce(12),
            )

    def test_finite_differences(self):
        self.assertEqual(
            finite_difference_coefficients([1, 2, 5]), [1, 0, 1],
        )
        coeffs = [Fraction(3), Fraction(-1, 2), Fraction(0), Fraction(7)]
        poly = TruncatedPoly(coeffs, 3)
        values = [poly.evaluate(x) for x in range(4)]
        self.assertEqual(finite_difference_coefficients(values), coeffs)


class QuadPadicTest(TestCase):
    def test_inert_arithmetic(self):
        x = QuadPadic(3, -4, 1, 2)
        self.assertEqual(x * x.conjugate(), x.norm())
        self.assertEqual(x.norm(), 1 + 4 * 4)
        self.assertEqual((x / x), 1)

    def test_teichmuller(self):
        x = QuadPadic(3, -4, 1, 1)
        w = quad_teichmuller(x)
        self.assertEqual(w ** 8, 1)
        self.assertTrue((w - x).valuation() >= 1)

        r = QuadPadic(5, -20, 2, 1)
        self.assertTrue(r.ramified)
        self.assertEqual(quad_teichmuller(r) ** 4, 1)

    def test_log_exp(self):
        x = QuadPadic(3, -4, 1 + 3, 3)
        self.assertEqual(quad_exp(quad_log(x)), x)

        with self.assertRaises(DomainError):
            quad_exp(QuadPadic(3, -4, 1, 1))

    def test_power(self):
        x = QuadPadic(3, -4, 2, 1)
        self.assertEqual(quad_power(x, 3), x * x * x)
        # Exponents divisible by q - 1 see only the principal part.
        self.assertEqual(
            quad_power(x, PadicNumber.from_rational(48, 3), torsion=0),
            x ** 48,
        )
        self.assertEqual(x.valuation(), 0)
        self.assertEqual(QuadPadic(5, -20, 0, 1).valuation(), Fraction(1, 2))
        self.assertEqual(numbers.valuation(x.norm()), 0)
