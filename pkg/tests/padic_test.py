
from fractions import Fraction
import random
from unittest import TestCase

from padlfun.errors import (
    DomainError, PrecisionError, PrimeMismatchError,
)
from padlfun.padic import numbers
from padlfun.padic.numbers import (
    PadicNumber, binom_padic, exp_p, log_p, pochhammer_shift, teichmuller,
)


def P(x, prime=5, prec=numbers.DEFAULT_PRECISION):
    return PadicNumber.from_rational(x, prime, prec)


class PadicNumberTest(TestCase):
    def test_valuation(self):
        x = P(50)
        self.assertEqual(x.valuation, 2)
        self.assertEqual(x.unit % 5 ** 3, 2)
        self.assertEqual((x * 1).valuation, 2)
        self.assertEqual((x * P(Fraction(1, 25))).valuation, 0)

    def test_division(self):
        half = P(1, prime=3, prec=2) / P(2, prime=3, prec=2)
        self.assertEqual(half.residue(), 5)
        self.assertEqual(half.relprec, 2)

    def test_additive_inverse(self):
        x = P(Fraction(7, 3))
        y = x + (-x)
        self.assertTrue(y.is_zero())
        self.assertFalse(y.is_exact_zero())
        self.assertEqual(y.valuation, x.absprec)

    def test_precision_tracking(self):
        x = P(1, prec=4)
        y = P(25, prec=10)
        self.assertEqual((x + y).absprec, 4)
        self.assertEqual((x * y).relprec, 4)
        self.assertEqual((y / 5).absprec, y.absprec - 1)

    def test_errors(self):
        with self.assertRaises(PrimeMismatchError):
            P(1, prime=5) + P(1, prime=7)

        with self.assertRaises(PrecisionError):
            P(1) / (P(3) - P(3))

    def test_rational_oracle(self):
        rng = random.Random(1)
        prec = 12
        mod = 7 ** prec

        for _ in range(200):
            a = Fraction(rng.randint(-1000, 1000), rng.choice([1, 2, 3, 4, 9]))
            b = Fraction(rng.randint(1, 1000), rng.choice([1, 5, 6, 8]))

            if b.numerator % 7 == 0:
                continue

            for got, expected in (
                (P(a, 7, prec) + P(b, 7, prec), a + b),
                (P(a, 7, prec) - P(b, 7, prec), a - b),
                (P(a, 7, prec) * P(b, 7, prec), a * b),
                (P(a, 7, prec) / P(b, 7, prec), a / b),
            ):
                if expected == 0:
                    self.assertTrue(got.is_zero())
                    continue

                reduced = got.reduce(min(got.absprec, prec - 1))
                self.assertEqual(
                    reduced,
                    PadicNumber.from_rational(expected, 7, prec),
                )

                if got.valuation >= 0:
                    self.assertEqual(
                        reduced.residue(),
                        expected.numerator *
                        pow(expected.denominator, -1, mod) %
                        7 ** reduced.absprec,
                    )

    def test_serialization(self):
        for x in (P(50), P(Fraction(3, 5)), P(-1), P(0), P(7) - P(7)):
            self.assertEqual(
                str(PadicNumber.from_string(str(x), prime=5)),
                str(x),
            )

        self.assertEqual(str(P(50, prec=3)), "5^2 * 2 mod 5^5")

        with self.assertRaises(DomainError):
            PadicNumber.from_string("not a number")


class ElementaryFunctionsTest(TestCase):
    def test_log(self):
        self.assertEqual(log_p(P(6, prec=3)).residue(3), 55)
        self.assertTrue(log_p(P(1)).is_zero())
        self.assertTrue(log_p(P(5)).is_zero())

    def test_log_additive(self):
        rng = random.Random(2)

        for _ in range(20):
            x = P(1 + 5 * rng.randint(1, 10 ** 6))
            y = P(1 + 5 * rng.randint(1, 10 ** 6))
            self.assertEqual(
                log_p(x * y).reduce(15),
                (log_p(x) + log_p(y)).reduce(15),
            )

    def test_exp(self):
        self.assertEqual(exp_p(P(5, prec=2)).residue(3), 81)
        self.assertEqual(exp_p(PadicNumber.zero(5)), 1)

        x = exp_p(P(3 * 7, prime=3))
        self.assertEqual(x.residue(1), 1)

        with self.assertRaises(DomainError):
            exp_p(P(2))

    def test_exp_log_inverse(self):
        x = P(6)
        self.assertEqual(exp_p(log_p(x)).reduce(15), x.reduce(15))

    def test_teichmuller(self):
        self.assertEqual(teichmuller(P(1)), 1)
        self.assertEqual(teichmuller(P(2, prec=2)).residue(), 7)

        for a in range(1, 5):
            w = teichmuller(P(a))
            self.assertEqual(w ** 4, 1)
            self.assertEqual(w.residue(1), a)

        with self.assertRaises(DomainError):
            teichmuller(P(10))

    def test_unit_decomposition(self):
        rng = random.Random(3)

        for _ in range(20):
            x = P(rng.choice([1, 2, 3, 4]) + 5 * rng.randint(0, 10 ** 5))
            w = teichmuller(x)
            self.assertEqual(
                (w * exp_p(log_p(x / w))).reduce(15),
                x.reduce(15),
            )

    def test_binomial(self):
        self.assertEqual(binom_padic(Fraction(7, 3), 0), 1)
        self.assertEqual(binom_padic(-1, 2), 1)
        self.assertEqual(binom_padic(25, 1), 25)
        self.assertEqual(binom_padic(P(25), 1), 25)
        self.assertEqual(binom_padic(P(-1), 2), 1)
        self.assertEqual(binom_padic(6, 3, prime=5), 20)

    def test_binomial_valuation_bound(self):
        for s in (25, 50, 125, 375):
            for j in range(1, 30):
                v = numbers.val_rational(binom_padic(s, j), 5)
                self.assertGreaterEqual(
                    v,
                    numbers.binom_valuation_bound(
                        numbers.val_int(s, 5), j, 5,
                    ),
                )

        # The naive bound j*v(s) - v(j!) fails already for s = p^2, j = 2.
        self.assertLess(
            numbers.val_rational(binom_padic(25, 2), 5),
            2 * 2 - numbers.val_factorial(2, 5),
        )

    def test_pochhammer(self):
        self.assertEqual(pochhammer_shift(7, 0), 1)
        self.assertEqual(pochhammer_shift(3, 2), 2)
        self.assertEqual(pochhammer_shift(4 + 1, 1), 4)
        self.assertEqual(pochhammer_shift(P(5), 2), 12)

        for j in range(1, 12):
            self.assertGreaterEqual(
                numbers.valuation(pochhammer_shift(P(17), j)),
                numbers.val_factorial(j, 5),
            )
