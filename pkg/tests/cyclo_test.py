
from fractions import Fraction
from unittest import TestCase

from padlfun.errors import DomainError
from padlfun.padic.cyclo import CycloPadic, Cyclotomic, cyclotomic_coeffs
from padlfun.padic.numbers import PadicNumber


class CyclotomicTest(TestCase):
    def test_cyclotomic_coeffs(self):
        self.assertEqual(cyclotomic_coeffs(1), (-1, 1))
        self.assertEqual(cyclotomic_coeffs(4), (1, 0, 1))
        self.assertEqual(cyclotomic_coeffs(5), (1, 1, 1, 1, 1))

    def test_roots_of_unity(self):
        self.assertEqual(Cyclotomic.root_of_unity(Fraction(1, 2)), -1)
        self.assertEqual(Cyclotomic.root_of_unity(0), 1)

        i = Cyclotomic.root_of_unity(Fraction(1, 4))
        self.assertEqual(i * i, -1)
        self.assertEqual(i ** 4, 1)
        self.assertEqual(i.conjugate() * i, 1)

        z = Cyclotomic.root_of_unity(Fraction(1, 5))
        total = sum((z ** k for k in range(5)), Cyclotomic.rational(0))
        self.assertEqual(total, 0)

    def test_mixed_moduli(self):
        i = Cyclotomic.root_of_unity(Fraction(1, 4))
        w = Cyclotomic.root_of_unity(Fraction(1, 3))
        z = i * w
        self.assertEqual(z.modulus, 12)
        self.assertEqual(z ** 12, 1)
        self.assertNotEqual(z ** 6, 1)
        self.assertEqual(
            Cyclotomic.root_of_unity(Fraction(1, 6)) ** 2, w,
        )

    def test_constant(self):
        self.assertEqual(Cyclotomic.rational(Fraction(3, 7)).constant(),
                         Fraction(3, 7))

        with self.assertRaises(DomainError):
            Cyclotomic.root_of_unity(Fraction(1, 3)).constant()


class CycloPadicTest(TestCase):
    def test_embed(self):
        i = Cyclotomic.root_of_unity(Fraction(1, 4)).to_padic(5)
        image = i.embed()
        self.assertEqual(image * image, -1)
        self.assertEqual(image.residue(1), 2)

        with self.assertRaises(DomainError):
            Cyclotomic.root_of_unity(Fraction(1, 3)).to_padic(5).embed()

    def test_arithmetic(self):
        z = Cyclotomic.root_of_unity(Fraction(1, 5)).to_padic(5)
        x = z * PadicNumber.from_rational(25, 5) + 1
        self.assertEqual(x.valuation(), 0)
        self.assertEqual((x - 1).valuation(), 2)
        self.assertTrue((x - x).is_zero())

    def test_from_padic(self):
        x = CycloPadic.from_padic(PadicNumber.from_rational(3, 7))
        self.assertTrue(x.is_rational())
        self.assertEqual(x.constant(), 3)
