
from fractions import Fraction
from unittest import TestCase

from padlfun.characters.dirichlet import DirichletChar, kronecker_char
from padlfun.errors import DomainError, PreconditionError, PrimeMismatchError
from padlfun.padic.numbers import INF, PadicNumber
from padlfun.padic.weights import classical_embed
from padlfun.qexp.eisenstein import eisenstein, sigma_eps
from padlfun.qexp.qexpansion import (
    QExpansion, check_primitive_depletion, compare, deplete, deplete_eigen,
    discrepancy, eta_product, op_Tp, op_U, op_V, theta, theta_inverse,
    theta_power, theta_weight, twist_finite,
)

LEVEL_11 = [0, 1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4]


def level_11(prime, truncation=60):
    return eta_product(prime, {1: 2, 11: 2}, truncation)


class QExpansionTest(TestCase):
    def test_coefficients(self):
        f = QExpansion(5, [0, 1, Fraction(1, 2), 3])
        self.assertEqual(f.truncation, 3)
        self.assertEqual(f[2] * 2, 1)

        with self.assertRaises(DomainError):
            f[4]

    def test_arithmetic(self):
        f = QExpansion(5, [1, 2, 3, 4])
        g = QExpansion.monomial(5, 1, 3)
        self.assertEqual(f + g, QExpansion(5, [1, 3, 3, 4]))
        self.assertEqual(f * g, QExpansion(5, [0, 1, 2, 3]))
        self.assertEqual((f - f).valuation(), INF)
        self.assertEqual((f * 25).valuation(), 2)
        self.assertTrue(QExpansion.zero(5, 4).is_zero())

    def test_truncation_meets(self):
        f = QExpansion(5, [1, 2, 3, 4, 5])
        g = QExpansion(5, [1, 1])
        self.assertEqual((f * g).truncation, 1)

    def test_prime_mismatch(self):
        with self.assertRaises(PrimeMismatchError):
            QExpansion(5, [1]) + QExpansion(7, [1])

    def test_discrepancy(self):
        f = QExpansion(5, [1, 2, 3])
        g = QExpansion(5, [1, 2 + 125, 3])
        self.assertEqual(discrepancy(f, g), 3)
        self.assertEqual(discrepancy(f, f), INF)
        self.assertTrue(compare("close", f, g, prec=3))
        self.assertFalse(compare("far", f, g))


class EtaProductTest(TestCase):
    def test_level_11(self):
        f = level_11(5, 13)

        for n, a in enumerate(LEVEL_11):
            self.assertEqual(f[n], a)

    def test_delta(self):
        delta = eta_product(7, {1: 24}, 4)
        self.assertEqual(delta[1], 1)
        self.assertEqual(delta[2], -24)
        self.assertEqual(delta[3], 252)
        self.assertEqual(delta[4], -1472)

    def test_fractional_exponent(self):
        with self.assertRaises(DomainError):
            eta_product(5, {1: 1}, 10)


class OperatorTest(TestCase):
    def test_u_v(self):
        f = level_11(5, 30)
        self.assertEqual(op_U(op_V(f)), f)
        self.assertEqual(op_U(f).truncation, 6)
        self.assertEqual(op_V(f, buffer=40).truncation, 40)
        self.assertTrue(op_U(deplete(f)).is_zero())

    def test_deplete(self):
        f = level_11(5, 30)
        g = deplete(f)
        self.assertTrue(g.is_depleted())
        self.assertFalse(f.is_depleted())
        self.assertEqual(g, f - op_V(op_U(f), buffer=30))

    def test_hecke_eisenstein(self):
        e4 = eisenstein(4, None, 40, 5)
        tp = op_Tp(e4, 4)
        self.assertTrue(compare("T_5", tp, e4 * 126))

    def test_hecke_level_11(self):
        for prime, a_p in ((5, 1), (7, -2), (13, 4)):
            f = level_11(prime, 6 * prime)
            self.assertTrue(compare("T_p", op_Tp(f, 2), f * a_p))

    def test_deplete_eigen(self):
        for prime in (5, 7):
            e4 = eisenstein(4, None, 60, prime)
            a_p = 1 + prime ** 3
            self.assertEqual(deplete_eigen(e4, a_p, 4), deplete(e4))

        f = level_11(5)
        self.assertEqual(deplete_eigen(f, 1, 2), deplete(f))

    def test_deplete_eigen_rejects(self):
        with self.assertRaises(PreconditionError):
            deplete_eigen(level_11(5), 2, 2)

    def test_primitive_depletion(self):
        self.assertTrue(check_primitive_depletion(level_11(5), 1, 2))
        self.assertTrue(check_primitive_depletion(level_11(7), -2, 2))
        self.assertFalse(check_primitive_depletion(level_11(7), 1, 2))


class ThetaTest(TestCase):
    def test_theta(self):
        f = level_11(5, 13)
        g = theta(f)

        for n, a in enumerate(LEVEL_11):
            self.assertEqual(g[n], n * a)

        self.assertEqual(theta(QExpansion.monomial(5, 1, 10)),
                         QExpansion.monomial(5, 1, 10))

    def test_theta_inverse(self):
        g = deplete(level_11(5, 30))
        self.assertEqual(theta_inverse(theta(g)), g)
        self.assertEqual(theta(theta_inverse(g, 2)), theta_inverse(g))

        with self.assertRaises(DomainError):
            theta_inverse(QExpansion(5, [1, 1]))

    def test_theta_weight(self):
        g = deplete(level_11(5, 30))
        self.assertEqual(theta_power(g, 2), theta(theta(g)))
        self.assertEqual(theta_power(g, -1), theta_inverse(g))
        self.assertEqual(theta_power(g, 0), g)
        self.assertEqual(
            theta_weight(g, classical_embed(3, 5), 1), theta(theta(g)),
        )

        with self.assertRaises(DomainError):
            theta_weight(level_11(5, 30), classical_embed(1, 5), 0)

    def test_twist(self):
        g = deplete(level_11(5, 13))
        twisted = twist_finite(g, kronecker_char(5))

        for n in (1, 4, 6, 9, 11):
            self.assertEqual(twisted[n], g[n])

        for n in (2, 3, 7, 8, 12, 13):
            self.assertEqual(twisted[n], -g[n])

        with self.assertRaises(PreconditionError):
            twist_finite(g, kronecker_char(-4))

    def test_twist_trivial(self):
        g = deplete(level_11(5, 20))
        omega = DirichletChar.from_values(5, lambda a: Fraction(0))
        self.assertEqual(twist_finite(g, omega), g)


class EisensteinTest(TestCase):
    def test_weight_4(self):
        e4 = eisenstein(4, None, 5, 5)
        self.assertEqual(e4[0], Fraction(1, 120))
        self.assertEqual(e4[1], 2)
        self.assertEqual(e4[2], 18)
        self.assertEqual(e4[3], 56)
        self.assertEqual(e4.weight, classical_embed(4, 5))

    def test_weight_1(self):
        chi = kronecker_char(-4)
        e1 = eisenstein(1, chi, 30, 5)
        self.assertEqual(e1[0], Fraction(1, 2))
        self.assertEqual(e1[1], 2)
        self.assertEqual(e1[3], 0)
        self.assertEqual(e1[5], 4)
        self.assertTrue(compare("T_5", op_Tp(e1, 1), e1 * 2))
        self.assertEqual(sigma_eps(9, 1, chi), 1)

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            eisenstein(3, None, 5, 5)

        with self.assertRaises(PreconditionError):
            eisenstein(2, None, 5, 5)

        with self.assertRaises(PreconditionError):
            eisenstein(2, kronecker_char(-4), 5, 5)

    def test_constant_is_padic(self):
        e4 = eisenstein(4, None, 2, 5)
        self.assertIsInstance(e4[0], PadicNumber)
        self.assertEqual(e4[0].valuation, -1)
