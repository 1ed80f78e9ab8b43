
from fractions import Fraction
import math
from unittest import TestCase

from padlfun.errors import DomainError, PrecisionError, PreconditionError
from padlfun.padic import numbers
from padlfun.padic.numbers import INF, PadicNumber
from padlfun.padic.weights import (
    PadicWeight, classical_embed, family_weight,
)
from padlfun.qexp.coleman import (
    LaurentSeries, check_coleman_recursion, check_primitive_iterates,
    coleman_check, coleman_log, coleman_primitive,
)
from padlfun.qexp.eisenstein import eisenstein
from padlfun.qexp.nabla import (
    WSection, check_commutation, graded_U, graded_V, nabla_iterate,
    nabla_nu, nabla_nu_family, nabla_nu_section, nabla_step,
    section_discrepancy, smallest_admissible_J, specialize, theta_nu_split,
)
from padlfun.qexp.qexpansion import (
    QExpansion, deplete, eta_product, theta, theta_inverse,
)


def depleted_e4(truncation=30, prime=5):
    return deplete(eisenstein(4, None, truncation, prime))


def depleted_level_11(truncation=30, prime=5):
    return deplete(eta_product(prime, {1: 2, 11: 2}, truncation))


class WSectionTest(TestCase):
    def test_padding(self):
        f = depleted_e4()
        k = classical_embed(4, 5)
        short = WSection(k, [f])
        padded = WSection.from_form(f, k, 3)
        self.assertEqual(short, padded)
        self.assertEqual(padded.J, 3)
        self.assertEqual(padded.truncation, 30)

    def test_shift(self):
        f = depleted_e4()
        section = WSection(classical_embed(4, 5), [f, theta(f)]).shift(2)
        self.assertEqual(section.J, 3)
        self.assertTrue(section.component(0).is_zero())
        self.assertEqual(section.component(3), theta(f))
        self.assertEqual(section.bounds[0], INF)

    def test_arithmetic(self):
        f = depleted_e4()
        k = classical_embed(4, 5)
        s1 = WSection(k, [f, f])
        s2 = WSection(k, [f])
        self.assertEqual(s1 - s2, WSection(k, [f * 0, f]))
        self.assertEqual((s1 * 5).valuation(), 1)
        self.assertEqual(section_discrepancy(s1, s1), INF)


class NablaStepTest(TestCase):
    def test_weight_2(self):
        f = depleted_level_11()
        k = classical_embed(2, 5)
        out = nabla_step(WSection.from_form(f, k, 1))
        self.assertEqual(out.base_weight, classical_embed(4, 5))
        self.assertEqual(out.component(0), theta(f))
        self.assertEqual(out.component(1), f * 2)
        self.assertTrue(out.component(2).is_zero())

    def test_zero(self):
        zero = QExpansion.zero(5, 20)
        out = nabla_step(WSection.from_form(zero, classical_embed(2, 5)))
        self.assertEqual(out.valuation(), INF)

    def test_grading_coefficient(self):
        # c'_j = theta(c_j) + (w - (j - 1)) c_{j-1}
        f = depleted_e4()
        g = theta_inverse(f)
        w = classical_embed(6, 5)
        out = nabla_step(WSection(w, [f, g, f]))
        self.assertEqual(out.component(1), theta(g) + f * 6)
        self.assertEqual(out.component(2), theta(f) + g * 5)
        self.assertEqual(out.component(3), f * 4)

    def test_cap(self):
        f = depleted_e4()
        section = WSection.from_form(f, classical_embed(4, 5))
        self.assertEqual(nabla_iterate(section, 4, cap=2).J, 2)


class NablaNuTest(TestCase):
    def test_classical_matches_iterates(self):
        for f, w in ((depleted_level_11(), 2), (depleted_e4(), 4)):
            k = classical_embed(w, 5)

            for m in range(1, 6):
                section, report = nabla_nu(f, k, classical_embed(m, 5), m)
                iterate = nabla_iterate(WSection.from_form(f, k), m)
                self.assertEqual(section, iterate)
                self.assertEqual(section.base_weight, iterate.base_weight)
                self.assertTrue(report.certified)
                self.assertEqual(report.tail_bound, INF)

    def test_zero_power(self):
        f = depleted_e4()
        k = classical_embed(4, 5)
        section, _ = nabla_nu(f, k, classical_embed(0, 5), 2)
        self.assertEqual(section, WSection.from_form(f, k))

    def test_negative_power(self):
        f = depleted_level_11()

        for r in range(3):
            k = classical_embed(r + 2, 5)

            for j0 in range(r + 1):
                section, report = nabla_nu(
                    f, k, classical_embed(-1 - j0, 5), r - j0,
                )
                self.assertEqual(
                    section.component(0), theta_inverse(f, 1 + j0),
                )
                self.assertTrue(report.certified)
                self.assertEqual(report.tail_bound, INF)

        self.assertEqual(
            smallest_admissible_J(5, classical_embed(-1, 5), 0, 20, u=2), 0,
        )

        # u + s = 0: the shifted product never vanishes
        with self.assertRaises(PrecisionError):
            nabla_nu(f, classical_embed(2, 5), classical_embed(-2, 5), 0)

        section, report = nabla_nu(
            f, classical_embed(2, 5), classical_embed(-2, 5), 0,
            certify=False,
        )
        self.assertEqual(section.component(0), theta_inverse(f, 2))
        self.assertFalse(report.certified)

    def test_components(self):
        f = depleted_e4()
        k = classical_embed(4, 5)
        nu = PadicWeight(5, 0, 25)
        section, report = nabla_nu(f, k, nu, 4, target=1)

        for j in range(5):
            coeff = math.comb(25, j) * numbers.pochhammer_shift(29, j)
            expected = theta_inverse(theta_nu_split(f, k, nu), j) * coeff
            self.assertEqual(section.component(j), expected)
            self.assertGreaterEqual(
                section.component(j).valuation(), report.component_bounds[j],
            )

        self.assertEqual(report.component_bounds[1], 2)
        self.assertEqual(report.tail_bound, 1)
        self.assertEqual(report.precision_loss, 0)

    def test_tail_certificate(self):
        f = depleted_e4()
        k = classical_embed(4, 5)
        nu = PadicWeight(5, 0, 25)

        with self.assertRaises(PrecisionError) as ctx:
            nabla_nu(f, k, nu, 2)

        self.assertIn("smallest admissible J is 84", str(ctx.exception))
        self.assertEqual(smallest_admissible_J(5, nu, 0, 20), 84)
        self.assertEqual(
            smallest_admissible_J(5, classical_embed(3, 5), 0, 20), 3,
        )

    def test_assumption(self):
        f = depleted_e4()
        k = classical_embed(4, 5)

        with self.assertRaises(PreconditionError):
            nabla_nu(f, k, PadicWeight(5, 0, 5), 2)

        with self.assertRaises(PreconditionError):
            nabla_nu(f, PadicWeight(5, 1, 5), PadicWeight(5, 0, 25), 2)

        with self.assertRaises(PreconditionError):
            theta_nu_split(f, k, PadicWeight(5, 0, 1))

        odd = classical_embed(3, 5)

        with self.assertRaises(PreconditionError):
            nabla_nu(f, odd, PadicWeight(5, 0, 25), 2)

        section, _ = nabla_nu(f, odd, classical_embed(1, 5), 1)
        self.assertEqual(
            section, nabla_iterate(WSection.from_form(f, odd), 1),
        )

    def test_non_depleted(self):
        e4 = eisenstein(4, None, 20, 5)

        with self.assertRaises(DomainError):
            nabla_nu(e4, classical_embed(4, 5), classical_embed(1, 5), 1)

    def test_additivity_classical(self):
        f = depleted_e4()
        k = classical_embed(4, 5)
        first, _ = nabla_nu(f, k, classical_embed(1, 5), 1)
        composed, _ = nabla_nu_section(first, classical_embed(2, 5), 3)
        direct, _ = nabla_nu(f, k, classical_embed(3, 5), 3)
        self.assertEqual(composed, direct)
        self.assertEqual(composed.base_weight, direct.base_weight)

    def test_additivity(self):
        f = depleted_e4()
        k = classical_embed(4, 5)
        nu = PadicWeight(5, 0, 25)
        first, _ = nabla_nu(f, k, nu, 4, target=1)
        composed, reports = nabla_nu_section(first, nu, 4, target=1)
        direct, _ = nabla_nu(f, k, PadicWeight(5, 0, 50), 4, target=1)
        self.assertGreaterEqual(section_discrepancy(composed, direct), 10)
        self.assertEqual(len(reports), 5)

    def test_parallel(self):
        f = depleted_e4(20)
        k = classical_embed(4, 5)
        nu = PadicWeight(5, 0, 25)
        serial, _ = nabla_nu(f, k, nu, 4, target=1)
        pooled, _ = nabla_nu(f, k, nu, 4, target=1, cpu_count=2)
        self.assertEqual(serial, pooled)

    def test_split(self):
        f = depleted_e4()
        k = classical_embed(4, 5)
        nu = PadicWeight(5, 0, 25)
        section, _ = nabla_nu(f, k, nu, 4, target=1)
        self.assertEqual(theta_nu_split(f, k, nu), section.component(0))
        self.assertEqual(
            theta_nu_split(f, k, classical_embed(2, 5)), theta(theta(f)),
        )
        self.assertEqual(theta_nu_split(f, k, classical_embed(0, 5)), f)


class FamilyTest(TestCase):
    def test_specialize(self):
        f = depleted_e4(20)
        k = classical_embed(4, 5)
        family = family_weight(5, 0, 0, 25, 6)
        section, _ = nabla_nu_family(f, k, family, 3, target=0)

        for t in (1, 2, 3):
            direct, _ = nabla_nu(
                f, k, PadicWeight(5, 0, 25 * t), 3, target=0,
            )
            value = specialize(section, t)
            self.assertGreaterEqual(section_discrepancy(value, direct), 10)
            self.assertEqual(value.base_weight.analytic_param, 4 + 50 * t)

    def test_requires_family(self):
        with self.assertRaises(PreconditionError):
            nabla_nu_family(
                depleted_e4(), classical_embed(4, 5), PadicWeight(5, 0, 25),
                2,
            )


class CommutationTest(TestCase):
    def test_identities(self):
        for f in (eisenstein(4, None, 60, 5), depleted_level_11(60)):
            report = check_commutation(f, classical_embed(4, 5))
            self.assertTrue(report)
            self.assertEqual(report.discrepancy, INF)

    def test_monomial(self):
        q = QExpansion.monomial(5, 1, 40)
        self.assertTrue(check_commutation(q, classical_embed(2, 5), J=3))

    def test_graded_scaling(self):
        f = depleted_e4()
        section = WSection(classical_embed(4, 5), [f, f])
        self.assertEqual(graded_U(graded_V(section)), section)


class ColemanTest(TestCase):
    def test_order_0(self):
        f = depleted_level_11()
        primitive = coleman_primitive(f, 0)
        self.assertEqual(primitive.J, 0)

        for n in (1, 2, 3, 4, 6, 7):
            self.assertEqual(primitive.component(0)[n] * n, f[n])

        self.assertEqual(primitive.base_weight, classical_embed(0, 5))

    def test_order_2(self):
        f = depleted_e4()
        primitive = coleman_primitive(f, 2)
        self.assertEqual(primitive.component(2), theta_inverse(f, 3) * 2)
        self.assertEqual(primitive.base_weight, classical_embed(-2, 5))

    def test_recursion(self):
        for r in range(5):
            f = depleted_e4()
            primitive = coleman_primitive(f, r)
            self.assertTrue(check_coleman_recursion(primitive, f))
            self.assertTrue(coleman_check(primitive, f))

    def test_unsigned_components_fail_inversion(self):
        f = depleted_e4()
        primitive = coleman_primitive(f, 2)
        unsigned = WSection(classical_embed(2, 5), primitive.components)
        self.assertNotEqual(
            nabla_step(unsigned),
            WSection.from_form(f, classical_embed(4, 5), 3),
        )

    def test_iterates(self):
        f = depleted_level_11()

        for r in range(5):
            self.assertTrue(check_primitive_iterates(f, r))

    def test_non_depleted(self):
        with self.assertRaises(DomainError):
            coleman_primitive(eisenstein(4, None, 20, 5), 2)


def series(terms, prime=5):
    return LaurentSeries.from_terms(prime, terms)


class ColemanLogTest(TestCase):
    def test_uniformizer(self):
        constant, residue, tail = coleman_log(series({1: 1}), "annulus")
        self.assertTrue(constant.is_zero())
        self.assertEqual(residue, 1)
        self.assertTrue(tail.is_zero())

    def test_disk(self):
        constant, residue, tail = coleman_log(series({0: 1, 1: 5}), "disk")
        self.assertTrue(constant.is_zero())
        self.assertEqual(residue, 0)
        self.assertEqual(tail.coefficient(1), 5)
        self.assertEqual(tail.coefficient(2), Fraction(-25, 2))
        self.assertEqual(tail.coefficient(3), Fraction(125, 3))
        self.assertTrue(tail.coefficient(0).is_zero())

    def test_unit_constant(self):
        _, _, tail = coleman_log(series({0: 1, 1: 5}), "disk")
        constant, residue, scaled = coleman_log(series({0: 2, 1: 10}), "disk")
        self.assertEqual(
            constant, numbers.log_p(PadicNumber.from_rational(2, 5)),
        )
        self.assertEqual(residue, 0)
        self.assertEqual(scaled, tail)

    def test_annulus(self):
        constant, residue, tail = coleman_log(series({1: 1, 0: 5}), "annulus")
        self.assertEqual(residue, 1)
        self.assertEqual(tail.coefficient(-1), 5)
        self.assertEqual(tail.coefficient(-2), Fraction(-25, 2))

    def test_rejects(self):
        with self.assertRaises(DomainError):
            coleman_log(series({0: 1, 1: 1}), "annulus")

        with self.assertRaises(DomainError):
            coleman_log(series({1: 1}), "disk")

        with self.assertRaises(DomainError):
            coleman_log(series({-1: 5, 0: 1}), "disk")

        with self.assertRaises(DomainError):
            coleman_log(series({0: 1}), "strip")

        with self.assertRaises(DomainError):
            coleman_log(series({}), "disk")
