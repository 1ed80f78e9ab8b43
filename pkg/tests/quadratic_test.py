from fractions import Fraction
import itertools
import math
from unittest import TestCase

from padlfun import utils
from padlfun.errors import DomainError, PreconditionError
from padlfun.quadratic.forms import (
    Form, QuadOrder, class_group, class_number_formula, is_fundamental,
    reduced_forms, splitting_type,
)
from padlfun.quadratic.groups import AbelianGroup
from padlfun.quadratic.hgroup import HElement, hgroup
from padlfun.quadratic.ideals import (
    Ideal, QuadElement, heegner_criterion, heegner_ideal, ideal_in_class,
    residue_units, units,
)


class FormsTest(TestCase):
    def test_fundamental(self):
        for disc in (-3, -4, -7, -8, -20, -23, -163):
            self.assertTrue(is_fundamental(disc))

        for disc in (-1, -12, -16, -36, -100, 5):
            self.assertFalse(is_fundamental(disc))

        with self.assertRaises(DomainError):
            QuadOrder(-12)

    def test_class_groups(self):
        group = class_group(QuadOrder(-23))
        self.assertEqual(
            set(group.forms),
            set([Form(1, 1, 6), Form(2, 1, 3), Form(2, -1, 3)]),
        )
        self.assertTrue(group.check_group_law())

        group = class_group(QuadOrder(-4, 5))
        self.assertEqual(
            set(group.forms), set([Form(1, 0, 25), Form(2, 2, 13)]),
        )
        self.assertEqual(class_group(QuadOrder(-4, 3)).size, 2)
        self.assertEqual(class_group(QuadOrder(-4)).size, 1)

    def test_extended_gcd(self):
        for a, b in ((3, 5), (12, 18), (-7, 4), (0, 9)):
            x, y, g = utils.igcdex(a, b)
            self.assertEqual(g, math.gcd(a, b))
            self.assertEqual(a * x + b * y, g)
            self.assertIsInstance(x, int)

        square = Form(2, 1, 3).compose(Form(2, 1, 3))
        self.assertEqual(square, Form(2, -1, 3))
        self.assertEqual(class_group(QuadOrder(-23)).size, 3)

    def test_class_number_formula(self):
        for disc, c in itertools.product((-3, -4, -7, -23), (1, 2, 3, 5)):
            order = QuadOrder(disc, c)
            self.assertEqual(
                class_number_formula(order), class_group(order).size,
            )

    def test_reduction(self):
        form = Form(5, 13, 9)
        reduced, matrix = form.reduce_with_matrix()
        self.assertTrue(reduced.is_reduced())
        self.assertEqual(form.transform(matrix), reduced)
        self.assertEqual(reduced.disc, form.disc)

        for f in reduced_forms(-84):
            self.assertTrue(f.is_reduced())
            self.assertTrue(f.is_primitive())

    def test_composition(self):
        group = class_group(QuadOrder(-56))

        for f in group.forms:
            self.assertEqual(f * f.inverse(), Form.identity(-56))
            self.assertEqual(f ** group.size, Form.identity(-56))

        self.assertEqual(Form.from_string("(2, -1, 3)"), Form(2, -1, 3))

    def test_splitting(self):
        self.assertEqual(splitting_type(-4, 5), "split")
        self.assertEqual(splitting_type(-4, 3), "inert")
        self.assertEqual(splitting_type(-20, 5), "ramified")

        with self.assertRaises(DomainError):
            splitting_type(-4, 2)

        with self.assertRaises(DomainError):
            splitting_type(-4, 9)


class AbelianGroupTest(TestCase):
    def test_units_mod_n(self):
        for n in (5, 12, 16, 21):
            elements = [a for a in range(1, n) if math.gcd(a, n) == 1]
            group = AbelianGroup(elements, lambda x, y, n=n: x * y % n, 1)
            size = 1

            for e in group.orders:
                size *= e

            self.assertEqual(size, len(elements))

            for x in elements:
                self.assertEqual(group.element(group.dlog(x)), x)

            self.assertEqual(
                group.orders, [group.order_of(g) for g in group.gens],
            )


class ElementTest(TestCase):
    def test_arithmetic(self):
        i = QuadElement(-4, 0, 1)
        self.assertEqual(i * i, -1)
        self.assertEqual(i.norm(), 1)
        self.assertEqual((1 + i).norm(), 2)
        self.assertEqual((1 + i).trace(), 2)
        self.assertEqual((1 + i) * (1 + i).inverse(), 1)
        self.assertEqual(i.unit_angle(), Fraction(1, 4))
        self.assertIsNone((1 + i).unit_angle())

        omega = QuadElement.omega(-23)
        self.assertTrue(omega.is_integral())
        self.assertEqual(omega.coordinates(), (0, 1))
        self.assertFalse(omega.in_order(2))
        self.assertTrue((omega * 2).in_order(2))

    def test_units(self):
        self.assertEqual(len(units(-3)), 6)
        self.assertEqual(len(units(-4)), 4)
        self.assertEqual(len(units(-4, 3)), 2)
        self.assertEqual(len(units(-23)), 2)

        for angle, u in units(-3):
            self.assertEqual(u ** 6, 1)
            self.assertEqual(u.unit_angle(), angle)


class IdealTest(TestCase):
    def test_form_round_trip(self):
        for disc, c in ((-23, 1), (-4, 5), (-56, 1)):
            group = class_group(QuadOrder(disc, c))

            for i, f in enumerate(group.forms):
                ideal = Ideal.from_form(f, disc)
                self.assertEqual(ideal.conductor, c)
                self.assertEqual(ideal.norm, f.a)
                self.assertEqual(group.index(ideal.form()), i)

    def test_multiplicative(self):
        group = class_group(QuadOrder(-56))
        ideals = [Ideal.from_form(f, -56) for f in group.forms]

        for (i, a), (j, b) in itertools.product(enumerate(ideals), repeat=2):
            self.assertEqual((a * b).norm, a.norm * b.norm)
            self.assertEqual(
                group.index((a * b).form()), group.multiply(i, j),
            )

    def test_principal_generator(self):
        alpha = QuadElement(-23, 3, 1)
        ideal = Ideal.principal(alpha)
        self.assertEqual(ideal.norm, 8)
        generator = ideal.principal_generator()
        self.assertIn(generator / alpha, (1, -1))

        self.assertIsNone(
            Ideal.from_form(Form(2, 1, 3), -23).principal_generator()
        )

        cube = Ideal.from_form(Form(2, 1, 3), -23) ** 3
        self.assertEqual(cube.principal_generator().norm(), 8)

        with self.assertRaises(DomainError):
            Ideal.principal(QuadElement.omega(-4), 3)

    def test_contract_extend(self):
        self.assertEqual(Ideal.unit(-4).contract(3), Ideal.unit(-4, 3))
        self.assertEqual(Ideal.unit(-4, 3).extend(), Ideal.unit(-4))

        ideal = Ideal.principal(QuadElement(-4, 4, 1))
        contracted = ideal.contract(3)
        self.assertEqual(contracted.norm, 5)
        self.assertEqual(contracted.extend(), ideal)

    def test_ideal_in_class(self):
        group = class_group(QuadOrder(-4, 3))

        for i, f in enumerate(group.forms):
            ideal = ideal_in_class(f, -4, 30)
            self.assertTrue(ideal.is_coprime(30))
            self.assertEqual(group.index(ideal.form()), i)


class HeegnerTest(TestCase):
    def test_existence(self):
        heegner = heegner_ideal(-4, 5)
        self.assertTrue(heegner)
        self.assertEqual(heegner.ideal.norm, 5)
        i = QuadElement(-4, 0, 1)
        self.assertEqual(heegner.reduce(i) ** 2 % 5, 4)

        failure = heegner_ideal(-4, 3)
        self.assertFalse(failure)
        self.assertIn("inert", failure.reason)

        failure = heegner_ideal(-20, 25)
        self.assertFalse(failure)
        self.assertIn("ramified", failure.reason)

        self.assertTrue(heegner_ideal(-23, 6))
        self.assertTrue(heegner_ideal(-23, 1))

        with self.assertRaises(DomainError):
            heegner_ideal(-4, 0)

    def test_criterion(self):
        for disc in (-3, -4, -20, -23):
            for level in range(1, 51):
                self.assertEqual(
                    bool(heegner_ideal(disc, level)),
                    heegner_criterion(disc, level),
                )

    def test_reduction(self):
        heegner = heegner_ideal(-23, 6)

        for v in heegner.ideal.elements():
            self.assertEqual(heegner.reduce(v), 0)

        omega = QuadElement.omega(-23)
        xs = [omega, omega + 1, omega * 3 - 2, QuadElement.rational(-23, 5)]

        for x, y in itertools.product(xs, repeat=2):
            self.assertEqual(
                heegner.reduce(x * y),
                heegner.reduce(x) * heegner.reduce(y) % 6,
            )

        self.assertEqual(heegner.reduce(QuadElement.rational(-23, 5) / 7),
                         5 * pow(7, -1, 6) % 6)

        with self.assertRaises(DomainError):
            heegner.reduce(QuadElement.rational(-23, Fraction(1, 2)))

    def test_residue_units(self):
        self.assertEqual(residue_units(heegner_ideal(-4, 5)).orders, [4])
        self.assertEqual(residue_units(heegner_ideal(-4, 1)).orders, [])
        self.assertEqual(
            sorted(residue_units(heegner_ideal(-23, 12)).orders), [2, 2],
        )

        with self.assertRaises(PreconditionError):
            residue_units(heegner_ideal(-4, 3))


class HGroupTest(TestCase):
    def test_sizes(self):
        group = hgroup(QuadOrder(-4), heegner_ideal(-4, 5))
        self.assertEqual(group.size, 4)
        self.assertEqual(len(group.elements()), 4)

        group = hgroup(QuadOrder(-4, 3), heegner_ideal(-4, 5))
        self.assertEqual(group.size, 8)
        self.assertEqual(len(set(group.elements())), 8)
        self.assertEqual(group.kernel_orders, [2])
        self.assertEqual(group.lift_orders, [])

        group = hgroup(QuadOrder(-23), heegner_ideal(-23, 6))
        self.assertEqual(group.size, 6)
        self.assertEqual(group.lift_orders, [3])

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            hgroup(QuadOrder(-4, 5), heegner_ideal(-4, 5))

        with self.assertRaises(PreconditionError):
            hgroup(QuadOrder(-4), heegner_ideal(-4, 3))

    def test_group_law(self):
        for order, level in ((QuadOrder(-4, 3), 5), (QuadOrder(-23), 6)):
            group = hgroup(order, heegner_ideal(order.disc_K, level))
            elements = group.elements()
            one = group.identity()

            for x in elements:
                self.assertEqual(group.multiply(x, one), x)
                self.assertEqual(
                    group.multiply(x, group.inverse(x)), one,
                )

            for x, y, z in itertools.product(elements, repeat=3):
                self.assertEqual(
                    group.multiply(group.multiply(x, y), z),
                    group.multiply(x, group.multiply(y, z)),
                )

    def test_projection(self):
        group = hgroup(QuadOrder(-23), heegner_ideal(-23, 6))
        elements = group.elements()

        for x, y in itertools.product(elements, repeat=2):
            self.assertEqual(
                group.project(group.multiply(x, y)),
                group.pic.multiply(group.project(x), group.project(y)),
            )

        fiber = [x for x in elements if group.project(x) == 0]
        self.assertEqual(len(fiber), utils.euler_phi(6))
        self.assertEqual(
            set(group.project(x) for x in elements),
            set(range(group.class_number)),
        )

    def test_decompose(self):
        for disc, c, level in ((-4, 3, 5), (-23, 1, 6)):
            order = QuadOrder(disc, c)
            group = hgroup(order, heegner_ideal(disc, level))
            bad = c * level
            ideals = [
                ideal_in_class(f, disc, bad) for f in group.pic.forms
            ]

            for a, b in itertools.product(ideals, repeat=2):
                x, gamma = group.decompose(a)
                y, _ = group.decompose(b)
                z, _ = group.decompose(a * b)
                self.assertTrue(group.equivalent(z, group.multiply(x, y)))
                self.assertEqual(
                    group.project(x), group.pic.index(a.form()),
                )

            # Generators congruent to 1 modulo N are trivial.
            alpha = 1 + QuadElement.omega(disc) * (level * c)
            x, gamma = group.decompose(Ideal.principal(alpha, c))
            self.assertTrue(group.equivalent(x, group.identity()))

    def test_element_ids(self):
        group = hgroup(QuadOrder(-23), heegner_ideal(-23, 6))

        for x in group.elements():
            self.assertEqual(
                HElement.from_string(str(x), len(group.lift_orders)), x,
            )

        with self.assertRaises(DomainError):
            HElement.from_string("1, 2; 3", 1)

        data = group.to_dict()
        self.assertEqual(data["size"], 6)
        self.assertEqual(data["class_number"], 3)
