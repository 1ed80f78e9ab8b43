"""
The group H(c, N): classes of ideals of O_c prime to cN modulo principal
ideals with generators congruent to 1 modulo N, presented as an extension of
Pic(O_c) by (O_K / N)^* = (Z/N)^*.

Pic(O_c) is presented as a tower. Lifts L_j of a basis of Pic(O_K), of
orders f_j, sit above a basis a_i of the kernel of Pic(O_c) -> Pic(O_K), of
orders e_i. The relations

    L_j^(f_j) = gamma_j prod a_i^(k_ji),    a_i^(e_i) = beta_i O_c

with fixed gamma_j in K and beta_i in O_c give the carries of the group
law: an element (l, k, t) stands for prod L_j^(l_j) prod a_i^(k_i) times
the residue class t of a generator in (Z/N)^*.
"""

from __future__ import absolute_import, division

import itertools
import logging
import math

from sympy.ntheory.modular import crt

from padlfun import regexes, utils
from padlfun.characters.dirichlet import unit_group
from padlfun.errors import DomainError, PreconditionError
from padlfun.padic import numbers
from padlfun.quadratic.forms import DEFAULT_DISC_BOUND, class_group
from padlfun.quadratic.groups import AbelianGroup
from padlfun.quadratic.ideals import (
    Ideal, QuadElement, ideal_in_class, units,
)

LOGGER = logging.getLogger("padlfun.hgroup")


class HElement(object):
    """
    An element (l, k, t) of H(c, N).

    Attributes
    ----------
    lifts : tuple of int
        Exponents of the lifts of the Pic(O_K) basis.
    kernel : tuple of int
        Exponents of the kernel basis.
    unit : int
        Residue class modulo N.
    """
    __slots__ = ("lifts", "kernel", "unit")

    def __init__(self, lifts, kernel, unit):
        self.lifts = tuple(lifts)
        self.kernel = tuple(kernel)
        self.unit = unit

    def _key(self):
        return (self.lifts, self.kernel, self.unit)

    def __eq__(self, other):
        if not isinstance(other, HElement):
            return NotImplemented

        return self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return self._key() < other._key()

    def __str__(self):
        return "[{}]; {}".format(
            ", ".join(str(i) for i in self.lifts + self.kernel), self.unit,
        )

    __repr__ = __str__

    @classmethod
    def from_string(cls, text, n_lifts):
        m = regexes.RE_HGROUP_ID.match(text)

        if not m:
            raise DomainError(
                "Unable to parse H-group element \"{}\"".format(text)
            )

        vector = [int(i) for i in m.group(1).split(",") if i.strip()]

        return cls(vector[:n_lifts], vector[n_lifts:], int(m.group(2)))


class HGroup(object):
    """
    H(c, N) for an order O_c and a Heegner ideal of level N prime to c.

    Attributes
    ----------
    order : :class:`QuadOrder<padlfun.quadratic.forms.QuadOrder>`
    heegner : :class:`HeegnerIdeal<padlfun.quadratic.ideals.HeegnerIdeal>`
    pic : :class:`ClassGroup<padlfun.quadratic.forms.ClassGroup>`
        Pic(O_c).
    pic_K : :class:`ClassGroup<padlfun.quadratic.forms.ClassGroup>`
        Pic(O_K).
    avoid : int
        Representative ideals have norms prime to avoid.
    lift_orders : list of int
    lift_ideals : list of :class:`Ideal<padlfun.quadratic.ideals.Ideal>`
    lift_carries : list of (tuple of int, QuadElement, int)
        (k_j, gamma_j, gamma_j mod N) per lift.
    kernel_orders : list of int
    kernel_ideals : list of :class:`Ideal<padlfun.quadratic.ideals.Ideal>`
    kernel_alphas : list of QuadElement
        Generators of a_i O_K.
    kernel_betas : list of QuadElement
        Generators of a_i^(e_i) in O_c.
    kernel_angles : list of Fraction
        Angles of the roots of unity beta_i / alpha_i^(e_i).
    """

    def __init__(self, order, heegner, prime=None,
                 bound=DEFAULT_DISC_BOUND, cpu_count=1):
        self.order = order
        self.heegner = heegner
        self.avoid = order.conductor * heegner.level * (prime or 1)
        disc_K, c = order.disc_K, order.conductor

        self.pic = class_group(order, bound=bound, cpu_count=cpu_count)
        self.pic_K = class_group(order.maximal(), bound=bound)

        self._ext = [
            self.pic_K.index(Ideal.from_form(f, disc_K).extend().form())
            for f in self.pic.forms
        ]

        self._basis_K = AbelianGroup(
            range(self.pic_K.size), self.pic_K.multiply, 0,
        )
        self._kernel = AbelianGroup(
            [i for i in range(self.pic.size) if self._ext[i] == 0],
            self.pic.multiply, 0,
        )

        # Kernel generators: a_i = alpha_i O_K cap O_c.
        self.kernel_orders = list(self._kernel.orders)
        self.kernel_ideals, self.kernel_alphas = [], []
        self.kernel_betas, self.kernel_angles, self._beta_residues = [], [], []

        for g, e in zip(self._kernel.gens, self._kernel.orders):
            ideal = ideal_in_class(self.pic.forms[g], disc_K, self.avoid)
            alpha = ideal.extend().principal_generator()
            beta = (ideal ** e).principal_generator()
            assert alpha is not None and beta is not None

            angle = (beta / alpha ** e).unit_angle()
            assert angle is not None

            self.kernel_ideals.append(ideal)
            self.kernel_alphas.append(alpha)
            self.kernel_betas.append(beta)
            self.kernel_angles.append(angle)
            self._beta_residues.append(heegner.reduce(beta))

        # Lifts of the Pic(O_K) basis.
        self.lift_orders = list(self._basis_K.orders)
        self.lift_ideals, self._lift_classes, self.lift_carries = [], [], []

        for g, f in zip(self._basis_K.gens, self._basis_K.orders):
            ideal = ideal_in_class(
                self.pic_K.forms[g], disc_K, self.avoid,
            ).contract(c)
            cls = self.pic.index(ideal.form())
            assert self._ext[cls] == g

            self.lift_ideals.append(ideal)
            self._lift_classes.append(cls)

        for ideal, f in zip(self.lift_ideals, self.lift_orders):
            power = ideal ** f
            kernel = self._kernel.dlog(self.pic.index(power.form()))
            gamma, residue = self._quotient(power, [0] * len(self.lift_orders),
                                            kernel)
            self.lift_carries.append((tuple(kernel), gamma, residue))

        LOGGER.info(
            "H(c = {}, N = {}) for D_K = {}: h = {}, |H| = {}".format(
                c, heegner.level, disc_K, self.pic.size, self.size,
            )
        )

    @property
    def level(self):
        return self.heegner.level

    @property
    def units(self):
        return unit_group(self.level)

    @property
    def size(self):
        return self.pic.size * self.units.size

    @property
    def class_number(self):
        return self.pic.size

    def identity(self):
        return HElement(
            [0] * len(self.lift_orders), [0] * len(self.kernel_orders),
            1 % self.level,
        )

    def elements(self):
        """
        All elements, in a fixed order.
        """
        out = []

        for lifts in itertools.product(*(range(f) for f in self.lift_orders)):
            for kernel in itertools.product(
                    *(range(e) for e in self.kernel_orders)):
                for t in self.units.elements():
                    out.append(HElement(lifts, kernel, t % self.level))

        return out

    def multiply(self, x, y):
        n = self.level
        lifts = [a + b for a, b in zip(x.lifts, y.lifts)]
        kernel = [a + b for a, b in zip(x.kernel, y.kernel)]
        t = x.unit * y.unit % n

        for j, f in enumerate(self.lift_orders):
            carry, lifts[j] = divmod(lifts[j], f)

            if carry:
                vector, _, residue = self.lift_carries[j]
                kernel = [a + carry * b for a, b in zip(kernel, vector)]
                t = t * pow(residue, carry, n) % n

        for i, e in enumerate(self.kernel_orders):
            carry, kernel[i] = divmod(kernel[i], e)

            if carry:
                t = t * pow(self._beta_residues[i], carry, n) % n

        return HElement(lifts, kernel, t)

    def power(self, x, n):
        result, base = self.identity(), x

        while n:
            if n & 1:
                result = self.multiply(result, base)

            base = self.multiply(base, base)
            n >>= 1

        return result

    def inverse(self, x):
        return self.power(x, self.size - 1)

    def from_unit(self, t):
        """
        The element (1, t) of the kernel of the projection.
        """
        return HElement(
            [0] * len(self.lift_orders), [0] * len(self.kernel_orders),
            t % self.level,
        )

    def project(self, x):
        """
        The class in Pic(O_c), as an index into pic.forms.
        """
        cls = 0

        for g, l in zip(self._lift_classes, x.lifts):
            cls = self.pic.multiply(cls, self.pic.power(g, l))

        for g, k in zip(self._kernel.gens, x.kernel):
            cls = self.pic.multiply(cls, self.pic.power(g, k))

        return cls

    def unit_images(self):
        """
        Residues modulo N of the roots of unity of O_c.
        """
        return set(
            self.heegner.reduce(u) % self.level
            for _, u in units(self.order.disc_K, self.order.conductor)
        )

    def equivalent(self, x, y):
        """
        Equality up to the images of the units of O_c.
        """
        if (x.lifts, x.kernel) != (y.lifts, y.kernel):
            return False

        n = self.level

        return any(x.unit == y.unit * u % n for u in self.unit_images())

    def _representative(self, lifts, kernel):
        disc_K, c = self.order.disc_K, self.order.conductor
        out = Ideal.unit(disc_K, c)

        for ideal, l in zip(self.lift_ideals, lifts):
            out = out * ideal ** l

        for ideal, k in zip(self.kernel_ideals, kernel):
            out = out * ideal ** k

        return out

    def _quotient(self, ideal, lifts, kernel):
        # ideal = gamma * J with J the representative of (lifts, kernel).
        n = self.level
        rep = self._representative(lifts, kernel)
        delta = (ideal * rep.conjugate()).principal_generator()

        if delta is None:
            raise DomainError(
                "{} is not in the class of {}".format(ideal, rep)
            )

        norm = int(rep.norm)
        gamma = delta / norm
        residue = self.heegner.reduce(delta) * pow(norm, -1, n) % n \
            if n > 1 else 0

        return gamma, residue

    def decompose(self, ideal):
        """
        Write an ideal of O_c prime to cN as gamma * J(l, k).

        Returns
        -------
        element : :class:`HElement<padlfun.quadratic.hgroup.HElement>`
            Defined up to the images of the units of O_c.
        gamma : :class:`QuadElement<padlfun.quadratic.ideals.QuadElement>`
        """
        if ideal.conductor != self.order.conductor:
            raise DomainError(
                "{} is not an ideal of the order of conductor {}".format(
                    ideal, self.order.conductor,
                )
            )

        bad = self.order.conductor * self.level

        if not ideal.is_coprime(bad):
            raise DomainError(
                "{} is not prime to cN = {}".format(ideal, bad)
            )

        x = self.section(self.pic.index(ideal.form()))
        gamma, residue = self._quotient(ideal, x.lifts, x.kernel)

        return HElement(x.lifts, x.kernel, residue), gamma

    def section(self, cls):
        """
        The element (l, k, 1) above a class of Pic(O_c).

        Parameters
        ----------
        cls : int
            Index into pic.forms.

        Returns
        -------
        :class:`HElement<padlfun.quadratic.hgroup.HElement>`
        """
        lifts = self._basis_K.dlog(self._ext[cls])
        rest = cls

        for g, l in zip(self._lift_classes, lifts):
            rest = self.pic.multiply(
                rest, self.pic.inverse(self.pic.power(g, l)),
            )

        return HElement(lifts, self._kernel.dlog(rest), 1 % self.level)

    def local_units(self, prime, m):
        """
        The subgroup generated by the classes of alpha O_K cap O_c for
        alpha in O_K congruent to 1 modulo p^m and to 1 modulo the rest of
        cN, with alpha prime to p.

        Parameters
        ----------
        prime : int
            A prime dividing the conductor.
        m : int
            0 <= m <= v_p(c).

        Returns
        -------
        set of :class:`HElement<padlfun.quadratic.hgroup.HElement>`
        """
        c = self.order.conductor
        e = numbers.val_int(c, prime)

        if not 0 <= m <= e or not e:
            raise DomainError(
                "Expected 0 <= m <= v_{}(c) = {}, got m = {}".format(
                    prime, e, m,
                )
            )

        q, pm = prime ** e, prime ** m
        rest = c // q * self.level
        omega = QuadElement.omega(self.order.disc_K)
        images = set()

        for xa, xb in itertools.product(range(q), repeat=2):
            if (xa - 1) % pm or xb % pm:
                continue

            if (xa + omega * xb).norm() % prime == 0:
                continue

            if rest > 1:
                xa = int(crt([q, rest], [xa, 1])[0])
                xb = int(crt([q, rest], [xb, 0])[0])

            x, _ = self.decompose(self.contracted(xa + omega * xb))
            images.add(x)

        return self.closure(images)

    def closure(self, elements):
        """
        The subgroup generated by a set of elements.
        """
        group = set([self.identity()])
        frontier = list(group)

        while frontier:
            x = frontier.pop()

            for g in elements:
                y = self.multiply(x, g)

                if y not in group:
                    group.add(y)
                    frontier.append(y)

        return group

    def contracted(self, alpha):
        """
        alpha O_K cap O_c for alpha in O_K.
        """
        return Ideal.principal(alpha, 1).contract(self.order.conductor)

    def is_kernel_class(self, cls):
        return self._ext[cls] == 0

    def to_dict(self):
        return {
            "order": self.order.to_dict(),
            "heegner": self.heegner.to_dict(),
            "class_number": self.class_number,
            "size": self.size,
            "lift_orders": self.lift_orders,
            "kernel_orders": self.kernel_orders,
            "lift_forms": [str(i.form()) for i in self.lift_ideals],
            "kernel_forms": [str(i.form()) for i in self.kernel_ideals],
            "units": {
                "gens": self.units.gens,
                "orders": self.units.orders,
            },
        }


def hgroup(order, heegner, prime=None, bound=DEFAULT_DISC_BOUND,
           cpu_count=1):
    """
    Build H(c, N).

    Parameters
    ----------
    order : :class:`QuadOrder<padlfun.quadratic.forms.QuadOrder>`
    heegner : :class:`HeegnerIdeal<padlfun.quadratic.ideals.HeegnerIdeal>`
    prime : int, optional
        Representative ideals are also kept prime to this prime.
    bound : int, optional
    cpu_count : int, optional

    Returns
    -------
    :class:`HGroup<padlfun.quadratic.hgroup.HGroup>`

    Raises
    ------
    PreconditionError
        Without a Heegner ideal, or when gcd(c, N) > 1.
    """
    if not heegner:
        raise PreconditionError(
            "No Heegner ideal: {}".format(getattr(heegner, "reason", heegner))
        )

    if heegner.disc_K != order.disc_K:
        raise PreconditionError("Heegner ideal of a different field")

    if math.gcd(order.conductor, heegner.level) != 1:
        raise PreconditionError(
            "gcd(c, N) = gcd({}, {}) is not 1".format(
                order.conductor, heegner.level,
            )
        )

    group = HGroup(order, heegner, prime=prime, bound=bound,
                   cpu_count=cpu_count)
    assert group.size == group.class_number * utils.euler_phi(heegner.level)

    return group
