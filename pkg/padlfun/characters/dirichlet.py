"""
Dirichlet characters, generalized Bernoulli numbers, special values
L(1-k, chi) and Gauss sums.

Character values are roots of unity recorded exactly as exponents in Q/Z,
so chi(a) = exp(2 pi i * exponent(a)).
"""

from __future__ import absolute_import, division

from fractions import Fraction
from functools import lru_cache
import itertools
import logging
import math

import sympy
from sympy.ntheory.modular import crt

from padlfun import regexes, utils
from padlfun.errors import DomainError, PreconditionError
from padlfun.padic import numbers
from padlfun.padic.cyclo import Cyclotomic

LOGGER = logging.getLogger("padlfun.dirichlet")


class UnitGroup(object):
    """
    The group (Z/N)^* with a fixed basis built from the Chinese remainder
    decomposition.

    Attributes
    ----------
    modulus : int
    gens : list of int
    orders : list of int
    """

    def __init__(self, modulus):
        assert modulus >= 1
        self.modulus = modulus
        self.gens, self.orders, self._parts = [], [], []

        for p, e in sorted(sympy.factorint(modulus).items()):
            q = p ** e
            # Generator lifted to be 1 away from the q-part.
            rest = modulus // q

            def lift(g, q=q, rest=rest):
                if rest == 1:
                    return g % q

                return int(crt([q, rest], [g, 1])[0])

            if p == 2:
                if e == 1:
                    continue
                elif e == 2:
                    self._parts.append((2, q, [3], [2]))
                    self.gens.append(lift(3))
                    self.orders.append(2)
                else:
                    self._parts.append((2, q, [q - 1, 5], [2, q // 4]))
                    self.gens += [lift(q - 1), lift(5)]
                    self.orders += [2, q // 4]
            else:
                g = int(sympy.primitive_root(q))
                order = q // p * (p - 1)
                self._parts.append((p, q, [g], [order]))
                self.gens.append(lift(g))
                self.orders.append(order)

    @property
    def size(self):
        return int(sympy.totient(self.modulus))

    @property
    def exponent(self):
        return int(sympy.ilcm(*self.orders)) if self.orders else 1

    def dlog(self, a):
        """
        Exponent vector of a unit a with respect to the basis.

        Parameters
        ----------
        a : int

        Returns
        -------
        list of int
        """
        if math.gcd(a, self.modulus) != 1:
            raise DomainError(
                "{} is not a unit modulo {}".format(a, self.modulus)
            )

        out = []

        for p, q, gens, orders in self._parts:
            r = a % q

            if p == 2 and len(gens) == 1:
                out.append(0 if r == 1 else 1)
            elif p == 2:
                sign = 0 if r % 4 == 1 else 1
                r = r if sign == 0 else (-r) % q
                out += [sign, int(sympy.discrete_log(q, r, 5)) % orders[1]]
            else:
                out.append(int(sympy.discrete_log(q, r, gens[0])))

        return out

    def elements(self):
        return [
            a for a in range(1, self.modulus + 1)
            if math.gcd(a, self.modulus) == 1
        ] if self.modulus > 1 else [0]


@lru_cache(maxsize=None)
def unit_group(modulus):
    return UnitGroup(modulus)


class DirichletChar(object):
    """
    A Dirichlet character modulo N, given by the exponents (in Q/Z) of its
    values on the basis of :class:`UnitGroup`.

    Attributes
    ----------
    modulus : int
    images : tuple of Fraction
    """
    __slots__ = ("modulus", "images", "_conductor")

    def __init__(self, modulus, images):
        group = unit_group(modulus)
        images = tuple(Fraction(i) % 1 for i in images)

        if len(images) != len(group.gens):
            raise DomainError(
                "Expected {} generator images modulo {}, got {}".format(
                    len(group.gens), modulus, len(images),
                )
            )

        for image, order in zip(images, group.orders):
            if (image * order).denominator != 1:
                raise DomainError(
                    "Image {} is not an {}-th root of unity".format(
                        image, order,
                    )
                )

        self.modulus = modulus
        self.images = images
        self._conductor = None

    @classmethod
    def trivial(cls, modulus=1):
        return cls(modulus, [0] * len(unit_group(modulus).gens))

    @classmethod
    def from_values(cls, modulus, func):
        """
        The character whose value exponent at a unit a is func(a).
        """
        group = unit_group(modulus)

        return cls(modulus, [func(g) for g in group.gens])

    @property
    def group(self):
        return unit_group(self.modulus)

    def exponent(self, a):
        """
        Exponent of chi(a) in Q/Z, or None when gcd(a, N) > 1.
        """
        if math.gcd(a, self.modulus) != 1:
            return None

        return sum(
            (e * x for e, x in zip(self.group.dlog(a), self.images)),
            Fraction(0),
        ) % 1

    def value(self, a):
        """
        chi(a) as an exact cyclotomic number (0 off the units).
        """
        e = self.exponent(a)

        if e is None:
            return Cyclotomic.rational(0)

        return Cyclotomic.root_of_unity(e)

    def value_padic(self, a, prime, prec=numbers.DEFAULT_PRECISION,
                    generator=None):
        """
        chi(a) pushed into Q_p (order dividing p-1) or Q_p(zeta).
        """
        value = self.value(a).to_padic(prime, prec)

        if (prime - 1) % self.order == 0:
            return value.embed(generator=generator)

        return value

    @property
    def order(self):
        return int(sympy.ilcm(1, *(i.denominator for i in self.images)))

    @property
    def parity(self):
        """
        0 when chi(-1) = 1, 1 when chi(-1) = -1.
        """
        return 0 if self.exponent(self.modulus - 1) == 0 else 1

    def is_trivial(self):
        return all(i == 0 for i in self.images)

    def is_even(self):
        return self.parity == 0

    @property
    def conductor(self):
        if self._conductor is None:
            self._conductor = _conductor(self)

        return self._conductor

    def is_primitive(self):
        return self.conductor == self.modulus

    def __mul__(self, other):
        if self.modulus != other.modulus:
            m = int(sympy.ilcm(self.modulus, other.modulus))

            return self.extend(m) * other.extend(m)

        return DirichletChar(
            self.modulus, [a + b for a, b in zip(self.images, other.images)],
        )

    def __pow__(self, n):
        return DirichletChar(self.modulus, [a * n for a in self.images])

    def conjugate(self):
        return self ** -1

    def extend(self, modulus):
        """
        The character modulo a multiple of N induced by this one.
        """
        assert modulus % self.modulus == 0

        return DirichletChar.from_values(
            modulus, lambda g: self.exponent(g % self.modulus),
        )

    def primitive(self):
        """
        The primitive character modulo the conductor inducing this one.
        """
        f = self.conductor

        def lift(g):
            # A unit modulo N congruent to g modulo f.
            for t in range(self.modulus):
                a = g + f * t

                if math.gcd(a, self.modulus) == 1:
                    return self.exponent(a % self.modulus)

            raise AssertionError("No unit lift of {}".format(g))

        return DirichletChar.from_values(f, lift)

    def __eq__(self, other):
        if not isinstance(other, DirichletChar):
            return NotImplemented

        return self.modulus == other.modulus and self.images == other.images

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.modulus, self.images))

    def to_dict(self):
        return {
            "modulus": self.modulus,
            "images": [str(i) for i in self.images],
        }

    @classmethod
    def from_dict(cls, data):
        images = []

        for text in data["images"]:
            m = regexes.RE_FRACTION.match(text)

            if not m:
                raise DomainError("Bad character image \"{}\"".format(text))

            images.append(Fraction(text))

        return cls(int(data["modulus"]), images)

    def __repr__(self):
        return "DirichletChar({}, [{}])".format(
            self.modulus, ", ".join(str(i) for i in self.images),
        )


def _conductor(chi):
    n = chi.modulus

    if chi.is_trivial():
        return 1

    for f in sorted(int(d) for d in sympy.divisors(n)):
        if all(
            chi.exponent(a) == 0
            for a in range(1, n, f)
            if math.gcd(a, n) == 1
        ):
            return f

    return n


def char_table(modulus):
    """
    All phi(N) characters modulo N, in a fixed order.

    Parameters
    ----------
    modulus : int

    Returns
    -------
    list of :class:`DirichletChar<padlfun.characters.dirichlet.DirichletChar>`
    """
    group = unit_group(modulus)

    return [
        DirichletChar(
            modulus, [Fraction(e, o) for e, o in zip(exps, group.orders)],
        )
        for exps in itertools.product(*(range(o) for o in group.orders))
    ]


def teichmuller_char(prime, power=1, generator=None):
    """
    omega^power as a character modulo p, compatible with the embedding fixed
    by generator.
    """
    if generator is None:
        generator = int(sympy.primitive_root(prime))

    g = unit_group(prime).gens[0]
    k = int(sympy.discrete_log(prime, g, generator))

    return DirichletChar(prime, [Fraction(power * k, prime - 1)])


def kronecker_char(disc):
    """
    The quadratic character n -> (disc | n) modulo |disc|.
    """
    n = abs(disc)

    def exponent(a):
        return Fraction(0 if utils.kronecker_symbol(disc, a) == 1 else 1, 2)

    return DirichletChar.from_values(n, exponent)


@lru_cache(maxsize=None)
def bernoulli_number(k):
    """
    B_k with the convention B_1 = -1/2.
    """
    if k == 1:
        return Fraction(-1, 2)

    b = sympy.bernoulli(k)

    return Fraction(int(b.p), int(b.q))


def bernoulli_poly(k, x):
    """
    The Bernoulli polynomial B_k evaluated at a rational x.
    """
    x = Fraction(x)

    return sum(
        (math.comb(k, j) * bernoulli_number(j) * x ** (k - j)
         for j in range(k + 1)),
        Fraction(0),
    )


def gen_bernoulli(chi, k):
    """
    B_{k, chi} for the primitive character attached to chi,
    f^(k-1) sum_{a=1}^{f} chi(a) B_k(a/f).

    An imprimitive chi of modulus N gives the value of its primitive
    character of conductor f: no Euler factors (1 - chi_prim(l) l^(k-1))
    are applied at the primes l dividing N but not f.

    Returns
    -------
    :class:`Cyclotomic<padlfun.padic.cyclo.Cyclotomic>`
    """
    prim = chi.primitive()
    f = prim.modulus
    total = Cyclotomic.rational(0)

    for a in range(1, f + 1):
        e = prim.exponent(a % f)

        if e is None:
            continue

        total = total + Cyclotomic.root_of_unity(e) * bernoulli_poly(
            k, Fraction(a, f),
        )

    return total * Fraction(f) ** (k - 1)


def gen_bernoulli_L(chi, k):
    """
    L(1-k, chi_prim) = -B_{k, chi} / k, with chi_prim the primitive
    character attached to chi.

    Characters whose parity differs from that of k give 0, except the
    trivial character at k = 1 (zeta(0) = -1/2).

    Parameters
    ----------
    chi : :class:`DirichletChar<padlfun.characters.dirichlet.DirichletChar>`
    k : int

    Returns
    -------
    :class:`Cyclotomic<padlfun.padic.cyclo.Cyclotomic>`

    Examples
    --------
    >>> gen_bernoulli_L(DirichletChar.trivial(), 4) == Fraction(1, 120)
    True
    """
    assert k >= 1

    if chi.parity != k % 2 and not (k == 1 and chi.conductor == 1):
        return Cyclotomic.rational(0)

    return gen_bernoulli(chi, k) * Fraction(-1, k)


def gauss_sum(chi):
    """
    s(chi) = sum_{a in (Z/N)^*} chi(a) zeta_N^{-a} for a primitive chi.

    Returns
    -------
    :class:`Cyclotomic<padlfun.padic.cyclo.Cyclotomic>`
    """
    n = chi.modulus

    if not chi.is_primitive():
        raise PreconditionError(
            "Gauss sums need a primitive character; {} has conductor {}"
            .format(chi, chi.conductor)
        )

    total = Cyclotomic.rational(0)

    for a in chi.group.elements():
        total = total + Cyclotomic.root_of_unity(
            chi.exponent(a % n) - Fraction(a, n),
        )

    return total
