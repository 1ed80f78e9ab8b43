"""
Elements and lattice ideals of imaginary quadratic orders, Heegner ideals
and the residue ring O_K / N.

Elements of K are written (a + b sqrt(D_K)) / 2 with rational a, b; an
ideal of O_c is stored as the Hermite normal form of its Z-basis in those
half-integral coordinates.
"""

from __future__ import absolute_import, division

from fractions import Fraction
import logging
import math

import sympy

from padlfun.characters.dirichlet import unit_group
from padlfun.errors import BoundError, DomainError, PreconditionError
from padlfun.padic.local import QuadPadic
from padlfun import utils
from padlfun.quadratic.forms import Form

LOGGER = logging.getLogger("padlfun.ideals")

SEARCH_BOUND = 64


class QuadElement(object):
    """
    (a + b sqrt(disc)) / 2 in K = Q(sqrt(disc)).

    Under the fixed complex embedding sqrt(disc) -> i sqrt(|disc|).

    Attributes
    ----------
    disc : int
        Fundamental discriminant of K.
    a : Fraction
    b : Fraction
    """
    __slots__ = ("disc", "a", "b")

    def __init__(self, disc, a, b=0):
        self.disc = disc
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def rational(cls, disc, x):
        return cls(disc, 2 * Fraction(x), 0)

    @classmethod
    def omega(cls, disc):
        """
        (D + sqrt(D)) / 2, so that O_K = Z + Z omega.
        """
        return cls(disc, disc, 1)

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.disc != self.disc:
                raise DomainError(
                    "Elements of Q(sqrt({})) and Q(sqrt({}))".format(
                        self.disc, other.disc,
                    )
                )

            return other

        if isinstance(other, (int, Fraction)):
            return QuadElement.rational(self.disc, other)

        return None

    def __add__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return QuadElement(self.disc, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(self.disc, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return QuadElement(
            self.disc,
            (self.a * other.a + self.disc * self.b * other.b) / 2,
            (self.a * other.b + self.b * other.a) / 2,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return QuadElement(self.disc, self.a, -self.b)

    def norm(self):
        return (self.a * self.a - self.disc * self.b * self.b) / 4

    def trace(self):
        return self.a

    def inverse(self):
        n = self.norm()

        if n == 0:
            raise DomainError("Zero is not invertible")

        c = self.conjugate()

        return QuadElement(self.disc, c.a / n, c.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return self * other.inverse()

    __div__ = __truediv__

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** -n

        result = QuadElement.rational(self.disc, 1)
        base = self

        while n:
            if n & 1:
                result = result * base

            base = base * base
            n >>= 1

        return result

    def is_integral(self):
        """
        Membership in O_K.
        """
        if self.a.denominator != 1 or self.b.denominator != 1:
            return False

        a, b = int(self.a), int(self.b)

        return (a * a - self.disc * b * b) % 4 == 0

    def in_order(self, conductor):
        return self.is_integral() and int(self.b) % conductor == 0

    def is_rational(self):
        return self.b == 0

    def coordinates(self):
        """
        (x, y) with self = x + y omega.
        """
        y = self.b

        return (self.a - y * self.disc) / 2, y

    def to_padic(self, prime, prec=None):
        """
        The image in K (x) Q_p, for a prime not splitting in K.
        """
        kwargs = {} if prec is None else {"prec": prec}

        return QuadPadic(prime, self.disc, self.a / 2, self.b / 2, **kwargs)

    def unit_angle(self):
        """
        theta with self = exp(2 pi i theta) when self is a root of unity,
        else None.
        """
        for angle, unit in units(self.disc):
            if unit == self:
                return angle

        return None

    def __eq__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return (self.a, self.b) == (other.a, other.b)

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    def __hash__(self):
        return hash((self.disc, self.a, self.b))

    def to_dict(self):
        return {"a": str(self.a / 2), "b": str(self.b / 2), "disc": self.disc}

    def __str__(self):
        return "({}) + ({})*sqrt({})".format(self.a / 2, self.b / 2, self.disc)

    __repr__ = __str__


def units(disc, conductor=1):
    """
    The roots of unity of O_c, with their angles.

    Returns
    -------
    list of (Fraction, :class:`QuadElement<padlfun.quadratic.ideals.QuadElement>`)
    """
    if conductor == 1 and disc == -4:
        w, gen = 4, QuadElement(disc, 0, 1)
    elif conductor == 1 and disc == -3:
        w, gen = 6, QuadElement(disc, 1, 1)
    else:
        w, gen = 2, QuadElement.rational(disc, -1)

    out, x = [], QuadElement.rational(disc, 1)

    for j in range(w):
        out.append((Fraction(j, w), x))
        x = x * gen

    return out


def _hnf(vectors):
    """
    Hermite normal form ((a1, 0), (a2, b2)) of a full rank lattice in Z^2,
    with a1 > 0, b2 > 0 and 0 <= a2 < a1.
    """
    rows = [list(v) for v in vectors if tuple(v) != (0, 0)]

    while sum(1 for r in rows if r[1] != 0) > 1:
        i = min(
            (i for i, r in enumerate(rows) if r[1] != 0),
            key=lambda i: abs(rows[i][1]),
        )
        pivot = rows[i]

        for j, r in enumerate(rows):
            if j != i and r[1] != 0:
                q = r[1] // pivot[1]
                rows[j] = [r[0] - q * pivot[0], r[1] - q * pivot[1]]

        rows = [r for r in rows if r != [0, 0]]

    pivots = [r for r in rows if r[1] != 0]

    if len(pivots) != 1:
        raise DomainError("Lattice of rank < 2: {}".format(vectors))

    a2, b2 = pivots[0]

    if b2 < 0:
        a2, b2 = -a2, -b2

    a1 = 0

    for r in rows:
        if r[1] == 0:
            a1 = math.gcd(a1, r[0])

    if a1 == 0:
        raise DomainError("Lattice of rank < 2: {}".format(vectors))

    return (a1, 0), (a2 % a1, b2)


class Ideal(object):
    """
    A nonzero fractional-free lattice ideal of the order O_c.

    Attributes
    ----------
    disc_K : int
    conductor : int
    basis : tuple of tuple of int
        ((a1, 0), (a2, b2)) in half-integral coordinates.
    """
    __slots__ = ("disc_K", "conductor", "basis")

    def __init__(self, disc_K, conductor, vectors):
        self.disc_K = disc_K
        self.conductor = conductor
        self.basis = _hnf(vectors)

    @classmethod
    def from_form(cls, form, disc_K):
        """
        a Z + ((-b + sqrt(c^2 D_K)) / 2) Z for a primitive form (a, b, c')
        of discriminant c^2 D_K.
        """
        f2, rem = divmod(form.disc, disc_K)
        conductor = math.isqrt(f2)

        if rem or conductor * conductor != f2:
            raise DomainError(
                "{} does not have discriminant c^2 * {}".format(form, disc_K)
            )

        return cls(
            disc_K, conductor,
            [(2 * form.a, 0), (-form.b, conductor)],
        )

    @classmethod
    def principal(cls, alpha, conductor=1):
        """
        alpha O_c, for alpha in O_c.
        """
        if not alpha.in_order(conductor):
            raise DomainError(
                "{} is not in the order of conductor {}".format(
                    alpha, conductor,
                )
            )

        gens = [
            alpha,
            alpha * QuadElement.omega(alpha.disc) * conductor,
        ]

        return cls(
            alpha.disc, conductor,
            [(int(g.a), int(g.b)) for g in gens],
        )

    @classmethod
    def unit(cls, disc_K, conductor=1):
        return cls.principal(QuadElement.rational(disc_K, 1), conductor)

    def elements(self):
        return [QuadElement(self.disc_K, x, y) for x, y in self.basis]

    @property
    def norm(self):
        """
        Index in O_c.
        """
        (a1, _), (_, b2) = self.basis

        return Fraction(a1 * b2, 2 * self.conductor)

    def _product(self, other, conductor):
        vectors = []

        for u in self.elements():
            for v in other.elements():
                w = u * v
                assert w.a.denominator == 1 and w.b.denominator == 1
                vectors.append((int(w.a), int(w.b)))

        return Ideal(self.disc_K, conductor, vectors)

    def __mul__(self, other):
        if other.disc_K != self.disc_K or other.conductor != self.conductor:
            raise DomainError("Ideals of different orders")

        return self._product(other, self.conductor)

    def __pow__(self, n):
        assert n >= 0
        result = Ideal.unit(self.disc_K, self.conductor)
        base = self

        while n:
            if n & 1:
                result = result * base

            base = base * base
            n >>= 1

        return result

    def scale(self, x):
        """
        The ideal x I for a nonzero integer x.
        """
        return Ideal(
            self.disc_K, self.conductor,
            [(x * a, x * b) for a, b in self.basis],
        )

    def conjugate(self):
        return Ideal(
            self.disc_K, self.conductor,
            [(a, -b) for a, b in self.basis],
        )

    def extend(self):
        """
        I O_K.
        """
        return self._product(Ideal.unit(self.disc_K, 1), 1)

    def contract(self, conductor):
        """
        I cap O_c for an ideal of O_K.
        """
        assert self.conductor == 1
        (a1, _), (a2, b2) = self.basis
        g = conductor // math.gcd(conductor, b2)

        return Ideal(
            self.disc_K, conductor, [(a1, 0), (g * a2, g * b2)],
        )

    def contains(self, x):
        (a1, _), (a2, b2) = self.basis

        if x.a.denominator != 1 or x.b.denominator != 1:
            return False

        a, b = int(x.a), int(x.b)

        if b % b2:
            return False

        return (a - (b // b2) * a2) % a1 == 0

    def _norm_form(self, sign):
        u, v = self.elements()
        n = self.norm
        coeffs = (
            u.norm() / n,
            sign * (u * v.conjugate()).trace() / n,
            v.norm() / n,
        )

        if any(c.denominator != 1 for c in coeffs):
            raise DomainError("{} is not an invertible ideal".format(self))

        return Form(*coeffs)

    def form(self):
        """
        The oriented norm form N(x u - y v) / N(I), primitive of
        discriminant c^2 D_K.
        """
        return self._norm_form(-1)

    def is_coprime(self, n):
        return math.gcd(int(self.norm), n) == 1

    def principal_generator(self):
        """
        A generator of the ideal when it is principal, else None.

        The norm form N(x u + y v) / N(I) represents 1 exactly when the
        ideal is principal; the reduction matrix locates the generator.
        """
        f, (( p, _), (r, _)) = self._norm_form(1).reduce_with_matrix()

        if f != Form.identity(f.disc):
            return None

        u, v = self.elements()
        alpha = u * p + v * r
        assert alpha.norm() == self.norm

        return alpha

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented

        return (self.disc_K, self.conductor, self.basis) == \
            (other.disc_K, other.conductor, other.basis)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.disc_K, self.conductor, self.basis))

    def __repr__(self):
        return "Ideal(c={}, basis={})".format(self.conductor, self.basis)


def ideal_in_class(form, disc_K, avoid=1):
    """
    An ideal in the class of form with norm prime to avoid.

    Parameters
    ----------
    form : :class:`Form<padlfun.quadratic.forms.Form>`
    disc_K : int
    avoid : int, optional

    Returns
    -------
    :class:`Ideal<padlfun.quadratic.ideals.Ideal>`
    """
    best = None

    for x in range(0, SEARCH_BOUND):
        for y in range(-SEARCH_BOUND + 1, SEARCH_BOUND):
            if math.gcd(x, y) != 1:
                continue

            n = form.evaluate(x, y)

            if math.gcd(n, avoid) == 1 and (best is None or n < best[0]):
                best = (n, x, y)

    if best is None:
        raise BoundError(
            "No value of {} prime to {} in the search box".format(form, avoid)
        )

    _, x, y = best
    s, t, _ = utils.igcdex(x, y)
    moved = form.transform(((x, -t), (y, s)))

    return Ideal.from_form(moved, disc_K)


class HeegnerIdeal(object):
    """
    An ideal N of O_K with O_K / N cyclic of order N.

    N = N Z + ((-B + sqrt(D_K)) / 2) Z with B^2 = D_K mod 4N, and the
    reduction O_K -> Z/N sends sqrt(D_K) to B.

    Attributes
    ----------
    disc_K : int
    level : int
    root : int
        B.
    ideal : :class:`Ideal<padlfun.quadratic.ideals.Ideal>`
    """
    __slots__ = ("disc_K", "level", "root", "ideal")

    ok = True

    def __init__(self, disc_K, level, root):
        assert (root * root - disc_K) % (4 * level) == 0
        self.disc_K = disc_K
        self.level = level
        self.root = root
        self.ideal = Ideal.from_form(
            Form(level, root, (root * root - disc_K) // (4 * level)), disc_K,
        )

    def __bool__(self):
        return True

    __nonzero__ = __bool__

    def reduce(self, x):
        """
        The image in Z/N of an element of K integral at the primes of N.
        """
        n = self.level

        if n == 1:
            return 0

        value = (x.a + x.b * self.root) / 2

        if math.gcd(value.denominator, n) != 1:
            raise DomainError("{} is not integral at {}".format(x, n))

        return value.numerator * pow(value.denominator, -1, n) % n

    def to_dict(self):
        return {
            "disc_K": self.disc_K,
            "level": self.level,
            "root": self.root,
            "basis": [list(v) for v in self.ideal.basis],
        }

    def __repr__(self):
        return "HeegnerIdeal(D_K={}, N={}, B={})".format(
            self.disc_K, self.level, self.root,
        )


class HeegnerFailure(object):
    """
    Certificate that no Heegner ideal of the requested level exists.
    """
    __slots__ = ("disc_K", "level", "reason")

    ok = False

    def __init__(self, disc_K, level, reason):
        self.disc_K = disc_K
        self.level = level
        self.reason = reason

    def __bool__(self):
        return False

    __nonzero__ = __bool__

    def __repr__(self):
        return "HeegnerFailure(D_K={}, N={}: {})".format(
            self.disc_K, self.level, self.reason,
        )


def heegner_criterion(disc_K, level):
    """
    Every l | N has (D_K | l) != -1, and the ramified part of N is
    squarefree.
    """
    for l, e in sympy.factorint(level).items():
        symbol = utils.kronecker_symbol(disc_K, l)

        if symbol == -1 or (symbol == 0 and e > 1):
            return False

    return True


def heegner_ideal(disc_K, level):
    """
    Find a Heegner ideal of norm N, or certify that none exists.

    Parameters
    ----------
    disc_K : int
    level : int

    Returns
    -------
    :class:`HeegnerIdeal<padlfun.quadratic.ideals.HeegnerIdeal>` or :class:`HeegnerFailure<padlfun.quadratic.ideals.HeegnerFailure>`
    """
    if level < 1:
        raise DomainError("Levels are positive, got {}".format(level))

    for root in range(2 * level):
        if (root - disc_K) % 2 == 0 and \
                (root * root - disc_K) % (4 * level) == 0:
            LOGGER.debug(
                "Heegner ideal of level {} for D_K = {}: B = {}".format(
                    level, disc_K, root,
                )
            )

            return HeegnerIdeal(disc_K, level, root)

    reason = "D_K is not a square modulo 4N"

    for l, e in sorted(sympy.factorint(level).items()):
        symbol = utils.kronecker_symbol(disc_K, l)

        if symbol == -1:
            reason = "{} is inert in K".format(l)
            break

        if symbol == 0 and e > 1:
            reason = "{}^{} divides N with {} ramified".format(l, e, l)
            break

    return HeegnerFailure(disc_K, level, reason)


def residue_units(heegner):
    """
    (O_K / N)^*, which is (Z/N)^* through the Heegner reduction.

    Returns
    -------
    :class:`UnitGroup<padlfun.characters.dirichlet.UnitGroup>`
    """
    if not heegner:
        raise PreconditionError(
            "No Heegner ideal: {}".format(getattr(heegner, "reason", heegner))
        )

    return unit_group(heegner.level)
