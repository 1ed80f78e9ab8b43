"""
The local algebra K (x) Q_p of an imaginary quadratic field K at a prime p
that does not split, presented with the basis 1, sqrt(D_K).
"""

from __future__ import absolute_import, division

from fractions import Fraction
import logging

from padlfun.errors import DomainError, PrecisionError, PrimeMismatchError
from padlfun.padic import numbers
from padlfun.padic.numbers import INF, PadicNumber

LOGGER = logging.getLogger("padlfun.local")


class QuadPadic(object):
    """
    a + b sqrt(disc) with a, b in Q_p.

    Attributes
    ----------
    prime : int
    disc : int
        A fundamental discriminant, not a square modulo prime.
    a : :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    b : :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    """
    __slots__ = ("prime", "disc", "a", "b")

    __hash__ = None

    def __init__(self, prime, disc, a, b=0, prec=numbers.DEFAULT_PRECISION):
        self.prime = prime
        self.disc = disc
        self.a = numbers.padic(a, prime, prec)
        self.b = numbers.padic(b, prime, prec)

    @property
    def ramified(self):
        return self.disc % self.prime == 0

    @property
    def residue_size(self):
        """
        Size of the residue field: p when p ramifies, p^2 when p is inert.
        """
        return self.prime if self.ramified else self.prime ** 2

    def _new(self, a, b):
        return QuadPadic(self.prime, self.disc, a, b)

    def _coerce(self, other):
        if isinstance(other, QuadPadic):
            if other.prime != self.prime or other.disc != self.disc:
                raise PrimeMismatchError(
                    "Cannot combine elements of different local algebras"
                )

            return other

        if isinstance(other, PadicNumber) or numbers._is_rational(other):
            return QuadPadic(
                self.prime, self.disc,
                numbers.padic(other, self.prime, self.a.relprec or
                              numbers.DEFAULT_PRECISION),
                PadicNumber.zero(self.prime),
            )

        return None

    def one_like(self):
        prec = max(min(self.a.absprec, self.b.absprec), 1)

        if prec == INF:
            prec = numbers.DEFAULT_PRECISION

        return self._new(PadicNumber.one(self.prime, prec),
                         PadicNumber.zero(self.prime))

    # Arithmetic

    def __add__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return self._new(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PadicNumber) or numbers._is_rational(other):
            return self._new(self.a * other, self.b * other)

        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return self._new(
            self.a * other.a + self.b * other.b * self.disc,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return self._new(self.a, -self.b)

    def norm(self):
        return self.a * self.a - self.b * self.b * self.disc

    def trace(self):
        return self.a * 2

    def __truediv__(self, other):
        if isinstance(other, PadicNumber) or numbers._is_rational(other):
            return self._new(self.a / other, self.b / other)

        other = self._coerce(other)

        if other is None:
            return NotImplemented

        n = other.norm()

        if n.is_zero():
            raise PrecisionError("Division by a non-invertible element")

        c = other.conjugate()

        return self._new(
            (self.a * c.a + self.b * c.b * self.disc) / n,
            (self.a * c.b + self.b * c.a) / n,
        )

    __div__ = __truediv__

    def __rtruediv__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return other / self

    __rdiv__ = __rtruediv__

    def __pow__(self, n):
        if n < 0:
            return self.one_like() / self ** -n

        result, base = self.one_like(), self

        while n:
            if n & 1:
                result = result * base

            base = base * base
            n >>= 1

        return result

    def __eq__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return self.a == other.a and self.b == other.b

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    # Valuations

    def valuation(self):
        """
        Normalized valuation v_p, half-integral when p ramifies.

        Returns
        -------
        Fraction or float
        """
        va = numbers.valuation(self.a)
        vb = numbers.valuation(self.b)

        if vb != INF and self.ramified:
            vb = vb + Fraction(1, 2)

        return min(va, vb)

    def absprec(self):
        shift = Fraction(1, 2) if self.ramified else 0

        return min(self.a.absprec, self.b.absprec + shift)

    def is_unit(self):
        return self.valuation() == 0

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __str__(self):
        return "({}) + ({})*sqrt({})".format(self.a, self.b, self.disc)

    __repr__ = __str__


def quad_teichmuller(x):
    """
    The root of unity of order prime to p congruent to the unit x modulo the
    maximal ideal.

    Parameters
    ----------
    x : :class:`QuadPadic<padlfun.padic.local.QuadPadic>`

    Returns
    -------
    :class:`QuadPadic<padlfun.padic.local.QuadPadic>`
    """
    if not x.is_unit():
        raise DomainError("Teichmuller lift of a nonunit {}".format(x))

    if x.ramified:
        # The residue field is F_p, represented by the rational part.
        return QuadPadic(
            x.prime, x.disc, numbers.teichmuller(x.a.unit_part()),
            PadicNumber.zero(x.prime),
        )

    q = x.residue_size
    y, prev = x, None
    rounds = 0

    while prev is None or y != prev:
        prev, y = y, y ** q
        rounds += 1

        if rounds > 4 * numbers.DEFAULT_PRECISION:
            raise PrecisionError("Teichmuller iteration did not stabilize")

    return y


def quad_log(x):
    """
    log of the principal part <x> = x / omega(x) of a unit x.

    Computed as log(x^(q-1)) / (q-1) with q the residue field size.
    """
    if not x.is_unit():
        raise DomainError("quad_log of a nonunit {}".format(x))

    q = x.residue_size
    z = x ** (q - 1) - 1
    vz = z.valuation()

    if vz == INF:
        return z

    target = x.absprec()
    total = z * 0
    power = z.one_like()
    n = 1

    while True:
        power = power * z
        total = total + (power / n if n % 2 else -(power / n))

        # One digit of slack covers the dips of n*v - log_p(n) at powers of p.
        if (n + 1) * vz - numbers.ilog(n + 1, x.prime) >= target + 1:
            break

        n += 1

    return total / (q - 1)


def quad_exp(x):
    """
    exp(x) for x of valuation > 1/(p-1).
    """
    p = x.prime
    vx = x.valuation()

    if vx == INF:
        return x.one_like()

    if vx <= Fraction(1, p - 1):
        raise DomainError(
            "exp does not converge at {} (valuation {})".format(x, vx)
        )

    target = x.absprec()
    total = x.one_like()
    term = x.one_like()
    n = 1

    while True:
        term = term * x / n
        total = total + term

        if (n + 1) * vx - Fraction(n, p - 1) >= target:
            break

        n += 1

    return total


def quad_power(x, exponent, torsion=None):
    """
    x^exponent for a p-adic exponent, as omega(x)^torsion * exp(exponent *
    log<x>).

    Parameters
    ----------
    x : :class:`QuadPadic<padlfun.padic.local.QuadPadic>`
        A unit.
    exponent : int, Fraction or :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    torsion : int, optional
        Exponent used on the Teichmuller part; defaults to the exponent
        itself when it is an integer.

    Returns
    -------
    :class:`QuadPadic<padlfun.padic.local.QuadPadic>`
    """
    if isinstance(exponent, int) and torsion in (None, exponent):
        return x ** exponent

    if torsion is None:
        raise DomainError(
            "A torsion exponent is needed for the p-adic power {}".format(
                exponent,
            )
        )

    omega = quad_teichmuller(x)

    return omega ** torsion * quad_exp(quad_log(x) * exponent)
