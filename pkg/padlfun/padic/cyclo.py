"""
Elements of cyclotomic fields Q(zeta_M), exactly and with p-adic
coefficients.

Both classes store coefficients in the power basis 1, zeta, ...,
zeta^(phi(M)-1) and reduce modulo the full cyclotomic polynomial, so no
embedding has to be chosen until :meth:`CycloPadic.embed` is called.
"""

from __future__ import absolute_import, division

from fractions import Fraction
from functools import lru_cache
import logging

import sympy

from padlfun.errors import DomainError, PrimeMismatchError
from padlfun.padic import numbers
from padlfun.padic.numbers import PadicNumber

LOGGER = logging.getLogger("padlfun.cyclo")


@lru_cache(maxsize=None)
def cyclotomic_coeffs(modulus):
    """
    Coefficients of the modulus-th cyclotomic polynomial, low degree first.

    Parameters
    ----------
    modulus : int

    Returns
    -------
    tuple of int
    """
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(modulus, x), x)

    return tuple(int(i) for i in reversed(poly.all_coeffs()))


def lcm(a, b):
    return int(sympy.ilcm(a, b))


def _exact_zero(x):
    if isinstance(x, PadicNumber):
        return x.is_exact_zero()

    return x == 0


class _CycloElement(object):
    """
    Shared arithmetic for residues modulo a cyclotomic polynomial.

    Subclasses provide the coefficient ring through `_zero` and `_coerce`.
    """
    __slots__ = ("modulus", "coeffs")

    __hash__ = None

    def __init__(self, modulus, coeffs):
        self.modulus = modulus
        self.coeffs = self._reduce(modulus, list(coeffs))

    # Hooks

    def _zero(self):
        raise NotImplementedError

    def _coerce_scalar(self, x):
        raise NotImplementedError

    def _new(self, modulus, coeffs):
        raise NotImplementedError

    # Helpers

    def _reduce(self, modulus, coeffs):
        phi = cyclotomic_coeffs(modulus)
        degree = len(phi) - 1

        for d in range(len(coeffs) - 1, degree - 1, -1):
            top = coeffs[d]

            if _exact_zero(top):
                continue

            for i in range(degree):
                if phi[i]:
                    coeffs[d - degree + i] = coeffs[d - degree + i] - \
                        top * phi[i]

            coeffs[d] = self._zero()

        coeffs = coeffs[:degree]

        while len(coeffs) < degree:
            coeffs.append(self._zero())

        return coeffs

    def lift(self, modulus):
        """
        Rewrite the element in Q(zeta_modulus), for a multiple modulus of
        the current one.
        """
        if modulus == self.modulus:
            return self

        assert modulus % self.modulus == 0
        step = modulus // self.modulus
        coeffs = [self._zero() for _ in range(modulus)]

        for i, c in enumerate(self.coeffs):
            coeffs[i * step] = c

        return self._new(modulus, coeffs)

    def _align(self, other):
        if isinstance(other, _CycloElement):
            if type(other) is not type(self):
                other = self._promote(other)

                if other is None:
                    return None, None

            m = lcm(self.modulus, other.modulus)

            return self.lift(m), other.lift(m)

        scalar = self._coerce_scalar(other)

        if scalar is None:
            return None, None

        coeffs = [scalar] + [self._zero()] * (len(self.coeffs) - 1)

        return self, self._new(self.modulus, coeffs)

    def _promote(self, other):
        return None

    # Arithmetic

    def __add__(self, other):
        a, b = self._align(other)

        if a is None:
            return NotImplemented

        return self._new(
            a.modulus, [x + y for x, y in zip(a.coeffs, b.coeffs)],
        )

    __radd__ = __add__

    def __neg__(self):
        return self._new(self.modulus, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._align(other)

        if a is None:
            return NotImplemented

        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, _CycloElement):
            scalar = self._coerce_scalar(other)

            if scalar is None:
                return NotImplemented

            return self._new(self.modulus, [x * scalar for x in self.coeffs])

        a, b = self._align(other)

        if a is None:
            return NotImplemented

        out = [self._zero() for _ in range(2 * len(a.coeffs))]

        for i, x in enumerate(a.coeffs):
            if _exact_zero(x):
                continue

            for j, y in enumerate(b.coeffs):
                if _exact_zero(y):
                    continue

                out[i + j] = out[i + j] + x * y

        return self._new(a.modulus, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _CycloElement):
            return NotImplemented

        scalar = self._coerce_scalar(other)

        if scalar is None:
            return NotImplemented

        return self._new(self.modulus, [x / scalar for x in self.coeffs])

    __div__ = __truediv__

    def __pow__(self, n):
        if n < 0:
            raise DomainError("Negative powers of cyclotomic elements")

        result = self._new(
            self.modulus,
            [self._one()] + [self._zero()] * (len(self.coeffs) - 1),
        )
        base = self

        while n:
            if n & 1:
                result = result * base

            base = base * base
            n >>= 1

        return result

    def conjugate(self):
        """
        Image under zeta -> zeta^-1 (complex conjugation).
        """
        m = self.modulus
        coeffs = [self._zero() for _ in range(m)]

        for i, c in enumerate(self.coeffs):
            coeffs[(-i) % m] = coeffs[(-i) % m] + c

        return self._new(m, coeffs)

    def galois(self, a):
        """
        Image under zeta -> zeta^a for a prime to the modulus.
        """
        m = self.modulus
        assert sympy.igcd(a, m) == 1
        coeffs = [self._zero() for _ in range(m)]

        for i, c in enumerate(self.coeffs):
            coeffs[(a * i) % m] = coeffs[(a * i) % m] + c

        return self._new(m, coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def constant(self):
        """
        The coefficient of 1 when the element lies in the base field.
        """
        if not self.is_rational():
            raise DomainError("{} is not in the base field".format(self))

        return self.coeffs[0]

    def __eq__(self, other):
        a, b = self._align(other)

        if a is None:
            return NotImplemented

        return all(x == y for x, y in zip(a.coeffs, b.coeffs))

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    def __repr__(self):
        return "{}({}, [{}])".format(
            type(self).__name__,
            self.modulus,
            ", ".join(str(i) for i in self.coeffs),
        )


class Cyclotomic(_CycloElement):
    """
    Exact element of Q(zeta_M) with Fraction coefficients.

    Attributes
    ----------
    modulus : int
    coeffs : list of Fraction
    """
    __slots__ = ()

    def _zero(self):
        return Fraction(0)

    def _one(self):
        return Fraction(1)

    def _new(self, modulus, coeffs):
        return Cyclotomic(modulus, coeffs)

    def _coerce_scalar(self, x):
        if numbers._is_rational(x):
            return Fraction(x)

        return None

    @classmethod
    def root_of_unity(cls, exponent, modulus=None):
        """
        exp(2 pi i * exponent), for an exponent given as a Fraction mod 1.

        Parameters
        ----------
        exponent : Fraction
        modulus : int, optional
            A multiple of the denominator of exponent; defaults to it.

        Returns
        -------
        :class:`Cyclotomic<padlfun.padic.cyclo.Cyclotomic>`

        Examples
        --------
        >>> Cyclotomic.root_of_unity(Fraction(1, 2)) == -1
        True
        """
        exponent = Fraction(exponent) % 1

        if modulus is None:
            modulus = exponent.denominator

        assert modulus % exponent.denominator == 0
        e = int(exponent * modulus)
        coeffs = [Fraction(0)] * modulus
        coeffs[e] = Fraction(1)

        return cls(modulus, coeffs)

    @classmethod
    def rational(cls, x):
        return cls(1, [Fraction(x)])

    def to_padic(self, prime, prec=numbers.DEFAULT_PRECISION):
        """
        The same element with coefficients embedded in Q_p.
        """
        return CycloPadic(
            prime, self.modulus,
            [numbers.padic(c, prime, prec) for c in self.coeffs],
        )

    def embed(self, prime, prec=numbers.DEFAULT_PRECISION, generator=None):
        return self.to_padic(prime, prec).embed(generator=generator)

    def __str__(self):
        terms = [
            "{}*z^{}".format(c, i) if i else str(c)
            for i, c in enumerate(self.coeffs)
            if c != 0
        ]

        return "{} (z = zeta_{})".format(
            " + ".join(terms) or "0", self.modulus,
        )


class CycloPadic(_CycloElement):
    """
    Element of Q_p[z] / Phi_M(z) with PadicNumber coefficients.

    Attributes
    ----------
    prime : int
    modulus : int
    coeffs : list of :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    """
    __slots__ = ("prime",)

    def __init__(self, prime, modulus, coeffs):
        self.prime = prime
        coeffs = [numbers.padic(c, prime) for c in coeffs]
        super(CycloPadic, self).__init__(modulus, coeffs)

    def _zero(self):
        return PadicNumber.zero(self.prime)

    def _one(self):
        return PadicNumber.one(self.prime)

    def _new(self, modulus, coeffs):
        return CycloPadic(self.prime, modulus, coeffs)

    def _coerce_scalar(self, x):
        if isinstance(x, PadicNumber):
            if x.prime != self.prime:
                raise PrimeMismatchError(
                    "Cannot combine {}-adic and {}-adic values".format(
                        self.prime, x.prime,
                    )
                )

            return x

        if numbers._is_rational(x):
            return Fraction(x)

        return None

    def _promote(self, other):
        if isinstance(other, Cyclotomic):
            return other.to_padic(self.prime)

        return super(CycloPadic, self)._promote(other)

    @classmethod
    def from_padic(cls, x):
        return cls(x.prime, 1, [x])

    def valuation(self):
        """
        Minimum valuation of the coefficients (INF for zero).
        """
        return min(numbers.valuation(c) for c in self.coeffs)

    def is_zero(self):
        return all(
            numbers.valuation(c) == numbers.INF or
            (isinstance(c, PadicNumber) and c.is_zero())
            for c in self.coeffs
        )

    def absprec(self):
        return min(
            c.absprec if isinstance(c, PadicNumber) else numbers.INF
            for c in self.coeffs
        )

    def reduce(self, absprec):
        return self._new(
            self.modulus,
            [
                numbers.padic(c, self.prime).reduce(absprec)
                for c in self.coeffs
            ],
        )

    def embed(self, generator=None):
        """
        Map into Q_p by zeta_M -> omega(g)^((p-1)/M), for M dividing p-1.

        Parameters
        ----------
        generator : int, optional
            Primitive root modulo p fixing the embedding; defaults to the
            least primitive root.

        Returns
        -------
        :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
        """
        p = self.prime

        if (p - 1) % self.modulus:
            raise DomainError(
                "Q_{}(zeta_{}) does not embed in Q_{}".format(
                    p, self.modulus, p,
                )
            )

        if generator is None:
            generator = int(sympy.primitive_root(p))

        prec = min(
            [c.relprec for c in self.coeffs if isinstance(c, PadicNumber) and
             not c.is_zero()] or [numbers.DEFAULT_PRECISION]
        )
        zeta = numbers.teichmuller(
            PadicNumber.from_rational(generator, p, prec)
        ) ** ((p - 1) // self.modulus)

        total, power = PadicNumber.zero(p), PadicNumber.one(p, prec)

        for c in self.coeffs:
            total = total + power * c
            power = power * zeta

        return total

    def __str__(self):
        return "[{}] (z = zeta_{})".format(
            ", ".join(str(c) for c in self.coeffs), self.modulus,
        )
