"""
Capped relative precision p-adic numbers and the elementary p-adic functions
built on top of them.
"""

from __future__ import absolute_import, division

from fractions import Fraction
import logging
import math
import numbers

from padlfun import regexes
from padlfun.errors import DomainError, PrecisionError, PrimeMismatchError

LOGGER = logging.getLogger("padlfun.numbers")

INF = float("inf")
DEFAULT_PRECISION = 20
"""
Relative precision (in p-adic digits) used when no precision is given.
"""


def val_int(n, prime):
    """
    p-adic valuation of a nonzero integer.

    Parameters
    ----------
    n : int
    prime : int

    Returns
    -------
    int
    """
    assert n != 0
    n = abs(n)
    v = 0

    while n % prime == 0:
        n //= prime
        v += 1

    return v


def val_rational(x, prime):
    """
    p-adic valuation of an integer or Fraction (INF for 0).
    """
    x = Fraction(x)

    if x == 0:
        return INF

    return val_int(x.numerator, prime) - val_int(x.denominator, prime)


def val_factorial(n, prime):
    """
    Legendre's formula for v_p(n!).
    """
    total, power = 0, prime

    while power <= n:
        total += n // power
        power *= prime

    return total


def ilog(n, prime):
    """
    floor(log_p(n)) for n >= 1.
    """
    k = 0

    while n >= prime:
        n //= prime
        k += 1

    return k


def _is_rational(x):
    return isinstance(x, (numbers.Integral, Fraction)) and \
        not isinstance(x, bool)


class PadicNumber(object):
    """
    An element of Q_p stored as prime^valuation * unit, with unit known
    modulo prime^relprec.

    A value with relprec == 0 is a precision-zero element: it is only known
    to be divisible by prime^valuation. The exact zero has valuation INF.

    Attributes
    ----------
    prime : int
    valuation : int or float
        For precision-zero elements this is the absolute precision.
    unit : int
    relprec : int
    """
    __slots__ = ("prime", "valuation", "unit", "relprec")

    def __init__(self, prime, valuation, unit, relprec):
        if relprec <= 0:
            unit, relprec = 0, 0
        else:
            unit %= prime ** relprec

            if unit % prime == 0:
                raise DomainError(
                    "Unit part {} is divisible by {}".format(unit, prime)
                )

        self.prime = prime
        self.valuation = valuation
        self.unit = unit
        self.relprec = relprec

    __hash__ = None

    # Constructors

    @classmethod
    def from_rational(cls, x, prime, prec=DEFAULT_PRECISION):
        """
        Embed an integer or Fraction into Q_p with relative precision prec.

        Examples
        --------
        >>> PadicNumber.from_rational(50, 5).valuation
        2
        >>> PadicNumber.from_rational(Fraction(1, 2), 3, prec=2).unit
        5
        """
        x = Fraction(x)

        if x == 0:
            return cls.zero(prime)

        num, den = x.numerator, x.denominator
        vn, vd = val_int(num, prime), val_int(den, prime)
        num //= prime ** vn
        den //= prime ** vd
        mod = prime ** prec

        return cls(prime, vn - vd, num * pow(den, -1, mod), prec)

    @classmethod
    def zero(cls, prime, absprec=INF):
        """
        The zero element known modulo prime^absprec (exact when INF).
        """
        return cls(prime, absprec, 0, 0)

    @classmethod
    def one(cls, prime, prec=DEFAULT_PRECISION):
        return cls(prime, 0, 1, prec)

    @classmethod
    def from_residue(cls, residue, prime, absprec, shift=0):
        """
        The value prime^shift * residue, where residue is an integer known
        modulo prime^absprec.
        """
        mod = prime ** absprec
        residue %= mod

        if residue == 0:
            return cls.zero(prime, absprec + shift)

        v = val_int(residue, prime)

        return cls(
            prime, v + shift, residue // prime ** v, absprec - v,
        )

    @classmethod
    def from_string(cls, text, prime=None):
        """
        Parse the textual form produced by :func:`str`.

        Parameters
        ----------
        text : str
        prime : int, optional
            Required only to parse the exact zero "0".

        Returns
        -------
        :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
        """
        m = regexes.RE_PADIC.match(text)

        if m:
            p, v, u, p2, absprec = (int(i) for i in m.group(1, 2, 3, 4, 5))

            if p != p2 or (prime is not None and p != prime):
                raise PrimeMismatchError(
                    "Inconsistent primes in \"{}\"".format(text)
                )

            return cls(p, v, u, absprec - v)

        m = regexes.RE_PADIC_ZERO.match(text)

        if m:
            if m.group(1) is None:
                if prime is None:
                    raise DomainError(
                        "Exact zero needs an explicit prime: \"{}\""
                        .format(text)
                    )

                return cls.zero(prime)

            p, absprec = int(m.group(2)), int(m.group(3))

            if prime is not None and p != prime:
                raise PrimeMismatchError(
                    "Expected prime {} in \"{}\"".format(prime, text)
                )

            return cls.zero(p, absprec)

        raise DomainError("Unable to parse p-adic number: \"{}\"".format(text))

    # Basic properties

    @property
    def absprec(self):
        return self.valuation + self.relprec

    def is_zero(self):
        """
        True for the precision-zero elements (including the exact zero).
        """
        return self.relprec == 0

    def is_exact_zero(self):
        return self.relprec == 0 and self.valuation == INF

    def is_unit(self):
        return not self.is_zero() and self.valuation == 0

    def lift(self):
        """
        Rational representative prime^valuation * unit.

        Returns
        -------
        Fraction
        """
        if self.is_zero():
            return Fraction(0)

        return Fraction(self.prime) ** self.valuation * self.unit

    def residue(self, absprec=None):
        """
        Integer representative modulo prime^absprec.

        Parameters
        ----------
        absprec : int, optional
            Defaults to the absolute precision of the value.

        Returns
        -------
        int
        """
        if absprec is None:
            absprec = self.absprec

        if absprec > self.absprec:
            raise PrecisionError(
                "{} is only known modulo {}^{}".format(
                    self, self.prime, self.absprec,
                )
            )

        if self.is_zero() or self.valuation >= absprec:
            return 0

        if self.valuation < 0:
            raise DomainError("{} is not integral".format(self))

        mod = self.prime ** absprec

        return (self.prime ** self.valuation * self.unit) % mod

    def reduce(self, absprec):
        """
        Forget digits beyond prime^absprec.
        """
        if absprec >= self.absprec:
            return self

        if self.is_zero() or self.valuation >= absprec:
            return PadicNumber.zero(self.prime, absprec)

        return PadicNumber(
            self.prime, self.valuation, self.unit, absprec - self.valuation,
        )

    def one_like(self):
        """
        The element 1 carried at a precision compatible with self.
        """
        return PadicNumber.one(self.prime, max(self.relprec, 1))

    def unit_part(self):
        """
        The unit u with self = prime^valuation * u.
        """
        if self.is_zero():
            raise PrecisionError("Precision-zero value has no unit part")

        return PadicNumber(self.prime, 0, self.unit, self.relprec)

    # Arithmetic

    def _const(self, x):
        if x == 0:
            return PadicNumber.zero(self.prime)

        prec = max(self.relprec, 1)

        if self.absprec != INF:
            prec = max(prec, self.absprec - val_rational(x, self.prime))

        return PadicNumber.from_rational(x, self.prime, prec)

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.prime != self.prime:
                raise PrimeMismatchError(
                    "Cannot combine {}-adic and {}-adic values".format(
                        self.prime, other.prime,
                    )
                )

            return other

        if _is_rational(other):
            return self._const(other)

        return None

    def __add__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        if self.is_exact_zero():
            return other

        if other.is_exact_zero():
            return self

        p = self.prime
        absprec = min(self.absprec, other.absprec)
        terms = [i for i in (self, other) if not i.is_zero()]

        if not terms:
            return PadicNumber.zero(p, absprec)

        v = min(i.valuation for i in terms)

        if v >= absprec:
            return PadicNumber.zero(p, absprec)

        total = sum(i.unit * p ** (i.valuation - v) for i in terms)

        return PadicNumber.from_residue(total, p, absprec - v, shift=v)

    __radd__ = __add__

    def __neg__(self):
        return PadicNumber(
            self.prime, self.valuation, -self.unit, self.relprec,
        )

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        if self.is_exact_zero() or other.is_exact_zero():
            return PadicNumber.zero(self.prime)

        if self.is_zero() or other.is_zero():
            return PadicNumber.zero(
                self.prime, self.valuation + other.valuation,
            )

        relprec = min(self.relprec, other.relprec)

        return PadicNumber(
            self.prime,
            self.valuation + other.valuation,
            self.unit * other.unit,
            relprec,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        if other.is_zero():
            raise PrecisionError("Division by a precision-zero element")

        if self.is_exact_zero():
            return self

        if self.is_zero():
            return PadicNumber.zero(
                self.prime, self.valuation - other.valuation,
            )

        relprec = min(self.relprec, other.relprec)
        mod = self.prime ** relprec

        return PadicNumber(
            self.prime,
            self.valuation - other.valuation,
            self.unit * pow(other.unit, -1, mod),
            relprec,
        )

    __div__ = __truediv__

    def __rtruediv__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return other / self

    __rdiv__ = __rtruediv__

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            return NotImplemented

        if n < 0:
            return PadicNumber.one(self.prime, max(self.relprec, 1)) / \
                self ** -n

        if n == 0:
            return PadicNumber.one(
                self.prime, self.relprec or DEFAULT_PRECISION,
            )

        if self.is_zero():
            return PadicNumber.zero(self.prime, self.valuation * n)

        return PadicNumber(
            self.prime,
            self.valuation * n,
            pow(self.unit, n, self.prime ** self.relprec),
            self.relprec,
        )

    def __eq__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return (self - other).is_zero()

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    def __str__(self):
        p = self.prime

        if self.is_exact_zero():
            return "0"

        if self.is_zero():
            return "0 mod {}^{}".format(p, self.valuation)

        return "{}^{} * {} mod {}^{}".format(
            p, self.valuation, self.unit, p, self.absprec,
        )

    def __repr__(self):
        return "PadicNumber({})".format(self)


def padic(x, prime, prec=DEFAULT_PRECISION):
    """
    Coerce an integer, Fraction or PadicNumber into a PadicNumber.
    """
    if isinstance(x, PadicNumber):
        if x.prime != prime:
            raise PrimeMismatchError(
                "Expected a {}-adic value, got {}".format(prime, x)
            )

        return x

    return PadicNumber.from_rational(x, prime, prec)


def valuation(x, prime=None):
    """
    Valuation of a PadicNumber or a rational number (INF for zero).
    """
    if isinstance(x, PadicNumber):
        return INF if x.is_zero() else x.valuation

    if hasattr(x, "valuation") and not _is_rational(x):
        return x.valuation()

    return val_rational(x, prime)


def log_p(x):
    """
    Iwasawa p-adic logarithm (log_p(p) = 0).

    For a unit x the value is computed as log(x^(p-1)) / (p-1), which equals
    log of the principal unit part of x. Nonunits are reduced to their unit
    part first.

    Parameters
    ----------
    x : :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`

    Returns
    -------
    :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`

    Examples
    --------
    >>> log_p(PadicNumber.from_rational(6, 5, 3)).residue()
    55
    """
    if x.is_zero():
        raise PrecisionError("log_p of a precision-zero element")

    p, absprec = x.prime, x.relprec
    mod = p ** absprec
    z = (pow(x.unit, p - 1, mod) - 1) % mod

    if z == 0:
        return PadicNumber.zero(p, absprec)

    t = val_int(z, p)
    nmax = 1

    while nmax * t - ilog(nmax, p) < absprec:
        nmax += 1

    extra = ilog(nmax, p)
    wide = p ** (absprec + extra)
    total, power = 0, 1

    for n in range(1, nmax + 1):
        power = power * z % wide
        vn = val_int(n, p)
        term = (power // p ** vn) * pow(n // p ** vn, -1, mod)
        total += term if n % 2 else -term

    total = total * pow(p - 1, -1, mod)

    return PadicNumber.from_residue(total, p, absprec)


def exp_p(x):
    """
    p-adic exponential, defined for valuation(x) >= 1 (p odd).

    Parameters
    ----------
    x : :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`

    Returns
    -------
    :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`

    Examples
    --------
    >>> exp_p(PadicNumber.from_rational(5, 5, 2)).residue()
    81
    """
    p = x.prime

    if x.is_exact_zero():
        return PadicNumber.one(p)

    if x.valuation < 1:
        raise DomainError(
            "exp_p does not converge at {} (valuation {} < 1)".format(
                x, x.valuation,
            )
        )

    absprec = x.absprec
    mod = p ** absprec

    if x.is_zero():
        return PadicNumber.one(p, absprec)

    t = x.valuation
    nmax = 1

    while nmax * t - (nmax - 1) // (p - 1) < absprec:
        nmax += 1

    wide = p ** (absprec + val_factorial(nmax, p))
    xi = x.residue()
    total, power, fact = 1, 1, 1

    for n in range(1, nmax + 1):
        power = power * xi % wide
        fact *= n
        vf = val_factorial(n, p)
        term = (power // p ** vf) * pow(fact // p ** vf, -1, mod)
        total += term

    return PadicNumber.from_residue(total, p, absprec)


def teichmuller(x):
    """
    The (p-1)-st root of unity congruent to the unit x modulo p.

    Examples
    --------
    >>> teichmuller(PadicNumber.from_rational(2, 5, 2)).residue()
    7
    """
    if not x.is_unit():
        raise DomainError("Teichmuller lift of a nonunit {}".format(x))

    p, relprec = x.prime, x.relprec
    mod = p ** relprec
    y, prev = x.unit, None

    while y != prev:
        prev, y = y, pow(y, p, mod)

    return PadicNumber(p, 0, y, relprec)


def principal_unit(x):
    """
    <x> = x / omega(x) for a unit x.
    """
    return x / teichmuller(x)


def binom_padic(s, j, prime=None, prec=DEFAULT_PRECISION):
    """
    Generalized binomial coefficient s (s-1) ... (s-j+1) / j!.

    Integer and Fraction arguments are computed exactly and returned as
    Fractions; p-adic arguments lose v_p(j!) digits of absolute precision.

    Parameters
    ----------
    s : int, Fraction or :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    j : int

    Returns
    -------
    Fraction or :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    """
    assert j >= 0

    if _is_rational(s):
        num = Fraction(1)

        for i in range(j):
            num *= s - i

        result = num / math.factorial(j)

        if prime is not None:
            return padic(result, prime, prec)

        return result

    result = s.one_like()

    for i in range(j):
        result = result * (s - i)

    return result / math.factorial(j)


def pochhammer_shift(a, j):
    """
    The product (a-1)(a-2)...(a-j); the empty product is 1.

    Parameters
    ----------
    a : int, Fraction or :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    j : int

    Returns
    -------
    same kind as a
    """
    assert j >= 0

    if _is_rational(a):
        result = Fraction(1)
    else:
        result = a.one_like()

    for i in range(j):
        result = result * (a - 1 - i)

    return result


def binom_valuation_bound(s_val, j, prime):
    """
    Lower bound for v_p(binom(s, j)) given v_p(s) (s a p-adic integer).
    """
    if j == 0:
        return 0

    if s_val == INF:
        return INF

    return max(0, s_val - val_int(j, prime))
