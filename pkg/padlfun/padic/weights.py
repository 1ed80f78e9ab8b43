"""
p-adic weights: continuous characters of Z_p^* of the form
t -> omega(t)^a * exp(u * log<t>).
"""

from __future__ import absolute_import, division

from fractions import Fraction
import logging
import math

from padlfun import regexes
from padlfun.errors import DomainError, PrimeMismatchError
from padlfun.padic import numbers
from padlfun.padic.numbers import PadicNumber
from padlfun.padic.polys import TruncatedPoly

LOGGER = logging.getLogger("padlfun.weights")


class PadicWeight(object):
    """
    A weight t -> omega(t)^torsion * exp(analytic_param * log<t>).

    Attributes
    ----------
    prime : int
    torsion : int
        Residue class modulo prime - 1.
    analytic_param : int, Fraction, PadicNumber or TruncatedPoly
        A TruncatedPoly stands for a one-parameter family of weights.
    classical : int or None
        The integer m when the weight is t -> t^m.
    """
    __slots__ = ("prime", "torsion", "analytic_param", "classical")

    __hash__ = None

    def __init__(self, prime, torsion, analytic_param, classical=None):
        self.prime = prime
        self.torsion = torsion % (prime - 1)
        self.analytic_param = analytic_param
        self.classical = classical

        if classical is not None:
            assert self.torsion == classical % (prime - 1)

    def is_classical(self):
        return self.classical is not None

    def is_family(self):
        return isinstance(self.analytic_param, TruncatedPoly)

    def padic_param(self, prec=numbers.DEFAULT_PRECISION):
        """
        The analytic parameter as a PadicNumber (families are rejected).
        """
        if self.is_family():
            raise DomainError("The weight {} is a family".format(self))

        return numbers.padic(self.analytic_param, self.prime, prec)

    def param_valuation(self):
        if self.is_family():
            return self.analytic_param.valuation(self.prime)

        return numbers.valuation(self.analytic_param, self.prime)

    def __add__(self, other):
        return weight_add(self, other)

    def scale(self, n):
        """
        The weight t -> w(t)^n for an integer n.
        """
        return PadicWeight(
            self.prime,
            self.torsion * n,
            self.analytic_param * n,
            None if self.classical is None else self.classical * n,
        )

    def shift(self, m):
        """
        w + m for a classical integer m.
        """
        return weight_add(self, classical_embed(m, self.prime))

    def specialize(self, value):
        """
        Substitute a value for the family variable.
        """
        if not self.is_family():
            return self

        return PadicWeight(
            self.prime, self.torsion, self.analytic_param.evaluate(value),
        )

    def __eq__(self, other):
        if not isinstance(other, PadicWeight):
            return NotImplemented

        return (
            self.prime == other.prime and
            self.torsion == other.torsion and
            self.classical == other.classical and
            self.analytic_param == other.analytic_param
        )

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    def __str__(self):
        if self.is_classical():
            param = str(self.classical)
        else:
            param = str(self.analytic_param)

        return "({} mod {}; {})".format(self.torsion, self.prime - 1, param)

    def __repr__(self):
        return "PadicWeight{}".format(self)

    @classmethod
    def from_string(cls, text, prime):
        """
        Parse "(a mod p-1; u)"; an integer u marks a classical weight.
        """
        m = regexes.RE_WEIGHT.match(text)

        if not m:
            raise DomainError("Unable to parse weight: \"{}\"".format(text))

        torsion, order, param = int(m.group(1)), int(m.group(2)), m.group(3)

        if order != prime - 1:
            raise PrimeMismatchError(
                "Weight \"{}\" is not a {}-adic weight".format(text, prime)
            )

        if regexes.RE_FRACTION.match(param) and "/" not in param:
            return classical_embed(int(param), prime)

        return cls(prime, torsion, PadicNumber.from_string(param, prime))


def classical_embed(m, prime):
    """
    The weight t -> t^m.

    Parameters
    ----------
    m : int
    prime : int

    Returns
    -------
    :class:`PadicWeight<padlfun.padic.weights.PadicWeight>`
    """
    return PadicWeight(prime, m, m, classical=m)


def family_weight(prime, torsion, center, scale, cap):
    """
    The one-parameter family of weights with analytic parameter
    center + scale * T, T a formal variable truncated beyond T^cap.
    """
    return PadicWeight(
        prime, torsion, TruncatedPoly.variable(cap, shift=center, scale=scale),
    )


def weight_add(w1, w2):
    """
    Pointwise product of characters (additive notation).
    """
    if w1.prime != w2.prime:
        raise PrimeMismatchError(
            "Cannot combine {}-adic and {}-adic weights".format(
                w1.prime, w2.prime,
            )
        )

    classical = None

    if w1.is_classical() and w2.is_classical():
        classical = w1.classical + w2.classical

    param = w1.analytic_param + w2.analytic_param

    return PadicWeight(
        w1.prime, w1.torsion + w2.torsion, param, classical=classical,
    )


def weight_combine(k, nu):
    """
    k + 2 nu, the weight of the interpolated connection applied to a form of
    weight k.

    Examples
    --------
    >>> weight_combine(classical_embed(2, 5), classical_embed(1, 5)).classical
    4
    """
    return weight_add(k, nu.scale(2))


def weight_eval(w, t, prec=numbers.DEFAULT_PRECISION):
    """
    Evaluate the weight at a p-adic unit.

    Parameters
    ----------
    w : :class:`PadicWeight<padlfun.padic.weights.PadicWeight>`
    t : int, Fraction or :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    prec : int, optional

    Returns
    -------
    :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>` or :class:`TruncatedPoly<padlfun.padic.polys.TruncatedPoly>`
    """
    p = w.prime
    t = numbers.padic(t, p, prec)

    if not t.is_unit():
        raise DomainError("Weights are evaluated on units, got {}".format(t))

    if w.is_classical():
        return t ** w.classical

    omega = numbers.teichmuller(t) ** w.torsion
    log_t = numbers.log_p(t)

    if w.is_family():
        # exp(u(T) log t) = exp(u_0 log t) * exp((u(T) - u_0) log t)
        u0 = w.analytic_param.coeffs[0]
        rest = w.analytic_param - u0
        base = numbers.exp_p(log_t * u0) if u0 != 0 else \
            PadicNumber.one(p, prec)
        series = power = rest.one_like()

        for i in range(1, rest.cap + 1):
            power = power * rest * log_t
            series = series + power / Fraction(math.factorial(i))

        return series * (omega * base)

    return omega * numbers.exp_p(log_t * w.padic_param(prec))


class AssumptionReport(object):
    """
    Outcome of :func:`check_assumption`.

    Attributes
    ----------
    ok : bool
    reason : str or None
    """
    __slots__ = ("ok", "reason")

    def __init__(self, ok, reason=None):
        self.ok = ok
        self.reason = reason

    def __bool__(self):
        return self.ok

    __nonzero__ = __bool__

    def __repr__(self):
        return "AssumptionReport(ok={}, reason={!r})".format(
            self.ok, self.reason,
        )


def check_assumption(k, nu):
    """
    Decide whether the interpolated connection (nabla_k)^nu is available.

    Non-classical nu need an analytic parameter in p^2 Z_p and non-classical
    k need one in p Z_p. Every k needs an even torsion part, so a classical
    k of odd weight fails.

    Parameters
    ----------
    k : :class:`PadicWeight<padlfun.padic.weights.PadicWeight>`
    nu : :class:`PadicWeight<padlfun.padic.weights.PadicWeight>`

    Returns
    -------
    :class:`AssumptionReport<padlfun.padic.weights.AssumptionReport>`

    Examples
    --------
    >>> check_assumption(classical_embed(3, 5), classical_embed(1, 5)).reason
    "chi' not even"
    """
    if k.prime != nu.prime:
        return AssumptionReport(False, "weights over different primes")

    if not nu.is_classical() and not nu.param_valuation() >= 2:
        return AssumptionReport(False, "s not in p^2R")

    if not k.is_classical() and not k.param_valuation() >= 1:
        return AssumptionReport(False, "u not in pR")

    if k.torsion % 2:
        return AssumptionReport(False, "chi' not even")

    return AssumptionReport(True)
