"""
Polynomials in one formal variable T truncated beyond a fixed degree cap.

These carry the analytic parameter of a weight as an indeterminate, so that
a whole one-parameter family of weights can be pushed through the operator
calculus at once and specialized afterwards.
"""

from __future__ import absolute_import, division

from fractions import Fraction
import logging
import math

from padlfun.padic import numbers
from padlfun.padic.numbers import PadicNumber

LOGGER = logging.getLogger("padlfun.polys")


class TruncatedPoly(object):
    """
    An element of A[T] / (T^(cap+1)) for A the rationals or Q_p.

    Attributes
    ----------
    coeffs : list
        Coefficients of 1, T, ..., T^cap.
    cap : int
    """
    __slots__ = ("coeffs", "cap")

    __hash__ = None

    def __init__(self, coeffs, cap):
        assert cap >= 0
        coeffs = list(coeffs)[:cap + 1]
        coeffs += [0] * (cap + 1 - len(coeffs))
        self.coeffs = coeffs
        self.cap = cap

    @classmethod
    def constant(cls, x, cap):
        return cls([x], cap)

    @classmethod
    def variable(cls, cap, shift=0, scale=1):
        """
        The polynomial shift + scale * T.
        """
        return cls([shift, scale], cap)

    @classmethod
    def exp_linear(cls, x, cap):
        """
        exp(x T) truncated at T^cap, for x of valuation >= 1.

        Parameters
        ----------
        x : int, Fraction or :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
        cap : int

        Returns
        -------
        :class:`TruncatedPoly<padlfun.padic.polys.TruncatedPoly>`
        """
        coeffs, power = [], 1

        for i in range(cap + 1):
            coeffs.append(power / Fraction(math.factorial(i)))
            power = power * x

        return cls(coeffs, cap)

    def one_like(self):
        return TruncatedPoly([1], self.cap)

    def _coerce(self, other):
        if isinstance(other, TruncatedPoly):
            return other

        if isinstance(other, (PadicNumber, Fraction)) or \
                numbers._is_rational(other):
            return TruncatedPoly([other], self.cap)

        return None

    def __add__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        cap = min(self.cap, other.cap)

        return TruncatedPoly(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], cap,
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedPoly([-a for a in self.coeffs], self.cap)

    def __sub__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedPoly):
            if self._coerce(other) is None:
                return NotImplemented

            return TruncatedPoly([a * other for a in self.coeffs], self.cap)

        cap = min(self.cap, other.cap)
        out = [0] * (cap + 1)

        for i, a in enumerate(self.coeffs[:cap + 1]):
            if numbers._is_rational(a) and a == 0:
                continue

            for j, b in enumerate(other.coeffs[:cap + 1 - i]):
                out[i + j] = out[i + j] + a * b

        return TruncatedPoly(out, cap)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedPoly) or self._coerce(other) is None:
            return NotImplemented

        if numbers._is_rational(other):
            other = Fraction(other)

        return TruncatedPoly([a / other for a in self.coeffs], self.cap)

    __div__ = __truediv__

    def __pow__(self, n):
        assert n >= 0
        result = self.one_like()

        for _ in range(n):
            result = result * self

        return result

    def __eq__(self, other):
        other = self._coerce(other)

        if other is None:
            return NotImplemented

        cap = min(self.cap, other.cap)

        return all(
            a == b
            for a, b in zip(self.coeffs[:cap + 1], other.coeffs[:cap + 1])
        )

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    def degree(self):
        """
        Index of the last coefficient that is not zero (-1 for zero).
        """
        for i in range(self.cap, -1, -1):
            if self.coeffs[i] != 0:
                return i

        return -1

    def evaluate(self, x):
        """
        Substitute a value for T (Horner's rule).
        """
        result = 0

        for a in reversed(self.coeffs):
            result = result * x + a

        return result

    def valuation(self, prime=None):
        """
        Minimum valuation of the coefficients.
        """
        return min(numbers.valuation(a, prime) for a in self.coeffs)

    def __repr__(self):
        return "TruncatedPoly([{}], cap={})".format(
            ", ".join(str(a) for a in self.coeffs), self.cap,
        )


def finite_difference_coefficients(values, points=None):
    """
    Recover the coefficients of a polynomial of degree <= D from its values
    at D+1 points.

    With the default points 0, 1, ..., D this uses Newton's forward
    differences; otherwise it falls back to Newton's divided differences.

    Parameters
    ----------
    values : list
        Values at the sample points; any ring elements supporting +, -, *
        and division by integers.
    points : list of int, optional

    Returns
    -------
    list
        Coefficients of 1, T, ..., T^D.

    Examples
    --------
    >>> finite_difference_coefficients([1, 2, 5])
    [Fraction(1, 1), Fraction(0, 1), Fraction(1, 1)]
    """
    n = len(values)

    if points is None:
        points = list(range(n))

    assert len(points) == n
    table = list(values)
    newton = [table[0]]

    for level in range(1, n):
        table = [
            (table[i + 1] - table[i]) / Fraction(
                points[i + level] - points[i]
            )
            for i in range(len(table) - 1)
        ]
        newton.append(table[0])

    # Expand the Newton form sum_i newton[i] prod_{l<i} (T - points[l]).
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]

    for i in range(n):
        for d, b in enumerate(basis):
            coeffs[d] = coeffs[d] + newton[i] * b

        shifted = [Fraction(0)] + basis
        basis = [
            shifted[d] - points[i] * (basis[d] if d < len(basis) else 0)
            for d in range(len(shifted))
        ]

    return coeffs
