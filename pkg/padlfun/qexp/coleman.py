"""
Coleman primitives of depleted forms and p-adic logarithms of unit series.
"""

from __future__ import absolute_import, division

import logging
import math

from padlfun.errors import DomainError
from padlfun.padic import numbers
from padlfun.padic.numbers import INF, PadicNumber
from padlfun.padic.weights import classical_embed
from padlfun.qexp.nabla import (
    WSection, compare_sections, nabla_iterate, nabla_nu, nabla_step,
)
from padlfun.qexp.qexpansion import (
    IdentityReport, compare, theta, theta_inverse,
)

LOGGER = logging.getLogger("padlfun.coleman")


def coleman_primitive(f, r):
    """
    The graded primitive (g_0, ..., g_r) of a depleted form of weight r + 2.

    g_0 = theta^-1 f and theta g_j = (r - j + 1) g_{j-1}, so that
    g_j = r! / (r - j)! * theta^(-1-j) f. Components are stored without the
    alternating signs of the Sym^r basis; :func:`coleman_check` puts them
    back.

    Parameters
    ----------
    f : :class:`QExpansion<padlfun.qexp.qexpansion.QExpansion>`
        Depleted.
    r : int
        At least 0.

    Returns
    -------
    :class:`WSection<padlfun.qexp.nabla.WSection>`
        Base weight -r.

    Raises
    ------
    DomainError
        On non-depleted input.
    """
    if r < 0:
        raise DomainError("Coleman primitives need r >= 0, got {}".format(r))

    if not f.is_depleted():
        raise DomainError(
            "Coleman primitives need a {}-depleted q-expansion".format(
                f.prime,
            )
        )

    components = [
        theta_inverse(f, 1 + j) * (math.factorial(r) // math.factorial(r - j))
        for j in range(r + 1)
    ]

    LOGGER.debug(
        "Coleman primitive of order {} to N_q = {}".format(r, f.truncation)
    )

    return WSection(classical_embed(-r, f.prime), components)


def check_coleman_recursion(section, f):
    """
    theta g_0 = f and theta g_j = (r - j + 1) g_{j-1}, coefficient-wise.
    """
    r = section.J
    checks = [compare("theta g_0 = f", theta(section.component(0)), f)]

    for j in range(1, r + 1):
        checks.append(
            compare(
                "theta g_{}".format(j),
                theta(section.component(j)),
                section.component(j - 1) * (r - j + 1),
            )
        )

    return IdentityReport(
        "Coleman recursion",
        all(c.ok for c in checks),
        min(c.discrepancy for c in checks),
    )


def coleman_check(section, f):
    """
    Apply the Sym^r rule of the connection (weight r, alternating signs) to a
    Coleman primitive and compare with (f, 0, ..., 0).
    """
    r = section.J
    signed = WSection(
        classical_embed(r, f.prime),
        [c if j % 2 == 0 else -c for j, c in enumerate(section.components)],
    )

    return compare_sections(
        "Coleman inversion",
        nabla_step(signed),
        WSection.from_form(f, signed.base_weight.shift(2), r + 1),
    )


def check_primitive_iterates(f, r, prec=numbers.DEFAULT_PRECISION):
    """
    Compare r! theta^(-1-j) f, computed as the degree 0 part of
    (nabla_{r+2})^(-1-j) f, with the degree 0 part of r - j steps of the
    connection applied to g_r at weight -r, for j = 0, ..., r.

    Returns
    -------
    :class:`IdentityReport<padlfun.qexp.qexpansion.IdentityReport>`
    """
    p = f.prime
    primitive = coleman_primitive(f, r)
    top = WSection.from_form(primitive.component(r), classical_embed(-r, p))
    k = classical_embed(r + 2, p)
    checks = []

    for j in range(r + 1):
        # Degrees above r - j vanish identically
        section, _ = nabla_nu(
            f, k, classical_embed(-1 - j, p), r - j, prec=prec,
        )
        lhs = section.component(0) * math.factorial(r)
        rhs = nabla_iterate(top, r - j).component(0)
        checks.append(compare("iterate j = {}".format(j), lhs, rhs))

    return IdentityReport(
        "primitive iterates",
        all(c.ok for c in checks),
        min(c.discrepancy for c in checks),
        detail={c.name: c.discrepancy for c in checks},
    )


class LaurentSeries(object):
    """
    A Laurent polynomial sum_i c_i t^(start + i) over Q_p.

    Attributes
    ----------
    prime : int
    start : int
        Exponent of the first stored coefficient.
    coeffs : list of :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    window : tuple of int, optional
        (lowest, highest) exponent kept by products; None keeps all.
    """
    __slots__ = ("prime", "start", "coeffs", "window")

    __hash__ = None

    def __init__(self, prime, start, coeffs, window=None,
                 prec=numbers.DEFAULT_PRECISION):
        self.prime = prime
        self.window = window
        terms = {
            start + i: numbers.padic(c, prime, prec)
            for i, c in enumerate(coeffs)
        }

        if window is not None:
            terms = {
                e: c for e, c in terms.items()
                if window[0] <= e <= window[1]
            }

        terms = {e: c for e, c in terms.items() if not c.is_exact_zero()}

        if terms:
            self.start = min(terms)
            self.coeffs = [
                terms.get(e, PadicNumber.zero(prime))
                for e in range(self.start, max(terms) + 1)
            ]
        else:
            self.start, self.coeffs = 0, []

    @classmethod
    def from_terms(cls, prime, terms, window=None,
                   prec=numbers.DEFAULT_PRECISION):
        """
        Build from a dict mapping exponents to coefficients.
        """
        if not terms:
            return cls(prime, 0, [], window)

        lo = min(terms)

        return cls(
            prime, lo,
            [terms.get(e, 0) for e in range(lo, max(terms) + 1)],
            window, prec,
        )

    def terms(self):
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                yield self.start + i, c

    def coefficient(self, e):
        i = e - self.start

        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]

        return PadicNumber.zero(self.prime)

    def is_zero(self):
        return not any(True for _ in self.terms())

    def valuation(self):
        """
        Smallest coefficient valuation (INF for zero), the Gauss norm on
        |t| = 1.
        """
        return min([c.valuation for _, c in self.terms()] or [INF])

    def _as_dict(self):
        return dict(zip(range(self.start, self.start + len(self.coeffs)),
                        self.coeffs))

    def _window(self, other):
        if self.window is None:
            return other.window

        if other.window is None:
            return self.window

        return (
            max(self.window[0], other.window[0]),
            min(self.window[1], other.window[1]),
        )

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries(self.prime, 0, [other])

        total = self._as_dict()

        for e, c in other._as_dict().items():
            total[e] = total[e] + c if e in total else c

        return LaurentSeries.from_terms(
            self.prime, total, self._window(other),
        )

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(
            self.prime, self.start, [-c for c in self.coeffs], self.window,
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return LaurentSeries(
                self.prime, self.start, [c * other for c in self.coeffs],
                self.window,
            )

        window = self._window(other)
        total = {}

        for e1, c1 in self.terms():
            for e2, c2 in other.terms():
                e = e1 + e2

                if window is not None and not window[0] <= e <= window[1]:
                    continue

                total[e] = total[e] + c1 * c2 if e in total else c1 * c2

        return LaurentSeries.from_terms(self.prime, total, window)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return LaurentSeries(
            self.prime, self.start, [c / other for c in self.coeffs],
            self.window,
        )

    __div__ = __truediv__

    def shift(self, n):
        """
        Multiply by t^n.
        """
        return LaurentSeries(self.prime, self.start + n, self.coeffs,
                             self.window)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented

        return (self - other).is_zero()

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    def to_dict(self):
        return {
            "prime": self.prime,
            "terms": [[e, str(c)] for e, c in self.terms()],
        }

    def __repr__(self):
        return "LaurentSeries({})".format(
            " + ".join(
                "({}) t^{}".format(c, e) for e, c in self.terms()
            ) or "0"
        )


KINDS = ("disk", "annulus")


def coleman_log(g, kind="annulus", prec=numbers.DEFAULT_PRECISION):
    """
    Split a unit g = a t^n (1 + h) with |h| < 1 and return its logarithm.

    log g = log_p(a) + n log t + sum_m (-1)^(m-1) h^m / m, with the log t
    part recorded through its coefficient n.

    Parameters
    ----------
    g : :class:`LaurentSeries<padlfun.qexp.coleman.LaurentSeries>`
    kind : str
        "disk" or "annulus". On a disk n must be 0 and g may not have
        negative exponents.
    prec : int, optional
        The series is summed until the remaining terms have valuation at
        least prec.

    Returns
    -------
    constant : :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    residue : int
    log_tail : :class:`LaurentSeries<padlfun.qexp.coleman.LaurentSeries>`

    Raises
    ------
    DomainError
        When g has no strictly dominant term or does not fit the region.
    """
    if kind not in KINDS:
        raise DomainError(
            "Unknown region \"{}\", expected one of {}".format(kind, KINDS)
        )

    terms = list(g.terms())

    if not terms:
        raise DomainError("log of the zero series")

    n, a = min(terms, key=lambda t: (t[1].valuation, t[0]))

    for e, c in terms:
        if e != n and c.valuation < a.valuation + 1:
            raise DomainError(
                "No dominant term: t^{} and t^{} have comparable "
                "coefficients".format(n, e)
            )

    if kind == "disk" and (n != 0 or terms[0][0] < 0):
        raise DomainError(
            "{} is not a unit on the disk".format(g)
        )

    h = g.shift(-n) / a - 1
    tail = LaurentSeries(g.prime, 0, [], g.window)
    vh = h.valuation()

    if vh != INF:
        power, m = h, 1

        while m * vh - numbers.val_int(m, g.prime) < prec:
            term = power / m
            tail = tail + term if m % 2 else tail - term
            power = power * h
            m += 1

        LOGGER.debug(
            "log of a unit on the {}: {} terms, |h| = p^-{}".format(
                kind, m - 1, vh,
            )
        )

    return numbers.log_p(a), n, tail
