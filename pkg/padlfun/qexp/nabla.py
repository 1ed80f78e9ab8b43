"""
Graded sections at the cusp and the connection calculus acting on them.

A section of weight w is stored as its components c_0, ..., c_J with
respect to the graded basis V_{w,0}, ..., V_{w,J}. The single step of the
connection is

    c'_j = theta(c_j) + (w - (j - 1)) c_{j-1},

landing in weight w + 2, and the interpolated power (nabla_k)^nu of a
depleted form F has components

    binom(s, j) * prod_{i<j} (u + s - 1 - i) * theta^(nu - j)(F)

for k = (a; u) and nu = (b; s).
"""

from __future__ import absolute_import, division

from fractions import Fraction
from functools import partial
import logging

from padlfun import utils
from padlfun.errors import PrecisionError, PreconditionError
from padlfun.padic import numbers
from padlfun.padic.numbers import INF, PadicNumber
from padlfun.padic.polys import TruncatedPoly
from padlfun.padic.weights import (
    check_assumption, weight_combine,
)
from padlfun.qexp import qexpansion
from padlfun.qexp.qexpansion import (
    IdentityReport, QExpansion, compare, deplete, op_U, op_V, theta,
    theta_inverse, theta_weight,
)

LOGGER = logging.getLogger("padlfun.nabla")


class WSection(object):
    """
    A graded section sum_j c_j V_{w,j} at the cusp.

    Attributes
    ----------
    base_weight : :class:`PadicWeight<padlfun.padic.weights.PadicWeight>`
    components : list of :class:`QExpansion<padlfun.qexp.qexpansion.QExpansion>`
    bounds : list of int or float
        Recorded valuation lower bound for each component.
    """
    __slots__ = ("base_weight", "components", "bounds")

    __hash__ = None

    def __init__(self, base_weight, components, bounds=None):
        components = list(components)
        assert components, "A section needs a degree 0 component"

        primes = set(c.prime for c in components)
        assert len(primes) == 1, "Components over different primes"

        self.base_weight = base_weight
        self.components = components

        if bounds is None:
            bounds = [c.valuation() for c in components]

        self.bounds = list(bounds)

    @classmethod
    def from_form(cls, f, weight, J=0):
        """
        The section (f, 0, ..., 0) with J + 1 components.
        """
        zero = QExpansion.zero(f.prime, f.truncation)

        return cls(weight, [f] + [zero] * J)

    @property
    def prime(self):
        return self.components[0].prime

    @property
    def J(self):
        return len(self.components) - 1

    @property
    def truncation(self):
        return min(c.truncation for c in self.components)

    def component(self, j):
        if 0 <= j <= self.J:
            return self.components[j]

        return QExpansion.zero(self.prime, self.truncation)

    def _pad(self, other):
        size = max(self.J, other.J)

        return (
            [self.component(j) for j in range(size + 1)],
            [other.component(j) for j in range(size + 1)],
        )

    def __add__(self, other):
        if not isinstance(other, WSection):
            return NotImplemented

        a, b = self._pad(other)

        return WSection(self.base_weight, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return WSection(
            self.base_weight, [-c for c in self.components], self.bounds,
        )

    def __sub__(self, other):
        if not isinstance(other, WSection):
            return NotImplemented

        return self + (-other)

    def __mul__(self, scalar):
        return WSection(
            self.base_weight, [c * scalar for c in self.components],
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, WSection):
            return NotImplemented

        a, b = self._pad(other)

        return all(x == y for x, y in zip(a, b))

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    def shift(self, i):
        """
        Move every component i degrees up.
        """
        zero = QExpansion.zero(self.prime, self.truncation)

        return WSection(
            self.base_weight, [zero] * i + self.components,
            [INF] * i + self.bounds,
        )

    def map(self, func):
        """
        Apply func(j, c_j) to every component.
        """
        return WSection(
            self.base_weight,
            [func(j, c) for j, c in enumerate(self.components)],
        )

    def reduce(self, absprec):
        return self.map(lambda j, c: c.reduce(absprec))

    def valuation(self):
        return min(c.valuation() for c in self.components)

    def to_dict(self):
        return {
            "weight": str(self.base_weight),
            "prime": self.prime,
            "J": self.J,
            "truncation": self.truncation,
            "bounds": [str(b) for b in self.bounds],
            "components": [
                c.to_dict()["coefficients"] for c in self.components
            ],
        }

    def __repr__(self):
        return "WSection(w={}, J={}, N_q={})".format(
            self.base_weight, self.J, self.truncation,
        )


def section_discrepancy(s1, s2):
    a, b = s1._pad(s2)

    return min(
        [qexpansion.discrepancy(x, y) for x, y in zip(a, b)] or [INF]
    )


# Classical steps


def nabla_step(section, cap=None):
    """
    One step of the connection, raising the weight by 2 and the top degree
    by 1.

    Parameters
    ----------
    section : :class:`WSection<padlfun.qexp.nabla.WSection>`
    cap : int, optional
        Highest degree to keep.

    Returns
    -------
    :class:`WSection<padlfun.qexp.nabla.WSection>`

    Examples
    --------
    For k = 2 and S = (F, 0) the result is (theta F, 2 F, 0).
    """
    w = section.base_weight
    top = section.J + 1

    if cap is not None:
        top = min(top, cap)

    out = []

    for j in range(top + 1):
        c = theta(section.component(j))

        if j >= 1:
            c = c + section.component(j - 1) * (w.analytic_param - (j - 1))

        out.append(c)

    return WSection(w.shift(2), out)


def nabla_iterate(section, m, cap=None):
    """
    m consecutive steps of the connection.
    """
    for _ in range(m):
        section = nabla_step(section, cap=cap)

    return section


def graded_V(section):
    """
    V on sections: c_j -> p^-j V(c_j), so that nabla V = p V nabla.
    """
    p = section.prime

    return section.map(
        lambda j, c: op_V(c) / PadicNumber.from_rational(p ** j, p)
    )


def graded_U(section):
    """
    U on sections: c_j -> p^j U(c_j), so that nabla U = (1/p) U nabla.
    """
    p = section.prime

    return section.map(lambda j, c: op_U(c) * p ** j)


# Interpolated powers


class NablaReport(object):
    """
    Convergence certificate of :func:`nabla_nu`.

    Attributes
    ----------
    J : int
    target : int
        Absolute precision the discarded tail has to reach.
    tail_bound : int or float
        Valuation lower bound for every discarded component.
    component_bounds : list
    certified : bool
    precision_loss : int
        Worst denominator exponent seen among the components.
    """

    def __init__(self, J, target, tail_bound, component_bounds,
                 precision_loss=0):
        self.J = J
        self.target = target
        self.tail_bound = tail_bound
        self.component_bounds = component_bounds
        self.certified = tail_bound >= target
        self.precision_loss = precision_loss

    def to_dict(self):
        return {
            "J": self.J,
            "target": self.target,
            "tail_bound": str(self.tail_bound),
            "certified": self.certified,
            "precision_loss": self.precision_loss,
            "component_bounds": [str(b) for b in self.component_bounds],
        }

    def __repr__(self):
        return "NablaReport(J={}, tail_bound={}, certified={})".format(
            self.J, self.tail_bound, self.certified,
        )


def _param_valuation(x, prime):
    if isinstance(x, TruncatedPoly):
        return x.valuation(prime)

    return numbers.valuation(x, prime)


def _integer(x):
    if isinstance(x, int):
        return x

    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)

    return None


def _terminates_at(nu, u=None):
    """
    The last degree whose coefficient can be nonzero, for classical nu.

    binom(s, j) vanishes for j > s when s >= 0, and the shifted product
    prod_{i<j} (u + s - 1 - i) vanishes for j >= u + s when u + s >= 1.
    """
    if not nu.is_classical():
        return None

    s = nu.classical
    stops = [s] if s >= 0 else []
    u = _integer(u)

    if u is not None and u + s >= 1:
        stops.append(u + s - 1)

    return min(stops) if stops else None


def smallest_admissible_J(prime, nu, f_valuation, target, u=None):
    """
    The least J whose discarded tail is certified to valuation target; u is
    the analytic parameter of the source weight.
    """
    stop = _terminates_at(nu, u)
    J = 0

    while numbers.val_factorial(J + 1, prime) + f_valuation < target:
        if stop is not None and J >= stop:
            break

        J += 1

    return J if stop is None else min(J, stop)


def _require_assumption(k, nu, what):
    """
    Integral iterates at classical k and nu exist for every k; other
    powers need :func:`check_assumption`.
    """
    if k.is_classical() and nu.is_classical():
        return

    assumption = check_assumption(k, nu)

    if not assumption:
        raise PreconditionError(
            "{} is not available: {}".format(what, assumption.reason)
        )


def _component_coefficient(u, s, j):
    return numbers.binom_padic(s, j) * numbers.pochhammer_shift(u + s, j)


def _nabla_terms(f, u, nu, J, prec, cpu_count):
    twisted = theta_weight(f, nu, 0, prec)
    s = nu.analytic_param
    coeffs = [
        _component_coefficient(u, s, j) for j in range(J + 1)
    ]

    return utils.pool_map(
        partial(_apply_component, twisted),
        list(enumerate(coeffs)),
        cpu_count=cpu_count,
    )


def _apply_component(twisted, item):
    j, coeff = item

    if not isinstance(coeff, (PadicNumber, TruncatedPoly)) and coeff == 0:
        return QExpansion.zero(twisted.prime, twisted.truncation)

    if j:
        return theta_inverse(twisted, j) * coeff

    return twisted * coeff


def nabla_nu(f, k, nu, J, target=None, prec=numbers.DEFAULT_PRECISION,
             cpu_count=1, certify=True):
    """
    The interpolated power (nabla_k)^nu applied to a depleted form.

    Parameters
    ----------
    f : :class:`QExpansion<padlfun.qexp.qexpansion.QExpansion>`
        Depleted.
    k : :class:`PadicWeight<padlfun.padic.weights.PadicWeight>`
    nu : :class:`PadicWeight<padlfun.padic.weights.PadicWeight>`
        A TruncatedPoly analytic parameter gives the family version.
    J : int
        Highest degree computed.
    target : int, optional
        Absolute precision the discarded degrees must reach; defaults to
        prec.
    prec : int, optional
    cpu_count : int, optional
        Components are computed in a process pool when above 1.
    certify : bool, optional
        Raise when the tail beyond J is not certified.

    Returns
    -------
    section : :class:`WSection<padlfun.qexp.nabla.WSection>`
    report : :class:`NablaReport<padlfun.qexp.nabla.NablaReport>`

    Raises
    ------
    PreconditionError
        When k and nu fail :func:`check_assumption`, unless both are
        classical.
    PrecisionError
        When the tail is not small enough; the message names the smallest
        admissible J.
    """
    _require_assumption(k, nu, "(nabla_{})^{}".format(k, nu))

    return _nabla_nu(
        f, k.analytic_param, weight_combine(k, nu), nu, J, target, prec,
        cpu_count, certify,
    )


def _nabla_nu(f, u, out_weight, nu, J, target, prec, cpu_count, certify):
    p = f.prime

    if target is None:
        target = prec

    vmin = f.valuation()
    stop = _terminates_at(nu, u)

    if vmin == INF or (stop is not None and J >= stop):
        tail = INF
    else:
        tail = numbers.val_factorial(J + 1, p) + vmin

    if certify and tail < target:
        raise PrecisionError(
            "Degrees beyond J = {} are only known to valuation {} < {}; "
            "the smallest admissible J is {}".format(
                J, tail, target,
                smallest_admissible_J(p, nu, vmin, target, u),
            )
        )

    components = _nabla_terms(f, u, nu, J, prec, cpu_count)
    s_val = _param_valuation(nu.analytic_param, p)
    bounds = []

    for j, c in enumerate(components):
        bound = vmin

        if j and vmin != INF:
            bound += numbers.binom_valuation_bound(s_val, j, p) + \
                numbers.val_factorial(j, p)

        actual = c.valuation()

        if actual < bound and not nu.is_family():
            LOGGER.warning(
                "Component {} has valuation {} below its bound {}".format(
                    j, actual, bound,
                )
            )

        bounds.append(bound)

    worst = min(c.valuation() for c in components)
    loss = 0 if worst == INF or worst >= 0 else -worst
    report = NablaReport(J, target, tail, bounds, precision_loss=loss)

    LOGGER.debug(
        "nabla^{} to J = {}: tail valuation >= {}, loss {}".format(
            nu, J, tail, loss,
        )
    )

    return WSection(out_weight, components, bounds), report


def nabla_nu_section(section, nu, J, target=None,
                     prec=numbers.DEFAULT_PRECISION, cpu_count=1,
                     certify=True):
    """
    (nabla)^nu on a whole section. The degree i component c_i V_{w,i} moves
    like the degree 0 component of a section of weight w - i, shifted up by
    i degrees.

    Returns
    -------
    section : :class:`WSection<padlfun.qexp.nabla.WSection>`
    reports : list of :class:`NablaReport<padlfun.qexp.nabla.NablaReport>`
    """
    w = section.base_weight
    out_weight = weight_combine(w, nu)
    total, reports = None, []

    for i, c in enumerate(section.components):
        if c.is_zero() or J - i < 0:
            continue

        part, report = _nabla_nu(
            c, w.analytic_param - i, out_weight, nu, J - i, target, prec,
            cpu_count, certify,
        )
        part = part.shift(i)
        reports.append(report)
        total = part if total is None else total + part

    if total is None:
        total = WSection.from_form(
            QExpansion.zero(section.prime, section.truncation),
            out_weight, J,
        )

    return WSection(out_weight, total.components, total.bounds), reports


def nabla_nu_family(f, k, nu, J, target=None,
                    prec=numbers.DEFAULT_PRECISION, cpu_count=1):
    """
    :func:`nabla_nu` for a family nu whose analytic parameter is a
    truncated polynomial; coefficients of the result are truncated
    polynomials in the family variable.
    """
    if not nu.is_family():
        raise PreconditionError(
            "nabla_nu_family needs a family weight, got {}".format(nu)
        )

    return nabla_nu(
        f, k, nu, J, target=target, prec=prec, cpu_count=cpu_count,
    )


def specialize(section, value):
    """
    Substitute a value for the family variable in every coefficient.
    """
    p = section.prime

    def evaluate(j, c):
        return c.map(
            lambda n, a: numbers.padic(a.evaluate(value), p)
            if isinstance(a, TruncatedPoly) else a
        )

    out = section.map(evaluate)

    return WSection(section.base_weight.specialize(value), out.components)


def theta_nu_split(g, k, nu, prec=numbers.DEFAULT_PRECISION):
    """
    The degree 0 component of (nabla_k)^nu under the unit root splitting,
    a_n -> nu(n) a_n.
    """
    _require_assumption(k, nu, "theta^{}".format(nu))

    return theta_weight(g, nu, 0, prec)


# Identities


def compare_sections(name, lhs, rhs):
    d = section_discrepancy(lhs, rhs)

    if d != INF:
        LOGGER.warning(
            "Identity {} fails with discrepancy valuation {}".format(name, d)
        )

    return IdentityReport(name, d == INF, d)


def check_commutation(f, k, J=2):
    """
    Check theta V = p V theta, theta U = (1/p) U theta, their graded
    versions through :func:`nabla_step`, and that depletion commutes with
    theta.

    Parameters
    ----------
    f : :class:`QExpansion<padlfun.qexp.qexpansion.QExpansion>`
    k : :class:`PadicWeight<padlfun.padic.weights.PadicWeight>`
    J : int, optional
        Degrees of the test section (f, theta f, f, ...).

    Returns
    -------
    :class:`IdentityReport<padlfun.qexp.qexpansion.IdentityReport>`
        discrepancy is the smallest over all sub-identities.
    """
    p = f.prime
    checks = [
        compare("theta V = p V theta", theta(op_V(f)), op_V(theta(f)) * p),
        compare("theta U = U theta / p", theta(op_U(f)) * p, op_U(theta(f))),
        compare("theta deplete = deplete theta",
                theta(deplete(f)), deplete(theta(f))),
    ]

    section = WSection(
        k, [f if j % 2 == 0 else theta(f) for j in range(J + 1)],
    )
    checks.append(compare_sections(
        "graded nabla V = p V nabla",
        nabla_step(graded_V(section)), graded_V(nabla_step(section)) * p,
    ))
    checks.append(compare_sections(
        "graded nabla U = U nabla / p",
        nabla_step(graded_U(section)) * p, graded_U(nabla_step(section)),
    ))

    return IdentityReport(
        "commutation",
        all(c.ok for c in checks),
        min(c.discrepancy for c in checks),
        detail={c.name: c.discrepancy for c in checks},
    )
