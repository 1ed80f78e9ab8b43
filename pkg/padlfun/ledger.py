"""
Exact valuation bookkeeping for the overconvergence estimates: Hodge
height and period valuations of the CM points, the radii r_k(p), b_k(p),
n_k(p), the numeric inequalities the estimates rest on, and the measured
precision loss of a run.

Everything here is an exact Fraction; there is no floating point.
"""

from __future__ import absolute_import, division

from fractions import Fraction
import logging

import sympy

from padlfun.errors import DomainError
from padlfun.padic import numbers
from padlfun.quadratic.forms import INERT, RAMIFIED, SPLIT

LOGGER = logging.getLogger("padlfun.ledger")

DEFAULT_J_MAX = 10 ** 5
DEFAULT_H_MAX = 5
DEFAULT_RADIUS_H_MAX = 100


def _check_prime(prime):
    if prime == 2 or not sympy.isprime(prime):
        raise DomainError("Expected an odd prime, got {}".format(prime))


class ValProfile(object):
    """
    Valuations attached to the CM points of level p^n.

    Attributes
    ----------
    prime : int
    case : str
        "inert" or "ramified".
    level : int
    hdg : Fraction
        v_p of the Hodge height.
    delta : Fraction
        hdg / (p - 1).
    period : Fraction
        v_p of the p-adic period, equal to delta.
    """
    __slots__ = ("prime", "case", "level", "hdg", "delta", "period")

    def __init__(self, prime, case, level, hdg):
        self.prime = prime
        self.case = case
        self.level = level
        self.hdg = hdg
        self.delta = hdg / (prime - 1)
        self.period = self.delta

        assert 0 < hdg <= Fraction(1, 2)

    def to_dict(self):
        return {
            "prime": self.prime,
            "case": self.case,
            "level": self.level,
            "hdg": str(self.hdg),
            "delta": str(self.delta),
            "period": str(self.period),
        }

    def __repr__(self):
        return "ValProfile(p={}, {}, n={}: hdg={}, period={})".format(
            self.prime, self.case, self.level, self.hdg, self.period,
        )


def canonical_valuations(prime, case, n):
    """
    Hodge height and period valuations at level p^n.

    Parameters
    ----------
    prime : int
    case : str
        "inert" or "ramified".
    n : int
        n >= 1.

    Returns
    -------
    :class:`ValProfile<padlfun.ledger.ValProfile>`

    Examples
    --------
    >>> canonical_valuations(5, "inert", 2).period
    Fraction(1, 120)
    >>> canonical_valuations(5, "ramified", 2).hdg
    Fraction(1, 50)
    """
    _check_prime(prime)

    if n < 1:
        raise DomainError("Levels p^n need n >= 1, got {}".format(n))

    if case == INERT:
        hdg = Fraction(1, prime ** (n - 1) * (prime + 1))
    elif case == RAMIFIED:
        hdg = Fraction(1, 2 * prime ** n)
    elif case == SPLIT:
        raise DomainError("No canonical valuations in the split case")
    else:
        raise DomainError("Unknown splitting type \"{}\"".format(case))

    return ValProfile(prime, case, n, hdg)


class RadiusParams(object):
    """
    Overconvergence radius r_k(p), b_k(p) = p (r_k(p) - 1) and the least
    levels n_k(p) reaching it.

    Attributes
    ----------
    prime : int
    classical : bool
    r : int
    b : int
    n_inert : int
    n_ramified : int
    verified : bool
        False when b is the unverified default for p = 3.
    """
    __slots__ = ("prime", "classical", "r", "b", "n_inert", "n_ramified",
                 "verified")

    def __init__(self, prime, classical, r, b, verified=True):
        self.prime = prime
        self.classical = classical
        self.r = r
        self.b = b
        self.verified = verified
        self.n_inert = _least_level(
            lambda n: prime ** (n - 1) * (prime + 1) >= b,
        )
        self.n_ramified = _least_level(lambda n: 2 * prime ** n >= b)

    def n_k(self, case):
        if case == INERT:
            return self.n_inert

        if case == RAMIFIED:
            return self.n_ramified

        raise DomainError("n_k(p) is defined for non-split p only")

    def as_tuple(self):
        return (self.r, self.b, self.n_inert, self.n_ramified)

    def to_dict(self):
        return {
            "prime": self.prime,
            "classical": self.classical,
            "r": self.r,
            "b": self.b,
            "n_inert": self.n_inert,
            "n_ramified": self.n_ramified,
            "verified": self.verified,
        }

    def __repr__(self):
        return "RadiusParams(p={}, r={}, b={}, n_k={}/{})".format(
            self.prime, self.r, self.b, self.n_inert, self.n_ramified,
        )


def _least_level(ok):
    n = 1

    while not ok(n):
        n += 1

    return n


def radius_params(classical, prime, b_override=None):
    """
    r_k(p), b_k(p) and n_k(p).

    Parameters
    ----------
    classical : bool
        Whether k is a classical weight.
    prime : int
    b_override : int, optional
        Replaces the default b(3, r) = 3 (r - 1).

    Returns
    -------
    :class:`RadiusParams<padlfun.ledger.RadiusParams>`

    Examples
    --------
    >>> radius_params(True, 5).as_tuple()
    (7, 30, 2, 2)
    >>> radius_params(False, 5).as_tuple()[:3]
    (10, 45, 3)
    """
    _check_prime(prime)

    if classical:
        r = prime + 2
    elif prime == 3:
        r = 4 * prime
    else:
        r = 2 * prime

    b = prime * (r - 1)
    verified = True

    if prime == 3:
        verified = False

        if b_override is not None:
            b = b_override
        else:
            LOGGER.debug(
                "Using the unverified default b(3, {}) = {}".format(r, b)
            )

    return RadiusParams(prime, classical, r, b, verified=verified)


class InequalityReport(object):
    """
    Outcome of one instantiated inequality.

    Attributes
    ----------
    name : str
    ok : bool
    checked : int
        Number of instances examined.
    margin : Fraction
        Smallest LHS - RHS found.
    counterexamples : list
    """
    __slots__ = ("name", "ok", "checked", "margin", "counterexamples")

    def __init__(self, name, checked, margin, counterexamples=None):
        self.name = name
        self.checked = checked
        self.margin = margin
        self.counterexamples = counterexamples or []
        self.ok = not self.counterexamples

    def __bool__(self):
        return self.ok

    __nonzero__ = __bool__

    def to_dict(self):
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "margin": str(self.margin),
            "counterexamples": [
                [str(i) for i in c] for c in self.counterexamples
            ],
        }

    def __repr__(self):
        return "InequalityReport({}: ok={}, margin={}, {} failures)".format(
            self.name, self.ok, self.margin, len(self.counterexamples),
        )


def sum_term(prime, j):
    """
    1 + j / (2p^2) - v_p(j) - 1 / (p - 1): the contribution of one index
    to LHS - RHS of the sum inequality.
    """
    return 1 + Fraction(j, 2 * prime ** 2) - numbers.val_int(j, prime) - \
        Fraction(1, prime - 1)


def check_sum_inequality(prime, h_max=DEFAULT_H_MAX, j_max=DEFAULT_J_MAX):
    """
    2 + h + N/p - sum v_p(j_i) - h/(p - 1) > (1 - 1/(2p)) N/p for all
    h <= h_max and positive j_i <= j_max, N = sum j_i.

    LHS - RHS = 2 + sum of :func:`sum_term`, so the worst tuple repeats
    the j minimizing the term. For fixed v_p(j) = a the term increases
    with j, hence that minimum is attained at a power of p. One worst
    tuple is examined per h.

    Returns
    -------
    :class:`InequalityReport<padlfun.ledger.InequalityReport>`
    """
    powers = []
    j = 1

    while j <= j_max:
        powers.append(j)
        j *= prime

    worst = min(powers, key=lambda i: sum_term(prime, i))
    beta = sum_term(prime, worst)
    failures = []
    margin = None

    for h in range(1, h_max + 1):
        value = 2 + h * beta
        margin = value if margin is None else min(margin, value)

        if value <= 0:
            failures.append((h, (worst,) * h, value))

    if failures:
        LOGGER.warning(
            "Sum inequality fails at p = {} for h >= {}: j = {}".format(
                prime, failures[0][0], worst,
            )
        )

    return InequalityReport(
        "sum inequality", h_max, margin, failures,
    )


def check_log_convergence(prime):
    """
    v_p(p h^(-p/(p-1))) = 1 - p/(p-1) v_p(h) against the two bounds used
    for log convergence: >= 5/(4(p-1)) when v_p(h) <= 1/4 (p >= 3), and
    >= 3/(2(p-1)) when v_p(h) <= 1/2 (p >= 5).
    """
    cases = [(Fraction(1, 4), Fraction(5, 4 * (prime - 1)), 3)]
    cases.append((Fraction(1, 2), Fraction(3, 2 * (prime - 1)), 5))
    failures = []
    margin = None

    for hdg, bound, least in cases:
        if prime < least:
            continue

        value = 1 - Fraction(prime, prime - 1) * hdg - bound
        margin = value if margin is None else min(margin, value)

        if value < 0:
            failures.append((hdg, bound, value))

    return InequalityReport(
        "log convergence", len(cases), margin, failures,
    )


def check_level_inequalities(prime):
    """
    2p^2 - 1 <= p^3 (inert) and 3p^2 - p - 1 <= p^3 (ramified).
    """
    values = [
        prime ** 3 - (2 * prime ** 2 - 1),
        prime ** 3 - (3 * prime ** 2 - prime - 1),
    ]
    failures = [(prime, v) for v in values if v < 0]

    return InequalityReport(
        "level inequalities", 2, Fraction(min(values)), failures,
    )


def check_radius_inequality(prime, h_max=DEFAULT_RADIUS_H_MAX):
    """
    z p (r - 1) >= (p - 1) p + r with z = 1 - 1/(2p), for r = p + 2 + h.
    """
    z = 1 - Fraction(1, 2 * prime)
    failures = []
    margin = None

    for h in range(h_max + 1):
        r = prime + 2 + h
        value = z * prime * (r - 1) - ((prime - 1) * prime + r)
        margin = value if margin is None else min(margin, value)

        if value < 0:
            failures.append((h, r, value))

    return InequalityReport(
        "radius inequality", h_max + 1, margin, failures,
    )


def check_inequalities(prime, h_max=DEFAULT_H_MAX, j_max=DEFAULT_J_MAX,
                       radius_h_max=DEFAULT_RADIUS_H_MAX):
    """
    Run every inequality check at one prime.

    Returns
    -------
    list of :class:`InequalityReport<padlfun.ledger.InequalityReport>`
    """
    _check_prime(prime)
    reports = [
        check_sum_inequality(prime, h_max=h_max, j_max=j_max),
        check_log_convergence(prime),
        check_level_inequalities(prime),
        check_radius_inequality(prime, h_max=radius_h_max),
    ]

    for report in reports:
        LOGGER.debug("p = {}: {}".format(prime, report))

    return reports


class PrecisionLedger(object):
    """
    The worst precision loss (denominator exponent) observed per named
    computation in a run.

    Attributes
    ----------
    losses : dict of str to int
    """

    def __init__(self):
        self.losses = {}

    def record(self, name, loss):
        if loss > self.losses.get(name, 0):
            LOGGER.debug("Precision loss {} in {}".format(loss, name))
            self.losses[name] = loss

    @property
    def worst(self):
        return max(self.losses.values()) if self.losses else 0

    def to_dict(self):
        return {"losses": dict(sorted(self.losses.items())),
                "worst": self.worst}


def ledger_rows(primes, levels, classical=True):
    """
    Rows (p, case, n, hdg, period, r, b, n_k) for the valuation table.
    """
    rows = []

    for prime in primes:
        params = radius_params(classical, prime)

        for case in (INERT, RAMIFIED):
            for n in levels:
                profile = canonical_valuations(prime, case, n)
                rows.append((
                    prime, case, n, profile.hdg, profile.period,
                    params.r, params.b, params.n_k(case),
                ))

    return rows
