"""
Finite-sum p-adic L-values over a CM oracle.

For a character chi with finite part psi on H(c, N) and an oracle of level
p^n,

    L_p(F, chi) = 1 / phi(N) sum_{x in H(c, N)} psi(x)^-1
                  (k + 2 nu)(r_x)^-1 eval(x, nu, r_x),

which does not depend on the twists r_x. The module also assembles the
one-class-group sums of the Kronecker limit and Gross-Zagier type formulas,
and checks the laws the sums obey: orthogonality, interpolation and
polynomial dependence on a family variable.
"""

from __future__ import absolute_import, division

from fractions import Fraction
from functools import partial
import logging
import math

from padlfun import ledger, utils
from padlfun.characters.hecke import DeformedChar, weight_map
from padlfun.errors import DomainError, PreconditionError
from padlfun.padic import numbers
from padlfun.padic.cyclo import Cyclotomic, CycloPadic
from padlfun.padic.polys import finite_difference_coefficients
from padlfun.padic.weights import (
    classical_embed, weight_combine, weight_eval,
)

LOGGER = logging.getLogger("padlfun.assembly")


class LValue(object):
    """
    An assembled value with its provenance and precision certificate.

    Attributes
    ----------
    value : :class:`CycloPadic<padlfun.padic.cyclo.CycloPadic>` or list
        A list of coefficients for two-variable values.
    character : dict
    oracle : str
    requested : int
        Requested absolute precision.
    precision : int or float
        Absolute precision reached.
    period_exponent : int
        Power of the period in the value; its valuation is
        period_exponent * period_valuation on top of the stored scalar.
    period_valuation : Fraction
    """
    __slots__ = ("value", "character", "oracle", "requested", "precision",
                 "period_exponent", "period_valuation")

    __hash__ = None

    def __init__(self, value, character, oracle, requested, precision,
                 period_exponent=0, period_valuation=Fraction(0)):
        self.value = value
        self.character = character
        self.oracle = oracle
        self.requested = requested
        self.precision = precision
        self.period_exponent = period_exponent
        self.period_valuation = period_valuation

    @property
    def loss(self):
        return max(0, self.requested - self.precision)

    @property
    def valuation_shift(self):
        return self.period_exponent * self.period_valuation

    def is_zero(self):
        if isinstance(self.value, list):
            return all(v.is_zero() for v in self.value)

        return self.value.is_zero()

    def __eq__(self, other):
        if isinstance(other, LValue):
            return self.value == other.value and \
                self.valuation_shift == other.valuation_shift

        return self.value == other

    def __ne__(self, other):
        return not self == other

    def to_dict(self):
        if isinstance(self.value, list):
            value = [str(v) for v in self.value]
        else:
            value = str(self.value)

        return {
            "value": value,
            "character": self.character,
            "oracle": self.oracle,
            "precision": {
                "requested": self.requested,
                "reached": str(self.precision),
                "loss": str(self.loss),
            },
            "period": {
                "exponent": self.period_exponent,
                "valuation": str(self.period_valuation),
            },
        }

    def __repr__(self):
        return "LValue({}, oracle={}, prec={})".format(
            self.value, self.oracle, self.precision,
        )


def root_sum(exponents):
    """
    sum exp(2 pi i e) over the exponents, exactly.

    Examples
    --------
    >>> root_sum([Fraction(i, 3) for i in range(3)]) == 0
    True
    >>> root_sum([0] * 5) == 5
    True
    """
    total = Cyclotomic.rational(0)

    for e in exponents:
        total = total + Cyclotomic.root_of_unity(e)

    return total


def _root(exponent, prime, prec):
    return Cyclotomic.root_of_unity(exponent).to_padic(prime, prec)


def _weights(chi, prime):
    if isinstance(chi, DeformedChar):
        return weight_map(chi, prime)[1]

    return classical_embed(chi.k, prime), classical_embed(chi.j, prime)


def _nu(chi, prime):
    """
    The weight nu of a character and whether it is classical.
    """
    _, nu = _weights(chi, prime)

    return nu, nu.is_classical()


def char_twist(chi, r, prime, prec=numbers.DEFAULT_PRECISION):
    """
    chi_nu(r) = (k + 2 nu)(r) for r in 1 + p^n Z_p, with k and nu the
    weights of chi.
    """
    k, nu = _weights(chi, prime)

    return weight_eval(weight_combine(k, nu), r, prec)


def _differs(a, b):
    diff = a - b

    if isinstance(diff, int):
        return diff != 0

    return not diff.is_zero()


def _character_id(chi):
    if isinstance(chi, DeformedChar):
        data = chi.base.to_dict()
        data["shift"] = [str(chi.shift_k), str(chi.shift_j)]
    else:
        data = chi.to_dict()

    data.pop("group", None)

    return data


def check_context(chi, oracle, check_gate=True, classical=True,
                  b_override=None):
    """
    Match a character against an oracle context and apply the gate
    conductor_p(chi) >= n_k(p).

    Raises
    ------
    PreconditionError
    """
    ctx = oracle.context
    p = ctx.prime
    ctx.check_group(chi.group)

    if _differs(chi.k, ctx.k):
        raise PreconditionError(
            "Character of weight k = {} against an oracle of weight {}".format(
                chi.k, ctx.k,
            )
        )

    n = chi.conductor_ppart(p)

    if n != ctx.level:
        raise PreconditionError(
            "Conductor p-part {}^{} does not match the oracle level {}^{}"
            .format(p, n, p, ctx.level)
        )

    if check_gate:
        params = ledger.radius_params(classical, p, b_override)
        threshold = params.n_k(ctx.case)

        if n < threshold:
            raise PreconditionError(
                "Conductor p-part {}^{} is below n_k({}) = {}".format(
                    p, n, p, threshold,
                )
            )

    return n


def _summand(chi, oracle, nu, combination, twists, x):
    ctx = oracle.context
    r = twists.get(x, 1) if twists else 1
    term = 0

    for level, coeff in combination:
        term = oracle.evaluate(x, nu, r, level) * coeff + term

    if r != 1:
        term = term / char_twist(chi, r, ctx.prime, ctx.prec)

    return _root(-chi.psi(x), ctx.prime, ctx.prec) * term


def _finish(total, chi, oracle, book, name, period_exponent=0):
    ctx = oracle.context
    precision = total.absprec()
    value = LValue(
        total, _character_id(chi), oracle.name, ctx.prec, precision,
        period_exponent=period_exponent,
        period_valuation=ctx.period_valuation,
    )

    if precision != numbers.INF and value.loss:
        LOGGER.debug(
            "{}: precision {} of {} requested".format(
                name, precision, ctx.prec,
            )
        )

    if book is not None and precision != numbers.INF:
        book.record(name, value.loss)

    return value


def lp_value(chi, oracle, twists=None, combination=((0, 1),),
             check_gate=True, b_override=None, book=None, cpu_count=1):
    """
    The normalized sum of psi^-1 times the oracle over H(c, N).

    Parameters
    ----------
    chi : :class:`HeckeChar<padlfun.characters.hecke.HeckeChar>` or :class:`DeformedChar<padlfun.characters.hecke.DeformedChar>`
    oracle : :class:`CMOracle<padlfun.lfun.oracles.CMOracle>`
    twists : dict, optional
        HElement -> r, rational and congruent to 1 modulo p^n.
    combination : sequence of (int, coefficient), optional
        Level offsets and the coefficients their values are summed with.
    check_gate : bool, optional
    b_override : int, optional
        b(3, r) for the gate at p = 3.
    book : :class:`PrecisionLedger<padlfun.ledger.PrecisionLedger>`, optional
    cpu_count : int, optional

    Returns
    -------
    :class:`LValue<padlfun.lfun.assembly.LValue>`

    Raises
    ------
    PreconditionError
        When the conductor misses the gate or the oracle context.
    """
    ctx = oracle.context
    nu, classical = _nu(chi, ctx.prime)
    check_context(chi, oracle, check_gate=check_gate, classical=classical,
                  b_override=b_override)
    group = chi.group

    terms = utils.pool_map(
        partial(_summand, chi, oracle, nu, combination, twists),
        group.elements(),
        cpu_count=cpu_count,
    )
    total = CycloPadic(ctx.prime, 1, [0])

    for term in terms:
        total = total + term

    total = total / group.units.size

    LOGGER.debug(
        "L_p over {} elements with {}".format(group.size, oracle.name)
    )

    return _finish(total, chi, oracle, book, "lp_value")


def lp_two_var(chi, oracle, book=None):
    """
    The sum of :func:`lp_value` for a polynomial family oracle, taken
    coefficient by coefficient in the family variable u.

    Returns
    -------
    :class:`LValue<padlfun.lfun.assembly.LValue>`
        value is the list of the coefficients of 1, u, ..., u^D.
    """
    ctx = oracle.context
    p, prec = ctx.prime, ctx.prec
    nu, classical = _nu(chi, p)
    check_context(chi, oracle, classical=classical)
    group = chi.group
    sums = [CycloPadic(p, 1, [0]) for _ in range(oracle.cap + 1)]

    for x in group.elements():
        root = _root(-chi.psi(x), p, prec)
        poly = oracle.evaluate(x, nu)

        for d in range(oracle.cap + 1):
            sums[d] = sums[d] + root * poly.coeffs[d]

    sums = [s / group.units.size for s in sums]
    precision = min(s.absprec() for s in sums)
    value = LValue(
        sums, _character_id(chi), oracle.name, prec, precision,
        period_valuation=ctx.period_valuation,
    )

    if book is not None and precision != numbers.INF:
        book.record("lp_two_var", value.loss)

    return value


def specialize_value(value, u):
    """
    A two-variable value at u.
    """
    total = 0

    for a in reversed(value.value):
        total = total * u + a

    return total


def finite_difference_check(chi, oracle, points=None):
    """
    Compare the coefficients of :func:`lp_two_var` with those recovered
    from :func:`lp_value` at D + 1 specializations.

    Returns
    -------
    bool
    """
    if points is None:
        points = list(range(oracle.cap + 1))

    values = [lp_value(chi, oracle.specialize(u)).value for u in points]
    recovered = finite_difference_coefficients(values, points)
    coefficients = lp_two_var(chi, oracle).value

    ok = all(a == b for a, b in zip(recovered, coefficients))

    if not ok:
        LOGGER.warning(
            "Two-variable coefficients of {} disagree with finite "
            "differences".format(oracle.name)
        )

    return ok


class OrthogonalityReport(object):
    """
    A character sum over the local units congruent to 1 modulo p^m.

    Attributes
    ----------
    n : int
    m : int
    conductor : int
        The measured conductor exponent.
    size : int
        Number of units summed over.
    total : :class:`Cyclotomic<padlfun.padic.cyclo.Cyclotomic>`
    """
    __slots__ = ("n", "m", "conductor", "size", "total")

    def __init__(self, n, m, conductor, size, total):
        self.n = n
        self.m = m
        self.conductor = conductor
        self.size = size
        self.total = total

    @property
    def vanishes(self):
        return self.total == 0

    @property
    def ok(self):
        return self.conductor == self.n and self.vanishes

    def __bool__(self):
        return self.ok

    __nonzero__ = __bool__

    def to_dict(self):
        return {
            "n": self.n,
            "m": self.m,
            "conductor": self.conductor,
            "size": self.size,
            "total": str(self.total),
            "ok": self.ok,
        }

    def __repr__(self):
        return "OrthogonalityReport(n={}, m={}, sum={}, ok={})".format(
            self.n, self.m, self.total, self.ok,
        )


def orthogonality_vanish(chi, n, m, prime):
    """
    sum chi^-1(r) over local units r = 1 mod p^m, for chi of conductor
    p-part p^n. The sum vanishes for m < n; a conductor mismatch is
    reported with the nonvanishing sum.

    Returns
    -------
    :class:`OrthogonalityReport<padlfun.lfun.assembly.OrthogonalityReport>`
    """
    if not 0 <= m < n:
        raise DomainError("Expected 0 <= m < n, got m = {}, n = {}".format(
            m, n,
        ))

    table = chi.local_character(prime)

    if not table:
        raise PreconditionError(
            "{} does not divide the conductor".format(prime)
        )

    pm = prime ** m
    exponents = [
        -value for (xa, xb), value in sorted(table.items())
        if (xa - 1) % pm == 0 and xb % pm == 0
    ]
    conductor = chi.conductor_ppart(prime)
    report = OrthogonalityReport(
        n, m, conductor, len(exponents), root_sum(exponents),
    )

    if conductor != n:
        LOGGER.warning(
            "Conductor p-part {}^{} instead of {}^{}: sum {}".format(
                prime, conductor, prime, n, report.total,
            )
        )

    return report


def subgroup_sum(chi, elements):
    """
    sum psi(x)^-1 over a set of elements of H(c, N), exactly.
    """
    return root_sum(-chi.psi(x) for x in elements)


def _pic_sum(chi, oracle, value, prec):
    # sum over Pic(O_c) of psi^-1 on the section times value(class)
    group = chi.group
    total = CycloPadic(oracle.context.prime, 1, [0])

    for cls in range(group.class_number):
        x = group.section(cls)
        total = total + _root(
            -chi.psi(x), oracle.context.prime, prec,
        ) * value(cls)

    return total


class InterpolationReport(object):
    """
    Both sides of the interpolation identity.

    Attributes
    ----------
    lhs : :class:`LValue<padlfun.lfun.assembly.LValue>`
    rhs : :class:`CycloPadic<padlfun.padic.cyclo.CycloPadic>`
    sublevels : dict
        Level offset -> contribution of that level alone.
    """
    __slots__ = ("lhs", "rhs", "sublevels")

    def __init__(self, lhs, rhs, sublevels):
        self.lhs = lhs
        self.rhs = rhs
        self.sublevels = sublevels

    @property
    def cancels(self):
        return all(v.is_zero() for v in self.sublevels.values())

    @property
    def ok(self):
        return self.cancels and self.lhs.value == self.rhs

    def __bool__(self):
        return self.ok

    __nonzero__ = __bool__

    def to_dict(self):
        return {
            "lhs": self.lhs.to_dict(),
            "rhs": str(self.rhs),
            "sublevels": dict(
                (str(k), str(v)) for k, v in sorted(self.sublevels.items())
            ),
            "ok": self.ok,
        }


def depletion_combination(oracle, a_p):
    """
    The level combination eval - a_p eval^(n-1) + eps(p) p^(k-1) eval^(n-2).
    """
    ctx = oracle.context
    p, prec = ctx.prime, ctx.prec
    a_p = numbers.padic(a_p, p, prec)
    combination = [(0, 1)]

    if ctx.level >= 1 and not a_p.is_zero():
        combination.append((1, -a_p))

    if ctx.level >= 2:
        combination.append(
            (2, ctx.eps_value(p) * numbers.padic(p, p, prec) ** (ctx.k - 1)),
        )

    return combination


def interpolation_check(chi, oracle, a_p, b_override=None):
    """
    Compare L_p(F, chi) for the depleted level combination with the
    classical sum over Pic(O_c) divided by period^(k + 2m).

    Parameters
    ----------
    chi : :class:`HeckeChar<padlfun.characters.hecke.HeckeChar>`
        Classical, of weight m = chi.j.
    oracle : :class:`LevelOracle<padlfun.lfun.oracles.LevelOracle>`
    a_p : int or PadicNumber

    Returns
    -------
    :class:`InterpolationReport<padlfun.lfun.assembly.InterpolationReport>`

    Raises
    ------
    PreconditionError
        When chi and the oracle have different nebentypes.
    DomainError
        When a level is missing from the oracle.
    """
    ctx = oracle.context

    if chi.eps != ctx.eps:
        raise PreconditionError(
            "Nebentype {} of chi against {} of the oracle".format(
                chi.eps, ctx.eps,
            )
        )

    w = ctx.k + 2 * chi.j

    if w != oracle.weight_exponent:
        raise PreconditionError(
            "Oracle values carry period^-{}, chi needs period^-{}".format(
                oracle.weight_exponent, w,
            )
        )

    combination = depletion_combination(oracle, a_p)
    lhs = lp_value(chi, oracle, combination=combination,
                   b_override=b_override)

    sublevels = {}

    for level, coeff in combination[1:]:
        sublevels[level] = lp_value(
            chi, oracle, combination=[(level, 1)], b_override=b_override,
        ).value

    scale = ctx.period ** -w
    rhs = _pic_sum(
        chi, oracle, lambda cls: oracle.classical[cls] * scale, ctx.prec,
    )
    report = InterpolationReport(lhs, rhs, sublevels)

    if not report.cancels:
        LOGGER.warning(
            "Lower level terms do not cancel for {}: {}".format(
                oracle.name, report.to_dict()["sublevels"],
            )
        )

    return report


def kronecker_assemble(chi, oracle, book=None):
    """
    period * sum over Pic(O_c) of (chi N)^-1(a) log_p(u)(a), for chi of
    infinity type (1, 1), with per-class logarithms from the oracle.

    Parameters
    ----------
    chi : :class:`HeckeChar<padlfun.characters.hecke.HeckeChar>`
    oracle : :class:`PicLiftOracle<padlfun.lfun.oracles.PicLiftOracle>`

    Returns
    -------
    :class:`LValue<padlfun.lfun.assembly.LValue>`
    """
    if chi.infinity_type != (1, 1):
        raise PreconditionError(
            "Expected infinity type (1, 1), got {}".format(chi.infinity_type)
        )

    ctx = oracle.context
    ctx.check_group(chi.group)
    total = _pic_sum(chi, oracle, oracle.class_value, ctx.prec) * ctx.period

    return _finish(total, chi, oracle, book, "kronecker", period_exponent=1)


def gross_zagier_coefficient(period, r, j):
    """
    period^(r - 2j) / j!.
    """
    if not 0 <= j <= r:
        raise DomainError("Expected 0 <= j <= r = {}, got {}".format(r, j))

    return period ** (r - 2 * j) / math.factorial(j)


def gross_zagier_assemble(chi, j, oracle, fixture=None, b_override=None,
                          book=None):
    """
    (period^(r - 2j) / j!) sum over Pic(O_c) of chi^-1(a) G_j(a), for chi
    of infinity type (k - 1 - j, 1 + j) and r = k - 2.

    Parameters
    ----------
    chi : :class:`HeckeChar<padlfun.characters.hecke.HeckeChar>`
    j : int
    oracle : :class:`PicLiftOracle<padlfun.lfun.oracles.PicLiftOracle>`
        Graded per-class values G_0, ..., G_r.
    fixture : tuple, optional
        (f, a_p, eps): an eigenform whose primitive depletion relation is
        verified along the way.

    Returns
    -------
    :class:`LValue<padlfun.lfun.assembly.LValue>`

    Raises
    ------
    DomainError
        When j is outside [0, r].
    PreconditionError
        On the infinity type, the gate or a failed depletion relation.
    """
    ctx = oracle.context
    k = ctx.k
    r = k - 2
    coefficient = gross_zagier_coefficient(ctx.period, r, j)

    if chi.infinity_type != (k - 1 - j, 1 + j):
        raise PreconditionError(
            "Expected infinity type ({}, {}), got {}".format(
                k - 1 - j, 1 + j, chi.infinity_type,
            )
        )

    check_context(chi, oracle, b_override=b_override)

    if fixture is not None:
        from padlfun.qexp.qexpansion import check_primitive_depletion

        f, a_p, eps = fixture
        report = check_primitive_depletion(f, a_p, k, eps)

        if not report:
            raise PreconditionError(
                "Depletion relation fails on the fixture: {}".format(report)
            )

    total = _pic_sum(
        chi, oracle, lambda cls: oracle.class_value(cls, j), ctx.prec,
    ) * coefficient

    return _finish(total, chi, oracle, book, "gross_zagier",
                   period_exponent=r - 2 * j)
