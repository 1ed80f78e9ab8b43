"""
Sources of CM values: the evaluation of the interpolated operator at the
twisted CM points indexed by H(c, N).

The geometry behind these values is out of reach here, so every oracle is a
table or a rule over H(c, N) that honours the one property the L-sums use:
for a rational r congruent to 1 modulo p^n,

    eval(x, nu, r) = (k + 2 nu)(r) * eval(x, nu, 1).

Values are PadicNumber, CycloPadic (when a nebentype enters) or
TruncatedPoly (families).
"""

from __future__ import absolute_import, division

from fractions import Fraction
import logging
import random

from padlfun import ledger
from padlfun.characters.dirichlet import DirichletChar
from padlfun.errors import DomainError, PreconditionError
from padlfun.padic import numbers
from padlfun.padic.numbers import PadicNumber
from padlfun.padic.polys import TruncatedPoly
from padlfun.padic.weights import classical_embed, weight_combine, weight_eval
from padlfun.quadratic.forms import SPLIT, splitting_type
from padlfun.quadratic.hgroup import HElement

LOGGER = logging.getLogger("padlfun.oracles")

LEVEL_TAGS = {"n": 0, "n-1": 1, "n-2": 2}
"""
Level tags of the oracle file format, as offsets below the level n.
"""


class OracleContext(object):
    """
    The data an oracle is attached to.

    Attributes
    ----------
    prime : int
    disc_K : int
    case : str
        "inert" or "ramified".
    level : int
        n, with CM points of level p^n.
    k : int
        Weight of the form.
    conductor : int
        c.
    modulus : int
        N.
    eps : :class:`DirichletChar<padlfun.characters.dirichlet.DirichletChar>`
        Nebentype of the form.
    period : :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
        The period as a scalar.
    period_valuation : Fraction
        Its valuation, taken from the valuation ledger.
    prec : int
    """
    __slots__ = ("prime", "disc_K", "case", "level", "k", "conductor",
                 "modulus", "eps", "period", "period_valuation", "prec")

    __hash__ = None

    def __init__(self, prime, disc_K, level, k, conductor, modulus=1,
                 eps=None, period=1, period_valuation=None,
                 prec=numbers.DEFAULT_PRECISION):
        case = splitting_type(disc_K, prime)

        if case == SPLIT:
            raise PreconditionError(
                "CM oracles need p non-split, {} splits in Q(sqrt({}))"
                .format(prime, disc_K)
            )

        if eps is None:
            eps = DirichletChar.trivial(modulus)

        if eps.modulus != modulus:
            raise DomainError(
                "Nebentype modulo {} for N = {}".format(eps.modulus, modulus)
            )

        expected = ledger.canonical_valuations(prime, case, level).period

        if period_valuation is not None and \
                Fraction(period_valuation) != expected:
            raise PreconditionError(
                "Period valuation {} differs from the ledger value {}".format(
                    period_valuation, expected,
                )
            )

        self.prime = prime
        self.disc_K = disc_K
        self.case = case
        self.level = level
        self.k = k
        self.conductor = conductor
        self.modulus = modulus
        self.eps = eps
        self.period = numbers.padic(period, prime, prec)
        self.period_valuation = expected
        self.prec = prec

        if not self.period.is_unit():
            raise DomainError(
                "The period scalar must be a unit, got {}".format(self.period)
            )

    @classmethod
    def for_group(cls, group, prime, k, **kwargs):
        """
        The context of an oracle over the points indexed by group, at the
        level v_p(c).
        """
        c = group.order.conductor

        return cls(
            prime, group.order.disc_K, numbers.val_int(c, prime), k, c,
            modulus=group.level, **kwargs
        )

    def weight(self, nu):
        """
        k + 2 nu.
        """
        return weight_combine(classical_embed(self.k, self.prime), nu)

    def check_group(self, group):
        if (group.order.disc_K, group.order.conductor, group.level) != \
                (self.disc_K, self.conductor, self.modulus):
            raise PreconditionError(
                "Oracle context (D_K = {}, c = {}, N = {}) does not match "
                "H(c = {}, N = {}) of D_K = {}".format(
                    self.disc_K, self.conductor, self.modulus,
                    group.order.conductor, group.level, group.order.disc_K,
                )
            )

    def eps_value(self, t):
        """
        eps(t) as a p-adic cyclotomic number.
        """
        return self.eps.value(t).to_padic(self.prime, self.prec)

    def to_dict(self):
        return {
            "prime": self.prime,
            "disc_K": self.disc_K,
            "case": self.case,
            "level": self.level,
            "k": self.k,
            "conductor": self.conductor,
            "modulus": self.modulus,
            "eps": self.eps.to_dict(),
            "period": str(self.period),
            "period_valuation": str(self.period_valuation),
            "prec": self.prec,
        }

    @classmethod
    def from_dict(cls, data):
        prime = int(data["prime"])
        prec = int(data.get("prec", numbers.DEFAULT_PRECISION))
        period = data.get("period", 1)

        if isinstance(period, str):
            period = PadicNumber.from_string(period, prime)

        eps = data.get("eps")

        return cls(
            prime, int(data["disc_K"]), int(data["level"]), int(data["k"]),
            int(data["conductor"]), modulus=int(data.get("modulus", 1)),
            eps=DirichletChar.from_dict(eps) if eps else None,
            period=period,
            period_valuation=data.get("period_valuation"),
            prec=prec,
        )

    def __repr__(self):
        return "OracleContext(p={}, {}, n={}, k={}, c={}, N={})".format(
            self.prime, self.case, self.level, self.k, self.conductor,
            self.modulus,
        )


class CMOracle(object):
    """
    Base class of the oracles. Subclasses provide :meth:`base_value`, the
    untwisted value at an element of H(c, N), a weight nu and a level
    offset (0 for p^n, 1 for p^(n-1), 2 for p^(n-2)).

    Attributes
    ----------
    context : :class:`OracleContext<padlfun.lfun.oracles.OracleContext>`
    name : str
    """

    def __init__(self, context, name):
        self.context = context
        self.name = name

    def base_value(self, x, nu, level=0):
        raise NotImplementedError

    def evaluate(self, x, nu, r=1, level=0):
        """
        The value at the r-twist of x.

        Parameters
        ----------
        x : :class:`HElement<padlfun.quadratic.hgroup.HElement>`
        nu : :class:`PadicWeight<padlfun.padic.weights.PadicWeight>`
        r : int or Fraction, optional
            Congruent to 1 modulo p^n.
        level : int, optional

        Returns
        -------
        PadicNumber, CycloPadic or TruncatedPoly
        """
        value = self.base_value(x, nu, level)

        if r == 1:
            return value

        return value * self.twist_factor(nu, r)

    def twist_factor(self, nu, r):
        """
        (k + 2 nu)(r), after checking r = 1 mod p^n.
        """
        ctx = self.context
        p = ctx.prime

        if numbers.valuation(Fraction(r) - 1, p) < ctx.level:
            raise DomainError(
                "Twists must be 1 modulo {}^{}, got {}".format(
                    p, ctx.level, r,
                )
            )

        return weight_eval(ctx.weight(nu), r, ctx.prec)

    def check_equivariance(self, x, nu, r):
        """
        Whether eval(x, nu, r) = (k + 2 nu)(r) eval(x, nu).
        """
        return self.evaluate(x, nu, r) == \
            self.evaluate(x, nu) * self.twist_factor(nu, r)

    def __repr__(self):
        return "{}({}, {})".format(type(self).__name__, self.name,
                                   self.context)


class TableOracle(CMOracle):
    """
    Values stored per (element, level offset), independent of nu.

    Attributes
    ----------
    values : dict
        (HElement, int) -> value.
    """

    def __init__(self, context, values, name="table"):
        super(TableOracle, self).__init__(context, name)
        self.values = dict(values)

    def base_value(self, x, nu, level=0):
        try:
            return self.values[(x, level)]
        except KeyError:
            raise DomainError(
                "Oracle {} has no value at {} for level n - {}".format(
                    self.name, x, level,
                )
            )

    def levels(self):
        return sorted(set(level for _, level in self.values))

    def rows(self):
        """
        (element id, level tag, value) in a fixed order, for the oracle
        file format.
        """
        tags = dict((v, k) for k, v in LEVEL_TAGS.items())

        return [
            (str(x), tags[level], str(self.values[(x, level)]))
            for x, level in sorted(self.values, key=lambda i: (i[1], i[0]))
        ]


class MockOracle(TableOracle):
    """
    Seeded pseudo-random units at every element and requested level.
    """

    def __init__(self, context, group, seed=0, levels=(0,)):
        context.check_group(group)
        rng = random.Random(seed)
        p, prec = context.prime, context.prec
        values = {}

        for level in levels:
            for x in group.elements():
                unit = rng.randrange(1, p ** prec)

                while unit % p == 0:
                    unit = rng.randrange(1, p ** prec)

                values[(x, level)] = PadicNumber(p, 0, unit, prec)

        super(MockOracle, self).__init__(
            context, values, name="mock(seed={})".format(seed),
        )

    @classmethod
    def constant(cls, context, group, value, levels=(0,)):
        """
        The oracle with the same value everywhere.
        """
        context.check_group(group)
        value = numbers.padic(value, context.prime, context.prec)

        return TableOracle(
            context,
            dict(
                ((x, level), value)
                for level in levels for x in group.elements()
            ),
            name="constant({})".format(value),
        )


class FileOracle(TableOracle):
    """
    Values read from an oracle file: a context header and rows
    (element id, level tag, p-adic value).
    """

    def __init__(self, context, group, rows, path=None):
        context.check_group(group)
        n_lifts = len(group.lift_orders)
        values = {}

        for ident, tag, text in rows:
            if tag not in LEVEL_TAGS:
                raise DomainError(
                    "Unknown level tag \"{}\" in {}".format(tag, path)
                )

            x = HElement.from_string(ident, n_lifts)
            values[(x, LEVEL_TAGS[tag])] = PadicNumber.from_string(
                text, context.prime,
            )

        super(FileOracle, self).__init__(
            context, values, name="file({})".format(path),
        )

    @classmethod
    def load(cls, path, group):
        from padlfun import loaders

        header, rows = loaders.load_oracle(path)

        return cls(OracleContext.from_dict(header), group, rows, path=path)


class LevelOracle(TableOracle):
    """
    An oracle built from classical per-class data.

    At level n the value above a class a of Pic(O_c) is
    eps(t) L(a) / period^w; at the lower levels p^(n-m) the values are
    constant on the cosets of the image in H(c, N) of the local units
    congruent to 1 modulo p^(n-m).

    Attributes
    ----------
    group : :class:`HGroup<padlfun.quadratic.hgroup.HGroup>`
    classical : dict
        Class index -> L(a).
    weight_exponent : int
        w = k + 2 m.
    """

    def __init__(self, context, group, classical, weight_exponent,
                 sublevels=None, name="level"):
        context.check_group(group)
        self.group = group
        self.classical = dict(
            (cls, numbers.padic(v, context.prime, context.prec))
            for cls, v in classical.items()
        )
        self.weight_exponent = weight_exponent

        scale = context.period ** -weight_exponent
        values = {}

        for x in group.elements():
            values[(x, 0)] = context.eps_value(x.unit) * \
                (self.classical[group.project(x)] * scale)

        for level, table in (sublevels or {}).items():
            for x in group.elements():
                values[(x, level)] = table[x]

        super(LevelOracle, self).__init__(context, values, name=name)

    @classmethod
    def synthetic(cls, context, group, weight_exponent, seed=0,
                  levels=(1, 2)):
        """
        Seeded classical data and sub-level values with the invariance
        above.
        """
        rng = random.Random(seed)
        p, n, prec = context.prime, context.level, context.prec

        def draw():
            return PadicNumber.from_residue(rng.randrange(p ** prec), p, prec)

        classical = dict((cls, draw()) for cls in range(group.class_number))
        sublevels = {}

        for level in levels:
            if level > n:
                continue

            subgroup = sorted(group.local_units(p, n - level))
            table = {}

            for x in group.elements():
                if x in table:
                    continue

                value = draw()

                for s in subgroup:
                    table[group.multiply(x, s)] = value

            sublevels[level] = table

        LOGGER.debug(
            "Synthetic level oracle for {}: levels {}".format(
                context, sorted(sublevels),
            )
        )

        return cls(context, group, classical, weight_exponent,
                   sublevels=sublevels,
                   name="synthetic-level(seed={})".format(seed))


class PicLiftOracle(CMOracle):
    """
    Per-class data of Pic(O_c), lifted to H(c, N) through the nebentype:
    eval((l, k, t)) = scale * eps(t) * value(a), a the class of (l, k).
    A value may be a list indexed by a grading degree j.

    Attributes
    ----------
    group : :class:`HGroup<padlfun.quadratic.hgroup.HGroup>`
    values : dict
        Class index -> value or list of values.
    scale : PadicNumber
    grade : int or None
        The degree used by :meth:`base_value` for graded data.
    """

    def __init__(self, context, group, values, scale=1, grade=None,
                 name="pic"):
        super(PicLiftOracle, self).__init__(context, name)
        context.check_group(group)
        self.group = group
        self.values = dict(values)
        self.scale = numbers.padic(scale, context.prime, context.prec)
        self.grade = grade

        missing = set(range(group.class_number)) - set(self.values)

        if missing:
            raise DomainError(
                "Missing data for the classes {}".format(sorted(missing))
            )

    def class_value(self, cls, grade=None):
        value = self.values[cls]

        if isinstance(value, (list, tuple)):
            grade = self.grade if grade is None else grade

            if grade is None or not 0 <= grade < len(value):
                raise DomainError(
                    "No degree {} value for class {}".format(grade, cls)
                )

            value = value[grade]

        return numbers.padic(value, self.context.prime, self.context.prec)

    def base_value(self, x, nu, level=0):
        if level:
            raise DomainError("{} only has level n values".format(self.name))

        return self.context.eps_value(x.unit) * \
            (self.scale * self.class_value(self.group.project(x)))

    @classmethod
    def from_primitives(cls, context, group, forms, r, point=1, **kwargs):
        """
        Graded values G_j(a) = sum_n g_j[n] point^n from the Coleman
        primitives g of depleted forms attached to the classes.

        Parameters
        ----------
        forms : dict
            Class index -> depleted :class:`QExpansion<padlfun.qexp.qexpansion.QExpansion>`.
        r : int
        point : int or PadicNumber, optional
        """
        from padlfun.qexp.coleman import coleman_primitive

        values = {}

        for index, f in forms.items():
            section = coleman_primitive(f, r)
            values[index] = [
                _evaluate_series(g, point) for g in section.components
            ]

        return cls(context, group, values, name="primitive", **kwargs)


def _evaluate_series(f, point):
    total, power = PadicNumber.zero(f.prime), 1

    for a in f.coeffs:
        total = total + a * power
        power = power * point

    return total


class PolyFamilyOracle(CMOracle):
    """
    Values that are polynomials of degree <= D in the family variable u.

    Attributes
    ----------
    coefficients : dict
        HElement -> list of D + 1 coefficients.
    cap : int
        D.
    """

    def __init__(self, context, coefficients, cap, name="family"):
        super(PolyFamilyOracle, self).__init__(context, name)
        p, prec = context.prime, context.prec
        self.cap = cap
        self.coefficients = dict(
            (x, [numbers.padic(a, p, prec) for a in coeffs])
            for x, coeffs in coefficients.items()
        )

        for x, coeffs in self.coefficients.items():
            if len(coeffs) > cap + 1:
                raise DomainError(
                    "Degree {} family value at {} exceeds D = {}".format(
                        len(coeffs) - 1, x, cap,
                    )
                )

    @classmethod
    def random(cls, context, group, cap, seed=0):
        rng = random.Random(seed)
        p, prec = context.prime, context.prec
        coefficients = dict(
            (x, [
                PadicNumber.from_residue(rng.randrange(p ** prec), p, prec)
                for _ in range(cap + 1)
            ])
            for x in group.elements()
        )

        return cls(context, coefficients, cap,
                   name="family(seed={})".format(seed))

    def base_value(self, x, nu, level=0):
        if level:
            raise DomainError("{} only has level n values".format(self.name))

        try:
            return TruncatedPoly(self.coefficients[x], self.cap)
        except KeyError:
            raise DomainError("No family value at {}".format(x))

    def specialize(self, u):
        """
        The one-variable oracle at u.
        """
        return TableOracle(
            self.context,
            dict(
                ((x, 0), TruncatedPoly(coeffs, self.cap).evaluate(u))
                for x, coeffs in self.coefficients.items()
            ),
            name="{}@{}".format(self.name, u),
        )
