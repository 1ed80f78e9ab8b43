"""
The invariant suite behind the "check" command.

Every check is a module-level function of a
:class:`RunConfig<padlfun.config.RunConfig>` returning a list of
:class:`CheckResult<padlfun.checks.CheckResult>`, so that the suite can be
spread over a process pool.
"""

from __future__ import absolute_import, division

from fractions import Fraction
from functools import partial
import itertools
import logging
import math
import random
from time import time

from . import ledger, utils
from .characters.dirichlet import (
    DirichletChar, char_table, gauss_sum, gen_bernoulli_L,
)
from .characters.hecke import enumerate_chars
from .errors import PadlfunError
from .lfun import assembly
from .lfun.oracles import (
    LevelOracle, MockOracle, OracleContext, PolyFamilyOracle,
)
from .padic.weights import classical_embed
from .qexp.coleman import (
    check_coleman_recursion, check_primitive_iterates, coleman_primitive,
)
from .qexp.eisenstein import eisenstein, to_qp
from .qexp.nabla import WSection, check_commutation, nabla_iterate, nabla_nu
from .qexp.qexpansion import (
    QExpansion, deplete, deplete_eigen, eta_product, op_U, op_V,
)
from .quadratic.forms import QuadOrder, class_group, class_number_formula
from .quadratic.hgroup import hgroup
from .quadratic.ideals import (
    heegner_criterion, heegner_ideal, ideal_in_class,
)

LOGGER = logging.getLogger("padlfun.checks")

OPERATOR_PRIMES = (5, 7)
VALUATION_PRIMES = (3, 5, 7, 13)
INEQUALITY_PRIMES = (5, 7, 11)

GROUP_DISCS = (-3, -4, -7, -8, -11, -15, -19, -20, -23, -24)
GROUP_CONDUCTORS = (1, 2, 3)
GROUP_LEVELS = range(1, 16)

# (p, D_K, c) with v_p(c) = 2: one inert and one ramified case per prime.
ASSEMBLY_CASES = (
    (5, -3, 25),
    (5, -20, 25),
    (7, -4, 49),
    (7, -7, 49),
)
ASSEMBLY_ORACLES = 10
COMMUTATION_SAMPLES = 50
GROUP_LAW_SAMPLES = 200


class CheckResult(object):
    """
    Outcome of one invariant.

    Attributes
    ----------
    group : str
        The check that produced it.
    name : str
    ok : bool
    detail : str
    seconds : float
    """
    __slots__ = ("group", "name", "ok", "detail", "seconds")

    def __init__(self, group, name, ok, detail="", seconds=0.0):
        self.group = group
        self.name = name
        self.ok = bool(ok)
        self.detail = detail
        self.seconds = seconds

    def __bool__(self):
        return self.ok

    __nonzero__ = __bool__

    def to_row(self):
        return (
            self.group, self.name, "pass" if self.ok else "FAIL",
            self.detail, "{:.3f}".format(self.seconds),
        )

    def __repr__(self):
        return "CheckResult({}: {}, {})".format(
            self.group, self.name, "pass" if self.ok else "FAIL",
        )


RESULT_HEADER = ["check", "name", "status", "detail", "seconds"]


def _result(name, ok, detail=""):
    return (name, ok, str(detail))


# Operators

def check_operators(config):
    out = []
    T, prec = config.truncation, config.precision

    for p in OPERATOR_PRIMES:
        e4 = eisenstein(4, None, T, p, prec=prec)
        out.append(_result(
            "U V = Id (p = {})".format(p), op_U(op_V(e4)) == e4,
        ))
        out.append(_result(
            "U deplete = 0 (p = {})".format(p), op_U(deplete(e4)).is_zero(),
        ))
        out.append(_result(
            "deplete_eigen E_4 (p = {})".format(p),
            deplete_eigen(e4, 1 + p ** 3, 4, prec=prec) == deplete(e4),
        ))

    return out


def check_specialization(config):
    out = []

    for p in OPERATOR_PRIMES:
        for w in (2, 4):
            if w == 2:
                f = deplete(eta_product(p, {1: 2, 11: 2}, config.truncation))
            else:
                f = deplete(eisenstein(4, None, config.truncation, p))

            k = classical_embed(w, p)

            for m in range(1, 6):
                section, report = nabla_nu(
                    f, k, classical_embed(m, p), m, prec=config.precision,
                    cpu_count=1,
                )
                out.append(_result(
                    "nabla^{} = {} steps (k = {}, p = {})".format(m, m, w, p),
                    section == nabla_iterate(WSection.from_form(f, k), m) and
                    report.certified,
                ))

    return out


def _random_depleted(rng, prime, truncation):
    return QExpansion(prime, [
        0 if n % prime == 0 else rng.randrange(-prime ** 4, prime ** 4)
        for n in range(truncation + 1)
    ])


def check_commutation_laws(config):
    rng = random.Random(config.seed)
    failures = 0

    for _ in range(COMMUTATION_SAMPLES):
        p = rng.choice(OPERATOR_PRIMES)
        f = _random_depleted(rng, p, min(config.truncation, 50))

        if not check_commutation(f, classical_embed(2, p)):
            failures += 1

    return [_result(
        "theta V = p V theta, theta U = U theta / p",
        failures == 0,
        "{} of {} samples fail".format(failures, COMMUTATION_SAMPLES),
    )]


def check_coleman(config):
    out = []
    p = 5
    f = deplete(eta_product(p, {1: 2, 11: 2}, min(config.truncation, 40)))

    for r in range(5):
        out.append(_result(
            "Coleman recursion r = {}".format(r),
            check_coleman_recursion(coleman_primitive(f, r), f),
        ))
        out.append(_result(
            "primitive iterates r = {}".format(r),
            check_primitive_iterates(f, r, prec=config.precision),
        ))

    return out


# Groups and valuations

def group_law_failures(group, rng, samples=GROUP_LAW_SAMPLES):
    """
    Violations of the group law of an HGroup: identity and inverses on
    every element, associativity and commutativity on random samples,
    generation by sections and units, and multiplicativity of decompose.

    Returns
    -------
    list of str
        Empty when every property holds.
    """
    failures = []
    elements = group.elements()
    one = group.identity()

    for x in elements:
        if group.multiply(x, one) != x:
            failures.append("{} * 1 != {}".format(x, x))

        if group.multiply(x, group.inverse(x)) != one:
            failures.append("{} has no inverse".format(x))

    for _ in range(samples):
        x, y, z = (rng.choice(elements) for _ in range(3))

        if group.multiply(x, y) != group.multiply(y, x):
            failures.append("{} and {} do not commute".format(x, y))

        if group.multiply(group.multiply(x, y), z) != \
                group.multiply(x, group.multiply(y, z)):
            failures.append(
                "({} {}) {} is not associative".format(x, y, z)
            )

    gens = [group.section(cls) for cls in range(group.class_number)]
    gens += [group.from_unit(t) for t in group.units.gens]
    closure = group.closure(gens)

    if len(closure) != group.class_number * utils.euler_phi(group.level) or \
            closure != set(elements):
        failures.append(
            "sections and units generate {} of {} elements".format(
                len(closure), group.size,
            )
        )

    c = group.order.conductor
    ideals = [
        ideal_in_class(f, group.order.disc_K, c * group.level)
        for f in group.pic.forms
    ]

    for a, b in itertools.product(ideals, repeat=2):
        x, _ = group.decompose(a)
        y, _ = group.decompose(b)
        z, _ = group.decompose(a * b)

        if not group.equivalent(z, group.multiply(x, y)):
            failures.append("decompose is not multiplicative")
            break

    return failures


def check_groups(config):
    rng = random.Random(config.seed)
    out = []

    for disc_K in GROUP_DISCS:
        for c in GROUP_CONDUCTORS:
            order = QuadOrder(disc_K, c)

            if abs(order.disc) > config.disc_bound:
                continue

            size = class_group(order, bound=config.disc_bound).size
            out.append(_result(
                "h(O_c) formula (D_K = {}, c = {})".format(disc_K, c),
                size == class_number_formula(order), size,
            ))

            level = next(
                n for n in GROUP_LEVELS
                if n > 1 and math.gcd(n, c) == 1 and
                heegner_criterion(disc_K, n)
            )
            group = hgroup(order, heegner_ideal(disc_K, level),
                           bound=config.disc_bound)
            failures = group_law_failures(group, rng)
            out.append(_result(
                "H(c, N) group law (D_K = {}, c = {}, N = {})".format(
                    disc_K, c, level,
                ),
                not failures,
                "; ".join(failures[:3]) or group.size,
            ))

    return out


def check_valuations(config):
    ok = True

    for p in VALUATION_PRIMES:
        for n in range(1, 5):
            inert = ledger.canonical_valuations(p, "inert", n)
            ramified = ledger.canonical_valuations(p, "ramified", n)
            ok = ok and (
                inert.hdg == Fraction(1, p ** (n - 1) * (p + 1)) and
                ramified.hdg == Fraction(1, 2 * p ** n) and
                inert.period == Fraction(1, p ** (n - 1) * (p ** 2 - 1)) and
                ramified.period == Fraction(1, 2 * p ** n * (p - 1))
            )

    return [
        _result("canonical valuations", ok),
        _result(
            "n_k(5) = 2 classical, 3 otherwise",
            ledger.radius_params(True, 5).n_inert == 2 and
            ledger.radius_params(False, 5).n_inert == 3,
        ),
    ]


def check_inequality_sweeps(config):
    out = []

    for p in INEQUALITY_PRIMES:
        for report in ledger.check_inequalities(p, h_max=2):
            out.append(_result(
                "{} (p = {})".format(report.name, p), report,
                report.to_dict() if not report else "",
            ))

        # Counterexamples exist from h = 3 on; none may appear below.
        report = ledger.check_sum_inequality(p)
        first = min([h for h, _, _ in report.counterexamples] or [None],
                    key=lambda h: float("inf") if h is None else h)
        out.append(_result(
            "{} up to h = {} (p = {})".format(
                report.name, ledger.DEFAULT_H_MAX, p,
            ),
            first is None or first >= 3,
            "{} counterexamples, first at h = {}".format(
                len(report.counterexamples), first,
            ),
        ))

    return out


# Eisenstein constants

def check_eisenstein(config):
    trivial = DirichletChar.trivial()
    e4 = eisenstein(4, None, 1, 5, prec=config.precision)
    out = [_result(
        "E_4 constant term 1/120 in Z_5",
        e4[0] == to_qp(gen_bernoulli_L(trivial, 4), 5, config.precision) and
        gen_bernoulli_L(trivial, 4) == Fraction(1, 120),
    )]

    ok = True

    for n in range(1, 13):
        for chi in char_table(n):
            if not chi.is_primitive():
                continue

            sign = -1 if chi.parity else 1
            ok = ok and gauss_sum(chi) * gauss_sum(chi.conjugate()) == sign * n

    out.append(_result("s(eps) s(conj eps) = eps(-1) N, N <= 12", ok))

    return out


# Assembly

def _assembly_case(p, disc_K, c):
    group = hgroup(QuadOrder(disc_K, c), heegner_ideal(disc_K, 1))
    chars = [
        chi for chi in enumerate_chars(group, 2, 0)
        if chi.conductor_ppart(p) == 2
    ]

    return group, chars


def check_assembly(config):
    out = []
    rng = random.Random(config.seed)

    for p, disc_K, c in ASSEMBLY_CASES:
        label = "p = {}, D_K = {}".format(p, disc_K)
        group, chars = _assembly_case(p, disc_K, c)
        context = OracleContext.for_group(group, p, 2, prec=config.precision)
        oracle = MockOracle(context, group, seed=config.seed)
        n = context.level
        twists = dict(
            (x, 1 + p ** n * (i + 1)) for i, x in enumerate(group.elements())
        )

        out.append(_result(
            "r-twist invariance ({})".format(label),
            all(
                assembly.lp_value(chi, oracle, twists=twists).value ==
                assembly.lp_value(chi, oracle).value
                for chi in chars
            ),
            "{} characters".format(len(chars)),
        ))
        out.append(_result(
            "orthogonality ({})".format(label),
            all(
                assembly.orthogonality_vanish(chi, n, m, p)
                for chi in chars for m in range(n)
            ),
        ))

        units = group.local_units(p, 1)
        cancelling = [
            chi for chi in chars if assembly.subgroup_sum(chi, units) == 0
        ]
        ok = True

        for i in range(ASSEMBLY_ORACLES):
            synthetic = LevelOracle.synthetic(
                context, group, 2, seed=rng.randrange(2 ** 31),
            )
            a_p = rng.randrange(p ** 3)
            ok = ok and all(
                assembly.interpolation_check(chi, synthetic, a_p)
                for chi in cancelling
            )

        out.append(_result(
            "interpolation cancellation ({})".format(label), ok,
            "{} characters, {} oracles".format(
                len(cancelling), ASSEMBLY_ORACLES,
            ),
        ))

    return out


def check_families(config):
    p, disc_K, c = ASSEMBLY_CASES[0]
    group, chars = _assembly_case(p, disc_K, c)
    context = OracleContext.for_group(group, p, 2, prec=config.precision)
    out = []

    for cap in range(1, min(config.family_cap, 4) + 1):
        oracle = PolyFamilyOracle.random(context, group, cap, seed=config.seed)
        out.append(_result(
            "two-variable coefficients, D = {}".format(cap),
            all(assembly.finite_difference_check(chi, oracle)
                for chi in chars),
        ))

    return out


CHECKS = {
    "operators": check_operators,
    "specialization": check_specialization,
    "commutation": check_commutation_laws,
    "coleman": check_coleman,
    "groups": check_groups,
    "valuations": check_valuations,
    "inequalities": check_inequality_sweeps,
    "eisenstein": check_eisenstein,
    "assembly": check_assembly,
    "families": check_families,
}


def _run_one(config, name):
    start = time()

    try:
        items = CHECKS[name](config)
    except PadlfunError as err:
        LOGGER.warning("Check {} raised {!r}".format(name, err))
        items = [_result(name, False, repr(err))]

    seconds = (time() - start) / max(len(items), 1)

    return [
        CheckResult(name, item_name, ok, detail, seconds)
        for item_name, ok, detail in items
    ]


def run_checks(config, names=None):
    """
    Run the named checks (all by default) through a process pool.

    Parameters
    ----------
    config : :class:`RunConfig<padlfun.config.RunConfig>`
    names : list of str, optional

    Returns
    -------
    list of :class:`CheckResult<padlfun.checks.CheckResult>`
    """
    names = sorted(CHECKS) if names is None else list(names)
    unknown = [name for name in names if name not in CHECKS]

    if unknown:
        raise PadlfunError("Unknown checks: {}".format(", ".join(unknown)))

    LOGGER.info("Running {} checks".format(len(names)))

    results = [
        result
        for batch in utils.pool_map(
            partial(_run_one, config), names, cpu_count=config.cpus,
        )
        for result in batch
    ]

    failed = [r for r in results if not r.ok]

    for r in failed:
        LOGGER.warning("Check failed: {} / {} {}".format(
            r.group, r.name, r.detail,
        ))

    LOGGER.info("{} of {} invariants hold".format(
        len(results) - len(failed), len(results),
    ))

    return results
