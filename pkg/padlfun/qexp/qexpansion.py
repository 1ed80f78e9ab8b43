"""
Truncated q-expansions and the operators acting on them: U, V, T_p,
p-depletion, theta and its p-adic powers, and finite character twists.

Every value records its truncation order N_q: coefficients a_0, ..., a_{N_q}
are known, nothing beyond. Binary operations keep the smaller order.
"""

from __future__ import absolute_import, division

import logging

from padlfun.errors import DomainError, PreconditionError, PrimeMismatchError
from padlfun.padic import numbers
from padlfun.padic.numbers import INF, PadicNumber
from padlfun.padic.polys import TruncatedPoly
from padlfun.padic.weights import classical_embed, weight_eval

LOGGER = logging.getLogger("padlfun.qexpansion")


def _coeff_valuation(a, prime):
    if isinstance(a, TruncatedPoly):
        return min(_coeff_valuation(c, prime) for c in a.coeffs)

    if isinstance(a, PadicNumber):
        return numbers.valuation(a)

    return numbers.val_rational(a, prime)


def _is_zero(a):
    if isinstance(a, TruncatedPoly):
        return all(_is_zero(c) for c in a.coeffs)

    if isinstance(a, PadicNumber):
        return a.is_zero()

    return a == 0


class QExpansion(object):
    """
    A q-series sum_{n <= N_q} a_n q^n with p-adic coefficients.

    Attributes
    ----------
    prime : int
    coeffs : list
        PadicNumber entries, or TruncatedPoly entries for families.
    weight : :class:`PadicWeight<padlfun.padic.weights.PadicWeight>`, optional
        Advisory weight tag.
    nebentype : :class:`DirichletChar<padlfun.characters.dirichlet.DirichletChar>`, optional
    """
    __slots__ = ("prime", "coeffs", "weight", "nebentype")

    __hash__ = None

    def __init__(self, prime, coeffs, weight=None, nebentype=None,
                 prec=numbers.DEFAULT_PRECISION):
        self.prime = prime
        self.coeffs = [self._coerce_coeff(c, prec) for c in coeffs]
        self.weight = weight
        self.nebentype = nebentype

        assert self.coeffs, "A q-expansion needs at least a_0"

    def _coerce_coeff(self, c, prec):
        if isinstance(c, TruncatedPoly):
            return c

        return numbers.padic(c, self.prime, prec)

    @classmethod
    def zero(cls, prime, truncation):
        return cls(prime, [PadicNumber.zero(prime)] * (truncation + 1))

    @classmethod
    def monomial(cls, prime, n, truncation, coeff=1,
                 prec=numbers.DEFAULT_PRECISION):
        """
        coeff * q^n, known up to q^truncation.
        """
        coeffs = [PadicNumber.zero(prime)] * (truncation + 1)

        if n <= truncation:
            coeffs[n] = numbers.padic(coeff, prime, prec)

        return cls(prime, coeffs)

    @property
    def truncation(self):
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        if n > self.truncation:
            raise DomainError(
                "a_{} lies beyond the truncation order {}".format(
                    n, self.truncation,
                )
            )

        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def _new(self, coeffs, weight=None):
        return QExpansion(
            self.prime, coeffs,
            weight=weight, nebentype=self.nebentype,
        )

    def truncate(self, truncation):
        return self._new(self.coeffs[:truncation + 1], self.weight)

    def map(self, func):
        """
        Apply func(n, a_n) to every coefficient.
        """
        return self._new(
            [func(n, a) for n, a in enumerate(self.coeffs)], self.weight,
        )

    # Arithmetic

    def _check(self, other):
        if not isinstance(other, QExpansion):
            return False

        if other.prime != self.prime:
            raise PrimeMismatchError(
                "Cannot combine {}-adic and {}-adic q-expansions".format(
                    self.prime, other.prime,
                )
            )

        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented

        return self._new(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.weight,
        )

    def __neg__(self):
        return self._new([-a for a in self.coeffs], self.weight)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented

        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            self._check(other)
            n = min(self.truncation, other.truncation)
            out = [PadicNumber.zero(self.prime)] * (n + 1)

            for i, a in enumerate(self.coeffs[:n + 1]):
                if _is_zero(a):
                    continue

                for j, b in enumerate(other.coeffs[:n + 1 - i]):
                    out[i + j] = out[i + j] + a * b

            return self._new(out)

        return self._new([a * other for a in self.coeffs], self.weight)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QExpansion):
            return NotImplemented

        return self._new([a / other for a in self.coeffs], self.weight)

    __div__ = __truediv__

    def __eq__(self, other):
        if not self._check(other):
            return NotImplemented

        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    # Queries

    def valuation(self):
        """
        Minimum valuation over the stored coefficients.
        """
        return min(_coeff_valuation(a, self.prime) for a in self.coeffs)

    def is_zero(self):
        return all(_is_zero(a) for a in self.coeffs)

    def is_depleted(self):
        return all(
            _is_zero(a)
            for n, a in enumerate(self.coeffs)
            if n % self.prime == 0
        )

    def reduce(self, absprec):
        return self.map(
            lambda n, a: a.reduce(absprec) if isinstance(a, PadicNumber)
            else a
        )

    def to_dict(self):
        return {
            "prime": self.prime,
            "truncation": self.truncation,
            "weight": None if self.weight is None else str(self.weight),
            "nebentype": (
                None if self.nebentype is None else self.nebentype.to_dict()
            ),
            "coefficients": [
                [n, str(a)] for n, a in enumerate(self.coeffs)
            ],
        }

    def __repr__(self):
        shown = ", ".join(str(a) for a in self.coeffs[:4])

        return "QExpansion(p={}, N_q={}, [{}{}])".format(
            self.prime, self.truncation, shown,
            ", ..." if self.truncation > 3 else "",
        )


def discrepancy(f, g):
    """
    Smallest valuation of a_n(f) - a_n(g) over the common range (INF when
    the two agree to the available precision).
    """
    worst = INF

    for a, b in zip(f.coeffs, g.coeffs):
        d = a - b

        if not _is_zero(d):
            worst = min(worst, _coeff_valuation(d, f.prime))

    return worst


class IdentityReport(object):
    """
    Outcome of comparing the two sides of an operator identity.

    Attributes
    ----------
    name : str
    ok : bool
    discrepancy : int or float
        Smallest valuation of a coefficient-wise difference, INF on exact
        agreement.
    detail : dict
    """
    __slots__ = ("name", "ok", "discrepancy", "detail")

    def __init__(self, name, ok, discrepancy=INF, detail=None):
        self.name = name
        self.ok = ok
        self.discrepancy = discrepancy
        self.detail = detail or {}

    def __bool__(self):
        return self.ok

    __nonzero__ = __bool__

    def __repr__(self):
        return "IdentityReport({!r}, ok={}, discrepancy={})".format(
            self.name, self.ok, self.discrepancy,
        )


def compare(name, lhs, rhs, prec=None):
    """
    Build an :class:`IdentityReport` for lhs == rhs.

    With prec given, agreement modulo p^prec is enough.
    """
    d = discrepancy(lhs, rhs)
    ok = d == INF if prec is None else d >= prec

    if not ok:
        LOGGER.warning(
            "Identity {} fails with discrepancy valuation {}".format(name, d)
        )

    return IdentityReport(name, ok, d)


# Hecke-type operators


def op_U(f):
    """
    U: sum a_n q^n -> sum a_{np} q^n.

    The truncation order drops to floor(N_q / p).
    """
    p = f.prime

    return f._new(
        [f.coeffs[n * p] for n in range(f.truncation // p + 1)], f.weight,
    )


def op_V(f, buffer=None):
    """
    V: sum a_n q^n -> sum a_n q^{pn}.

    The truncation order grows to p * N_q, capped at buffer when given.
    """
    p = f.prime
    truncation = p * f.truncation

    if buffer is not None:
        truncation = min(truncation, buffer)

    coeffs = [PadicNumber.zero(p)] * (truncation + 1)

    for n in range(0, truncation + 1, p):
        coeffs[n] = f.coeffs[n // p]

    return f._new(coeffs, f.weight)


def _char_at_prime(eps, prime, prec):
    if eps is None:
        return PadicNumber.one(prime, prec)

    if eps.modulus % prime == 0:
        raise PreconditionError(
            "T_{} needs a nebentype of level prime to {}, got modulus {}"
            .format(prime, prime, eps.modulus)
        )

    value = eps.value(prime)

    if value.is_rational():
        return numbers.padic(value.constant(), prime, prec)

    return value.embed(prime, prec)


def op_Tp(f, k, eps=None, prec=numbers.DEFAULT_PRECISION):
    """
    The Hecke operator F | T_p = F | U + eps(p) p^(k-1) F | V.

    Parameters
    ----------
    f : :class:`QExpansion<padlfun.qexp.qexpansion.QExpansion>`
    k : int
        Weight, at least 1.
    eps : :class:`DirichletChar<padlfun.characters.dirichlet.DirichletChar>`, optional
        Nebentype; defaults to the one recorded on f, then to trivial.

    Returns
    -------
    :class:`QExpansion<padlfun.qexp.qexpansion.QExpansion>`
    """
    if k < 1:
        raise PreconditionError("T_p needs an integer weight k >= 1")

    p = f.prime

    if eps is None:
        eps = f.nebentype

    u = op_U(f)
    v = op_V(f, buffer=u.truncation)
    scale = _char_at_prime(eps, p, prec) * p ** (k - 1)

    return u + v * scale


def deplete(f):
    """
    F^[p] = F - V U F: drops every a_n with p | n, a_0 included.
    """
    p = f.prime

    return f.map(
        lambda n, a: PadicNumber.zero(p) if n % p == 0 else a
    )


def deplete_eigen(f, a_p, k, eps=None, prec=numbers.DEFAULT_PRECISION):
    """
    Depletion of a T_p eigenform, F | (1 - a_p V + eps(p) p^(k-1) V^2).

    Raises
    ------
    PreconditionError
        When F | T_p differs from a_p F on the available coefficients.
    """
    p = f.prime
    a_p = numbers.padic(a_p, p, prec)

    if eps is None:
        eps = f.nebentype

    tp = op_Tp(f, k, eps, prec)
    report = compare("T_p eigenform", tp, f * a_p)

    if not report.ok:
        raise PreconditionError(
            "Not a T_{} eigenform with eigenvalue {} (discrepancy {})".format(
                p, a_p, report.discrepancy,
            )
        )

    n = f.truncation
    v1 = op_V(f, buffer=n)
    v2 = op_V(v1, buffer=n)

    return f - v1 * a_p + v2 * (_char_at_prime(eps, p, prec) * p ** (k - 1))


# Theta operators


def theta(f):
    """
    theta = q d/dq: a_n -> n a_n.
    """
    return f.map(lambda n, a: a * n)


def _require_depleted(f, what):
    if not f.is_depleted():
        raise DomainError(
            "{} needs a p-depleted q-expansion (a_n = 0 for {} | n)".format(
                what, f.prime,
            )
        )


def theta_inverse(f, power=1):
    """
    a_n -> n^(-power) a_n, for q-expansions with vanishing constant term.

    Indices divisible by p are allowed; their coefficients lose valuation.
    """
    p = f.prime

    if not _is_zero(f.coeffs[0]):
        raise DomainError(
            "theta^-{} needs a vanishing constant term".format(power)
        )

    return f.map(
        lambda n, a: a if n == 0 else a / numbers.padic(n, p) ** power
    )


def theta_weight(f, nu, j, prec=numbers.DEFAULT_PRECISION):
    """
    The operator a_n -> nu(n) n^(-j) a_n on depleted q-expansions.

    Parameters
    ----------
    f : :class:`QExpansion<padlfun.qexp.qexpansion.QExpansion>`
        Depleted.
    nu : :class:`PadicWeight<padlfun.padic.weights.PadicWeight>`
    j : int
        May be negative.
    prec : int, optional

    Returns
    -------
    :class:`QExpansion<padlfun.qexp.qexpansion.QExpansion>`

    Raises
    ------
    DomainError
        On non-depleted input.
    """
    _require_depleted(f, "theta^(nu - j)")
    p = f.prime

    def transform(n, a):
        if n % p == 0 or _is_zero(a):
            return a

        value = weight_eval(nu, n, prec)
        shift = numbers.padic(n, p, prec) ** -j

        return a * (value * shift)

    return f.map(transform)


def theta_power(f, m, prec=numbers.DEFAULT_PRECISION):
    """
    theta^m for an integer m, through the classical weight t -> t^m.
    """
    return theta_weight(f, classical_embed(m, f.prime), 0, prec)


def twist_finite(f, chi, generator=None, prec=numbers.DEFAULT_PRECISION):
    """
    a_n -> chi(n mod p) a_n for a character chi modulo p.
    """
    _require_depleted(f, "Twisting")
    p = f.prime

    if chi.modulus != p:
        raise PreconditionError(
            "Twists use characters modulo {}, got modulus {}".format(
                p, chi.modulus,
            )
        )

    values = {
        a: chi.value_padic(a, p, prec, generator=generator)
        for a in range(1, p)
    }

    return f.map(
        lambda n, a: a if n % p == 0 else a * values[n % p]
    )


# Fixtures


def eta_product(prime, exponents, truncation, prec=numbers.DEFAULT_PRECISION):
    """
    The eta quotient prod_m eta(m tau)^(r_m) as a q-expansion with integer
    coefficients.

    Parameters
    ----------
    prime : int
    exponents : dict of int to int
        Maps m to r_m; sum m r_m must be a multiple of 24.
    truncation : int

    Returns
    -------
    :class:`QExpansion<padlfun.qexp.qexpansion.QExpansion>`

    Examples
    --------
    >>> f = eta_product(5, {1: 2, 11: 2}, 10)
    >>> f[1] == 1 and f[2] == -2
    True
    """
    shift, rem = divmod(sum(m * r for m, r in exponents.items()), 24)

    if rem:
        raise DomainError(
            "Eta quotient {} has a fractional leading exponent".format(
                exponents,
            )
        )

    series = [0] * (truncation + 1)

    if shift <= truncation:
        series[shift] = 1

    for m, r in sorted(exponents.items()):
        for n in range(m, truncation + 1, m):
            for _ in range(abs(r)):
                if r > 0:
                    # multiply by (1 - q^n)
                    for i in range(truncation, n - 1, -1):
                        series[i] -= series[i - n]
                else:
                    # divide by (1 - q^n)
                    for i in range(n, truncation + 1):
                        series[i] += series[i - n]

    LOGGER.debug(
        "Eta product {} to order {}".format(exponents, truncation)
    )

    return QExpansion(prime, series, prec=prec)


def check_primitive_depletion(f, a_p, k, eps=None,
                              prec=numbers.DEFAULT_PRECISION):
    """
    For an eigenform f of weight k, compare the depletion of G = theta^-1 f
    with G | (1 - (a_p / p) V + eps(p) p^(k-3) V^2).

    Returns
    -------
    :class:`IdentityReport<padlfun.qexp.qexpansion.IdentityReport>`
    """
    p = f.prime
    a_p = numbers.padic(a_p, p, prec)
    g = theta_inverse(f)
    n = g.truncation
    v1 = op_V(g, buffer=n)
    v2 = op_V(v1, buffer=n)

    if eps is None:
        eps = f.nebentype

    rhs = g - v1 * (a_p / p) + v2 * (
        _char_at_prime(eps, p, prec) * numbers.padic(p, p, prec) ** (k - 3)
    )

    return compare("primitive depletion", deplete(g), rhs)
