"""
Imaginary quadratic orders, reduced binary quadratic forms, Gauss
composition and ideal-class groups.

Classes of invertible ideals of the order O_c of conductor c are represented
by the reduced primitive positive definite forms of discriminant c^2 D_K.
"""

from __future__ import absolute_import, division

from fractions import Fraction
from functools import partial
import logging
import math

import sympy

from padlfun import regexes, utils
from padlfun.errors import BoundError, DomainError

LOGGER = logging.getLogger("padlfun.forms")

DEFAULT_DISC_BOUND = 10 ** 6

SPLIT, INERT, RAMIFIED = "split", "inert", "ramified"
SPLITTING_TYPES = (SPLIT, INERT, RAMIFIED)


def _squarefree(n):
    return all(e == 1 for e in sympy.factorint(n).values())


def is_fundamental(disc):
    """
    Whether disc is the discriminant of an imaginary quadratic field.
    """
    if disc >= 0:
        return False

    if disc % 4 == 1:
        return _squarefree(-disc)

    if disc % 4 == 0:
        m = disc // 4

        return m % 4 in (2, 3) and _squarefree(-m)

    return False


class QuadOrder(object):
    """
    The order O_c = Z + c O_K of conductor c in K = Q(sqrt(D_K)).

    Attributes
    ----------
    disc_K : int
        Fundamental discriminant, negative.
    conductor : int
    """
    __slots__ = ("disc_K", "conductor")

    def __init__(self, disc_K, conductor=1):
        if not is_fundamental(disc_K):
            raise DomainError(
                "{} is not an imaginary quadratic fundamental "
                "discriminant".format(disc_K)
            )

        if conductor < 1:
            raise DomainError(
                "Conductors are positive, got {}".format(conductor)
            )

        self.disc_K = disc_K
        self.conductor = conductor

    @property
    def disc(self):
        return self.conductor ** 2 * self.disc_K

    @property
    def unit_count(self):
        """
        |O_c^*|: 4 for Z[i], 6 for Z[zeta_3], 2 otherwise.
        """
        if self.conductor == 1 and self.disc_K == -4:
            return 4

        if self.conductor == 1 and self.disc_K == -3:
            return 6

        return 2

    def maximal(self):
        return QuadOrder(self.disc_K)

    def __eq__(self, other):
        if not isinstance(other, QuadOrder):
            return NotImplemented

        return (self.disc_K, self.conductor) == \
            (other.disc_K, other.conductor)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.disc_K, self.conductor))

    def to_dict(self):
        return {"disc_K": self.disc_K, "conductor": self.conductor}

    def __repr__(self):
        return "QuadOrder(D_K={}, c={})".format(self.disc_K, self.conductor)


class Form(object):
    """
    The binary quadratic form a x^2 + b xy + c y^2.

    Attributes
    ----------
    a : int
    b : int
    c : int
    """
    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        self.a, self.b, self.c = int(a), int(b), int(c)

    @classmethod
    def identity(cls, disc):
        """
        The principal form of discriminant disc.
        """
        b = disc % 2

        return cls(1, b, (b * b - disc) // 4)

    @classmethod
    def from_string(cls, text):
        m = regexes.RE_FORM.match(text)

        if not m:
            raise DomainError("Unable to parse form \"{}\"".format(text))

        return cls(*(int(i) for i in m.groups()))

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def evaluate(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_primitive(self):
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    def is_reduced(self):
        a, b, c = self

        return (
            -a < b <= a <= c and
            not (a == c and b < 0)
        )

    def transform(self, matrix):
        """
        The form f(p X + q Y, r X + s Y) for matrix ((p, q), (r, s)).
        """
        (p, q), (r, s) = matrix
        a, b, c = self

        return Form(
            self.evaluate(p, r),
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            self.evaluate(q, s),
        )

    def reduce_with_matrix(self):
        """
        Reduce, tracking the SL_2(Z) substitution.

        Returns
        -------
        form : :class:`Form<padlfun.quadratic.forms.Form>`
            Reduced and equivalent to this one.
        matrix : tuple of tuple of int
            ((p, q), (r, s)) with form(X, Y) = self(p X + q Y, r X + s Y).
        """
        if self.a <= 0 or self.disc >= 0:
            raise DomainError(
                "Only positive definite forms reduce, got {}".format(self)
            )

        a, b, c = self
        m = ((1, 0), (0, 1))

        def step(m, t):
            (p, q), (r, s) = m
            (p2, q2), (r2, s2) = t

            return (
                (p * p2 + q * r2, p * q2 + q * s2),
                (r * p2 + s * r2, r * q2 + s * s2),
            )

        while True:
            # Bring b into (-a, a].
            t = (a - b) // (2 * a)

            if t:
                b, c = b + 2 * t * a, a * t * t + b * t + c
                m = step(m, ((1, t), (0, 1)))

            if a < c or (a == c and b >= 0):
                break

            s = (c + b) // (2 * c)
            a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
            m = step(m, ((0, -1), (1, s)))

        reduced = Form(a, b, c)
        assert self.transform(m) == reduced

        return reduced, m

    def reduce(self):
        return self.reduce_with_matrix()[0]

    def compose(self, other):
        """
        Gauss (Dirichlet) composition, reduced.
        """
        if self.disc != other.disc:
            raise DomainError(
                "Cannot compose forms of discriminants {} and {}".format(
                    self.disc, other.disc,
                )
            )

        a1, b1, c1 = self
        a2, b2, c2 = other

        g = (b1 + b2) // 2
        h = (b2 - b1) // 2
        w = math.gcd(math.gcd(a1, a2), g)

        s, t, u = a1 // w, a2 // w, g // w

        # Solve k t - l s = h, k u - m s = c2, l u - m t = c1 for k, l, m.
        mu, nu = _solve_linear_mod(t * u, h * u + s * c1, s * t)
        lam = _solve_linear_mod(t * nu, h - t * mu, s)[0]
        k = mu + nu * lam
        l = (k * t - h) // s
        m = (t * u * k - h * u - s * c1) // (s * t)

        composed = Form(s * t, w * u - (k * t + l * s), k * l - w * m)
        assert composed.disc == self.disc

        return composed.reduce()

    __mul__ = compose

    def inverse(self):
        return Form(self.a, -self.b, self.c).reduce()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** -n

        result, base = Form.identity(self.disc), self.reduce()

        while n:
            if n & 1:
                result = result * base

            base = base * base
            n >>= 1

        return result

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented

        return tuple(self) == tuple(other)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(self))

    def __lt__(self, other):
        return tuple(self) < tuple(other)

    def __str__(self):
        return "({}, {}, {})".format(self.a, self.b, self.c)

    def __repr__(self):
        return "Form{}".format(self)


def _solve_linear_mod(a, b, m):
    """
    Solutions of a x = b (mod m), as x = u + v n.
    """
    x, _, g = utils.igcdex(a, m)

    if b % g:
        raise DomainError("{} x = {} mod {} has no solution".format(a, b, m))

    return (b // g) * x % m, m // g


def _reduced_forms_with_a(disc, a):
    out = []

    for b in range(-a + 1, a + 1):
        if (b - disc) % 2 or (b * b - disc) % (4 * a):
            continue

        c = (b * b - disc) // (4 * a)
        f = Form(a, b, c)

        if f.is_reduced() and f.is_primitive():
            out.append(f)

    return out


def reduced_forms(disc, bound=DEFAULT_DISC_BOUND, cpu_count=1):
    """
    All reduced primitive forms of a negative discriminant.

    Parameters
    ----------
    disc : int
    bound : int, optional
        Largest |disc| accepted.
    cpu_count : int, optional
        Workers for the scan over a.

    Returns
    -------
    list of :class:`Form<padlfun.quadratic.forms.Form>`
        Sorted, principal form first.
    """
    if abs(disc) > bound:
        raise BoundError(
            "|disc| = {} exceeds the enumeration bound {}".format(
                abs(disc), bound,
            )
        )

    a_max = math.isqrt(-disc // 3)

    chunks = utils.pool_map(
        partial(_reduced_forms_with_a, disc),
        range(1, a_max + 1),
        cpu_count=cpu_count,
    )

    return sorted(f for chunk in chunks for f in chunk)


class ClassGroup(object):
    """
    Pic(O_c) on reduced forms, with its composition table.

    Attributes
    ----------
    order : :class:`QuadOrder<padlfun.quadratic.forms.QuadOrder>`
    forms : list of :class:`Form<padlfun.quadratic.forms.Form>`
        Principal form at index 0.
    table : list of list of int
        table[i][j] is the index of forms[i] * forms[j].
    """

    def __init__(self, order, forms, table):
        self.order = order
        self.forms = forms
        self.table = table
        self._index = {f: i for i, f in enumerate(forms)}

    @property
    def size(self):
        return len(self.forms)

    @property
    def identity(self):
        return 0

    def index(self, form):
        """
        Index of the class of any primitive form of the right
        discriminant.
        """
        if form.disc != self.order.disc:
            raise DomainError(
                "{} does not have discriminant {}".format(
                    form, self.order.disc,
                )
            )

        return self._index[form.reduce()]

    def multiply(self, i, j):
        return self.table[i][j]

    def power(self, i, n):
        n %= self.order_of(i)
        out = self.identity

        for _ in range(n):
            out = self.table[out][i]

        return out

    def inverse(self, i):
        return self.index(self.forms[i].inverse())

    def order_of(self, i):
        n, x = 1, i

        while x != self.identity:
            x = self.table[x][i]
            n += 1

        return n

    def check_group_law(self):
        """
        Associativity, commutativity and inverses of the table.
        """
        h = self.size
        ok = all(
            self.table[i][j] == self.table[j][i] and
            self.table[i][self.inverse(i)] == self.identity
            for i in range(h) for j in range(h)
        )

        return ok and all(
            self.table[self.table[i][j]][k] == self.table[i][self.table[j][k]]
            for i in range(h) for j in range(h) for k in range(h)
        )

    def to_dict(self):
        return {
            "order": self.order.to_dict(),
            "disc": self.order.disc,
            "class_number": self.size,
            "forms": [str(f) for f in self.forms],
            "table": self.table,
        }


def class_group(order, bound=DEFAULT_DISC_BOUND, cpu_count=1):
    """
    Enumerate Pic(O_c) and its composition table.

    Parameters
    ----------
    order : :class:`QuadOrder<padlfun.quadratic.forms.QuadOrder>`
    bound : int, optional
    cpu_count : int, optional

    Returns
    -------
    :class:`ClassGroup<padlfun.quadratic.forms.ClassGroup>`

    Raises
    ------
    BoundError
        If c^2 |D_K| exceeds bound.

    Examples
    --------
    >>> class_group(QuadOrder(-23)).size
    3
    """
    forms = reduced_forms(order.disc, bound=bound, cpu_count=cpu_count)
    principal = Form.identity(order.disc)
    assert forms[0] == principal

    index = {f: i for i, f in enumerate(forms)}
    table = [
        [index[f * g] for g in forms]
        for f in forms
    ]

    LOGGER.info(
        "Class group of discriminant {}: h = {}".format(order.disc, len(forms))
    )

    return ClassGroup(order, forms, table)


def class_number_formula(order):
    """
    h(O_c) = h(O_K) c prod_{l | c} (1 - (D_K|l)/l) / [O_K^* : O_c^*].
    """
    h_K = len(reduced_forms(order.disc_K))
    c = order.conductor
    value = Fraction(h_K * c)

    for l in sympy.primefactors(c):
        value *= 1 - Fraction(utils.kronecker_symbol(order.disc_K, l), l)

    value /= Fraction(order.maximal().unit_count, order.unit_count)
    assert value.denominator == 1

    return int(value)


def splitting_type(disc_K, prime):
    """
    How an odd prime decomposes in K, via the Kronecker symbol (D_K | p).

    Returns
    -------
    str
        One of "split", "inert", "ramified".
    """
    if prime % 2 == 0 or not sympy.isprime(prime):
        raise DomainError("Expected an odd prime, got {}".format(prime))

    symbol = utils.kronecker_symbol(disc_K, prime)

    return {1: SPLIT, -1: INERT, 0: RAMIFIED}[symbol]
