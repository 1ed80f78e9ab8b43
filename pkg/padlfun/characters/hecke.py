"""
Algebraic Hecke characters of K of conductor dividing cN, described by a
finite character psi of H(c, N) together with an infinity type (n, m).

For an ideal a = gamma * J(l, k) of O_c prime to cN (see
:meth:`HGroup.decompose<padlfun.quadratic.hgroup.HGroup.decompose>`),

    chi(a) = exp(2 pi i psi(x)) gamma^(-n) conj(gamma)^(-m)
             prod rho_i^(k_i) prod rho_j^(l_j),

with x the class of a in H(c, N). The kernel symbols rho_i are explicit
elements of K(zeta); the lift symbols rho_j are kept formal, subject to the
relation rho_j^(f_j) = gamma_j^(-n) conj(gamma_j)^(-m) prod rho_i^(k_ji).
Values are therefore exact: a root of unity, an element of K and a vector
of formal exponents.
"""

from __future__ import absolute_import, division

from fractions import Fraction
import itertools
import logging

from sympy.ntheory.modular import crt

from padlfun import ledger
from padlfun.characters.dirichlet import DirichletChar
from padlfun.errors import DomainError, PreconditionError
from padlfun.padic import numbers
from padlfun.padic.local import QuadPadic, quad_power
from padlfun.padic.weights import PadicWeight, classical_embed
from padlfun.quadratic.forms import INERT, RAMIFIED, splitting_type
from padlfun.quadratic.ideals import Ideal, QuadElement, units

LOGGER = logging.getLogger("padlfun.hecke")


class CharValue(object):
    """
    exp(2 pi i root) * factor * prod rho_j^(lifts_j).

    Attributes
    ----------
    root : Fraction
        Exponent in Q/Z.
    factor : :class:`QuadElement<padlfun.quadratic.ideals.QuadElement>`
    lifts : tuple of int
        Exponents of the formal lift symbols.
    """
    __slots__ = ("root", "factor", "lifts")

    __hash__ = None

    def __init__(self, root, factor, lifts=()):
        self.root = Fraction(root) % 1
        self.factor = factor
        self.lifts = tuple(lifts)

    def is_root_of_unity(self):
        return not any(self.lifts) and \
            self.factor.unit_angle() is not None

    def angle(self):
        """
        The exponent in Q/Z of a value that is a root of unity.
        """
        if any(self.lifts):
            raise DomainError("{} involves formal symbols".format(self))

        angle = self.factor.unit_angle()

        if angle is None:
            raise DomainError("{} is not a root of unity".format(self))

        return (self.root + angle) % 1

    def __eq__(self, other):
        if not isinstance(other, CharValue):
            return NotImplemented

        if self.lifts != other.lifts:
            return False

        angle = (self.factor / other.factor).unit_angle()

        return angle is not None and angle == (other.root - self.root) % 1

    def __ne__(self, other):
        return not self == other

    def to_dict(self):
        return {
            "root": str(self.root),
            "factor": self.factor.to_dict(),
            "lifts": list(self.lifts),
        }

    def __repr__(self):
        return "CharValue(exp(2 pi i {}) * {} * rho^{})".format(
            self.root, self.factor, list(self.lifts),
        )


class HeckeChar(object):
    """
    A Hecke character of infinity type (k + j, -j) with nebentype eps.

    Attributes
    ----------
    group : :class:`HGroup<padlfun.quadratic.hgroup.HGroup>`
    k : int
    j : int
    eps : :class:`DirichletChar<padlfun.characters.dirichlet.DirichletChar>`
        Modulo N.
    kernel_images : tuple of Fraction
        psi on the kernel basis of Pic(O_c) -> Pic(O_K).
    lift_images : tuple of Fraction
        psi on the lifts of the Pic(O_K) basis.
    """
    __slots__ = ("group", "k", "j", "eps", "kernel_images", "lift_images",
                 "_local")

    def __init__(self, group, k, j, eps, kernel_images, lift_images):
        self.group = group
        self.k = k
        self.j = j
        self.eps = eps
        self.kernel_images = tuple(Fraction(a) % 1 for a in kernel_images)
        self.lift_images = tuple(Fraction(b) % 1 for b in lift_images)
        self._local = {}

        if eps.modulus != group.level:
            raise DomainError(
                "Nebentype modulo {} on a group of level {}".format(
                    eps.modulus, group.level,
                )
            )

        if not self.is_homomorphism():
            raise DomainError(
                "Images {} do not define a character of H(c, N)".format(
                    list(self.kernel_images + self.lift_images),
                )
            )

    @property
    def infinity_type(self):
        return (self.k + self.j, -self.j)

    @property
    def n(self):
        return self.k + self.j

    @property
    def m(self):
        return -self.j

    @property
    def disc_K(self):
        return self.group.order.disc_K

    def eps_exponent(self, t):
        return self.eps.exponent(t % self.group.level)

    def is_homomorphism(self):
        """
        psi respects the carries of the group law of H(c, N).
        """
        g = self.group

        for a, e, t in zip(self.kernel_images, g.kernel_orders,
                           g._beta_residues):
            if (e * a - self.eps_exponent(t)) % 1 != 0:
                return False

        for b, f, (vector, _, t) in zip(self.lift_images, g.lift_orders,
                                        g.lift_carries):
            total = sum(
                (v * a for v, a in zip(vector, self.kernel_images)),
                self.eps_exponent(t),
            )

            if (f * b - total) % 1 != 0:
                return False

        return True

    def psi(self, x):
        """
        The finite character on an element of H(c, N), in Q/Z.
        """
        total = sum(
            (l * b for l, b in zip(x.lifts, self.lift_images)), Fraction(0),
        )
        total += sum(
            (k * a for k, a in zip(x.kernel, self.kernel_images)),
            Fraction(0),
        )

        return (total + self.eps_exponent(x.unit)) % 1

    # Evaluation

    def infinity_part(self, gamma):
        """
        gamma^(-n) conj(gamma)^(-m).
        """
        return gamma ** -self.n * gamma.conjugate() ** -self.m

    def _rho_kernel(self, i, power):
        g = self.group
        root = power * (self.m - self.n) * g.kernel_angles[i] / \
            g.kernel_orders[i]

        return root, self.infinity_part(g.kernel_alphas[i]) ** power

    def _formal(self, root, factor, kernel, lifts):
        for i, k in enumerate(kernel):
            if k:
                r, f = self._rho_kernel(i, k)
                root, factor = root + r, factor * f

        return CharValue(root, factor, lifts)

    def char_eval(self, ideal):
        """
        chi on an ideal of O_c prime to cN.

        Parameters
        ----------
        ideal : :class:`Ideal<padlfun.quadratic.ideals.Ideal>`

        Returns
        -------
        :class:`CharValue<padlfun.characters.hecke.CharValue>`
        """
        x, gamma = self.group.decompose(ideal)

        return self._formal(
            self.psi(x), self.infinity_part(gamma), x.kernel, x.lifts,
        )

    def multiply_values(self, v, w):
        """
        Product of two values, with the formal exponents brought back
        below the orders of the lifts.
        """
        g = self.group
        root = v.root + w.root
        factor = v.factor * w.factor
        lifts = [a + b for a, b in zip(v.lifts, w.lifts)]
        kernel = [0] * len(g.kernel_orders)

        for j, f in enumerate(g.lift_orders):
            carry, lifts[j] = divmod(lifts[j], f)

            if carry:
                vector, gamma, _ = g.lift_carries[j]
                factor = factor * self.infinity_part(gamma) ** carry
                kernel = [a + carry * b for a, b in zip(kernel, vector)]

        return self._formal(root, factor, kernel, lifts)

    def central_value(self, ell):
        """
        chi(ell O_c) and the expected eps(ell) ell^(-k), for a rational
        prime ell not dividing cN.
        """
        disc_K, c = self.disc_K, self.group.order.conductor
        ideal = Ideal.principal(QuadElement.rational(disc_K, ell), c)
        expected = CharValue(
            self.eps_exponent(ell),
            QuadElement.rational(disc_K, Fraction(ell) ** -self.k),
            [0] * len(self.group.lift_orders),
        )

        return self.char_eval(ideal), expected

    def check_central(self, ell):
        value, expected = self.central_value(ell)

        if value != expected:
            LOGGER.warning(
                "chi({}) = {}, expected {}".format(ell, value, expected)
            )

            return False

        return True

    # p-adic avatar

    def local_character(self, prime):
        """
        The component at p of the finite part, on (O_K / p^e)^* with
        p^e || c.

        Returns
        -------
        dict
            (a, b) -> exponent in Q/Z, for the unit a + b omega.
        """
        if prime in self._local:
            return self._local[prime]

        disc_K = self.disc_K
        c = self.group.order.conductor
        e = numbers.val_int(c, prime)
        table = {}

        if e:
            q = prime ** e
            rest = c // q * self.group.level
            omega = QuadElement.omega(disc_K)

            for xa, xb in itertools.product(range(q), repeat=2):
                alpha = xa + omega * xb

                if alpha.norm() % prime == 0:
                    continue

                if rest > 1:
                    a = int(crt([q, rest], [xa, 1])[0])
                    b = int(crt([q, rest], [xb, 0])[0])
                    alpha = a + omega * b

                value = self.char_eval(self.group.contracted(alpha))
                assert not any(value.lifts)
                value = CharValue(
                    value.root,
                    value.factor * alpha ** self.n *
                    alpha.conjugate() ** self.m,
                )
                table[(xa, xb)] = value.angle()

        self._local[prime] = table

        return table

    def conductor_ppart(self, prime):
        """
        The least n with the finite part trivial on 1 + p^n O_K (x) Z_p.

        Examples
        --------
        Characters of level prime to p are unramified there.

        >>> from padlfun.quadratic.forms import QuadOrder
        >>> from padlfun.quadratic.hgroup import hgroup
        >>> from padlfun.quadratic.ideals import heegner_ideal
        >>> group = hgroup(QuadOrder(-4), heegner_ideal(-4, 5))
        >>> enumerate_chars(group, 4, 0)[0].conductor_ppart(3)
        0
        """
        table = self.local_character(prime)

        if not table:
            return 0

        e = numbers.val_int(self.group.order.conductor, prime)

        for n in range(e + 1):
            pn = prime ** n

            if all(
                value == 0 for (xa, xb), value in table.items()
                if (xa - 1) % pn == 0 and xb % pn == 0
            ):
                return n

        raise AssertionError("Finite part nontrivial on 1 + p^e")

    def avatar_eval(self, x, prime=None, prec=numbers.DEFAULT_PRECISION):
        """
        The p-adic avatar x^n conj(x)^m on 1 + p^f O_K (x) Z_p, f the
        conductor exponent at p.

        Parameters
        ----------
        x : :class:`QuadPadic<padlfun.padic.local.QuadPadic>` or :class:`QuadElement<padlfun.quadratic.ideals.QuadElement>`
        prime : int, optional
            Needed when x is a QuadElement.
        prec : int, optional

        Returns
        -------
        :class:`QuadPadic<padlfun.padic.local.QuadPadic>`

        Raises
        ------
        PreconditionError
            When x is not congruent to 1 modulo the conductor at p.
        """
        x = _local(x, prime, prec)
        f = self.conductor_ppart(x.prime)

        if not x.is_unit() or (f and (x - 1).valuation() < f):
            raise PreconditionError(
                "{} is not in 1 + p^{} O_K (x) Z_p".format(x, f)
            )

        return x ** self.n * x.conjugate() ** self.m

    def in_sigma_hat(self, prime, classical=True, b_override=None):
        """
        Membership in the space of characters whose conductor at p reaches
        the overconvergence threshold n_k(p).
        """
        case = splitting_type(self.disc_K, prime)
        params = ledger.radius_params(classical, prime, b_override)

        return self.conductor_ppart(prime) >= params.n_k(case)

    # Serialization

    def _key(self):
        return (self.k, self.j, self.eps, self.kernel_images,
                self.lift_images)

    def __eq__(self, other):
        if not isinstance(other, HeckeChar):
            return NotImplemented

        return self.group is other.group and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key())

    def to_dict(self):
        return {
            "k": self.k,
            "j": self.j,
            "infinity_type": list(self.infinity_type),
            "eps": self.eps.to_dict(),
            "kernel_images": [str(a) for a in self.kernel_images],
            "lift_images": [str(b) for b in self.lift_images],
            "group": self.group.to_dict(),
        }

    @classmethod
    def from_dict(cls, data, group):
        return cls(
            group, int(data["k"]), int(data["j"]),
            DirichletChar.from_dict(data["eps"]),
            [Fraction(a) for a in data["kernel_images"]],
            [Fraction(b) for b in data["lift_images"]],
        )

    def __repr__(self):
        return "HeckeChar(type={}, eps={}, psi={})".format(
            self.infinity_type, self.eps,
            list(self.kernel_images + self.lift_images),
        )


def _local(x, prime, prec):
    if isinstance(x, QuadPadic):
        return x

    if prime is None:
        raise DomainError("A prime is needed to localize {}".format(x))

    return x.to_padic(prime, prec)


def is_unit_consistent(order, heegner_level, k, j, eps, reduce):
    """
    eps(u) u^(-n) conj(u)^(-m) = 1 for every root of unity u of O_c.
    """
    n, m = k + j, -j

    for angle, u in units(order.disc_K, order.conductor):
        if (eps.exponent(reduce(u) % heegner_level) +
                (m - n) * angle) % 1 != 0:
            return False

    return True


def enumerate_chars(group, k, j, eps=None):
    """
    All characters of infinity type (k + j, -j) on H(c, N) restricting to
    eps on (Z/N)^*.

    There are h(O_c) of them when the units of O_c are compatible with eps
    and the infinity type, and none otherwise (in particular when eps does
    not have the parity of k).

    Parameters
    ----------
    group : :class:`HGroup<padlfun.quadratic.hgroup.HGroup>`
    k : int
    j : int
    eps : :class:`DirichletChar<padlfun.characters.dirichlet.DirichletChar>`, optional
        Defaults to the trivial character modulo N.

    Returns
    -------
    list of :class:`HeckeChar<padlfun.characters.hecke.HeckeChar>`
    """
    if eps is None:
        eps = DirichletChar.trivial(group.level)

    if not is_unit_consistent(group.order, group.level, k, j, eps,
                              group.heegner.reduce):
        LOGGER.debug(
            "No characters of type ({}, {}) with nebentype {}".format(
                k + j, -j, eps,
            )
        )

        return []

    def exponent(t):
        return eps.exponent(t % group.level)

    kernel_choices = [
        [(exponent(t) + s) / e for s in range(e)]
        for e, t in zip(group.kernel_orders, group._beta_residues)
    ]
    out = []

    for kernel in itertools.product(*kernel_choices):
        kernel = [Fraction(a) for a in kernel]
        base = []

        for f, (vector, _, t) in zip(group.lift_orders, group.lift_carries):
            total = sum(
                (v * a for v, a in zip(vector, kernel)), exponent(t),
            )
            base.append([(total + s) / f for s in range(f)])

        for lifts in itertools.product(*base):
            out.append(HeckeChar(group, k, j, eps, kernel, lifts))

    assert len(out) == group.class_number
    LOGGER.debug(
        "{} characters of type ({}, {})".format(len(out), k + j, -j)
    )

    return out


def norm_char(group):
    """
    The norm character, N(a)^(-1) on ideals a.
    """
    return HeckeChar(
        group, 2, -1, DirichletChar.trivial(group.level),
        [0] * len(group.kernel_orders), [0] * len(group.lift_orders),
    )


def twist_norm(chi, j):
    """
    chi N^j: the infinity type shifts by (j, j), the finite part is kept.
    """
    if isinstance(chi, DeformedChar):
        return DeformedChar(twist_norm(chi.base, j), chi.shift_k, chi.shift_j)

    return HeckeChar(
        chi.group, chi.k + 2 * j, chi.j - j, chi.eps,
        chi.kernel_images, chi.lift_images,
    )


def _residue_size(disc_K, prime):
    case = splitting_type(disc_K, prime)

    if case == INERT:
        return prime ** 2

    if case == RAMIFIED:
        return prime

    raise DomainError(
        "Needs p non-split in K, {} splits in Q(sqrt({}))".format(
            prime, disc_K,
        )
    )


def _weight(prime, torsion, value):
    if isinstance(value, int):
        return classical_embed(value, prime)

    return PadicWeight(prime, torsion, value)


def weight_map(chi, prime):
    """
    The weight coordinates ((k mod q - 1, k), (j mod q - 1, j)) of a
    character or a deformation, q the residue field size at a non-split
    prime, together with the images of k and j in weight space.

    Returns
    -------
    coords : tuple
    weights : tuple of :class:`PadicWeight<padlfun.padic.weights.PadicWeight>`

    Raises
    ------
    DomainError
        When p splits in K.

    Examples
    --------
    >>> from padlfun.quadratic.forms import QuadOrder
    >>> from padlfun.quadratic.hgroup import hgroup
    >>> from padlfun.quadratic.ideals import heegner_ideal
    >>> group = hgroup(QuadOrder(-4), heegner_ideal(-4, 1))
    >>> chi = enumerate_chars(group, 4, 0)[0]
    >>> weight_map(chi, 3)[0]
    ((4, 4), (0, 0))
    """
    q = _residue_size(chi.disc_K, prime)
    base = chi.base if isinstance(chi, DeformedChar) else chi
    k_bar, j_bar = base.k % (q - 1), base.j % (q - 1)

    return (
        ((k_bar, chi.k), (j_bar, chi.j)),
        (_weight(prime, k_bar, chi.k), _weight(prime, j_bar, chi.j)),
    )


class DeformedChar(object):
    """
    A deformation of a classical character to weights (k', j') congruent
    to (k, j) modulo (q - 1) p^(M - 1).

    The finite part is that of the base character; the avatar acquires
    the factor x^(dk + dj) conj(x)^(-dj).

    Attributes
    ----------
    base : :class:`HeckeChar<padlfun.characters.hecke.HeckeChar>`
    shift_k : int or :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    shift_j : int or :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    """
    __slots__ = ("base", "shift_k", "shift_j")

    __hash__ = None

    def __init__(self, base, shift_k, shift_j):
        self.base = base
        self.shift_k = shift_k
        self.shift_j = shift_j

    @property
    def k(self):
        return self.base.k + self.shift_k

    @property
    def j(self):
        return self.base.j + self.shift_j

    @property
    def disc_K(self):
        return self.base.disc_K

    @property
    def group(self):
        return self.base.group

    def psi(self, x):
        return self.base.psi(x)

    def char_eval(self, ideal):
        return self.base.char_eval(ideal)

    def conductor_ppart(self, prime):
        return self.base.conductor_ppart(prime)

    def avatar_eval(self, x, prime=None, prec=numbers.DEFAULT_PRECISION):
        x = _local(x, prime, prec)
        value = self.base.avatar_eval(x)
        dn = self.shift_k + self.shift_j
        dm = -self.shift_j

        if not _is_zero(dn):
            value = value * quad_power(x, dn, torsion=0)

        if not _is_zero(dm):
            value = value * quad_power(x.conjugate(), dm, torsion=0)

        return value

    def __repr__(self):
        return "DeformedChar({}, dk={}, dj={})".format(
            self.base, self.shift_k, self.shift_j,
        )


def _is_zero(x):
    if isinstance(x, int):
        return x == 0

    return x.is_zero()


def deform_char(chi, weights, prime, M):
    """
    Deform chi to weights (k', j') congruent to (k, j) modulo
    (q - 1) p^(M - 1). Avatar values change by factors congruent to 1
    modulo p^M on principal units, and deforming twice adds the shifts.

    Parameters
    ----------
    chi : :class:`HeckeChar<padlfun.characters.hecke.HeckeChar>` or :class:`DeformedChar<padlfun.characters.hecke.DeformedChar>`
    weights : tuple
        (k', j'), integers or p-adic integers.
    prime : int
    M : int
        Neighborhood parameter, M >= 1.

    Returns
    -------
    :class:`DeformedChar<padlfun.characters.hecke.DeformedChar>`

    Raises
    ------
    PreconditionError
        When the congruence fails.
    """
    if M < 1:
        raise DomainError("M >= 1, got {}".format(M))

    base = chi.base if isinstance(chi, DeformedChar) else chi
    q = _residue_size(base.disc_K, prime)
    modulus = (q - 1) * prime ** (M - 1)
    k_new, j_new = weights
    shifts = (k_new - base.k, j_new - base.j)

    for shift in shifts:
        if isinstance(shift, int):
            ok = shift % modulus == 0
        else:
            # q - 1 is a unit in Z_p; the torsion part is carried by k.
            ok = numbers.valuation(shift) >= M - 1

        if not ok:
            raise PreconditionError(
                "Weights ({}, {}) are not congruent to ({}, {}) modulo "
                "{}".format(k_new, j_new, base.k, base.j, modulus)
            )

    return DeformedChar(base, *shifts)
