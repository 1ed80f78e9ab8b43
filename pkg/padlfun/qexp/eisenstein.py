"""
Eisenstein series E_{k,eps} = L(1-k, eps) + 2 sum_n sigma_{k-1,eps}(n) q^n.
"""

from __future__ import absolute_import, division

import logging

from padlfun.characters.dirichlet import DirichletChar, gen_bernoulli_L
from padlfun.errors import PreconditionError
from padlfun.padic import numbers
from padlfun.padic.cyclo import Cyclotomic
from padlfun.padic.weights import classical_embed
from padlfun.qexp.qexpansion import QExpansion

LOGGER = logging.getLogger("padlfun.eisenstein")


def to_qp(x, prime, prec=numbers.DEFAULT_PRECISION, generator=None):
    """
    Push an exact cyclotomic number into Q_p.

    Rational values need no embedding; other values must lie in a cyclotomic
    field Q(zeta_M) with M dividing p - 1.
    """
    if x.is_rational():
        return numbers.padic(x.constant(), prime, prec)

    return x.embed(prime, prec, generator=generator)


def sigma_eps(n, k, eps):
    """
    sigma_{k-1,eps}(n) = sum_{d | n} eps(d) d^(k-1), exactly.
    """
    total = Cyclotomic.rational(0)

    for d in range(1, n + 1):
        if n % d == 0:
            total = total + eps.value(d) * d ** (k - 1)

    return total


def eisenstein(k, eps, truncation, prime, prec=numbers.DEFAULT_PRECISION,
               generator=None):
    """
    The Eisenstein series of weight k and character eps.

    Parameters
    ----------
    k : int
        At least 1.
    eps : :class:`DirichletChar<padlfun.characters.dirichlet.DirichletChar>` or None
        None stands for the trivial character.
    truncation : int
    prime : int
    prec : int, optional
    generator : int, optional
        Primitive root fixing the embedding of character values.

    Returns
    -------
    :class:`QExpansion<padlfun.qexp.qexpansion.QExpansion>`

    Raises
    ------
    PreconditionError
        When eps does not have the parity of k, or k = 2 with eps trivial.

    Examples
    --------
    >>> e4 = eisenstein(4, None, 3, 5)
    >>> e4[2] == 18
    True
    """
    if eps is None:
        eps = DirichletChar.trivial()

    if k < 1:
        raise PreconditionError(
            "Eisenstein series need k >= 1, got {}".format(k)
        )

    if eps.parity != k % 2:
        raise PreconditionError(
            "The character {} is not of parity k = {}".format(eps, k)
        )

    if k == 2 and eps.is_trivial():
        raise PreconditionError(
            "E_2 with the trivial character is not modular"
        )

    constant = to_qp(gen_bernoulli_L(eps, k), prime, prec, generator)
    coeffs = [constant]

    LOGGER.debug(
        "E_{{{}, {}}} constant term {}, {} coefficients".format(
            k, eps, constant, truncation,
        )
    )

    if eps.is_trivial():
        for n in range(1, truncation + 1):
            coeffs.append(
                2 * sum(
                    d ** (k - 1) for d in range(1, n + 1) if n % d == 0
                )
            )
    else:
        for n in range(1, truncation + 1):
            coeffs.append(
                to_qp(sigma_eps(n, k, eps) * 2, prime, prec, generator)
            )

    return QExpansion(
        prime, coeffs,
        weight=classical_embed(k, prime),
        nebentype=eps,
        prec=prec,
    )
