"""
Bases and discrete logarithms for small finite abelian groups given by
their elements and a multiplication.
"""

from __future__ import absolute_import, division

import logging

LOGGER = logging.getLogger("padlfun.groups")


class AbelianGroup(object):
    """
    A finite abelian group with a basis g_1, ..., g_r of orders
    e_1, ..., e_r: every element is uniquely prod g_i^(k_i), 0 <= k_i < e_i.

    The basis is built greedily. Each new generator has maximal order modulo
    the span of the previous ones and is corrected so that its order equals
    that quotient order. Because the first generator has order equal to the
    exponent, the correction always exists.

    Attributes
    ----------
    elements : list
        Hashable group elements.
    identity
    gens : list
    orders : list of int
    """

    def __init__(self, elements, multiply, identity):
        self.elements = list(elements)
        self.multiply = multiply
        self.identity = identity
        self.gens, self.orders = [], []
        self._dlog = {identity: ()}

        while len(self._dlog) < len(self.elements):
            self._extend()

        LOGGER.debug(
            "Abelian group of order {}: invariants {}".format(
                len(self.elements), self.orders,
            )
        )

    @property
    def size(self):
        return len(self.elements)

    @property
    def exponent(self):
        return max(self.orders or [1])

    def power(self, x, n):
        result, base = self.identity, x

        while n:
            if n & 1:
                result = self.multiply(result, base)

            base = self.multiply(base, base)
            n >>= 1

        return result

    def order_of(self, x):
        n, y = 1, x

        while y != self.identity:
            y = self.multiply(y, x)
            n += 1

        return n

    def _quotient_order(self, x):
        m, y = 1, x

        while y not in self._dlog:
            y = self.multiply(y, x)
            m += 1

        return m, y

    def _extend(self):
        best = None

        for x in self.elements:
            if x in self._dlog:
                continue

            m, y = self._quotient_order(x)

            if best is None or m > best[1]:
                best = (x, m, y)

        x, m, y = best

        for g, e, c in zip(self.gens, self.orders, self._dlog[y]):
            assert c % m == 0
            x = self.multiply(x, self.power(g, (-(c // m)) % e))

        span = {}
        xk = self.identity

        for k in range(m):
            for s, vector in self._dlog.items():
                span[self.multiply(s, xk)] = vector + (k,)

            xk = self.multiply(xk, x)

        assert xk == self.identity
        self.gens.append(x)
        self.orders.append(m)
        self._dlog = span

    def dlog(self, x):
        """
        Exponent vector of x on the basis.
        """
        return list(self._dlog[x])

    def element(self, vector):
        """
        prod g_i^(k_i).
        """
        out = self.identity

        for g, k in zip(self.gens, vector):
            out = self.multiply(out, self.power(g, k))

        return out
