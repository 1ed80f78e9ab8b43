"""Utility functions used in other modules."""

from __future__ import absolute_import, division

from functools import partial
import itertools
import logging
import multiprocessing

import sympy

try:
    from sympy.core.intfunc import igcdex as _igcdex
except ImportError:
    from sympy.core.numbers import igcdex as _igcdex

LOGGER = logging.getLogger("padlfun.utils")


class LenGen(object):
    def __init__(self, gen, len):
        self.gen = gen
        self.len = len

    def __call__(self):
        return itertools.islice(self.gen(), self.len)

    def __iter__(self):
        return self.gen

    def __len__(self):
        return self.len


def default_cpu_count(cpu_count=None):
    """
    The worker count to use when none was configured.
    """
    if cpu_count is not None:
        return cpu_count

    try:
        return multiprocessing.cpu_count()
    except NotImplementedError:
        return 2


def _call_indexed(func, pair):
    index, item = pair

    return index, func(item)


def pool_map(func, iterable, cpu_count=None):
    """
    Map func over iterable, in a process pool when more than one cpu is
    available. Results come back in input order.

    Parameters
    ----------
    func : callable
        Must be picklable (a module-level function or a partial of one).
    iterable : iterable
    cpu_count : int, optional

    Returns
    -------
    list
    """
    items = list(iterable)
    cpu_count = default_cpu_count(cpu_count)

    if cpu_count <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    LOGGER.debug(
        "Mapping {} over {} items with {} cpus".format(
            getattr(func, "__name__", func), len(items), cpu_count,
        )
    )

    pool = None
    results = {}

    try:
        pool = multiprocessing.Pool(
            processes=min(cpu_count, len(items)),
        )

        for index, value in pool.imap_unordered(
            func=partial(_call_indexed, func),
            iterable=LenGen(
                gen=enumerate(items),
                len=len(items),
            ),
        ):
            results[index] = value

        pool.close()
    except Exception:
        if pool:
            pool.terminate()

        raise
    finally:
        if pool:
            pool.join()

    return [results[i] for i in range(len(items))]


def kronecker_symbol(d, n):
    """
    The Kronecker symbol (d | n) for n >= 1.

    Parameters
    ----------
    d : int
    n : int

    Returns
    -------
    int
        One of -1, 0, 1.
    """
    assert n >= 1
    result = 1

    while n % 2 == 0:
        n //= 2

        if d % 2 == 0:
            return 0

        result *= 1 if d % 8 in (1, 7) else -1

    if n == 1:
        return result

    return result * int(sympy.jacobi_symbol(d % n, n))


def euler_phi(n):
    return int(sympy.totient(n))


def divisors(n):
    return [int(d) for d in sympy.divisors(n)]


def igcdex(a, b):
    """
    (x, y, g) with a x + b y = g = gcd(a, b).
    """
    return tuple(int(i) for i in _igcdex(a, b))
