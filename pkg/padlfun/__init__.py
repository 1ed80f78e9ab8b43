"""
padlfun computes the finite-level pieces of p-adic L-functions of
imaginary quadratic fields at primes that do not split.
"""

from __future__ import absolute_import, division

from .version import __version__

from . import errors, regexes, utils, version

from . import padic, characters, qexp, quadratic

from . import checks, config, export, fetch, ledger, lfun, loaders, main
