"""
Run configuration shared by the command line and library callers.
"""

from __future__ import absolute_import, division

import logging
import os

import sympy

from .errors import PreconditionError
from .padic.numbers import DEFAULT_PRECISION
from .quadratic.forms import DEFAULT_DISC_BOUND

LOGGER = logging.getLogger("padlfun.config")

DEFAULT_PRIME = 5
DEFAULT_TRUNCATION = 100
DEFAULT_GRADING_CAP = 8
DEFAULT_FAMILY_CAP = 2
DEFAULT_SEED = 0

DATA_DIR_ENV = "PADLFUN_DATA_DIR"
OUT_DIR_ENV = "PADLFUN_OUT_DIR"


class RunConfig(object):
    """
    Parameters of a run.

    Attributes
    ----------
    prime : int
        Odd prime p.
    precision : int
        M, the p-adic precision in digits.
    truncation : int
        N_q, the q-expansion truncation.
    grading_cap : int
        J, the number of graded components kept by nabla.
    family_cap : int
        D, the degree cap of family polynomials.
    disc_bound : int
        Largest |c^2 D_K| enumerated.
    cpus : int or None
    seed : int
        Seed of every mock oracle and sampled check.
    b_override : int or None
        b(3, r) used by the conductor gate at p = 3.
    generators : dict of int, int
        Primitive root chosen per prime for Teichmuller characters.
    data_dir : str
    out_dir : str
    """
    __slots__ = (
        "prime", "precision", "truncation", "grading_cap", "family_cap",
        "disc_bound", "cpus", "seed", "b_override", "generators",
        "data_dir", "out_dir",
    )

    __hash__ = None

    def __init__(
        self,
        prime=DEFAULT_PRIME,
        precision=DEFAULT_PRECISION,
        truncation=DEFAULT_TRUNCATION,
        grading_cap=DEFAULT_GRADING_CAP,
        family_cap=DEFAULT_FAMILY_CAP,
        disc_bound=DEFAULT_DISC_BOUND,
        cpus=None,
        seed=DEFAULT_SEED,
        b_override=None,
        generators=None,
        data_dir=None,
        out_dir=None,
    ):
        self.prime = prime
        self.precision = precision
        self.truncation = truncation
        self.grading_cap = grading_cap
        self.family_cap = family_cap
        self.disc_bound = disc_bound
        self.cpus = cpus
        self.seed = seed
        self.b_override = b_override
        self.generators = dict(generators or {})
        self.data_dir = os.environ.get(DATA_DIR_ENV) or data_dir or \
            os.path.join(os.path.expanduser("~"), ".padlfun")
        self.out_dir = os.environ.get(OUT_DIR_ENV) or out_dir or \
            os.getcwd()

        self.validate()

    def validate(self):
        if self.prime == 2 or not sympy.isprime(self.prime):
            raise PreconditionError(
                "Expected an odd prime, got {}".format(self.prime)
            )

        for name in ("precision", "truncation", "grading_cap", "family_cap",
                     "disc_bound"):
            if getattr(self, name) < 1:
                raise PreconditionError(
                    "{} must be positive, got {}".format(
                        name, getattr(self, name),
                    )
                )

        if self.cpus is not None and self.cpus < 1:
            raise PreconditionError(
                "--cpus must be positive, got {}".format(self.cpus)
            )

        if self.b_override is not None and self.b_override < 1:
            raise PreconditionError(
                "b(3, r) must be positive, got {}".format(self.b_override)
            )

        for p, g in self.generators.items():
            if g % p == 0 or sympy.n_order(g % p, p) != p - 1:
                raise PreconditionError(
                    "{} is not a primitive root modulo {}".format(g, p)
                )

    @classmethod
    def from_args(cls, args):
        """
        Build a configuration from an argparse namespace; attributes the
        namespace lacks keep their defaults.
        """
        kwargs = {}

        for name in ("prime", "precision", "truncation", "grading_cap",
                     "family_cap", "disc_bound", "cpus", "seed", "b_override",
                     "data_dir", "out_dir"):
            value = getattr(args, name, None)

            if value is not None:
                kwargs[name] = value

        generators = getattr(args, "generator", None)

        if generators:
            kwargs["generators"] = {kwargs.get("prime", DEFAULT_PRIME):
                                    generators}

        config = cls(**kwargs)
        LOGGER.debug(config)

        return config

    def generator(self, prime=None):
        """
        The configured primitive root modulo prime, or the least one.
        """
        prime = self.prime if prime is None else prime

        return self.generators.get(prime, sympy.primitive_root(prime))

    def out_path(self, name):
        return os.path.join(self.out_dir, name)

    def to_dict(self):
        return dict(
            (name, getattr(self, name))
            for name in self.__slots__
            if name not in ("data_dir", "out_dir")
        )

    def __repr__(self):
        return "RunConfig({})".format(
            ", ".join(
                "{}={}".format(k, v) for k, v in sorted(self.to_dict().items())
            )
        )
