import argparse
import os
from unittest import TestCase, mock

from padlfun import config
from padlfun.config import RunConfig
from padlfun.errors import PreconditionError


class RunConfigTest(TestCase):
    def test_defaults(self):
        with mock.patch.dict(os.environ, {}, clear=True):
            cfg = RunConfig()

        self.assertEqual(cfg.prime, config.DEFAULT_PRIME)
        self.assertEqual(cfg.precision, config.DEFAULT_PRECISION)
        self.assertEqual(cfg.disc_bound, 10 ** 6)
        self.assertEqual(cfg.seed, 0)
        self.assertEqual(cfg.generator(), 2)
        self.assertEqual(cfg.generator(7), 3)
        self.assertEqual(cfg.out_dir, os.getcwd())

    def test_validate(self):
        for kwargs in (
            {"prime": 2},
            {"prime": 9},
            {"precision": 0},
            {"truncation": -1},
            {"grading_cap": 0},
            {"family_cap": 0},
            {"cpus": 0},
            {"b_override": 0},
            {"prime": 7, "generators": {7: 2}},
            {"prime": 7, "generators": {7: 14}},
        ):
            with self.assertRaises(PreconditionError):
                RunConfig(**kwargs)

        cfg = RunConfig(prime=7, generators={7: 5})
        self.assertEqual(cfg.generator(), 5)

    def test_env_paths(self):
        env = {
            config.DATA_DIR_ENV: "/data/padlfun",
            config.OUT_DIR_ENV: "/out/padlfun",
        }

        with mock.patch.dict(os.environ, env):
            cfg = RunConfig(data_dir="/elsewhere", out_dir="/elsewhere")

        self.assertEqual(cfg.data_dir, "/data/padlfun")
        self.assertEqual(cfg.out_dir, "/out/padlfun")
        self.assertEqual(
            cfg.out_path("v.csv"), os.path.join("/out/padlfun", "v.csv"),
        )
        self.assertEqual(cfg.out_path("/abs/v.csv"), "/abs/v.csv")

    def test_from_args(self):
        args = argparse.Namespace(
            prime=7, precision=12, cpus=1, seed=5, generator=3,
            truncation=None,
        )
        cfg = RunConfig.from_args(args)

        self.assertEqual(cfg.prime, 7)
        self.assertEqual(cfg.precision, 12)
        self.assertEqual(cfg.truncation, config.DEFAULT_TRUNCATION)
        self.assertEqual(cfg.seed, 5)
        self.assertEqual(cfg.generator(), 3)
        self.assertNotIn("data_dir", cfg.to_dict())
        self.assertIn("seed=5", repr(cfg))

        with self.assertRaises(PreconditionError):
            RunConfig.from_args(argparse.Namespace(prime=15))
