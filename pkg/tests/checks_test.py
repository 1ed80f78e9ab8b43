import random
from unittest import TestCase, mock

from padlfun import checks
from padlfun.config import RunConfig
from padlfun.errors import PadlfunError
from padlfun.quadratic.forms import QuadOrder
from padlfun.quadratic.hgroup import HElement, HGroup, hgroup
from padlfun.quadratic.ideals import heegner_ideal


class RunChecksTest(TestCase):
    def setUp(self):
        self.config = RunConfig(cpus=1, truncation=30, precision=10)

    def test_valuations(self):
        results = checks.run_checks(self.config, ["valuations", "eisenstein"])

        self.assertEqual(
            sorted(set(r.group for r in results)),
            ["eisenstein", "valuations"],
        )
        self.assertEqual(len(results), 4)

        for result in results:
            self.assertTrue(result, result)
            self.assertEqual(result.to_row()[2], "pass")
            self.assertEqual(len(result.to_row()), len(checks.RESULT_HEADER))

    def test_operators(self):
        results = checks.run_checks(self.config, ["operators"])

        self.assertEqual(len(results), 3 * len(checks.OPERATOR_PRIMES))
        self.assertTrue(all(results))

    def test_inequalities(self):
        results = checks.run_checks(self.config, ["inequalities"])
        sweeps = [r for r in results if "up to h" in r.name]

        self.assertEqual(len(sweeps), len(checks.INEQUALITY_PRIMES))

        for result in sweeps:
            self.assertTrue(result, result.detail)

        five = [r for r in sweeps if "p = 5" in r.name][0]
        self.assertIn("first at h = 3", five.detail)

    def test_unknown(self):
        with self.assertRaises(PadlfunError):
            checks.run_checks(self.config, ["valuations", "nonsense"])

    def test_failure_is_reported(self):
        def broken(config):
            raise PadlfunError("boom")

        original = checks.CHECKS["valuations"]
        checks.CHECKS["valuations"] = broken

        try:
            with self.assertLogs("padlfun.checks", level="WARNING"):
                results = checks.run_checks(self.config, ["valuations"])
        finally:
            checks.CHECKS["valuations"] = original

        self.assertEqual(len(results), 1)
        self.assertFalse(results[0])
        self.assertEqual(results[0].to_row()[2], "FAIL")


class GroupLawTest(TestCase):
    def setUp(self):
        self.group = hgroup(QuadOrder(-23), heegner_ideal(-23, 6))

    def test_holds(self):
        self.assertEqual(
            checks.group_law_failures(self.group, random.Random(0), 50), [],
        )

    def test_broken_law_is_caught(self):
        def dropped_carry(group, x, y):
            # Ignores the second factor's class.
            return HElement(x.lifts, x.kernel, x.unit * y.unit % group.level)

        with mock.patch.object(HGroup, "multiply", dropped_carry):
            failures = checks.group_law_failures(
                self.group, random.Random(0), 50,
            )

        self.assertTrue(failures)
