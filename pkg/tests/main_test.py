import hashlib
import io
import json
import os
import shutil
import sqlite3
import tempfile
from unittest import TestCase, mock

from padlfun import loaders, main
from padlfun.config import DATA_DIR_ENV, OUT_DIR_ENV
from padlfun.errors import PrecisionError
from padlfun.quadratic.forms import QuadOrder
from padlfun.quadratic.hgroup import hgroup
from padlfun.quadratic.ideals import heegner_ideal

from .fetch_test import FakeResponse


QUIET = ["-q", "-q", "-q", "--no-write-log"]


class MainTestBase(TestCase):
    def setUp(self):
        self.dir = tempfile.mkdtemp()
        env = mock.patch.dict(os.environ)
        env.start()
        os.environ.pop(OUT_DIR_ENV, None)
        os.environ.pop(DATA_DIR_ENV, None)
        self.addCleanup(env.stop)

    def tearDown(self):
        shutil.rmtree(self.dir)

    def path(self, name):
        return os.path.join(self.dir, name)

    def run_main(self, *args, **kwargs):
        log = kwargs.get("log", False)
        argv = (["-q", "-q", "-q"] if log else QUIET) + list(args)

        if args:
            argv += ["--cpus", "1"]

        with mock.patch("sys.stdout", new_callable=io.StringIO) as out:
            status = main.main(argv)

        return status, out.getvalue()

    def read_csv(self, name):
        with open(self.path(name)) as f:
            return f.read().splitlines()


class ValuationsCommandTest(MainTestBase):
    def test_stdout(self):
        status, out = self.run_main(
            "valuations", "--p", "5", "--case", "inert", "--n", "2",
        )

        self.assertEqual(status, main.EXIT_OK)
        self.assertEqual(out.splitlines(), [
            "p,case,n,hdg,period,r,b,n_k",
            "5,inert,2,1/30,1/120,7,30,2",
        ])

    def test_file(self):
        status, _ = self.run_main(
            "valuations", "--p", "7", "--n", "1", "2", "3",
            "-o", self.path("v.csv"),
        )

        self.assertEqual(status, main.EXIT_OK)
        self.assertEqual(len(self.read_csv("v.csv")), 7)

    def test_deterministic(self):
        for name in ("a.json", "b.json"):
            self.run_main(
                "valuations", "--p", "3", "--non-classical",
                "-o", self.path(name),
            )

        with open(self.path("a.json"), "rb") as a, \
                open(self.path("b.json"), "rb") as b:
            self.assertEqual(a.read(), b.read())

    def test_database(self):
        status, _ = self.run_main(
            "valuations", "--p", "5", "-o", self.path("v.db"),
        )
        self.assertEqual(status, main.EXIT_OK)

        db = sqlite3.connect(self.path("v.db"))
        self.assertEqual(
            db.execute("SELECT COUNT(*) FROM valuations").fetchone()[0], 6,
        )
        db.close()

    def test_log_file(self):
        status, _ = self.run_main(
            "valuations", "--p", "5", "-o", self.path("v.csv"), log=True,
        )

        self.assertEqual(status, main.EXIT_OK)
        self.assertTrue(os.path.exists(self.path("padlfun.log")))


class GroupCommandTest(MainTestBase):
    def test_classgroup(self):
        status, _ = self.run_main(
            "classgroup", "--D", "-23", "-o", self.path("cg.csv"),
        )

        self.assertEqual(status, main.EXIT_OK)

        lines = self.read_csv("cg.csv")
        self.assertEqual(lines[0], "index,form,order")
        self.assertEqual(len(lines), 4)

    def test_stdout_is_csv(self):
        argv = ["--no-write-log", "classgroup", "--D", "-23", "--cpus", "1"]

        with mock.patch("sys.stdout", new_callable=io.StringIO) as out, \
                mock.patch("sys.stderr", new_callable=io.StringIO) as err:
            status = main.main(argv)

        self.assertEqual(status, main.EXIT_OK)

        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], "index,form,order")
        self.assertEqual(len(lines), 4)
        self.assertNotIn(" - INFO - ", out.getvalue())
        self.assertIn("padlfun.forms - INFO - ", err.getvalue())

    def test_classgroup_json(self):
        status, _ = self.run_main(
            "classgroup", "--D", "-23", "-o", self.path("cg.json"),
        )
        self.assertEqual(status, main.EXIT_OK)

        with open(self.path("cg.json")) as f:
            data = json.load(f)

        self.assertEqual(data["class_number"], 3)
        self.assertEqual(len(data["forms"]), 3)

    def test_hgroup(self):
        status, _ = self.run_main(
            "hgroup", "--p", "3", "--D", "-4", "--c", "9",
            "-o", self.path("h.csv"),
        )

        self.assertEqual(status, main.EXIT_OK)
        self.assertEqual(len(self.read_csv("h.csv")), 7)

    def test_chars(self):
        status, _ = self.run_main(
            "chars", "--p", "3", "--D", "-4", "--c", "9",
            "-o", self.path("chars.json"),
        )
        self.assertEqual(status, main.EXIT_OK)

        group = hgroup(QuadOrder(-4, 9), heegner_ideal(-4, 1), prime=3)
        chars = loaders.load_characters(self.path("chars.json"), group)

        self.assertEqual(len(chars), 6)

    def test_no_heegner_ideal(self):
        # 7 is inert in Q(i)
        status, _ = self.run_main("hgroup", "--p", "3", "--D", "-4",
                                  "--N", "7")

        self.assertEqual(status, main.EXIT_PRECONDITION)


class FormCommandTest(MainTestBase):
    def test_eisenstein(self):
        status, out = self.run_main(
            "eisenstein", "--p", "5", "--k", "4", "--truncation", "5",
        )

        self.assertEqual(status, main.EXIT_OK)

        lines = out.splitlines()
        self.assertEqual(lines[0], "n,a_n")
        self.assertEqual(len(lines), 7)

    def test_deplete_round_trip(self):
        status, _ = self.run_main(
            "deplete", "--p", "5", "--k", "4", "--truncation", "12",
            "-o", self.path("d.json"),
        )
        self.assertEqual(status, main.EXIT_OK)

        f = loaders.load_qexpansion(self.path("d.json"))

        self.assertTrue(f.is_depleted())
        self.assertEqual(f.truncation, 12)

    def test_nabla(self):
        for m in ("2", "3"):
            for name, flags in (
                ("nu.csv", ["--nu-classical", m]),
                ("steps.csv", ["--steps", m]),
            ):
                status, _ = self.run_main(
                    "nabla", "--p", "5", "--k", "4", "--truncation", "10",
                    "-o", self.path(name), *flags
                )
                self.assertEqual(status, main.EXIT_OK)

            nu = self.read_csv("nu.csv")

            self.assertEqual(nu, self.read_csv("steps.csv"))
            self.assertEqual(len(nu), 1 + (int(m) + 1) * 11)

    def test_coleman(self):
        status, out = self.run_main(
            "coleman", "--p", "5", "--k", "4", "--r", "2",
            "--truncation", "10",
        )

        self.assertEqual(status, main.EXIT_OK)
        self.assertEqual(len(out.splitlines()), 1 + 3 * 11)

    def test_fetched_input(self):
        self.run_main(
            "eisenstein", "--p", "5", "--k", "4", "--truncation", "12",
            "-o", self.path("src.json"),
        )

        with open(self.path("src.json"), "rb") as f:
            content = f.read()

        url = "https://example.org/forms/e4.json?raw=1"
        data_dir = os.path.join(self.dir, "data")

        with mock.patch("padlfun.fetch.requests.get") as get:
            get.return_value = FakeResponse(content)
            status, _ = self.run_main(
                "deplete", "--p", "5", "--input", url,
                "--md5", hashlib.md5(content).hexdigest(),
                "--data-dir", data_dir, "-o", self.path("d.json"),
            )

        self.assertEqual(status, main.EXIT_OK)
        get.assert_called_once_with(url, stream=True)
        self.assertTrue(os.path.exists(os.path.join(data_dir, "e4.json")))
        self.assertTrue(loaders.load_qexpansion(self.path("d.json"))
                        .is_depleted())

        with mock.patch("padlfun.fetch.requests.get") as get:
            get.return_value = FakeResponse(content)
            status, _ = self.run_main(
                "deplete", "--p", "5", "--input", url, "--md5", "0" * 32,
                "--data-dir", os.path.join(self.dir, "other"),
            )

        self.assertEqual(status, main.EXIT_USAGE)

    def test_missing_form(self):
        status, _ = self.run_main("deplete", "--p", "5")

        self.assertEqual(status, main.EXIT_PRECONDITION)


class ExitCodeTest(MainTestBase):
    def test_usage(self):
        with mock.patch("sys.stderr", new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as cm:
                main.main(QUIET + ["valuations", "--case", "split"])

        self.assertEqual(cm.exception.code, main.EXIT_USAGE)

        with mock.patch("sys.stderr", new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as cm:
                main.main(QUIET + ["frobnicate"])

        self.assertEqual(cm.exception.code, main.EXIT_USAGE)

    def test_no_command(self):
        status, _ = self.run_main()

        self.assertEqual(status, main.EXIT_USAGE)

    def test_precondition(self):
        status, _ = self.run_main("valuations", "--p", "4")
        self.assertEqual(status, main.EXIT_PRECONDITION)

        # Two of the six characters miss the conductor gate.
        status, _ = self.run_main(
            "lsum", "--p", "3", "--D", "-4", "--c", "9", "--cpus", "1",
        )
        self.assertEqual(status, main.EXIT_PRECONDITION)

    def test_precision(self):
        def fail(args, config):
            raise PrecisionError("tail not certified")

        with mock.patch.dict(main.COMMANDS, {"valuations": fail}):
            status, _ = self.run_main("valuations")

        self.assertEqual(status, main.EXIT_PRECISION)

    def test_no_database(self):
        status, _ = self.run_main(
            "classgroup", "--D", "-23", "-o", self.path("cg.db"),
        )

        self.assertEqual(status, main.EXIT_USAGE)
        self.assertFalse(os.path.exists(self.path("cg.db")))

    def test_handlers_removed(self):
        logger = main.logging.getLogger("padlfun")
        before = list(logger.handlers)

        self.run_main("valuations", "--p", "5")

        self.assertEqual(logger.handlers, before)


class CheckCommandTest(MainTestBase):
    def test_check(self):
        status, out = self.run_main(
            "check", "valuations", "--cpus", "1", "-o", self.path("c.csv"),
        )

        self.assertEqual(status, main.EXIT_OK)

        lines = out.splitlines()
        self.assertTrue(lines[0].startswith("check"))
        self.assertEqual(len(lines), 3)
        self.assertTrue(all("pass" in line for line in lines[1:]))
        self.assertEqual(len(self.read_csv("c.csv")), 3)
