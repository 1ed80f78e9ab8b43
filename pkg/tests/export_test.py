import json
import os
import shutil
import sqlite3
import tempfile
from unittest import TestCase

from padlfun import ledger, version
from padlfun.characters.hecke import enumerate_chars
from padlfun.errors import DomainError, PadlfunError
from padlfun.export import export, sql
from padlfun.lfun import assembly
from padlfun.lfun.oracles import MockOracle, OracleContext
from padlfun.quadratic.forms import QuadOrder, class_group
from padlfun.quadratic.hgroup import hgroup
from padlfun.quadratic.ideals import heegner_ideal


class ExportTestBase(TestCase):
    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir)

    def path(self, name):
        return os.path.join(self.dir, name)

    def read(self, name):
        with open(self.path(name), "rb") as f:
            return f.read()


class TableTest(ExportTestBase):
    def test_valuation_csv(self):
        header, rows = export.valuation_table([5], [2])
        export.export_table(self.path("v.csv"), header, rows)

        lines = self.read("v.csv").decode().splitlines()

        self.assertEqual(lines[0], "p,case,n,hdg,period,r,b,n_k")
        self.assertIn("5,inert,2,1/30,1/120,7,30,2", lines)
        self.assertIn("5,ramified,2,1/50,1/200,7,30,2", lines)
        self.assertEqual(len(lines), 3)

    def test_class_group(self):
        header, rows = export.class_group_table(class_group(QuadOrder(-23)))

        self.assertEqual(header, export.CLASS_GROUP_HEADER)
        self.assertEqual(len(rows), 3)
        self.assertEqual(rows[0][2], 1)
        self.assertEqual(sorted(row[2] for row in rows), [1, 3, 3])

    def test_json(self):
        header, rows = export.valuation_table([3, 5], [1, 2])
        export.export_table(self.path("v.json"), header, rows, "valuations")

        with open(self.path("v.json")) as f:
            data = json.load(f)

        self.assertEqual(data["kind"], "valuations")
        self.assertEqual(len(data["rows"]), 8)
        self.assertEqual(data["rows"][0]["p"], 3)
        self.assertEqual(data["rows"][0]["hdg"], "1/4")

    def test_deterministic(self):
        group = hgroup(QuadOrder(-4, 9), heegner_ideal(-4, 1))

        for name in ("a", "b"):
            for ext in (".csv", ".json"):
                header, rows = export.hgroup_table(group)
                export.export_table(self.path(name + ext), header, rows)

        self.assertEqual(self.read("a.csv"), self.read("b.csv"))
        self.assertEqual(self.read("a.json"), self.read("b.json"))
        self.assertEqual(sorted(os.listdir(self.dir)),
                         ["a.csv", "a.json", "b.csv", "b.json"])

    def test_unknown_extension(self):
        with self.assertRaises(DomainError):
            export.export_table(self.path("v.txt"), ["a"], [(1,)])

        self.assertEqual(os.listdir(self.dir), [])

    def test_replace(self):
        export.write_json(self.path("x.json"), {"b": 1, "a": 2})
        export.write_json(self.path("x.json"), {"a": 3})

        with open(self.path("x.json")) as f:
            self.assertEqual(json.load(f), {"a": 3})

        self.assertEqual(os.listdir(self.dir), ["x.json"])


class ExportToSqlTest(ExportTestBase):
    def test_export_to_sql(self):
        group = hgroup(QuadOrder(-4, 9), heegner_ideal(-4, 1))
        chars = enumerate_chars(group, 2, 0)
        gated = [
            i for i, chi in enumerate(chars) if chi.conductor_ppart(3) == 2
        ]
        context = OracleContext.for_group(group, 3, 2, period=2)
        oracle = MockOracle(context, group, seed=1)
        lvalues = [
            (i, assembly.lp_value(chars[i], oracle)) for i in gated
        ]
        path = self.path("out.db")

        export.export_to_sql(
            path,
            valuations=ledger.ledger_rows([5], [1, 2]),
            hgroups=[group],
            characters=chars,
            lvalues=lvalues,
            prime=3,
        )

        db = sqlite3.connect(path)
        cursor = db.cursor()

        self.assertEqual(
            sql.read_meta(cursor),
            {
                "padlfunVersion": version.__version__,
                "dataVersion": sql.DATA_VERSION,
            },
        )
        sql.check_data_version(cursor)

        count = dict(
            (table, cursor.execute(
                "SELECT COUNT(*) FROM {}".format(table)
            ).fetchone()[0])
            for table in (
                "valuations", "class_groups", "hgroups", "characters",
                "lvalues",
            )
        )
        self.assertEqual(count, {
            "valuations": 4,
            "class_groups": 1,
            "hgroups": 1,
            "characters": 6,
            "lvalues": 4,
        })

        hdg = cursor.execute(
            "SELECT hdg FROM valuations WHERE split_case=? AND level=?",
            ("inert", 2),
        ).fetchone()[0]
        self.assertEqual(hdg, "1/30")

        h, size = cursor.execute(
            "SELECT class_number, size FROM class_groups "
            "JOIN hgroups USING (class_group_id)"
        ).fetchone()
        self.assertEqual((h, size), (6, 6))

        db.close()

    def test_data_version(self):
        path = self.path("old.db")
        db = sqlite3.connect(path)
        cursor = db.cursor()
        sql.create_tables(cursor)
        cursor.execute(
            "UPDATE meta SET val=? WHERE key=?", ("0.0.1", "dataVersion"),
        )

        with self.assertRaises(PadlfunError):
            sql.check_data_version(cursor)

        cursor.execute("DELETE FROM meta")

        with self.assertRaises(PadlfunError):
            sql.check_data_version(cursor)

        db.close()

    def test_rerun(self):
        rows = ledger.ledger_rows([7], [1])
        path = self.path("out.sql")

        export.export_to_sql(path, valuations=rows)
        export.export_to_sql(path, valuations=rows)

        db = sqlite3.connect(path)
        self.assertEqual(
            db.execute("SELECT COUNT(*) FROM valuations").fetchone()[0], 2,
        )
        db.close()
        self.assertEqual(os.listdir(self.dir), ["out.sql"])
