import json
import logging

from padlfun import version
from padlfun.errors import PadlfunError

LOGGER = logging.getLogger("padlfun.sql")

DB_EXTS = [".db", ".sql"]
DATA_VERSION = "1.0.0"

PADLFUN_SCHEMA = """
PRAGMA foreign_keys = ON;
PRAGMA journal_mode = OFF;
PRAGMA synchronous = OFF;
PRAGMA temp_store = MEMORY;

-- Rows of the valuation ledger
CREATE TABLE IF NOT EXISTS valuations
(
    valuation_id            integer primary key autoincrement not null,
    prime                   integer not null,
    split_case              text not null,
    level                   integer not null,
    hdg                     text not null,
    period                  text not null,
    radius                  integer,
    b                       integer,
    n_k                     integer,
    UNIQUE(prime, split_case, level)
);

-- Ring class groups Pic(O_c)
CREATE TABLE IF NOT EXISTS class_groups
(
    class_group_id          integer primary key autoincrement not null,
    disc_K                  integer not null,
    conductor               integer not null,
    class_number            integer not null,
    forms                   text,
    UNIQUE(disc_K, conductor)
);

-- Groups H(c, N)
CREATE TABLE IF NOT EXISTS hgroups
(
    hgroup_id               integer primary key autoincrement not null,
    class_group_id          integer not null,
    level                   integer not null,
    size                    integer not null,
    data                    text,
    FOREIGN KEY(class_group_id) REFERENCES class_groups(class_group_id),
    UNIQUE(class_group_id, level)
);

-- Hecke characters of H(c, N)
CREATE TABLE IF NOT EXISTS characters
(
    character_id            integer primary key autoincrement not null,
    hgroup_id               integer not null,
    n                       integer not null,
    m                       integer not null,
    conductor_p             integer,
    images                  text not null,
    FOREIGN KEY(hgroup_id) REFERENCES hgroups(hgroup_id),
    UNIQUE(hgroup_id, n, m, images)
);

-- Assembled L-values
CREATE TABLE IF NOT EXISTS lvalues
(
    lvalue_id               integer primary key autoincrement not null,
    character_id            integer,
    oracle                  text not null,
    value                   text not null,
    precision               text,
    loss                    text,
    period_exponent         integer,
    FOREIGN KEY(character_id) REFERENCES characters(character_id),
    UNIQUE(character_id, oracle)
);

CREATE TABLE IF NOT EXISTS meta
(
    key                     text not null,
    val                     text,
    UNIQUE(key, val)
);
"""


def create_tables(cursor):
    cursor.executescript(PADLFUN_SCHEMA)
    insert_meta(cursor)
    cursor.connection.commit()


def insert_meta(cursor):
    cursor.executemany(
        """
        INSERT INTO meta
        (
            key,
            val
        ) SELECT (?), (?)
        WHERE NOT EXISTS (SELECT 1 FROM meta WHERE key=(?))
        """,
        [
            (i[0], i[1], i[0])
            for i in sorted({
                "padlfunVersion": version.__version__,
                "dataVersion": DATA_VERSION,
            }.items())
        ],
    )


def read_meta(cursor):
    return dict(cursor.execute("SELECT key, val FROM meta"))


def check_data_version(cursor):
    """
    Refuse databases written with another data layout.
    """
    data_version = read_meta(cursor).get("dataVersion")

    if data_version is None:
        raise PadlfunError(
            "Unable to determine the data version of existing database",
        )

    if data_version != DATA_VERSION:
        raise PadlfunError(
            "Database has data version {}, expected {}".format(
                data_version, DATA_VERSION,
            )
        )


def _insert_or_update_row(
    cursor, table, id, data,
    unique_on=None, update=False,
):
    if unique_on is None:
        unique_on = list(data.keys())

    row_id = None

    for row in cursor.execute(
        """
        SELECT ({})
        FROM {}
        WHERE {}
        """.format(
            id,
            table,
            " and ".join("{}=(?)".format(i) for i in unique_on)
        ),
        [data[i] for i in unique_on],
    ):
        row_id = row[0]

    if row_id is None:
        cursor.execute(
            """
            INSERT OR IGNORE INTO {}
            ({})
            VALUES ({})
            """.format(
                table,
                ", ".join(data.keys()),
                ",".join("?" for i in data.keys()),
            ),
            list(data.values()),
        )
        row_id = cursor.lastrowid
    elif update:
        keys = [i for i in data.keys() if i not in unique_on]

        if keys:
            cursor.execute(
                """
                UPDATE {}
                SET {}
                WHERE {}
                """.format(
                    table,
                    ", ".join("{}=?".format(i) for i in keys),
                    " and ".join("{}=?".format(i) for i in unique_on),
                ),
                [data[i] for i in keys] + [data[i] for i in unique_on],
            )

    return row_id


def _dumps(data):
    return json.dumps(data, sort_keys=True, default=str)


def insert_valuation(cursor, row):
    prime, case, level, hdg, period, r, b, n_k = row

    return _insert_or_update_row(
        cursor, "valuations", "valuation_id",
        {
            "prime": prime,
            "split_case": case,
            "level": level,
            "hdg": str(hdg),
            "period": str(period),
            "radius": r,
            "b": b,
            "n_k": n_k,
        },
        unique_on=["prime", "split_case", "level"],
        update=True,
    )


def insert_class_group(cursor, group):
    return _insert_or_update_row(
        cursor, "class_groups", "class_group_id",
        {
            "disc_K": group.order.disc_K,
            "conductor": group.order.conductor,
            "class_number": group.size,
            "forms": _dumps([str(f) for f in group.forms]),
        },
        unique_on=["disc_K", "conductor"],
        update=True,
    )


def insert_hgroup(cursor, group):
    class_group_id = insert_class_group(cursor, group.pic)

    return _insert_or_update_row(
        cursor, "hgroups", "hgroup_id",
        {
            "class_group_id": class_group_id,
            "level": group.level,
            "size": group.size,
            "data": _dumps(group.to_dict()),
        },
        unique_on=["class_group_id", "level"],
        update=True,
    )


def insert_character(cursor, chi, hgroup_id, prime=None):
    data = chi.to_dict()
    data.pop("group", None)

    return _insert_or_update_row(
        cursor, "characters", "character_id",
        {
            "hgroup_id": hgroup_id,
            "n": chi.n,
            "m": chi.m,
            "conductor_p": (
                None if prime is None else chi.conductor_ppart(prime)
            ),
            "images": _dumps(data),
        },
        unique_on=["hgroup_id", "n", "m", "images"],
        update=True,
    )


def insert_lvalue(cursor, value, character_id=None):
    data = value.to_dict()

    return _insert_or_update_row(
        cursor, "lvalues", "lvalue_id",
        {
            "character_id": character_id,
            "oracle": value.oracle,
            "value": _dumps(data["value"]),
            "precision": data["precision"]["reached"],
            "loss": data["precision"]["loss"],
            "period_exponent": value.period_exponent,
        },
        unique_on=["character_id", "oracle"],
        update=True,
    )
