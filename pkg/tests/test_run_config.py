"""
Tests for range parsing, family selection and table rendering
"""

import json
import math

import pytest

from core.run_config import (
    Command,
    OutputFormat,
    RunConfig,
    parse_family,
    parse_k_range,
    parse_nu_range,
    parse_real_range,
)
from core.table_writer import TableWriter, compute_rows, map_rows
from phasebound.errors import ConfigError
from phasebound.families import BoundStatus, FamilyTag


class TestRanges:

    def test_comma_list(self):
        assert parse_nu_range("0, 0.5,1") == [0.0, 0.5, 1.0]

    def test_stepped_range_includes_end(self):
        assert parse_real_range("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]
        assert parse_real_range("0:1:0.1")[-1] == pytest.approx(1.0)
        assert len(parse_real_range("0:1:0.1")) == 11

    @pytest.mark.parametrize("text", ["", "a", "0:1", "1:0:0.5", "0:1:0", "nan", "inf"])
    def test_bad_real_ranges(self, text):
        with pytest.raises(ConfigError):
            parse_real_range(text)

    def test_negative_order(self):
        with pytest.raises(ConfigError):
            parse_nu_range("-1,2")

    def test_k_ranges(self):
        assert parse_k_range("1..4") == [1, 2, 3, 4]
        assert parse_k_range("7") == [7]
        assert parse_k_range("3,1") == [3, 1]

    @pytest.mark.parametrize("text", ["", "0..3", "x", "1.5", "5..4"])
    def test_bad_k_ranges(self, text):
        with pytest.raises(ConfigError):
            parse_k_range(text)


class TestFamilies:

    def test_names(self):
        assert parse_family("J").tag is FamilyTag.J
        assert parse_family("cprime", tau=0.0).tau == 0.0
        assert parse_family("uprime", eta=1.5).eta == 1.5

    @pytest.mark.parametrize("name, tau, eta", [
        ("bessel", None, None),
        ("c", None, None),
        ("c", 1.5, None),
        ("j", 0.3, None),
        ("wprime", None, None),
    ])
    def test_rejected(self, name, tau, eta):
        with pytest.raises(ConfigError):
            parse_family(name, tau, eta)

    def test_run_config_validation(self):
        with pytest.raises(ConfigError):
            RunConfig(Command.ENCLOSE, nu_values=[])
        with pytest.raises(ConfigError):
            RunConfig(Command.ENCLOSE, workers=0)


class TestTableWriter:

    ROWS = [
        {"nu": 0.0, "k": 1, "value": 2.404825557695773, "status": BoundStatus.VALID, "ok": True},
        {"nu": 0.5, "k": 2, "value": math.nan, "status": BoundStatus.NOT_APPLICABLE, "ok": False},
    ]
    COLUMNS = ["nu", "k", "value", "status", "ok"]

    def test_csv(self):
        text = TableWriter(self.COLUMNS).render(self.ROWS)
        assert text.splitlines() == [
            "nu,k,value,status,ok",
            "0,1,2.404825557695773,VALID,true",
            "0.5,2,,NOT_APPLICABLE,false",
        ]

    def test_digits(self):
        assert TableWriter(["value"], digits=6).render(self.ROWS[:1]).splitlines()[1] == "2.40483"

    def test_json(self):
        records = json.loads(TableWriter(self.COLUMNS, OutputFormat.JSON).render(self.ROWS))
        assert records[0]["status"] == "VALID"
        assert records[1]["value"] is None
        assert list(records[0]) == sorted(self.COLUMNS)

    def test_deterministic(self):
        writer = TableWriter(self.COLUMNS, OutputFormat.JSON)
        assert writer.render(self.ROWS) == writer.render(list(self.ROWS))

    def test_write_to_file(self, tmp_path):
        target = tmp_path / "out" / "table.csv"
        assert TableWriter(self.COLUMNS).write(self.ROWS, target) == 2
        assert target.read_text().startswith("nu,k,value")

    def test_write_to_stdout(self, capsys):
        TableWriter(["nu"]).write([{"nu": 1.0}])
        assert capsys.readouterr().out == "nu\n1\n"


def test_row_order_survives_threads():
    items = list(range(50))
    assert map_rows(lambda i: i * i, items, workers=4) == [i * i for i in items]
    assert compute_rows(None, "squares", lambda i: i * i, items, workers=3) == [i * i for i in items]
