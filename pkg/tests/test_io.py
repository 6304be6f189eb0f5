import io
import json
import random

import pytest

from helpers import EXAMPLE, ITALY_TRAIN, example_dataset, random_mss
from tpmine.io import (
    EmptyFileError,
    NonNumericFieldError,
    ParseError,
    RaggedRowError,
    dumps_mss,
    format_patterns,
    load_mss,
    load_ucr,
    loads_mss,
    parse_patterns,
    read_patterns,
    write_patterns,
)
from tpmine.mining import Dataset, mine_ftpm


def write(tmp_path, text, name="d.tsv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


class TestUCR:
    def test_row(self, tmp_path):
        records, labels = load_ucr(write(tmp_path, "1\t0.5\t0.7\t0.6\n"))
        assert labels == ["1"]
        (s,) = records[0]
        assert s.variable == "s"
        assert list(zip(s.ticks, s.values)) == [(0, 0.5), (1, 0.7), (2, 0.6)]

    def test_two_classes(self, tmp_path):
        _, labels = load_ucr(write(tmp_path, "-1,1,2\n1,3,4\n-1,5,6\n"))
        assert sorted(set(labels)) == ["-1", "1"]

    def test_labels_verbatim(self, tmp_path):
        _, labels = load_ucr(write(tmp_path, "1.0 2 3\n"))
        assert labels == ["1.0"]

    def test_ragged_row_names_line(self, tmp_path):
        rows = ["1\t1\t2\t3"] * 6 + ["1\t1\t2"]
        with pytest.raises(RaggedRowError) as err:
            load_ucr(write(tmp_path, "\n".join(rows) + "\n"))
        assert err.value.line == 7
        assert ":7:" in str(err.value)

    def test_non_numeric(self, tmp_path):
        with pytest.raises(NonNumericFieldError) as err:
            load_ucr(write(tmp_path, "1\t1\t2\n2\tx\t3\n"))
        assert err.value.line == 2

    def test_non_finite(self, tmp_path):
        with pytest.raises(NonNumericFieldError):
            load_ucr(write(tmp_path, "1\tnan\t2\n"))

    def test_empty(self, tmp_path):
        with pytest.raises(EmptyFileError):
            load_ucr(write(tmp_path, "\n\n"))

    def test_label_only(self, tmp_path):
        with pytest.raises(RaggedRowError) as err:
            load_ucr(write(tmp_path, "1\n"))
        assert err.value.line == 1

    def test_explicit_delimiter(self, tmp_path):
        records, _ = load_ucr(write(tmp_path, "a;1;2\n"), delimiter=";")
        assert records[0][0].values == (1.0, 2.0)

    def test_italy_power_demand(self):
        records, labels = load_ucr(ITALY_TRAIN)
        assert len(records) == 67
        assert {len(r[0].values) for r in records} == {24}
        assert sorted(set(labels)) == ["1", "2"]


class TestMSSFormat:
    def test_worked_example(self):
        d = load_mss(EXAMPLE)
        assert len(d.records[0]) == 13
        assert d.labels == ["0"]

    def test_round_trip(self):
        rng = random.Random(0)
        d = Dataset([random_mss(rng, rng.randint(0, 10)) for _ in range(6)], ["a", "b", "a", 1, 2, "b"])
        text = dumps_mss(d)
        back = loads_mss(text)
        assert back.records == d.records and back.labels == d.labels
        assert dumps_mss(back) == text

    def test_is_json(self):
        doc = json.loads(dumps_mss(example_dataset()))
        assert doc["format"] == "tpmine-mss" and doc["version"] == 1
        assert doc["records"][0]["intervals"][0] == ["HR", "N", 0, 3]

    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            '{"format": "other", "version": 1, "records": []}',
            '{"format": "tpmine-mss", "version": 9, "records": []}',
            '{"format": "tpmine-mss", "version": 1, "records": [{"intervals": [["A", "Q", 0, 1]]}]}',
            '{"format": "tpmine-mss", "version": 1, "records": [{"intervals": [["A", "L", 3, 1]]}]}',
        ],
    )
    def test_invalid(self, text):
        with pytest.raises(ParseError):
            loads_mss(text)


class TestPatternListing:
    def test_format_and_parse(self, tmp_path):
        d = Dataset(example_dataset().records * 3, ["x", "y", "y"])
        r = mine_ftpm(d, 1.0, 2)
        text = format_patterns(r)
        assert text.endswith("\n") and "\r" not in text
        first = text.splitlines()[0]
        assert first == "<BP=L|>\tx:1,y:2"
        parsed = parse_patterns(text.splitlines(True))
        assert [k for k, _ in parsed] == [k for k, _ in r.canonical()]
        out = tmp_path / "p.txt"
        write_patterns(r, out)
        assert read_patterns(out) == parsed
        buf = io.StringIO()
        write_patterns(r, buf)
        assert buf.getvalue() == text

    @pytest.mark.parametrize("line", ["<A=L|>", "<A=L|>\tx", "<A=L|>\tx:y"])
    def test_malformed(self, line):
        with pytest.raises(ParseError):
            parse_patterns([line])
