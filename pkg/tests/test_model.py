import pytest

from tpmine.model import (
    MSS,
    TREND_ALPHABET,
    VALUE_ALPHABET,
    State,
    StateInterval,
    Symbol,
    interval,
    relation,
)


class TestSymbol:
    def test_alphabets_are_disjoint(self):
        assert not set(VALUE_ALPHABET) & set(TREND_ALPHABET)
        assert {s.alphabet for s in VALUE_ALPHABET} == {"value"}
        assert {s.alphabet for s in TREND_ALPHABET} == {"trend"}

    def test_value_and_trend_never_equal(self):
        for v in VALUE_ALPHABET:
            for t in TREND_ALPHABET:
                assert v != t

    @pytest.mark.parametrize("code", ["VL", "L", "N", "H", "VH", "ST", "INC", "DEC"])
    def test_code_round_trip(self, code):
        assert Symbol.from_code(code).code == code

    def test_unknown_code(self):
        with pytest.raises(ValueError, match="unknown abstraction symbol"):
            Symbol.from_code("XX")

    def test_ordering_follows_alphabet(self):
        assert sorted(reversed(VALUE_ALPHABET)) == list(VALUE_ALPHABET)


class TestInterval:
    def test_accepts_codes(self):
        e = interval("HR", "N", 0, 3)
        assert e == StateInterval("HR", Symbol.NORMAL, 0, 3)
        assert e.state == State("HR", Symbol.NORMAL)

    def test_zero_length_allowed(self):
        assert interval("HR", "N", 4, 4).end == 4

    def test_start_after_end(self):
        with pytest.raises(ValueError, match="exceeds"):
            interval("HR", "N", 5, 4)

    def test_non_integer_ticks(self):
        with pytest.raises(ValueError, match="integer"):
            interval("HR", "N", 0.5, 4)


class TestRelation:
    def test_overlap_is_co_occur(self):
        assert relation(interval("HR", "N", 8, 11), interval("BP", "N", 10, 17)) == "c"

    def test_gap_is_before(self):
        assert relation(interval("HR", "N", 0, 3), interval("HR", "L", 4, 7)) == "b"

    def test_touching_is_co_occur(self):
        assert relation(interval("X", "L", 0, 5), interval("Y", "L", 5, 9)) == "c"

    def test_equal_starts(self):
        assert relation(interval("X", "L", 2, 2), interval("Y", "L", 2, 9)) == "c"

    def test_out_of_order(self):
        with pytest.raises(ValueError):
            relation(interval("X", "L", 3, 5), interval("Y", "L", 2, 9))


class TestMSS:
    def test_worked_example_is_valid(self):
        from helpers import example_record

        z = example_record()
        assert len(z) == 13
        assert z[0] == interval("HR", "N", 0, 3)
        assert z[12] == interval("BP", "N", 32, 36)

    def test_empty(self):
        assert len(MSS()) == 0

    def test_unsorted_rejected(self):
        with pytest.raises(ValueError, match="sorted"):
            MSS([interval("X", "L", 3, 4), interval("Y", "L", 1, 2)])

    def test_touching_same_variable_rejected(self):
        with pytest.raises(ValueError, match="overlap or touch"):
            MSS([interval("X", "L", 0, 3), interval("X", "N", 3, 4)])

    def test_repeated_symbol_rejected(self):
        with pytest.raises(ValueError, match="share symbol"):
            MSS([interval("X", "L", 0, 3), interval("X", "L", 5, 6)])

    def test_non_interval_rejected(self):
        with pytest.raises(TypeError):
            MSS([("X", "L", 0, 3)])
