"""Tests for the sequence spec grammar and the sampled CSV loader."""

import pytest
from pydantic import ValidationError

from core.adapters.spec_parser import load_sampled_csv, parse_complex, parse_spec
from core.contracts.weights import (
    ModifiedPeriodicWeights,
    PeriodicWeights,
    SampledWeights,
    SplitPeriodicWeights,
)
from core.errors import SpecParseError


class TestParseComplex:
    @pytest.mark.parametrize(
        "token, expected",
        [
            ("2", 2),
            ("-0.5", -0.5),
            (".25", 0.25),
            ("1e-3", 0.001),
            ("1+2i", 1 + 2j),
            ("1-2i", 1 - 2j),
            ("-1.5+0.5i", -1.5 + 0.5j),
            ("3i", 3j),
            ("-2.5i", -2.5j),
            ("i", 1j),
            ("+i", 1j),
            ("-i", -1j),
            ("1+i", 1 + 1j),
            (" 4 ", 4),
        ],
    )
    def test_forms(self, token, expected):
        assert parse_complex(token) == expected

    @pytest.mark.parametrize("token", ["", "x", "1+", "2j", "1++2i", "i2", "1,2"])
    def test_rejects(self, token):
        with pytest.raises(SpecParseError):
            parse_complex(token)


class TestParseSpec:
    def test_periodic(self):
        seq = parse_spec("periodic:1,2,-i")
        assert isinstance(seq, PeriodicWeights)
        assert seq.pattern == (1, 2, -1j)

    def test_modified(self):
        seq = parse_spec("modified:periodic:1,0.5;0=2,-3=0.5+i")
        assert isinstance(seq, ModifiedPeriodicWeights)
        assert seq.base.pattern == (1, 0.5)
        assert seq.overrides == {-3: 0.5 + 1j, 0: 2}

    def test_modified_without_overrides(self):
        seq = parse_spec("modified:periodic:3")
        assert isinstance(seq, ModifiedPeriodicWeights)
        assert seq.overrides == {}

    def test_split_default_index(self):
        seq = parse_spec("split:1|2")
        assert isinstance(seq, SplitPeriodicWeights)
        assert seq.split_index == 0
        assert seq.left.pattern == (1,)
        assert seq.right.pattern == (2,)

    def test_split_with_index(self):
        seq = parse_spec("split:1,4|2i@-3")
        assert seq.split_index == -3
        assert seq.left.pattern == (1, 4)
        assert seq.right.pattern == (2j,)

    def test_zero_weight_is_rejected_by_contract(self):
        with pytest.raises(ValidationError, match="nonzero"):
            parse_spec("periodic:1,0")

    @pytest.mark.parametrize(
        "text, position, reason",
        [
            ("periodic", 0, "missing '<kind>:' prefix"),
            ("nope:1", 0, "unknown kind"),
            ("periodic:", 9, "empty pattern"),
            ("periodic:1,x", 11, "invalid weight"),
            ("periodic:1, x", 12, "invalid weight"),
            ("modified:1;0=2", 9, "'periodic:' base"),
            ("modified:periodic:1;0", 20, "lacks '='"),
            ("modified:periodic:1;0=2,0=3", 24, "duplicate override index 0"),
            ("modified:periodic:1;a=2", 20, "invalid index"),
            ("modified:periodic:1;0=q", 22, "invalid weight"),
            ("split:1,2", 9, "'left|right'"),
            ("split:1|2@x", 10, "invalid index"),
            ("split:1|", 8, "empty pattern"),
            ("sampled:", 8, "missing CSV path"),
        ],
    )
    def test_error_positions(self, text, position, reason):
        with pytest.raises(SpecParseError) as info:
            parse_spec(text)
        assert info.value.position == position
        assert reason in info.value.reason
        assert info.value.text == text


class TestLoadSampledCsv:
    def test_with_header(self, tmp_path):
        path = tmp_path / "w.csv"
        path.write_text("index,re,im\n-1,1,0\n0,2,0.5\n1,0.5,0\n", encoding="utf-8")
        seq = load_sampled_csv(path)
        assert isinstance(seq, SampledWeights)
        assert seq.k_min == -1
        assert seq.k_max == 1
        assert seq.values == (1, 2 + 0.5j, 0.5)
        # clamp rule
        assert seq.left_extension == 1
        assert seq.right_extension == 0.5

    def test_without_header_via_spec(self, tmp_path):
        path = tmp_path / "w.csv"
        path.write_text("3,1,0\n4,-1,0\n\n", encoding="utf-8")
        seq = parse_spec(f"sampled:{path}")
        assert seq.k_min == 3
        assert seq.values == (1, -1)

    def test_gap(self, tmp_path):
        path = tmp_path / "w.csv"
        path.write_text("0,1,0\n2,1,0\n", encoding="utf-8")
        with pytest.raises(SpecParseError, match="does not follow"):
            load_sampled_csv(path)

    def test_descending(self, tmp_path):
        path = tmp_path / "w.csv"
        path.write_text("1,1,0\n0,1,0\n", encoding="utf-8")
        with pytest.raises(SpecParseError, match="does not follow"):
            load_sampled_csv(path)

    def test_wrong_column_count(self, tmp_path):
        path = tmp_path / "w.csv"
        path.write_text("0,1\n", encoding="utf-8")
        with pytest.raises(SpecParseError, match="expected 3 columns"):
            load_sampled_csv(path)

    def test_bad_number(self, tmp_path):
        path = tmp_path / "w.csv"
        path.write_text("0,1,0\n1,abc,0\n", encoding="utf-8")
        with pytest.raises(SpecParseError) as info:
            load_sampled_csv(path)
        assert info.value.text.endswith(":2")
        assert info.value.position == 2

    def test_header_only(self, tmp_path):
        path = tmp_path / "w.csv"
        path.write_text("index,re,im\n", encoding="utf-8")
        with pytest.raises(SpecParseError, match="no rows"):
            load_sampled_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(SpecParseError, match="cannot read"):
            load_sampled_csv(tmp_path / "absent.csv")
