"""End-to-end tests of the ``wshift`` command line."""

import json
from pathlib import Path

import jsonschema
import pytest

from core.cli import (
    EXIT_NOT_SIMILAR,
    EXIT_OK,
    EXIT_SOFTWARE,
    EXIT_UNDECIDED,
    EXIT_USAGE,
    main,
)

GOLDEN_DIR = Path(__file__).parent / "golden"
SCHEMA_PATH = Path(__file__).resolve().parents[2] / "schemas" / "analysis_report.schema.json"

# file name -> (argv, exit code)
GOLDEN_CASES = {
    "analyze_periodic_1.json": (["analyze", "periodic:1"], EXIT_OK),
    "analyze_modified_bump.json": (["analyze", "modified:periodic:1;0=2"], EXIT_OK),
    "analyze_split_1_2.json": (["analyze", "split:1|2@0"], EXIT_NOT_SIMILAR),
    "norms_periodic_1_2.csv": (["norms", "periodic:1,2", "--n-max", "3"], EXIT_OK),
    "norms_periodic_1_c2.csv": (["norms", "periodic:1", "--c", "2", "--n-max", "4"], EXIT_OK),
    "spectrum_periodic_1_2_wrap4.csv": (["spectrum", "periodic:1,2", "--wrap", "4"], EXIT_OK),
    "spectrum_periodic_1_wrap2.csv": (["spectrum", "periodic:1", "--wrap", "2"], EXIT_OK),
    "spectrum_periodic_2_wrap1.csv": (["spectrum", "periodic:2", "--wrap", "1"], EXIT_OK),
    "spectrum_periodic_minus1_wrap1.csv": (["spectrum", "periodic:-1", "--wrap", "1"], EXIT_OK),
}


def run(capsys, argv: list[str]) -> tuple[str, str, int]:
    code = main(argv)
    captured = capsys.readouterr()
    return captured.out, captured.err, code


@pytest.fixture(scope="module")
def report_validator():
    schema = json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


@pytest.fixture
def sampled_csv(tmp_path):
    def write(rows: str) -> str:
        path = tmp_path / "weights.csv"
        path.write_text("index,re,im\n" + rows, encoding="utf-8")
        return f"sampled:{path}"

    return write


class TestGoldens:
    @pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
    def test_matches_golden(self, capsys, name):
        argv, expected_code = GOLDEN_CASES[name]
        out, _, code = run(capsys, argv)
        assert code == expected_code
        assert out == (GOLDEN_DIR / name).read_text(encoding="utf-8")

    @pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
    def test_byte_identical_reruns(self, capsys, name):
        argv, _ = GOLDEN_CASES[name]
        first, _, _ = run(capsys, argv)
        second, _, _ = run(capsys, argv)
        assert first == second


class TestAnalyze:
    def test_report_fields(self, capsys):
        out, _, code = run(capsys, ["analyze", "periodic:1,2"])
        assert code == EXIT_OK
        doc = json.loads(out)
        assert list(doc) == [
            "spec", "verdict", "normal", "bounded", "spectrum_radius", "norm_table"
        ]
        assert doc["verdict"]["verdict"] == "similar"
        assert doc["spectrum_radius"] == pytest.approx(2**0.5, rel=1e-15)
        assert doc["norm_table"] == {"n_max": 12, "c": doc["verdict"]["c"]}

    def test_sampled_equal_extensions_is_undecided(self, capsys, sampled_csv):
        spec = sampled_csv("0,1,0\n1,2,0\n2,1,0\n")
        out, _, code = run(capsys, ["analyze", spec, "--horizon", "20"])
        assert code == EXIT_UNDECIDED
        verdict = json.loads(out)["verdict"]
        assert verdict["verdict"] == "undecided"
        assert verdict["horizon"] == 20

    def test_sampled_rate_mismatch(self, capsys, sampled_csv):
        out, _, code = run(capsys, ["analyze", sampled_csv("0,1,0\n1,2,0\n")])
        assert code == EXIT_NOT_SIMILAR
        assert json.loads(out)["verdict"]["reason"] == "rate-mismatch"

    def test_csv_flag_falls_back_to_json(self, capsys):
        out, _, code = run(capsys, ["--csv", "analyze", "periodic:1"])
        assert code == EXIT_OK
        assert json.loads(out)["verdict"]["verdict"] == "similar"


class TestOtherCommands:
    def test_norms_json(self, capsys):
        out, _, code = run(capsys, ["--json", "norms", "split:1|2", "--n-max", "2"])
        assert code == EXIT_OK
        assert json.loads(out) == [
            {"n": 1, "forward_norm": 2, "backward_norm": 1},
            {"n": 2, "forward_norm": 4, "backward_norm": 1},
        ]

    def test_spectrum_json(self, capsys):
        out, _, _ = run(capsys, ["--json", "spectrum", "periodic:4", "--wrap", "2"])
        points = json.loads(out)
        assert [p["modulus"] for p in points] == [4, 4]

    def test_oracle(self, capsys):
        argv = ["oracle", "--seed", "3", "--dim", "4", "--n", "3", "--count", "2"]
        out, _, code = run(capsys, argv)
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["dim"] == 4
        assert [item["seed"] for item in doc["instances"]] == [3, 4]
        assert all(item["holds"] for item in doc["instances"])

    def test_oracle_power_bounded_instances(self, capsys):
        argv = ["oracle", "--seed", "0", "--dim", "5", "--n", "8", "--count", "3"]
        out, _, code = run(capsys, argv)
        assert code == EXIT_OK
        for item in json.loads(out)["instances"]:
            assert 1 <= item["sznagy_bound"] <= 3 + 1e-9
            assert item["sup_fwd"] <= item["sznagy_bound"] * (1 + 1e-8)
            assert item["sup_bwd"] <= item["sznagy_bound"] * (1 + 1e-8)
            assert item["sznagy_holds"]

    def test_norms_beyond_float_range(self, capsys):
        out, _, code = run(capsys, ["norms", "periodic:1", "--c", "10", "--n-max", "320"])
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[308].startswith("308,1.0000000000000001e+308,")
        assert lines[309] == "309,null,0"
        assert lines[-1] == "320,null,0"

    def test_certify(self, capsys):
        out, _, code = run(capsys, ["certify", "modified:periodic:1,2;0=3", "--size", "16"])
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["size"] == 16
        assert doc["residual"] < 1e-10 * doc["kappa"] * 3

    def test_stab(self, capsys):
        out, _, code = run(capsys, ["stab", "periodic:0.5", "--k-range", "0:2"])
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["verdict"] == "dense"
        assert doc["per_basis_decay"] == {"0": True, "1": True, "2": True}
        assert doc["rigorous"] is True


class TestExitCodes:
    def test_parse_error_shows_position(self, capsys):
        out, err, code = run(capsys, ["analyze", "periodic:1,x"])
        assert code == EXIT_USAGE
        assert out == ""
        assert "periodic:1,x" in err
        assert "^ invalid weight" in err

    def test_zero_weight(self, capsys):
        _, err, code = run(capsys, ["analyze", "periodic:0"])
        assert code == EXIT_USAGE
        assert "invalid sequence" in err

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["frobnicate"],
            ["norms"],
            ["spectrum", "periodic:1"],
            ["stab", "periodic:1", "--k-range", "3"],
            ["--json", "--csv", "analyze", "periodic:1"],
            ["norms", "periodic:1", "--c", "-1"],
            ["norms", "periodic:1", "--c", "0"],
            ["norms", "periodic:1", "--c", "abc"],
        ],
    )
    def test_bad_arguments(self, capsys, argv):
        _, err, code = run(capsys, argv)
        assert code == EXIT_USAGE
        assert err.startswith("wshift: ")

    def test_certify_not_similar(self, capsys):
        out, _, code = run(capsys, ["certify", "split:1|2", "--size", "8"])
        assert code == EXIT_SOFTWARE
        assert out == ""

    def test_wrap_off_period(self, capsys):
        _, _, code = run(capsys, ["spectrum", "periodic:1,2", "--wrap", "3"])
        assert code == EXIT_SOFTWARE


class TestReportSchema:
    @pytest.mark.parametrize("name", sorted(n for n in GOLDEN_CASES if n.startswith("analyze_")))
    def test_goldens_validate(self, report_validator, name):
        doc = json.loads((GOLDEN_DIR / name).read_text(encoding="utf-8"))
        report_validator.validate(doc)

    @pytest.mark.parametrize(
        "spec",
        ["periodic:1,2", "modified:periodic:2,0.5,1;-2=3,4=i", "split:1,4|2@3", "split:2|0.5@-2"],
    )
    def test_live_reports_validate(self, capsys, report_validator, spec):
        out, _, _ = run(capsys, ["analyze", spec])
        report_validator.validate(json.loads(out))

    def test_undecided_report_validates(self, capsys, report_validator, sampled_csv):
        out, _, code = run(capsys, ["analyze", sampled_csv("0,1,0\n1,2,0\n2,1,0\n")])
        assert code == EXIT_UNDECIDED
        report_validator.validate(json.loads(out))

    def test_rate_mismatch_report_validates(self, capsys, report_validator, sampled_csv):
        out, _, code = run(capsys, ["analyze", sampled_csv("0,1,0\n1,2,0\n")])
        assert code == EXIT_NOT_SIMILAR
        report_validator.validate(json.loads(out))

    def test_unknown_field_rejected(self, capsys, report_validator):
        out, _, _ = run(capsys, ["analyze", "periodic:1"])
        doc = json.loads(out)
        doc["verdict"]["extra"] = 1
        with pytest.raises(jsonschema.ValidationError):
            report_validator.validate(doc)
