"""End-to-end tests of the command-line entry point"""

import csv

import orjson
import pytest

from internal.cli.python.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, main
from internal.cli.python.writers import format_cell, manifest_path, sibling_path


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.reader(handle))


class TestWriters:

    def test_format_cell(self):
        assert format_cell(None) == "NA"
        assert format_cell(float("nan")) == "NA"
        assert format_cell(True) == "true"
        assert format_cell(0.1) == "0.10000000000000001"
        assert format_cell("E2") == "E2"

    def test_paths(self):
        assert sibling_path("out/regions.csv", ".p0") == "out/regions.p0.csv"
        assert manifest_path("out/regions.csv") == "out/regions.csv.manifest.json"


class TestProfileCommand:

    def test_writes_table_and_manifest(self, tmp_path):
        out = tmp_path / "profile.csv"
        assert main(["profile", "--measure", "cauchy:1", "--n", "11", "--out", str(out)]) == EXIT_OK
        rows = read_rows(out)
        assert rows[0] == ["p", "I(p)", "J(p)"]
        assert len(rows) == 12
        assert rows[6] == ["0.5", "0.25", "0.5"]
        manifest = orjson.loads((tmp_path / "profile.csv.manifest.json").read_bytes())
        assert manifest["command"] == "profile"
        assert manifest["measure"] == {"kind": "cauchy", "params": [1.0]}
        assert manifest["settings"] == {"n": 11}
        assert manifest["outputs"] == [str(out)]
        assert manifest["defaults"]["quantile_tol"] == pytest.approx(1e-13)
        assert manifest["version"] == "0.1.0"

    def test_reruns_are_byte_identical(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["profile", "--measure", "subexp:0.5", "--n", "9", "--out", str(first)])
        main(["profile", "--measure", "subexp:0.5", "--n", "9", "--out", str(second)])
        assert first.read_bytes() == second.read_bytes()

    def test_stdout_with_manifest_on_stderr(self, tmp_path, capsys, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert main(["profile", "--measure", "exp", "--n", "3"]) == EXIT_OK
        captured = capsys.readouterr()
        assert captured.out.splitlines() == ["p,I(p),J(p)", "0,0,0", "0.5,0.5,0.5", "1,0,0"]
        assert list(tmp_path.iterdir()) == []
        manifests = [line for line in captured.err.splitlines() if line.startswith('{"')]
        assert len(manifests) == 1
        manifest = orjson.loads(manifests[0])
        assert manifest["command"] == "profile"
        assert manifest["measure"] == {"kind": "exp", "params": []}
        assert manifest["outputs"] == []

    @pytest.mark.parametrize("argv", [
        ["profile", "--n", "0"],
        ["profile", "--measure", "gauss"],
        ["profile", "--measure", "cauchy:-1"],
        ["nonsense"],
    ])
    def test_usage_errors(self, argv):
        assert main(argv) == EXIT_USAGE


class TestOtherCommands:

    def test_regions(self, tmp_path):
        out = tmp_path / "regions.csv"
        svg = tmp_path / "regions.svg"
        code = main(["regions", "--measure", "cauchy:1", "--grid-n", "20", "--out", str(out), "--svg", str(svg)])
        assert code == EXIT_OK
        rows = read_rows(out)
        assert rows[0] == ["p", "lambda", "winner", "P_E1", "P_E2", "P_E3", "P_E4"]
        assert len(rows) == 1 + 21 * 21
        assert "NA" in {row[2] for row in rows[1:]}
        corner = read_rows(tmp_path / "regions.lambda0.csv")[1]
        assert float(corner[0]) == pytest.approx(0.309017, abs=1e-6)
        assert float(corner[1]) == pytest.approx(0.618034, abs=1e-6)
        assert (tmp_path / "regions.p0.csv").exists()
        assert (tmp_path / "regions.e1e2.csv").exists()
        assert "<svg" in svg.read_text(encoding="utf-8")
        manifest = orjson.loads((tmp_path / "regions.csv.manifest.json").read_bytes())
        assert manifest["results"]["p1"] == pytest.approx(0.309017, abs=1e-6)
        assert str(svg) in manifest["outputs"]

    def test_deficit(self, tmp_path):
        out = tmp_path / "deficit.csv"
        assert main(["deficit", "--p", "0.3", "--lambda", "0.2", "--out", str(out)]) == EXIT_OK
        rows = read_rows(out)
        assert [row[0] for row in rows[1:]] == ["E1", "E2", "E4", "E6", "E7"]

    def test_deficit_needs_both_targets(self):
        assert main(["deficit", "--p", "0.3"]) == EXIT_USAGE

    def test_oracle(self, tmp_path):
        out = tmp_path / "oracle.csv"
        code = main(["oracle", "--grid-n", "40", "--max-components", "2", "--p", "0.3", "--lambda", "0.2",
                     "--out", str(out)])
        assert code == EXIT_OK
        header, row = read_rows(out)
        record = dict(zip(header, row))
        assert record["closed_form_family"] == "E2"
        assert record["tie"] in ("true", "false")

    def test_oracle_infeasible_tolerance(self):
        code = main(["oracle", "--grid-n", "100", "--p", "0.3", "--lambda", "0.2", "--measure-tol", "0.001"])
        assert code == EXIT_NUMERICAL

    def test_cheeger(self, tmp_path):
        out = tmp_path / "beta.csv"
        assert main(["cheeger", "--measure", "exp", "--n", "10", "--out", str(out)]) == EXIT_OK
        rows = read_rows(out)
        assert rows[0] == ["s", "beta(s)"] and len(rows) == 11
        for s, beta in rows[1:]:
            assert float(beta) == pytest.approx(1.0 - 2.0 * float(s), abs=1e-9)
        assert read_rows(tmp_path / "beta.dual.csv")[0] == ["t", "I_tilde(t)", "recovered(t)", "residual"]
        manifest = orjson.loads((tmp_path / "beta.csv.manifest.json").read_bytes())
        assert manifest["results"]["round_trip_residual"] <= 1e-6

    def test_rearrange(self, tmp_path):
        out = tmp_path / "sharp.csv"
        code = main(["rearrange", "--measure", "exp", "--breakpoints=-0.5,0,0.5", "--values", "0,1,0",
                     "--n", "5", "--out", str(out)])
        assert code == EXIT_OK
        rows = read_rows(out)
        assert rows[0] == ["x", "u", "u_sharp"] and len(rows) == 6

    @pytest.mark.parametrize("values", ["0,1", "0,1,x"])
    def test_rearrange_rejects_bad_lists(self, values):
        assert main(["rearrange", "--breakpoints=-0.5,0,0.5", "--values", values]) == EXIT_USAGE

    def test_rearrange_rejects_wide_support(self):
        assert main(["rearrange", "--measure", "exp", "--breakpoints=-1,0,1", "--values", "0,1,0"]) == EXIT_USAGE
