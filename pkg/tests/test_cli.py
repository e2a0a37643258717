"""End-to-end tests of the command-line interface: formats, exit codes,
round-trips, and the environment seed override."""

import json

import numpy as np
import pytest

from meanskit.cli import canonical_json, main
from meanskit.linalg import SymMatrix, matrix_from_dict, save_matrix


@pytest.fixture
def matrix_files(tmp_path):
    paths = {}
    for name, m in {
        "one": SymMatrix([[1.0]]),
        "two": SymMatrix([[2.0]]),
        "proj_a": SymMatrix([[1.0, 0.0], [0.0, 0.0]]),
        "proj_b": SymMatrix([[0.0, 0.0], [0.0, 1.0]]),
        "pd": SymMatrix([[2.0, 0.5], [0.5, 1.0]]),
        "indef": SymMatrix([[1.0, 0.0], [0.0, -1.0]]),
    }.items():
        path = tmp_path / f"{name}.json"
        save_matrix(m, path)
        paths[name] = str(path)
    return paths


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestEval:
    def test_harmonic_scalars(self, capsys, matrix_files):
        code, obj = run_json(
            capsys,
            [
                "eval",
                "--mean",
                "harmonic",
                "--weight",
                "0.5",
                "--A",
                matrix_files["one"],
                "--B",
                matrix_files["two"],
            ],
        )
        assert code == 0
        assert obj["dim"] == 1
        assert obj["data"][0] == pytest.approx(4.0 / 3.0)

    def test_geometric_projection_pair_vanishes(self, capsys, matrix_files):
        code, obj = run_json(
            capsys,
            [
                "eval",
                "--mean",
                "geometric",
                "--weight",
                "0.5",
                "--A",
                matrix_files["proj_a"],
                "--B",
                matrix_files["proj_b"],
            ],
        )
        assert code == 0
        assert max(abs(v) for v in obj["data"]) <= 1e-5

    def test_left_trivial_returns_left_file(self, capsys, matrix_files):
        code, obj = run_json(
            capsys,
            [
                "eval",
                "--mean",
                "left-trivial",
                "--A",
                matrix_files["pd"],
                "--B",
                matrix_files["pd"],
            ],
        )
        assert code == 0
        np.testing.assert_allclose(
            np.array(obj["data"]).reshape(2, 2),
            [[2.0, 0.5], [0.5, 1.0]],
            atol=1e-12,
        )

    def test_json_roundtrip_identical(self, capsys, matrix_files):
        code = main(
            [
                "eval",
                "--mean",
                "geometric",
                "--weight",
                "0.5",
                "--A",
                matrix_files["pd"],
                "--B",
                matrix_files["pd"],
                "--format",
                "json",
            ]
        )
        assert code == 0
        first = capsys.readouterr().out
        reparsed = matrix_from_dict(json.loads(first))
        assert canonical_json(
            {"dim": reparsed.dim, "data": [float(v) for v in reparsed.data.reshape(-1)]}
        ) == first.strip()

    def test_missing_file_exits_2(self, capsys, matrix_files):
        code = main(
            [
                "eval",
                "--mean",
                "sum",
                "--A",
                "/nonexistent/path.json",
                "--B",
                matrix_files["one"],
            ]
        )
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_non_psd_exits_2_naming_eigenvalue(self, capsys, matrix_files):
        code = main(
            [
                "eval",
                "--mean",
                "geometric",
                "--weight",
                "0.5",
                "--A",
                matrix_files["indef"],
                "--B",
                matrix_files["pd"],
            ]
        )
        assert code == 2
        err = capsys.readouterr().err
        assert "eigenvalue" in err and "-1" in err

    def test_missing_weight_exits_2(self, capsys, matrix_files):
        code = main(
            [
                "eval",
                "--mean",
                "geometric",
                "--A",
                matrix_files["one"],
                "--B",
                matrix_files["two"],
            ]
        )
        assert code == 2

    def test_csv_and_pretty_formats(self, capsys, matrix_files):
        assert (
            main(
                [
                    "eval",
                    "--mean",
                    "sum",
                    "--A",
                    matrix_files["pd"],
                    "--B",
                    matrix_files["pd"],
                    "--format",
                    "csv",
                ]
            )
            == 0
        )
        csv_out = capsys.readouterr().out.strip().splitlines()
        assert len(csv_out) == 2
        first_row = [float(v) for v in csv_out[0].split(",")]
        np.testing.assert_allclose(first_row, [4.0, 1.0], atol=1e-12)
        assert (
            main(
                [
                    "eval",
                    "--mean",
                    "sum",
                    "--A",
                    matrix_files["pd"],
                    "--B",
                    matrix_files["pd"],
                    "--format",
                    "pretty",
                ]
            )
            == 0
        )
        assert "dim = 2" in capsys.readouterr().out


class TestFunction:
    def test_logarithmic_at_one(self, capsys):
        code, table = run_json(
            capsys, ["function", "--mean", "logarithmic", "--grid", "1:1:1"]
        )
        assert code == 0
        assert table == [{"x": 1, "f": 1}]

    def test_geometric_at_four(self, capsys):
        code, table = run_json(
            capsys,
            ["function", "--mean", "geometric", "--weight", "0.5", "--grid", "4:4:1"],
        )
        assert code == 0
        assert table[0]["f"] == pytest.approx(2.0)

    def test_zero_everywhere(self, capsys):
        code, table = run_json(
            capsys, ["function", "--mean", "zero", "--grid", "0:10:5"]
        )
        assert code == 0
        assert all(row["f"] == 0 for row in table)

    def test_csv_table(self, capsys):
        code = main(
            ["function", "--mean", "sum", "--grid", "0:2:3", "--format", "csv"]
        )
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "x,f"
        assert lines[1].startswith("0,1")

    def test_malformed_grid_exits_2(self, capsys):
        assert main(["function", "--mean", "sum", "--grid", "5:1:10"]) == 2
        assert main(["function", "--mean", "sum", "--grid", "oops"]) == 2
        assert main(["function", "--mean", "sum", "--grid=-1:2:3"]) == 2


class TestClassify:
    def test_right_trivial(self, capsys):
        code, rec = run_json(capsys, ["classify", "--mean", "right-trivial"])
        assert code == 0
        assert rec["strict_right"] is False and rec["is_right_trivial"] is True

    def test_arithmetic_is_strict_mean(self, capsys):
        code, rec = run_json(
            capsys, ["classify", "--mean", "arithmetic", "--weight", "0.5"]
        )
        assert code == 0
        assert rec["strict"] is True and rec["is_mean"] is True

    def test_parallel_sum_not_a_mean(self, capsys):
        code, rec = run_json(capsys, ["classify", "--mean", "parallel-sum"])
        assert code == 0
        assert rec["is_mean"] is False and rec["strict"] is None


class TestMeasureEval:
    def test_interior_atom_scalar(self, capsys):
        code, obj = run_json(
            capsys, ["measure-eval", "--atoms", "0.5:1", "--x", "2"]
        )
        assert code == 0
        assert obj["value"] == pytest.approx(4.0 / 3.0)

    def test_boundary_atoms_scalar(self, capsys):
        code, obj = run_json(
            capsys, ["measure-eval", "--atoms", "0:0.5,1:0.5", "--x", "3"]
        )
        assert code == 0
        assert obj["value"] == pytest.approx(2.0)

    def test_arcsine_density_scalar(self, capsys):
        code, obj = run_json(
            capsys,
            ["measure-eval", "--density", "arcsine", "--n", "256", "--x", "4"],
        )
        assert code == 0
        assert obj["value"] == pytest.approx(2.0, abs=1e-6)

    def test_matrix_mode(self, capsys, matrix_files):
        code, obj = run_json(
            capsys,
            [
                "measure-eval",
                "--atoms",
                "0:1",
                "--A",
                matrix_files["pd"],
                "--B",
                matrix_files["pd"],
            ],
        )
        assert code == 0
        np.testing.assert_allclose(
            np.array(obj["data"]).reshape(2, 2), [[2.0, 0.5], [0.5, 1.0]]
        )

    def test_measure_file(self, capsys, tmp_path, matrix_files):
        path = tmp_path / "mu.json"
        path.write_text('{"atoms": [[0.5, 1.0]], "density": null}')
        code, obj = run_json(
            capsys, ["measure-eval", "--measure", str(path), "--x", "2"]
        )
        assert code == 0
        assert obj["value"] == pytest.approx(4.0 / 3.0)

    def test_requires_a_measure(self, capsys):
        assert main(["measure-eval", "--x", "2"]) == 2

    def test_rejects_file_plus_inline(self, capsys, tmp_path):
        path = tmp_path / "mu.json"
        path.write_text('{"atoms": [[0.5, 1.0]], "density": null}')
        assert (
            main(["measure-eval", "--measure", str(path), "--atoms", "0:1", "--x", "1"])
            == 2
        )


class TestVerify:
    def test_geometric_small_clean_run(self, capsys):
        code, reports = run_json(
            capsys,
            [
                "verify",
                "--mean",
                "geometric",
                "--weight",
                "0.5",
                "--suite",
                "all",
                "--trials",
                "10",
                "--dims",
                "1,2,3",
                "--seed",
                "7",
            ],
        )
        assert code == 0
        assert [r["suite"] for r in reports] == [
            "axioms",
            "continuity",
            "positivity",
            "betweenness",
            "strictness",
        ]
        assert all(r["violations"] == 0 for r in reports)

    def test_parallel_sum_betweenness_exits_1(self, capsys):
        code, report = run_json(
            capsys,
            [
                "verify",
                "--mean",
                "parallel-sum",
                "--suite",
                "betweenness",
                "--trials",
                "10",
                "--dims",
                "2",
                "--seed",
                "7",
            ],
        )
        assert code == 1
        assert report["violations"] > 0

    def test_strictness_on_non_mean_exits_2(self, capsys):
        assert (
            main(
                [
                    "verify",
                    "--mean",
                    "sum",
                    "--suite",
                    "strictness",
                    "--trials",
                    "5",
                    "--dims",
                    "2",
                ]
            )
            == 2
        )

    def test_all_skips_strictness_for_non_mean(self, capsys):
        code = main(
            [
                "verify",
                "--mean",
                "sum",
                "--suite",
                "all",
                "--trials",
                "5",
                "--dims",
                "1,2",
                "--seed",
                "3",
                "--format",
                "json",
            ]
        )
        captured = capsys.readouterr()
        reports = json.loads(captured.out)
        # betweenness correctly fails for a non-mean, hence exit 1
        assert code == 1
        assert "strictness" not in [r["suite"] for r in reports]
        assert "skipping strictness" in captured.err

    def test_unknown_suite_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--mean", "sum", "--suite", "bogus"])
        assert exc.value.code == 2

    def test_env_seed_override(self, capsys, monkeypatch):
        monkeypatch.setenv("MEANSKIT_SEED", "123")
        code, report = run_json(
            capsys,
            [
                "verify",
                "--mean",
                "arithmetic",
                "--weight",
                "0.5",
                "--suite",
                "axioms",
                "--trials",
                "5",
                "--dims",
                "2",
                "--seed",
                "7",
            ],
        )
        assert code == 0
        assert report["seed"] == 123


class TestCounterexamples:
    def test_exit_zero_and_report(self, capsys):
        code, report = run_json(capsys, ["counterexamples"])
        assert code == 0
        assert report["suite"] == "counterexamples"
        assert report["trials"] == 3 and report["violations"] == 0


class TestCanonicalJson:
    def test_stable_under_reserialization(self):
        payload = {"b": 1 / 3, "a": [1.0, 2.5e-17, True, None], "c": "text"}
        once = canonical_json(payload)
        again = canonical_json(json.loads(once))
        assert once == again

    def test_sorted_keys_and_17_digits(self):
        s = canonical_json({"z": 0.1, "a": 2.0})
        assert s.index('"a"') < s.index('"z"')
        assert "0.1000000000000000" in s

    def test_floats_roundtrip_exactly(self):
        for v in (1 / 3, 1e-300, 123456.789, 2.0**-52):
            assert json.loads(canonical_json(v)) == v

    def test_negative_zero_normalized(self):
        once = canonical_json({"v": -0.0})
        assert once == canonical_json(json.loads(once))
