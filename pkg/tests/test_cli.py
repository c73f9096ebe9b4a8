"""CLI behavior: exit codes, file formats, determinism, figures."""

import json
from fractions import Fraction

import pytest

from median_hardy.cli import main
from median_hardy.io import load_sequence, load_step_function, parse_scalar
from median_hardy.core import DomainError


def run(args):
    return main(args)


def test_verify_discrete_clean_run(tmp_path):
    out = tmp_path / "r.json"
    code = run(["verify-discrete", "--p", "2", "--trials", "30", "--max-n", "40",
                "--seed", "42", "--output", "json", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == 1
    assert doc["aggregate"]["violations"] == 0
    assert doc["aggregate"]["cases"] == 30
    kinds = {c["kind"] for c in doc["checks"]}
    assert {"pointwise_prefix_bound", "pointwise_global_bound",
            "median_hardy_discrete", "hardy_discrete", "chain_consistency"} <= kinds


def test_verify_discrete_input_file_equality_case(tmp_path):
    seq = tmp_path / "seq.json"
    seq.write_text("[0, 1]")
    out = tmp_path / "r.json"
    code = run(["verify-discrete", "--p", "2", "--trials", "0", "--input", str(seq),
                "--output", "json", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    prefix = next(c for c in doc["checks"] if c["kind"] == "pointwise_prefix_bound")
    # |m_2 - a_2| = 1/2 = T_2/2: equality, serialized exactly
    assert prefix["lhs"] == "1/2" and prefix["rhs"] == "1/2" and prefix["ratio"] == 1
    assert prefix["holds"] is True


def test_exit_2_on_bad_inputs(tmp_path, capsys):
    assert run(["verify-discrete", "--p", "1", "--trials", "1"]) == 2
    missing = tmp_path / "nope.json"
    assert run(["eval", "--input", str(missing)]) == 2
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert run(["eval", "--input", str(empty)]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"segments": "oops"}')
    assert run(["verify-continuous", "--trials", "0", "--input", str(bad)]) == 2
    neg = tmp_path / "neg.json"
    neg.write_text("[1, -2]")
    assert run(["verify-discrete", "--trials", "0", "--input", str(neg)]) == 2
    assert run(["verify-discrete", "--backend", "exact", "--p", "2.5"]) == 2
    capsys.readouterr()


def test_exit_1_signals_mathematical_violation(monkeypatch, capsys):
    import median_hardy.cli as cli

    def boom(ns):
        raise AssertionError("synthetic violation")

    monkeypatch.setitem(cli._DISPATCH, "sharpness", boom)
    assert run(["sharpness"]) == 1
    assert "violation" in capsys.readouterr().err


def test_sequence_file_formats(tmp_path):
    j = tmp_path / "a.json"
    j.write_text('[0, "1/3", 0.25, 2]')
    vals = load_sequence(j, exact=True)
    assert vals == [0, Fraction(1, 3), Fraction(1, 4), 2]

    c = tmp_path / "b.csv"
    c.write_text("# comment\n0\n1/3\n0.25\n")
    vals = load_sequence(c, exact=True)
    assert vals == [0, Fraction(1, 3), Fraction(1, 4)]
    floats = load_sequence(c, exact=False)
    assert floats == [0.0, pytest.approx(1 / 3), 0.25]


def test_decimal_literals_parse_decimally_in_exact_mode(tmp_path):
    j = tmp_path / "c.json"
    j.write_text("[0.1]")
    assert load_sequence(j, exact=True) == [Fraction(1, 10)]
    assert parse_scalar("0.1", exact=True) == Fraction(1, 10)


def test_step_function_file(tmp_path):
    j = tmp_path / "f.json"
    j.write_text('{"segments": [{"len": 1, "val": 0}, {"len": "1/2", "val": "3/4"}]}')
    f = load_step_function(j, exact=True)
    assert f.total_length == Fraction(3, 2)
    assert f.total_integral == Fraction(3, 8)
    with pytest.raises(DomainError):
        load_step_function(j.with_suffix(".missing"), exact=True)


def test_eval_sequence_table(tmp_path, capsys):
    seq = tmp_path / "seq.json"
    seq.write_text("[0, 1, 0, 0.7071067811865476]")
    assert run(["eval", "--input", str(seq), "--backend", "float",
                "--output", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "sequence"
    medians = [row["lower_median"] for row in doc["stats"]]
    assert medians == [0.0, 0.0, 0.0, 0.0]
    assert [row["i"] for row in doc["stats"]] == [1, 2, 3, 4]


def test_eval_stepfn_tables(tmp_path, capsys):
    f = tmp_path / "f1.json"
    f.write_text('{"segments": [{"len": 1, "val": 0}, {"len": 1, "val": 1}]}')
    assert run(["eval", "--input", str(f), "--output", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "stepfn"
    assert doc["median"] == [{"from": 0, "value": 0}]  # 0 everywhere
    assert doc["rearranged"] == [{"len": 1, "val": 1}]
    betas = [piece["beta"] for piece in doc["average"]]
    assert betas == [0, 1, 0]


def test_verify_continuous_clean_run(tmp_path):
    out = tmp_path / "c.json"
    code = run(["verify-continuous", "--p", "2", "--trials", "6", "--max-n", "8",
                "--seed", "3", "--output", "json", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["aggregate"]["violations"] == 0
    kinds = {c["kind"] for c in doc["checks"]}
    assert {"median_rearrangement_bound", "median_hardy_continuous",
            "hardy_continuous", "substitution_identity"} <= kinds


def test_determinism_across_worker_counts(tmp_path, monkeypatch):
    outs = []
    for threads in ("1", "3"):
        monkeypatch.setenv("MH_THREADS", threads)
        out = tmp_path / f"run{threads}.json"
        code = run(["verify-discrete", "--p", "3", "--backend", "exact",
                    "--trials", "24", "--max-n", "40", "--seed", "7",
                    "--output", "json", "--out", str(out)])
        assert code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_sharpness_csv_and_plot(tmp_path):
    out = tmp_path / "curve.csv"
    code = run(["sharpness", "--p", "2", "--n-grid", "10,100,1000",
                "--output", "csv", "--out", str(out), "--plot"])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "N,lhs,rhs,ratio"
    assert len(lines) == 4
    ratios = [float(line.split(",")[3]) for line in lines[1:]]
    assert ratios == sorted(ratios)
    png = out.with_suffix(".png")
    assert png.exists() and png.stat().st_size > 1000


def test_sharpness_json_fit(tmp_path, capsys):
    code = run(["sharpness", "--p", "2", "--n-grid", "10,100,1000,10000",
                "--output", "json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["grid_monotone"] is True and doc["ratios_capped"] is True
    assert doc["sharp_constant"] == 2.0
    assert doc["fit"]["points_used"] >= 3


def test_plot_alongside_discrete_report(tmp_path):
    out = tmp_path / "rep.csv"
    code = run(["verify-discrete", "--trials", "8", "--max-n", "20", "--seed", "1",
                "--output", "csv", "--out", str(out), "--plot"])
    assert code == 0
    assert out.exists()
    assert out.with_suffix(".png").exists()


def test_human_output_mentions_sharp_constant(capsys):
    assert run(["verify-discrete", "--trials", "4", "--max-n", "10", "--seed", "2"]) == 0
    text = capsys.readouterr().out
    assert "sharp constant" in text and "violation" in text


def test_exact_scalars_round_trip_through_reports():
    from median_hardy.reporting import scalar_json

    for x in (Fraction(22, 7), Fraction(0), Fraction(5), Fraction(-3, 64)):
        assert parse_scalar(scalar_json(x), exact=True) == x


def test_invalid_mh_threads_is_a_usage_error(monkeypatch, capsys):
    monkeypatch.setenv("MH_THREADS", "many")
    assert run(["verify-discrete", "--trials", "4"]) == 2
    monkeypatch.setenv("MH_THREADS", "0")
    assert run(["verify-discrete", "--trials", "4"]) == 2
    capsys.readouterr()


def test_cli_rejects_p_below_its_guard(capsys):
    # library-valid exponent, below the CLI usability floor 1 + 1e-6
    assert run(["verify-discrete", "--p", "1.0000001", "--trials", "1"]) == 2
    capsys.readouterr()
