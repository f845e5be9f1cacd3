import io
import json

import pandas as pd
import pytest

from app.cli.commands.schemas import REPORT_MODELS, SCHEMA_DIR
from app.core.generators import gen_dnf_one_border, gen_rwor
from app.core.random_order import exact_expected_dnf_two_size


@pytest.fixture
def one_border_file(seq_file):
    return seq_file(gen_dnf_one_border(2, 1).seq, "one_border.txt")


def test_run(cli, one_border_file):
    result = cli("run", "--alg", "dnf", "--input", one_border_file)
    assert result.code == 0
    assert result.data["command"] == "run"
    assert result.report["covered"] == 2
    assert result.report["volume"] == "3"
    assert result.report["trace"] is None


def test_run_rejects_zero_classes(cli, one_border_file, capsys):
    result = cli("run", "--alg", "dhk", "--k", "0", "--input", one_border_file)
    assert result.code == 2
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error"] == "BadParams"
    assert "k must be ≥ 1" in error["detail"]


def test_unknown_flag(cli):
    assert cli("run", "--bogus").code == 2


def test_missing_sequence_file(cli, tmp_path):
    assert cli("run", "--alg", "dnf", "--input", tmp_path / "missing.txt").code == 2


def test_json_is_deterministic(cli, one_border_file):
    first = cli("run", "--alg", "dhk", "--input", one_border_file, "--trace")
    again = cli("run", "--alg", "dhk", "--input", one_border_file, "--trace")
    assert first.out == again.out


def test_analytic_csv(cli):
    result = cli("analytic", "--k", "2")
    assert result.code == 0
    assert result.out.startswith("# bincover analytic mode=exact\n")
    frame = pd.read_csv(io.StringIO(result.out), comment="#")
    assert list(frame["k"]) == [2]
    assert frame.loc[0, "total"] == pytest.approx(0.714097, abs=1e-6)


def test_analytic_json_sweep(cli):
    result = cli("analytic", "--k-min", "2", "--k-max", "4", "--format", "json")
    assert [row["k"] for row in result.report["rows"]] == [2, 3, 4]


def test_generate_then_verify_certificate(cli, tmp_path):
    generated = cli("generate", "dnf_one_border", "--x", "2", "--n", "1", "--out", tmp_path)
    assert generated.code == 0
    assert generated.report["length"] == 6
    assert (tmp_path / "dnf_one_border.txt").exists()

    verified = cli(
        "verify",
        "--input",
        tmp_path / "dnf_one_border.txt",
        "--certificate",
        tmp_path / "dnf_one_border.certificate.json",
    )
    assert verified.code == 0
    assert verified.report == {"kind": "certificate", "covered": 3, "ok": True, "detail": "OPT ≥ 3"}


def test_generate_needs_parameters(cli, tmp_path, capsys):
    assert cli("generate", "dnf_one_border", "--out", tmp_path).code == 2
    assert "needs --x, --n" in capsys.readouterr().err


def test_generate_two_size(cli, tmp_path):
    result = cli("generate", "two_size", "--l", "3", "--s", "2", "--out", tmp_path, "--seed", "4")
    assert result.code == 0
    assert result.report["length"] == 5
    assert result.report["params"] == {"seed": "4"}


def test_run_trace_then_verify(cli, one_border_file, tmp_path):
    run = cli("run", "--alg", "dnf", "--input", one_border_file, "--trace")
    trace_path = tmp_path / "trace.json"
    trace_path.write_text(run.out, encoding="utf-8")

    verified = cli("verify", "--input", one_border_file, "--trace", trace_path, "--max-open", "1")
    assert verified.code == 0
    assert verified.report["covered"] == 2
    assert verified.report["ok"]


def test_verify_detects_wrong_count(cli, one_border_file, tmp_path):
    run = cli("run", "--alg", "dnf", "--input", one_border_file, "--trace")
    data = run.data
    data["report"]["trace"]["covered"] = 5
    trace_path = tmp_path / "trace.json"
    trace_path.write_text(json.dumps(data), encoding="utf-8")

    verified = cli("verify", "--input", one_border_file, "--trace", trace_path)
    assert verified.code == 1
    assert not verified.report["ok"]


def test_table_float_mode(cli):
    result = cli("table", "--a", "2/5", "--b", "3/5", "--mode", "float")
    assert result.code == 0
    assert result.data["mode"] == "float"
    ratios = {e["algorithm"]: e["ratio"] for e in result.report["entries"]}
    assert ratios == {"DNF": "0.666666666667", "DHk": "0.833333333333", "reasonable": "0.5"}


def test_table_without_border(cli):
    assert cli("table", "--a", "2/5", "--b", "1/2").code == 2


def test_minmin(cli):
    result = cli("minmin", "--b", "3/5")
    ratios = {r["algorithm"]: r["ratio"] for r in result.report["ratios"]}
    assert ratios == {"DNF": "15/16", "DHk": "1"}


def test_worst_order(cli, seq_file):
    path = seq_file(gen_rwor(3).seq)
    result = cli("worst-order", "--alg", "dnf", "--input", path)
    assert result.code == 0
    assert result.report["value"] == "6"
    assert result.report["label"] == "A_W"

    relative = cli("worst-order", "--relative", "--input", path)
    assert relative.report["value"] == "4/3"
    assert relative.report["params"]["dhk_w"] == "8"


def test_worst_order_sampled(cli, seq_file):
    path = seq_file(gen_rwor(2).seq)
    result = cli("worst-order", "--alg", "dnf", "--input", path, "--sampled", "--samples", "50", "--seed", "2")
    assert result.report["label"] == "upper bound on A_W"
    assert int(result.report["value"]) >= 4


def test_random_order_two_size(cli):
    result = cli("random-order", "--l", "3", "--s", "2")
    assert result.code == 0
    assert result.report["value"] == str(exact_expected_dnf_two_size(3, 2))
    assert result.report["opt"] == "2"


def test_random_order_needs_one_source(cli, one_border_file):
    assert cli("random-order", "--l", "3", "--input", one_border_file).code == 2
    assert cli("random-order").code == 2


def test_random_order_iid(cli):
    result = cli("random-order", "--iid", "200", "--samples", "50")
    assert result.report["params"]["stationary_rate"] == "2/5"


@pytest.mark.parametrize("name, extra", [("rwor", ["--ns", "1,2"]), ("interval_sweep", [])])
def test_report(cli, name, extra):
    result = cli("report", name, *extra)
    assert result.code == 0
    assert result.report["passed"]
    assert result.report["wall_clock"] is None


def test_report_plot_data(cli, tmp_path):
    result = cli("report", "rwor", "--ns", "1", "--plot-data", tmp_path, "--plot-ks", "2,3", "--plot-ns", "10")
    assert result.code == 0
    frame = pd.read_csv(tmp_path / "ratio_vs_k.csv")
    assert list(frame["k"]) == [2, 3]
    assert (tmp_path / "ratio_vs_n.csv").exists()


def test_report_timing(cli):
    result = cli("report", "minmin", "--timing")
    assert result.report["wall_clock"] is not None


def test_shipped_schemas_match_models():
    for stem, model in REPORT_MODELS.items():
        shipped = json.loads((SCHEMA_DIR / f"{stem}.json").read_text(encoding="utf-8"))
        generated = model.model_json_schema()
        assert set(shipped["properties"]) == set(generated["properties"]), stem
        assert set(shipped.get("required", [])) == set(generated.get("required", [])), stem


def test_reports_validate_against_models(cli, one_border_file):
    result = cli("run", "--alg", "dnf", "--input", one_border_file)
    REPORT_MODELS["envelope"].model_validate(result.data)
    REPORT_MODELS["run"].model_validate(result.report)


def test_schemas_write(cli, tmp_path):
    result = cli("schemas", "--write", tmp_path)
    assert result.code == 0
    assert len(list(tmp_path.glob("*.json"))) == len(REPORT_MODELS)
