import json

import pytest

from boundwell import __version__
from boundwell.cli import (
    CRITICAL_COLUMNS,
    ENERGY_COLUMNS,
    emit_table,
    energy_records,
    format_table,
    plot_script,
    read_csv_table,
    run,
)
from boundwell.analysis import ComparisonRow
from boundwell.model import PotentialKind


def _out(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_energy_koksal(capsys):
    code, out, _ = _out(capsys, ["energy", "--potential", "gaussian", "--xi", "200", "--n", "0", "--l", "0",
                                 "--method", "koksal"])
    assert code == 0
    assert float(out) == pytest.approx(-170.5487, abs=1e-4)
    assert out.strip() == "-170.548697265711"


def test_critical_variational_yukawa(capsys):
    code, out, _ = _out(capsys, ["critical", "--potential", "yukawa", "--l", "0", "--method", "variational"])
    assert code == 0
    assert out.strip() == "1.000000000000"


def test_energy_all_methods(capsys):
    code, out, _ = _out(capsys, ["energy", "--potential", "gaussian", "--xi", "20", "--l", "1"])
    assert code == 0
    lines = dict(line.split() for line in out.strip().splitlines())
    assert set(lines) == {"koksal", "variational", "reference"}
    assert float(lines["reference"]) <= float(lines["variational"])


@pytest.mark.parametrize("argv", [
    ["energy", "--potential", "yukawa", "--xi", "2", "--method", "koksal"],
    ["critical", "--potential", "yukawa", "--method", "koksal"],
    ["energy", "--potential", "gaussian", "--xi", "200", "--n", "1", "--method", "variational"],
    ["energy", "--potential", "square", "--xi", "2"],
    ["figure", "5"],
    ["figure", "2", "--l-max", "3"],
    ["sweep", "--potential", "gaussian", "--l-max", "3"],
    ["count", "--potential", "gaussian", "--xi", "2", "--l", "-1"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, err = _out(capsys, argv)
    assert code == 2
    assert "error" in err or "usage" in err


def test_koksal_yukawa_message(capsys):
    _, _, err = _out(capsys, ["energy", "--potential", "yukawa", "--xi", "2", "--method", "koksal"])
    assert "koksal" in err and "gaussian" in err


@pytest.mark.parametrize("argv", [
    ["energy", "--potential", "gaussian", "--xi", "0.5", "--method", "reference"],
    ["energy", "--potential", "gaussian", "--xi", "-1", "--method", "koksal"],
    ["figure", "3", "--l-max", "0", "--out", "/nonexistent/dir/fig.csv"],
])
def test_domain_errors(capsys, argv):
    code, _, err = _out(capsys, argv)
    assert code == 1
    assert err.startswith("boundwell: error:")


def test_count(capsys):
    code, out, _ = _out(capsys, ["count", "--potential", "gaussian", "--xi", "2.0", "--l", "0"])
    assert code == 0 and out.strip() == "1"


def test_critical_reference(capsys):
    code, out, _ = _out(capsys, ["critical", "--potential", "gaussian", "--l", "0", "--method", "reference"])
    assert code == 0 and float(out) == pytest.approx(1.342, abs=2e-3)


def test_sweep_over_xi(capsys):
    code, out, _ = _out(capsys, ["sweep", "--potential", "yukawa", "--xi-list", "1", "2", "--method", "all"])
    assert code == 0
    records = read_csv_table(out)
    assert [(r["xi"], r["method"]) for r in records] == [
        (1.0, "variational"), (1.0, "reference"), (2.0, "variational"), (2.0, "reference")]


def test_sweep_over_l_json(capsys):
    code, out, _ = _out(capsys, ["sweep", "--potential", "gaussian", "--xi", "30", "--l-max", "2",
                                 "--method", "koksal", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert [d["l"] for d in data] == [0, 1, 2]
    assert list(data[0]) == list(ENERGY_COLUMNS)


def test_figure1_csv(tmp_path):
    path = tmp_path / "fig1.csv"
    assert run(["figure", "1", "--out", str(path)]) == 0
    text = path.read_text(encoding="utf-8")
    lines = text.split("\n")
    assert lines[-1] == ""
    comments = [line for line in lines if line.startswith("#")]
    body = [line for line in lines[:-1] if not line.startswith("#")]
    assert __version__ in comments[0]
    assert any("h=0.001" in c for c in comments)
    assert body[0] == "potential,xi,n,l,method,energy,ref_energy,abs_err,rel_err"
    assert len(body) - 1 == 33
    assert "\r" not in text


def test_figure_plot_script(tmp_path):
    data = tmp_path / "fig4.csv"
    script = tmp_path / "fig4.gp"
    assert run(["figure", "4", "--l-max", "2", "--out", str(data), "--plot-script", str(script)]) == 0
    text = script.read_text()
    assert str(data) in text and "variational" in text and "koksal" not in text
    assert plot_script(1, "x.csv").count("strcol(5)") == 3


def test_figure4_columns(tmp_path):
    path = tmp_path / "fig4.csv"
    assert run(["figure", "4", "--l-max", "1", "--out", str(path)]) == 0
    records = read_csv_table(path.read_text())
    assert list(records[0]) == list(CRITICAL_COLUMNS)
    assert len(records) == 4
    assert {r["method"] for r in records} == {"variational", "reference"}


def _rows():
    return [
        ComparisonRow(PotentialKind.GAUSSIAN, 2.0, 0, 0, -0.1, -0.2, -0.3),
        ComparisonRow(PotentialKind.GAUSSIAN, 1.0, 0, 0, 0.4, 0.01, None),
    ]


def test_emit_single_row(tmp_path):
    path = tmp_path / "one.csv"
    emit_table(energy_records(_rows())[:1], "csv", path, ENERGY_COLUMNS)
    assert path.read_bytes().count(b"\n") == 2


def test_emit_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_table(energy_records(_rows()), "csv", a, ENERGY_COLUMNS)
    emit_table(energy_records(_rows()), "csv", b, ENERGY_COLUMNS)
    assert a.read_bytes() == b.read_bytes()


def test_absent_reference_serialisation():
    records = energy_records(_rows())
    csv_back = read_csv_table(format_table(records, "csv", ENERGY_COLUMNS))
    json_back = json.loads(format_table(records, "json", ENERGY_COLUMNS))
    subcritical = [r for r in csv_back if r["xi"] == 1.0]
    assert all(r["ref_energy"] is None and r["abs_err"] is None for r in subcritical)
    assert all(r["ref_energy"] is None for r in json_back if r["xi"] == 1.0)
    assert ",,," in format_table(records, "csv", ENERGY_COLUMNS)


def test_csv_round_trip_exact():
    records = energy_records(_rows())
    back = read_csv_table(format_table(records, "csv", ENERGY_COLUMNS, comments=["note"]))
    assert back == records


def test_empty_table_rejected():
    from boundwell.model import DomainError
    with pytest.raises(DomainError):
        format_table([], "csv")
