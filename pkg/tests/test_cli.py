import csv
import io
import json
import subprocess
import sys

import pytest

from mazur_floer import bridge, cfa, cfd, cli, pipeline


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_json(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "compute", "2", "1", "T23", "--format", "json", "--json", str(dest))
    assert code == 0
    row = json.loads(out)
    assert row["tau_pipeline"] == 2 and row["agree"]
    assert pipeline.RunResult.from_json(json.loads(dest.read_text())).tau_pipeline == 2


def test_compute_markdown(capsys):
    code, out, _ = run(capsys, "compute", "2", "3", "mT23")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("| m | n | companion")
    assert "| 2 | 3 | mT23 | 0 | 0 |" in lines[2]


def test_sweep_csv_is_ordered(capsys):
    code, out, _ = run(capsys, "sweep", "--m", "1:2", "--n", "1,3", "--companions", "T23,syn(1,-1)", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1 + 2 * 2 * 2
    keys = [tuple(r[:3]) for r in rows[1:]]
    assert keys[:2] == [("1", "1", "T23"), ("1", "1", "syn(1,-1)")]
    assert keys[-1] == ("2", "3", "syn(1,-1)")


def test_sweep_is_deterministic_and_parallel_safe(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["sweep", "--m", "1:3", "--n", "1:2", "--companions", "T23,mT25,figure8"]
    assert run(capsys, *args, "--json", str(a))[0] == 0
    assert run(capsys, *args, "--parallel", "2", "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_library_grid(capsys):
    code, out, _ = run(capsys, "sweep", "--companions", ",".join(cfk_library()), "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 9 * 8 and all(r["agree"] for r in rows)


def cfk_library():
    from mazur_floer import cfk

    return list(cfk.LIBRARY)


def test_empty_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--companions", "", "--format", "json")
    assert code == 0 and json.loads(out) == []


def test_raw_cfa_flag(capsys):
    code, out, _ = run(capsys, "compute", "3", "2", "T25", "--raw-cfa", "--format", "json")
    assert code == 0 and json.loads(out)["agree"]


def test_bridge_dump_roundtrips(capsys):
    code, out, _ = run(capsys, "bridge", "1", "1")
    data = json.loads(out)
    assert code == 0 and data["schubert"] == "b(8,3)" and data["conway"] == "C(2,1,2)"
    d = bridge.DiagramParams.from_json(data["diagram"])
    assert d == bridge.strand_counts(1, 1)


def test_cfa_dump_roundtrips(capsys):
    code, out, err = run(capsys, "cfa", "3", "1")
    module = cfa.AInftyModule.from_json(json.loads(out))
    assert code == 0 and module.op_keys() == cfa.build_cfa(3, 1).op_keys()
    assert err.strip() == f"{len(module.ops)} ops"
    code, out, _ = run(capsys, "cfa", "--fixture", "Q31")
    assert len(json.loads(out)["ops"]) == 40


def test_cfd_dump_roundtrips(capsys):
    code, out, _ = run(capsys, "cfd", "T23")
    data = json.loads(out)
    assert code == 0 and len(data["gens"]) == 7
    assert cfd.TypeDStructure.from_json(data).to_json() == data


def test_epsilon_command(capsys):
    code, out, _ = run(capsys, "epsilon", "T23")
    assert code == 0 and json.loads(out) == {"companion": "T23", "tau": 1, "epsilon": 1}
    code, out, _ = run(capsys, "epsilon", "fig25", "--m", "2", "--n", "1")
    assert code == 0 and json.loads(out)["vertical_class"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "0", "1", "T23"],
        ["compute", "2", "1", "nope"],
        ["compute", "2", "1", "missing.json"],
        ["bridge", "0", "2"],
        ["epsilon", "fig25"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["cfa"])
    assert exc.value.code == 2


def test_disagreement_exit_1(capsys, monkeypatch):
    monkeypatch.setattr(cli.formulas, "tau_formula", lambda *a: 99)
    assert run(capsys, "compute", "2", "1", "T23")[0] == 1


def test_internal_failure_exit_3(capsys, monkeypatch):
    def boom(*a, **k):
        raise pipeline.PipelineError("pairing", "d^2 != 0")

    monkeypatch.setattr(pipeline, "tensor_homology", boom)
    code, _, err = run(capsys, "compute", "2", "1", "T23")
    assert code == 3 and "[pairing]" in err


def test_parse_helpers():
    assert cli.parse_range("1:3") == [1, 2, 3]
    assert cli.parse_range("2,4") == [2, 4]
    assert cli.parse_companions("T23, syn(1,-1),mT25") == ["T23", "syn(1,-1)", "mT25"]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mazur_floer.cli", "bridge", "2", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["schubert"] == "b(14,5)"
