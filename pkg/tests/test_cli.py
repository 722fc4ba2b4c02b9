import json
import os
import subprocess
import sys

import pytest

from pirickart.cli import main
from pirickart.structures import catalog_entry, cyclic_ring, dump_presentation, zero_module


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def z4(tmp_path):
    p = tmp_path / "z4.mod"
    p.write_text(dump_presentation(catalog_entry("Z4_Z4").module))
    return p


def test_refuted_fixture_exits_one(capsys):
    code, out, _ = run(capsys, "classify", "--fixture", "example-2.3")
    assert code == 1
    report = json.loads(out)
    assert report["properties"]["rickart"]["status"] == "Refuted"


def test_clean_module_exits_zero(capsys, tmp_path):
    p = tmp_path / "zero.mod"
    p.write_text(dump_presentation(zero_module(cyclic_ring(2))))
    code, out, _ = run(capsys, "classify", str(p))
    assert code == 0
    assert json.loads(out)["degenerate"]


def test_inconclusive_module_exits_three(capsys, tmp_path):
    p = tmp_path / "z2.mod"
    p.write_text(dump_presentation(catalog_entry("Z2_Z2").module))
    assert run(capsys, "classify", str(p))[0] == 0
    # a cap below |End(M)| leaves the module to bounded search, which cannot prove anything
    assert run(capsys, "classify", str(p), "--cap", "1")[0] == 3


def test_malformed_file_exits_two_with_line(capsys, tmp_path):
    p = tmp_path / "bad.mod"
    p.write_text("[ring]\nmoduli = [4\n")
    code, out, err = run(capsys, "classify", str(p))
    assert code == 2 and not out
    assert err.startswith("pirickart: error: ")
    assert f"{p}:" in err and "syntax error" in err


def test_missing_input_and_conflicting_inputs(capsys, z4):
    assert run(capsys, "classify")[0] == 2
    assert run(capsys, "classify", str(z4), "--fixture", "example-2.3")[0] == 2
    assert run(capsys, "classify", str(z4.parent / "nope.mod"))[0] == 2


def test_bad_bounds_are_input_errors(capsys, z4):
    code, _, err = run(capsys, "classify", str(z4), "--box", "0")
    assert code == 2 and "box" in err


def test_markdown_output_to_file(capsys, z4, tmp_path):
    out = tmp_path / "r.md"
    code, stdout, _ = run(capsys, "classify", str(z4), "--format", "markdown", "-o", str(out))
    assert code == 1 and not stdout
    assert out.read_text().startswith("# ")


def test_witness_dossier_for_case_four(capsys):
    code, out, _ = run(capsys, "witness", "--fixture", "example-2.3", "--matrix", "[[0,0],[1,0]]")
    d = json.loads(out)
    assert code == 0
    assert d["n_star"] == 2
    assert d["rickart_at_f"] is False


def test_witness_rejects_bad_matrices(capsys):
    assert run(capsys, "witness", "--fixture", "example-2.3", "--matrix", "[[1,1],[0,1]]")[0] == 2
    assert run(capsys, "witness", "--fixture", "example-2.3", "--matrix", "[[1,")[0] == 2


def test_suite_only_and_fault(capsys):
    code, out, _ = run(capsys, "suite", "--only", "T11")
    report = json.loads(out)
    assert code == 0 and [t["id"] for t in report["theorems"]] == ["T11"]
    code, out, _ = run(capsys, "suite", "--only", "T4,T11", "--inject-fault", "summand-true")
    report = json.loads(out)
    assert code == 1 and report["violation_count"] > 0
    assert run(capsys, "suite", "--only", "T42")[0] == 2


def test_fault_flag_is_hidden_from_help(capsys):
    with pytest.raises(SystemExit):
        main(["suite", "--help"])
    assert "inject-fault" not in capsys.readouterr().out


def _subprocess(seed, *argv):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    return subprocess.run([sys.executable, "-m", "pirickart.cli", *argv], capture_output=True, env=env, check=False)


def test_json_is_byte_identical_across_hash_seeds():
    a = _subprocess(1, "classify", "--fixture", "example-2.9")
    b = _subprocess(4242, "classify", "--fixture", "example-2.9")
    assert a.returncode == b.returncode
    assert a.stdout == b.stdout and a.stdout


def test_suite_json_is_byte_identical_across_hash_seeds():
    argv = ("suite", "--only", "T6,T13")
    assert _subprocess(7, *argv).stdout == _subprocess(99, *argv).stdout
