import hashlib
import pathlib
import shutil
import subprocess
import sys

import numpy as np
import pytest

import eaqecc
from eaqecc import propagate as prop
from eaqecc.codes import LinearCode
from eaqecc.fields import GF

F9 = GF(9)
DATA = pathlib.Path(eaqecc.__file__).parent / "data" / "paper"


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "eaqecc", *args], capture_output=True, text=True
    )
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture()
def c6_file(tmp_path):
    G5 = np.hstack([np.eye(4, dtype=np.uint8), np.full((4, 1), 2, np.uint8)])
    col = np.array([1, 7, 4, 5], dtype=np.uint8).reshape(4, 1)
    C6 = LinearCode(F9, np.hstack([G5, col]), name="mds_6_4_3")
    path = tmp_path / "c6.txt"
    path.write_text(C6.to_text())
    return path


def test_construct_hermitian(c6_file, tmp_path):
    out = tmp_path / "record.txt"
    code, stdout, _ = run_cli(
        "construct", "--route", "hermitian", str(c6_file), "--out", str(out), "--format", "machine"
    )
    assert code == 0
    assert "n=6 kappa=1 delta=5" in stdout and "c=3" in stdout and "purity=pure" in stdout
    assert out.read_text().strip() == "3 6 1 5 3 pure constructed"


def test_construct_css(tmp_path):
    H = np.array(
        [[1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1]], dtype=np.uint8
    )
    p = tmp_path / "simplex.txt"
    p.write_text(LinearCode(GF(2), H).to_text())
    code, stdout, _ = run_cli("construct", "--route", "css", str(p), str(p), "--format", "machine")
    assert code == 0
    assert "n=7 kappa=1 delta=3" in stdout and "c=0" in stdout


def test_dual_hull_distance(c6_file, tmp_path):
    out = tmp_path / "dual.txt"
    code, stdout, _ = run_cli("dual", str(c6_file), "--out", str(out), "--format", "machine")
    assert code == 0 and "k=2" in stdout
    dual = LinearCode.from_text(out.read_text())
    assert dual.k == 2

    code, stdout, _ = run_cli("hull", str(c6_file), "--format", "machine")
    assert code == 0 and "ell=1" in stdout

    code, stdout, _ = run_cli("distance", str(c6_file), "--format", "machine")
    assert code == 0 and "value=3" in stdout and "certainty=exact" in stdout


def test_distance_outside(tmp_path, c6_file):
    sub = LinearCode.from_text(c6_file.read_text()).hull_code()
    p = tmp_path / "hull.txt"
    p.write_text(sub.to_text())
    code, stdout, _ = run_cli(
        "distance", str(c6_file), "--outside", str(p), "--format", "machine"
    )
    assert code == 0 and "value=3" in stdout


def test_propagate_extend_column_writes_step(tmp_path):
    G5 = np.hstack([np.eye(4, dtype=np.uint8), np.full((4, 1), 2, np.uint8)])
    p = tmp_path / "c5.txt"
    p.write_text(LinearCode(F9, G5).to_text())
    outc = tmp_path / "derived.txt"
    outs = tmp_path / "step.txt"
    code, stdout, _ = run_cli(
        "propagate", "--rule", "extend-column", str(p), "--out-code", str(outc),
        "--out-step", str(outs), "--format", "machine",
    )
    assert code == 0 and "ell=1" in stdout
    derived = LinearCode.from_text(outc.read_text())
    assert (derived.n, derived.k, derived.hull_dim) == (6, 4, 1)
    step = prop.step_from_text(outs.read_text())
    assert prop.replay_step(step) == derived


def test_min_ent_step_file(tmp_path):
    G = np.array([[1, 0, 1, 1], [0, 1, 1, 2]], dtype=np.uint8)
    p = tmp_path / "tetra.txt"
    p.write_text(LinearCode(F9, G).to_text())
    outs = tmp_path / "step.txt"
    code, stdout, _ = run_cli(
        "min-ent", str(p), "--mode", "randomized", "--seed", "5", "--budget", "32",
        "--out-step", str(outs), "--format", "machine",
    )
    assert code == 0
    prop.replay_step(prop.step_from_text(outs.read_text()))


def test_propagate_less_ent_step_file(tmp_path):
    src = DATA / "g16_5_9.txt"
    codefile = tmp_path / "c16dual.txt"
    C16 = LinearCode.from_text(src.read_text())
    codefile.write_text(C16.hermitian_dual().to_text())
    w15 = tmp_path / "w15.txt"
    w15.write_text((DATA / "word16_w15.txt").read_text())
    step_path = tmp_path / "step.txt"
    code, stdout, _ = run_cli(
        "propagate", "--rule", "less-ent", str(codefile), "--word-file", str(w15),
        "--out-step", str(step_path), "--format", "machine",
    )
    assert code == 0
    assert "n=17 kappa=2 delta=8" in stdout
    step = prop.step_from_text(step_path.read_text())
    replayed = prop.replay_step(step)
    assert (replayed.n, replayed.kappa, replayed.delta.value, replayed.c) == (17, 2, 8, 7)


def test_simple_rule_command():
    code, stdout, _ = run_cli(
        "simple-rule", "--rule", "1", "--record", "2 3 1 3 2 unknown paper-table",
        "--format", "machine",
    )
    assert code == 0 and "n=4 kappa=1 delta=3 " in stdout


def test_min_ent_and_puncture_space(tmp_path):
    G = np.array([[1, 0, 1, 1], [0, 1, 1, 2]], dtype=np.uint8)
    p = tmp_path / "tetra.txt"
    p.write_text(LinearCode(F9, G).to_text())
    code, stdout, _ = run_cli("min-ent", str(p), "--format", "machine")
    assert code == 0 and "c_min=0" in stdout and "exhaustive=1" in stdout
    code, stdout, _ = run_cli("puncture-space", str(p), "--format", "machine")
    assert code == 0 and "all_nonzero_found=1" in stdout


def test_bounds_command_flags_violation():
    code, stdout, _ = run_cli(
        "bounds", "--record", "3 6 2 5 3 unknown fabricated", "--format", "machine"
    )
    assert code == 1 and "violations=1" in stdout
    code, stdout, _ = run_cli(
        "bounds", "--record", "3 6 1 5 3 pure constructed", "--format", "machine"
    )
    assert code == 0 and "violations=0" in stdout


def test_table_check_and_query():
    code, stdout, _ = run_cli("table", "check", "--bundled", "qutrit", "--format", "machine")
    assert code == 0 and "violations=0" in stdout
    code, stdout, _ = run_cli(
        "table", "query", "--bundled", "qubit", "--q", "2", "--n", "3", "--kappa", "1",
        "--c", "2", "--format", "machine",
    )
    assert code == 0 and "delta=3" in stdout


def test_table_query_with_constructed_record(tmp_path):
    extra = tmp_path / "extra.txt"
    extra.write_text("3 6 1 5 3 pure constructed\n")
    code, stdout, _ = run_cli(
        "table", "query", "--bundled", "qutrit", "--file", str(extra),
        "--q", "3", "--n", "6", "--kappa", "1", "--c", "3", "--format", "machine",
    )
    assert code == 0 and "delta=5" in stdout


def test_table_expand_compress(tmp_path):
    f = tmp_path / "seed.txt"
    f.write_text("2 3 1 3 2 unknown paper-table\n2 4 1 3 2 unknown paper-table\n")
    out = tmp_path / "out.txt"
    code, stdout, _ = run_cli(
        "table", "compress", "--file", str(f), "--out", str(out), "--format", "machine"
    )
    assert code == 0 and "records_out=1" in stdout
    code, stdout, _ = run_cli(
        "table", "expand", "--file", str(f), "--n-max", "5", "--rules", "1",
        "--out", str(out), "--format", "machine",
    )
    assert code == 0 and "records=3" in stdout


def test_verify_paper_passes():
    code, stdout, _ = run_cli("verify-paper", "--format", "machine")
    assert code == 0
    assert "summary failures=0" in stdout
    assert "FAIL" not in stdout


def test_verify_paper_corrupted_entry_fails(tmp_path):
    work = tmp_path / "paper"
    shutil.copytree(DATA, work)
    p = work / "table_qutrit.txt"
    p.write_text(p.read_text().replace("3 6 2 4 2", "3 6 4 5 2"))
    sums = work / "CHECKSUMS.sha256"
    lines = []
    for line in sums.read_text().splitlines():
        digest, name = line.split()
        if name == "table_qutrit.txt":
            digest = hashlib.sha256(p.read_bytes()).hexdigest()
        lines.append(f"{digest}  {name}")
    sums.write_text("\n".join(lines) + "\n")
    code, stdout, _ = run_cli("verify-paper", "--data-dir", str(work), "--format", "machine")
    assert code == 1
    assert "bound_violations" in stdout and "6 4 5 2" in stdout


def test_verify_paper_missing_asset(tmp_path):
    work = tmp_path / "paper"
    shutil.copytree(DATA, work)
    (work / "g29_14_9.txt").unlink()
    code, stdout, stderr = run_cli("verify-paper", "--data-dir", str(work))
    assert code == 2
    assert "missing" in stderr


def test_cli_error_paths(tmp_path):
    code, _, stderr = run_cli("construct", str(tmp_path / "nope.txt"))
    assert code == 2
    code, _, stderr = run_cli("construct", "--route", "css", str(DATA / "g16_5_9.txt"))
    assert code == 2 and "second code" in stderr
