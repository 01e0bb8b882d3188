import subprocess
import sys

import numpy as np
import pytest

from qclab.cli import main
from qclab.io import write_quiver, write_rep
from qclab.rep import build_rep, category_for_q

from conftest import quiver


@pytest.fixture
def files(tmp_path):
    for name in ("A2", "B2", "K"):
        (tmp_path / f"{name}.vq").write_text(write_quiver(quiver(name)))
    V = build_rep(category_for_q(quiver("K"), 2), (1, 2), [[[1], [0]], [[0], [1]]])
    (tmp_path / "k12.vr").write_text(write_rep(V, "K.vq"))
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_mutate(files, capsys):
    code, out = run(capsys, "mutate", "--quiver", files / "A2.vq", "--path", "1,2,1")
    assert code == 0
    assert out.startswith("# qclab")
    assert "check\tquasi-commutation\tPASS" in out
    assert out.count("\nx\t") == 4


def test_mutate_bad_index(files, capsys):
    code, _ = run(capsys, "mutate", "--quiver", files / "A2.vq", "--path", "3")
    assert code == 2


def test_missing_file(files, capsys):
    code, _ = run(capsys, "mutate", "--quiver", files / "none.vq")
    assert code == 2


def test_parse_error_exit(files, capsys):
    (files / "bad.vq").write_text("n 2\nd 1 1\narrow 1 3\n")
    assert main(["mutate", "--quiver", str(files / "bad.vq")]) == 2
    assert "bad.vq:3:9" in capsys.readouterr().err


def test_char_and_gr_count(files, capsys):
    code, out = run(capsys, "gr-count", "--rep", files / "k12.vr")
    assert code == 0 and "0,1\t3\n" in out and "1,1\t0\n" in out
    code, out = run(capsys, "char", "--rep", files / "k12.vr")
    assert code == 0 and out.count("character\t") == 1


def test_verify_bijection(files, capsys):
    code, out = run(capsys, "verify", "bijection", "--quiver", files / "B2.vq", "--p", 2, "--depth", 0,
                    "--compare-p", 3)
    assert code == 0
    assert "summary\tvariables=4\tmatched=4\tinjective=True\tsaturated=True" in out
    assert "agree=True" in out


def test_verify_hall(files, capsys):
    code, out = run(capsys, "verify", "hall", "--quiver", files / "A2.vq", "--samples", 3, "--hom-samples", 2,
                    "--seed", 7)
    assert code == 0 and "FAIL" not in out


def test_verify_tilting(files, capsys):
    code, out = run(capsys, "verify", "tilting", "--quiver", files / "A2.vq", "--depth", 3, "--seed", 9)
    assert code == 0
    assert "initial\tB_T0=B and Lambda_T0=Lambda\tPASS" in out
    assert len([l for l in out.splitlines() if l[:1].isdigit()]) == 2 + 4 + 8


def test_interp(files, capsys):
    code, out = run(capsys, "interp", "--quiver", files / "K.vq", "--dimvec", "1,2", "--e", "0,1")
    assert code == 0
    assert "polynomial\tq + 1" in out and "holdout\t7\t8\tPASS" in out and "nonnegative\tTrue" in out


def test_interp_failure_exit(files, capsys, monkeypatch):
    import qclab.interp as interp

    real = interp.gr_count
    monkeypatch.setattr(interp, "gr_count", lambda qv, v, e, q, seed=0: real(qv, v, e, q, seed) + (q == 7))
    code, out = run(capsys, "interp", "--quiver", files / "K.vq", "--dimvec", "1,2", "--e", "0,1")
    assert code == 1 and "HoldoutMismatch" in out


def test_deterministic(files, capsys):
    argv = ("verify", "hall", "--quiver", files / "B2.vq", "--samples", 2, "--hom-samples", 1, "--seed", 3)
    assert run(capsys, *argv) == run(capsys, *argv)


def test_module_entry(files):
    res = subprocess.run([sys.executable, "-m", "qclab", "mutate", "--quiver", str(files / "A2.vq")],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "quasi-commutation\tPASS" in res.stdout
