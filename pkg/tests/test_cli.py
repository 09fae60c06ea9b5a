"""CLI surface: build/validate/simulate/sweep through the entry point."""

from pathlib import Path

import numpy as np
import pytest

from gf4ldpc.cli import main
from gf4ldpc.stabilizer import read_qpc, write_qpc
from oracle_utils import random_orthogonal_instance

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture(scope="module")
def small_qpc(tmp_path_factory):
    rng = np.random.default_rng(21)
    pc = random_orthogonal_instance(rng, n=12, m=5)
    path = tmp_path_factory.mktemp("qpc") / "small.qpc"
    write_qpc(pc, path)
    return str(path)


def test_build_coset_cli(tmp_path, capsys):
    out = tmp_path / "c612.qpc"
    rc = main(["build", "--family", "coset",
               "--config", f"{CONFIGS}/coset_6_12_psl2f5.toml",
               "--out", str(out)])
    assert rc == 0
    text = capsys.readouterr().out
    assert "built n=3600 m=1800 regular=(6,12)" in text
    pc = read_qpc(out)
    assert (pc.n, pc.m) == (3600, 1800)


def test_build_family_mismatch(tmp_path):
    with pytest.raises(SystemExit):
        main(["build", "--family", "cayley",
              "--config", f"{CONFIGS}/coset_6_12_psl2f5.toml",
              "--out", str(tmp_path / "x.qpc")])


def test_validate_cli(small_qpc, capsys):
    rc = main(["validate", small_qpc])
    assert rc == 0
    text = capsys.readouterr().out
    assert "orthogonality violations: 0" in text
    assert "k=" in text


def test_simulate_cli(small_qpc, capsys):
    rc = main(["simulate", small_qpc, "--p", "0.05", "--trials", "25",
               "--seed", "3", "--algo", "sum_product", "--max-iter", "30"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0].startswith("channel_p,trials,")
    fields = lines[1].split(",")
    assert fields[0] == "0.05" and fields[1] == "25" and fields[-1] == "3"


def test_sweep_cli_to_file_deterministic(small_qpc, tmp_path, capsys):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    argv = ["sweep", small_qpc, "--p-list", "0.02,0.05", "--trials", "30",
            "--seed", "9", "--workers", "2"]
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    header = out1.read_text().split("\n")[0]
    assert header == ("channel_p,trials,successes,logical_errors,"
                      "detected_failures,bler,ci_low,ci_high,master_seed")
