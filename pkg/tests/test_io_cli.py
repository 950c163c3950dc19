import json
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from hyperlrc import io as hio
from hyperlrc.cli import EXIT_BOUND_ONLY, EXIT_OK, EXIT_REJECT, main
from hyperlrc.errors import ConfigError, FieldError

from conftest import field

F9_ARGS = ["--field", "9", "--curve", "x5+x3+2x", "--subgroup", "gens:0"]


@pytest.mark.parametrize("spec,pm", [("9", (3, 2)), ("3^2", (3, 2)), ("F_25", (5, 2)),
                                     ("GF(81)", (3, 4)), ("7", (7, 1)),
                                     ("p=5,m=2,modulus=2,4,1", (5, 2))])
def test_parse_field(spec, pm):
    F = hio.parse_field(spec)
    assert (F.p, F.m) == pm
    assert hio.field_from_header(hio.field_header(F)).modulus == F.modulus
    assert hio.field_from_json(hio.field_json(F)).modulus == F.modulus


@pytest.mark.parametrize("spec", ["", "6", "2^3", "q=9", "p=5,m=2,modulus=1,0,1", "F_x"])
def test_parse_field_rejects(spec):
    with pytest.raises(FieldError):
        hio.parse_field(spec)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.sampled_from([(5, 1), (3, 2), (5, 2)]), st.integers(1, 5), st.integers(1, 9),
       st.integers(0, 2**32 - 1))
def test_matrix_csv_round_trip(tmp_path, pm, k, n, seed):
    F = field(*pm)
    G = np.random.default_rng(seed).integers(0, F.q, (k, n))
    path = tmp_path / "g.csv"
    hio.write_matrix_csv(path, F, G)
    F2, G2 = hio.read_matrix_csv(path)
    assert (F2.p, F2.m, F2.modulus) == (F.p, F.m, F.modulus)
    assert np.array_equal(G2, G)


def test_matrix_csv_rejects_bad_files(tmp_path):
    F = field(3, 2)
    good = tmp_path / "g.csv"
    hio.write_matrix_csv(good, F, np.eye(2, dtype=np.int64))
    lines = good.read_text().splitlines()
    ragged = tmp_path / "r.csv"
    ragged.write_text("\n".join(lines[:-1] + [lines[-1] + ",1"]) + "\n")
    with pytest.raises(ConfigError):
        hio.read_matrix_csv(ragged)
    bad = tmp_path / "b.csv"
    bad.write_text("\n".join(lines[:-1] + ["7*v,0"]) + "\n")
    with pytest.raises(ConfigError):
        hio.read_matrix_csv(bad)


def construct(tmp_path, name, extra):
    prefix = str(tmp_path / name)
    assert main(["construct", *F9_ARGS, *extra, "--out", prefix]) == EXIT_OK
    return prefix


def test_construct_verify_repair_round_trip(tmp_path, capsys):
    prefix = construct(tmp_path, "c", ["--ell", "4", "--t", "4"])
    rec = json.loads(open(prefix + ".json").read())
    assert (rec["n"], rec["k"], rec["r"]) == (16, 10, 3)
    assert rec["tail"].count(True) == 1
    capsys.readouterr()
    assert main(["verify", prefix + ".csv", prefix + ".json", "--out", str(tmp_path / "v.json")]) == EXIT_OK
    assert "[16, 10, 4]" in capsys.readouterr().out
    rep = json.loads((tmp_path / "v.json").read_text())
    assert rep["verdict"] == "optimal" and rep["repair_trials"]["mismatches"] == 0
    assert main(["repair-sim", prefix + ".csv", prefix + ".json", "--trials", "100"]) == EXIT_OK
    assert "mismatches=0" in capsys.readouterr().out
    # without an exact distance the verdict is bound-only
    assert main(["verify", prefix + ".csv", prefix + ".json", "--strategy", "none"]) == EXIT_BOUND_ONLY


def test_output_is_deterministic(tmp_path):
    a = construct(tmp_path, "a", ["--ell", "3", "--t", "2"])
    b = construct(tmp_path, "b", ["--ell", "3", "--t", "2"])
    for ext in (".csv", ".json"):
        assert open(a + ext, "rb").read() == open(b + ext, "rb").read()


def test_tampered_matrix_is_rejected(tmp_path, capsys):
    prefix = construct(tmp_path, "c", ["--ell", "3", "--t", "2"])
    F, G = hio.read_matrix_csv(prefix + ".csv")
    G[:, 0] = 0
    G[0, 0] = 1
    hio.write_matrix_csv(prefix + ".csv", F, G)
    assert main(["verify", prefix + ".csv", prefix + ".json"]) == EXIT_REJECT


def test_error_exit_codes(tmp_path, capsys):
    assert main(["construct", "--field", "p=5,m=2,modulus=1,0,1", "--curve", "x5+x",
                 "--ell", "2", "--t", "1"]) == EXIT_REJECT
    assert "ReducibleModulus" in capsys.readouterr().err
    assert main(["construct", "--field", "25", "--curve", "x5+1", "--ell", "2", "--t", "1"]) == EXIT_REJECT
    assert "SingularModel" in capsys.readouterr().err
    assert main(["construct", *F9_ARGS, "--ell", "9", "--t", "2"]) == EXIT_REJECT
    assert main(["verify", str(tmp_path / "missing.csv"), str(tmp_path / "missing.json")]) == EXIT_REJECT


def test_sweep_and_tables_commands(tmp_path, capsys):
    out = tmp_path / "s.json"
    assert main(["sweep", *F9_ARGS, "--quiet", "--out", str(out)]) == EXIT_OK
    res = json.loads(out.read_text())
    assert res["max_defect"] <= 1 and len(res["rows"]) == 1 + 2 + 3 + 4
    assert main(["tables", "III", "--trials", "5"]) == EXIT_OK
    assert "optimal" in capsys.readouterr().out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "hyperlrc.cli", "--help"], capture_output=True,
                         text=True, check=True)
    for cmd in ("construct", "verify", "sweep", "tables", "repair-sim"):
        assert cmd in res.stdout
