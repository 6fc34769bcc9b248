import json

import numpy as np
import pytest

from qlattice import cli
from qlattice import hilbert as hb
from qlattice import lattice as lat
from qlattice import serialize as ser


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_state_set(path, s):
    path.write_text(ser.dumps(ser.state_set_to_json(s)) + "\n")
    return str(path)


class TestSector:
    def test_boson_dim(self, capsys):
        code, out, _ = run(capsys, "sector", "--n", "3", "--sign", "+")
        assert code == 0
        assert json.loads(out)["sector_dim"] == 6

    def test_empty_sector_warns(self, capsys):
        code, out, err = run(capsys, "sector", "--n", "1", "--sign", "-")
        assert code == 0
        assert json.loads(out)["sector_dim"] == 0
        assert "empty" in err

    def test_table(self, capsys):
        code, out, _ = run(capsys, "sector-table", "--max-n", "4")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,boson_dim,fermion_dim,total"
        assert lines[-1] == "4,10,6,16"


class TestLattice:
    def test_meet_to_file(self, capsys, tmp_path):
        a = write_state_set(tmp_path / "a.json", lat.vpolytope(
            [hb.pure_state(hb.basis_ket(2, 0)), hb.pure_state(hb.basis_ket(2, 1))]))
        b = write_state_set(tmp_path / "b.json", lat.vpolytope(
            [hb.pure_state(hb.ket([1, 1])), hb.pure_state(hb.ket([1, -1]))]))
        out_path = tmp_path / "m.json"
        code, _, _ = run(capsys, "lattice", "meet", a, b, "-o", str(out_path))
        assert code == 0
        m = ser.state_set_from_json(json.loads(out_path.read_text()))
        assert isinstance(m, lat.VPolytope)
        assert m.generators[0].isclose(hb.maximally_mixed(2), atol=1e-8)

    def test_join_stdout(self, capsys, tmp_path):
        a = write_state_set(tmp_path / "a.json",
                            lat.vpolytope([hb.pure_state(hb.basis_ket(2, 0))]))
        b = write_state_set(tmp_path / "b.json",
                            lat.vpolytope([hb.pure_state(hb.basis_ket(2, 1))]))
        code, out, _ = run(capsys, "lattice", "join", a, b)
        assert code == 0
        assert json.loads(out)["variant"] == "vpolytope"

    def test_neg(self, capsys, tmp_path):
        a = write_state_set(tmp_path / "a.json",
                            lat.vpolytope([hb.pure_state(hb.basis_ket(2, 0))]))
        code, out, _ = run(capsys, "lattice", "neg", a)
        assert code == 0
        n = ser.state_set_from_json(json.loads(out))
        assert n.generators[0].isclose(hb.pure_state(hb.basis_ket(2, 1)))

    def test_leq_exit_codes(self, capsys, tmp_path):
        a = write_state_set(tmp_path / "a.json",
                            lat.vpolytope([hb.maximally_mixed(2)]))
        b = write_state_set(tmp_path / "b.json", lat.top(2))
        code, out, _ = run(capsys, "lattice", "leq", a, b)
        assert (code, out.strip()) == (0, "true")
        code, out, _ = run(capsys, "lattice", "leq", b, a)
        assert (code, out.strip()) == (1, "false")

    def test_parse_error_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(SystemExit) as exc:
            cli.main(["lattice", "neg", str(bad)])
        assert exc.value.code == 2
        assert "cannot parse" in capsys.readouterr().err

    def test_missing_second_operand_exit_2(self, capsys, tmp_path):
        a = write_state_set(tmp_path / "a.json", lat.top(2))
        with pytest.raises(SystemExit) as exc:
            cli.main(["lattice", "meet", a])
        assert exc.value.code == 2

    def test_dimension_mismatch_exit_1(self, capsys, tmp_path):
        a = write_state_set(tmp_path / "a.json", lat.top(2))
        b = write_state_set(tmp_path / "b.json", lat.top(3))
        code, _, err = run(capsys, "lattice", "meet", a, b)
        assert code == 1
        assert "mismatch" in err


class TestScan:
    def test_deterministic_given_seed(self, capsys):
        code1, out1, _ = run(capsys, "--seed", "7", "scan", "--sign", "-", "--n", "3",
                             "--samples", "20")
        code2, out2, _ = run(capsys, "--seed", "7", "scan", "--sign", "-", "--n", "3",
                             "--samples", "20")
        assert code1 == code2 == 0
        assert out1 == out2
        assert json.loads(out1)["purity_max"] <= 0.5 + 1e-9

    def test_env_seed_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("QL_SEED", "11")
        _, out1, _ = run(capsys, "scan", "--sign", "+", "--n", "2", "--samples", "5")
        _, out2, _ = run(capsys, "--seed", "11", "scan", "--sign", "+", "--n", "2",
                         "--samples", "5")
        assert out1 == out2

    def test_empty_sector_exit_1(self, capsys):
        code, _, err = run(capsys, "scan", "--sign", "-", "--n", "1", "--samples", "5")
        assert code == 1
        assert "error:" in err


class TestQspace:
    def test_inner(self, capsys):
        code, out, _ = run(capsys, "qspace", "inner", "b:1,1", "b:1,1")
        assert (code, out.strip()) == (0, "2")
        code, out, _ = run(capsys, "qspace", "inner", "f:1,2", "f:2,1")
        assert (code, out.strip()) == (0, "-1")

    def test_norm(self, capsys):
        code, out, _ = run(capsys, "qspace", "norm", "f:1,1")
        assert (code, out.strip()) == (0, "0.0")

    def test_pauli(self, capsys):
        code, out, _ = run(capsys, "qspace", "pauli", "f:1,1")
        assert (code, out.strip()) == (0, "excluded")
        code, out, _ = run(capsys, "qspace", "pauli", "f:1,2")
        assert (code, out.strip()) == (0, "allowed")

    def test_gram(self, capsys):
        code, out, _ = run(capsys, "qspace", "gram", "--stats", "f",
                           "--n-modes", "3", "--max-n", "2")
        assert code == 0
        obj = json.loads(out)
        assert obj["gram"] == np.eye(3, dtype=int).tolist()

    def test_bad_state_literal_exit_1(self, capsys):
        code, _, err = run(capsys, "qspace", "norm", "f:0,1")
        assert code == 1
        assert "error:" in err


class TestVerify:
    def test_suite_runs_and_reports(self, capsys):
        code, out, _ = run(capsys, "verify", "sector-dims")
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True

    def test_trials_override(self, capsys):
        code, out, _ = run(capsys, "verify", "qset-permutation", "--trials", "50")
        assert code == 0
        assert json.loads(out)["checked"] == 50

    def test_unknown_suite_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["verify", "no-such-suite"])
        assert exc.value.code == 2
