import json
import math

import numpy as np
import pytest

import cwvo.cli as cli
from cwvo.basis import WaveletBasis
from cwvo.opmat import OrderFunction, vo_wavelet_matrix
from cwvo.solver import SingularSystemError


def test_solve_writes_csv_and_summary(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    code = cli.main(
        ["solve", "--example", "3", "--k", "0", "--M", "4",
         "--grid-nx", "3", "--grid-nt", "4", "--out", str(out)]
    )
    assert code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,t,u_approx,u_exact,abs_err"
    assert len(lines) == 1 + 3 * 4
    stdout = capsys.readouterr().out
    assert "max_abs_err=" in stdout
    assert "condition_estimate=" in stdout


def test_solve_grid_round_trips_to_evaluator(tmp_path):
    out = tmp_path / "grid.csv"
    assert cli.main(["solve", "--example", "2", "--k", "1", "--M", "4",
                     "--grid-nx", "4", "--grid-nt", "3", "--out", str(out)]) == 0
    from cwvo.model import builtin_example
    from cwvo.solver import eval_solution, solve

    sol = solve(builtin_example(2), WaveletBasis(k=1, M=4))
    for line in out.read_text(encoding="utf-8").splitlines()[1:]:
        x, t, u_approx, u_exact, abs_err = (float(p) for p in line.split(","))
        # 17 significant digits round-trip doubles exactly
        assert eval_solution(sol, x, t) == u_approx
        assert abs(u_approx - u_exact) == abs_err


def test_solve_single_column_grid_pins_x(tmp_path):
    out = tmp_path / "grid.csv"
    assert cli.main(["solve", "--example", "3", "--k", "0", "--M", "4",
                     "--grid-nx", "1", "--grid-nt", "9", "--out", str(out)]) == 0
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    assert all(float(r[0]) == 0.5 for r in rows)
    assert [float(r[1]) for r in rows] == pytest.approx([i / 10 for i in range(1, 10)])


def test_solve_json_output(tmp_path):
    out = tmp_path / "grid.json"
    assert cli.main(["solve", "--example", "4", "--k", "1", "--M", "4",
                     "--grid-nx", "2", "--grid-nt", "2",
                     "--out", str(out), "--format", "json"]) == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["meta"]["example_id"] == 4
    assert doc["meta"]["M"] == 4
    assert math.isfinite(doc["meta"]["condition_estimate"])
    assert doc["meta"]["max_abs_err"] <= 1e-9
    assert len(doc["grid"]) == 4
    assert set(doc["grid"][0]) == {"x", "t", "u_approx", "u_exact", "abs_err"}


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("example_id = 3\nk = 0\nM = 4\ngrid_nx = 2\ngrid_nt = 2\n")
    out = tmp_path / "grid.csv"
    # flag beats the file for grid_nx
    assert cli.main(["solve", "--config", str(cfg), "--grid-nx", "3",
                     "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 1 + 3 * 2


def test_config_file_json_form(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"example_id": 1, "k": 0, "M": 3,
                               "grid_nx": 2, "grid_nt": 2}))
    out = tmp_path / "grid.csv"
    assert cli.main(["solve", "--config", str(cfg), "--out", str(out)]) == 0


def test_config_file_unknown_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("example_id = 1\nk = 0\nM = 3\nwavelets = 9\n")
    assert cli.main(["solve", "--config", str(cfg)]) == 2
    assert "wavelets" in capsys.readouterr().err


@pytest.mark.parametrize(
    "args",
    [
        ["solve", "--example", "9", "--k", "0", "--M", "4"],
        ["solve", "--example", "1", "--k", "-1", "--M", "4"],
        ["solve", "--example", "1", "--k", "0", "--M", "1"],
        ["solve", "--example", "1", "--k", "4", "--M", "5"],  # size guard 2^k M > 64
        ["solve", "--example", "1", "--k", "0", "--M", "4", "--grid-nx", "0"],
        ["solve", "--k", "0", "--M", "4"],  # missing example
        ["table", "--example", "1", "--k", "0", "--M-list", ""],
        ["table", "--example", "7", "--k", "0", "--M-list", "4"],
        ["matrices", "--k", "0", "--M", "4", "--vartheta", "3.5", "--t", "0.5"],
        ["matrices", "--k", "0", "--M", "4", "--vartheta", "0.5", "--t", "0.0"],
        ["matrices", "--k", "0", "--M", "4", "--vartheta", "-0.5", "--t", "0.5"],
    ],
)
def test_invalid_arguments_exit_2(args, tmp_path, capsys):
    assert cli.main(args) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_singular_system_exits_3(tmp_path, monkeypatch, capsys):
    def explode(spec, basis):
        raise SingularSystemError(7, 0.0, 1e-13)

    monkeypatch.setattr(cli, "solve", explode)
    code = cli.main(["solve", "--example", "1", "--k", "0", "--M", "4",
                     "--out", str(tmp_path / "g.csv")])
    assert code == 3
    assert "singular" in capsys.readouterr().err


def test_table_layout(capsys):
    assert cli.main(["table", "--example", "3", "--k", "0", "--M-list", "4,5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 10  # header + nine times
    assert lines[0].split() == ["t", "M=4", "M=5"]
    first = lines[1].split()
    assert first[0] == "0.1"
    # four significant digits in scientific notation
    assert len(first[1].split("E")[0].replace("-", "").replace(".", "")) == 4
    assert float(lines[5].split()[0]) == 0.5


def test_matrices_dump_round_trip(tmp_path):
    assert cli.main(["matrices", "--k", "1", "--M", "3", "--vartheta", "0.5",
                     "--t", "0.5", "--out", str(tmp_path)]) == 0
    for name in ("D", "P", "T", "Q"):
        assert (tmp_path / f"{name}.csv").exists()
    q_file = np.loadtxt(tmp_path / "Q.csv", delimiter=",")
    basis = WaveletBasis(k=1, M=3)
    order = OrderFunction(q=1, value=lambda x, t: 0.5)
    assert np.array_equal(q_file, vo_wavelet_matrix(basis, order, 0.0, 0.5))


def test_matrices_single_wavelet_degenerate_case(tmp_path):
    assert cli.main(["matrices", "--k", "0", "--M", "1", "--vartheta", "0.5",
                     "--t", "0.5", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "D.csv").read_text().strip() == "0"


def test_matrices_t_one_gives_plain_diagonal(tmp_path):
    assert cli.main(["matrices", "--k", "1", "--M", "5", "--vartheta", "1.5",
                     "--t", "1", "--out", str(tmp_path)]) == 0
    t_matrix = np.loadtxt(tmp_path / "T.csv", delimiter=",")
    expected = [0.0, 0.0, 2.0 / math.gamma(1.5), 6.0 / math.gamma(2.5),
                24.0 / math.gamma(3.5)]
    assert np.diag(t_matrix)[:5].tolist() == pytest.approx(expected, rel=1e-12)
