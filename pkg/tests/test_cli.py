import json

import pytest

from vicdepth import __version__
from vicdepth.cli import Config, main
from vicdepth.errors import PreconditionError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


def test_branch_pieri(capsys):
    rep = run_json(capsys, "branch", "--plus", "1", "--minus", "1", "--rank", "3", "--pieri")
    res = rep["result"]
    assert res["dimension"] == 8
    assert len(res["branches"]) == 4 and res["total"] == 8
    assert rep["version"] == __version__ and rep["config"]["seed"] == 0


def test_branch_trivial_and_lr(capsys):
    res = run_json(capsys, "branch", "--rank", "3", "--pieri")["result"]
    assert len(res["branches"]) == 1 and res["total"] == 1
    res = run_json(capsys, "branch", "--plus", "1", "--minus", "1", "--rank", "4", "--lr", "2")["result"]
    assert res["total"] == res["dimension"] == 15


def test_branch_bad_rank(capsys):
    code, _, err = run(capsys, "branch", "--plus", "1", "1", "--minus", "1", "--rank", "2")
    assert code == 2 and "error" in err


def test_dim(capsys):
    assert run_json(capsys, "dim", "--plus", "2", "1", "--rank", "4")["result"]["dimension"] == 20


def test_depth_files(capsys, tmp_path):
    assert run_json(capsys, "depth", "--rep", "trivial_3.json")["result"]["depth"]["depth"] == 1
    res = run_json(capsys, "depth", "--rep", "sum_zero_p2_3.json")["result"]
    assert res["depth"]["depth"] == 2 and res["gamma_u"]["passed"]
    bad = {"n": 3, "images": {f"{i},{j}": [[1, 1], [0, 1]] if (i, j) == (1, 2) else [[1, 0], [0, 1]]
                               for i in range(1, 4) for j in range(1, 4) if i != j}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = run(capsys, "depth", "--rep", str(path))
    assert code == 3 and "RelationError" in err


def test_bounds(capsys):
    res = run_json(capsys, "bounds", "--n", "5", "--dim", "29")["result"]
    assert res["message"] == "below 2^n-2 = 30: algebraic forced"
    assert run_json(capsys, "bounds", "--n", "4", "--ell", "6")["result"]["depth_bound"]["bound"] == "72"
    assert run_json(capsys, "bounds", "--n", "3", "--p", "2", "--k", "2")["result"]["pk_bound"]["bound"] == "8"
    code, _, _ = run(capsys, "bounds", "--n", "4")
    assert code == 2


def test_group_table(capsys):
    res = run_json(capsys, "group-table", "3", "2", "SL")["result"]
    assert res["order"] == 168
    assert res["degrees"] == [1, 3, 3, 6, 7, 8]


def test_group_cap(capsys):
    code, _, err = run(capsys, "group-table", "3", "4", "--group-cap", "100")
    assert code == 4 and "CapExceededError" in err


def test_vic_run(capsys):
    res = run_json(capsys, "vic-run", "--module", "std.json", "--ops", "growth")["result"]
    assert res["ops"]["growth"]["kind"] == "polynomial"
    assert res["ops"]["growth"]["degree"] == 1


def test_vic_run_window(capsys):
    res = run_json(capsys, "vic-run", "--module", "std.json", "--ops", "phi1,length", "--window", "3", "5")["result"]
    assert res["module"]["window"] == [3, 5]
    assert res["ops"]["length"]["bound"] == 1


def test_unknown_op(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["vic-run", "--module", "std.json", "--ops", "bogus"])
    assert exc.value.code == 2


def test_text_table(capsys):
    code, out, _ = run(capsys, "dim", "--plus", "1", "--rank", "3")
    assert code == 0
    assert out.startswith(f"vicdepth {__version__}  dim  seed=0")
    assert "dimension: 3" in out


def test_determinism(capsys):
    argv = ["depth", "--rep", "sum_zero_p2_3.json", "--seed", "7", "--samples", "20", "--json"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    assert json.loads(first[1])["config"]["seed"] == 7


def test_config_validation():
    with pytest.raises(PreconditionError):
        Config(group_cap=0)
    with pytest.raises(PreconditionError):
        Config(window=(5, 3))
