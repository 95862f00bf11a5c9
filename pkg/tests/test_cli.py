import json

import pytest

from sparsegb.cli import format_text, main, write_atomic
from sparsegb.system import load


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out, err = capsys.readouterr()
    return code, out, err


def strip_times(d):
    d = dict(d)
    d.pop("times", None)
    d.get("sparse", {}).pop("time", None)
    return d


@pytest.fixture
def bilinear_file(tmp_path, capsys):
    path = tmp_path / "bil.txt"
    assert run(capsys, "gen", "bilinear", 2, 2, 4, "--seed", 11, "-o", path)[0] == 0
    return path


def test_gen_writes_loadable_file(bilinear_file):
    S = load(str(bilinear_file))
    assert S.meta["seed"] == "11" and len(S.polys) == 4


def test_gen_json_format(capsys):
    code, out, _ = run(capsys, "gen", "fewnomial", 3, 4, 3, "--seed", 1, "--format", "json")
    assert code == 0 and json.loads(out)["meta"]["family"] == "fewnomial 3 4 3"


def test_solve_json_and_stats(bilinear_file, tmp_path, capsys):
    stats = tmp_path / "stats.json"
    code, out, _ = run(capsys, "solve", bilinear_file, "--format", "json", "--stats", stats)
    assert code == 0
    rep = json.loads(out)
    assert rep["plant_recovered"] and rep["delta"] == 6
    assert json.loads(stats.read_text()) == rep


def test_solve_is_deterministic(bilinear_file, capsys):
    a = json.loads(run(capsys, "solve", bilinear_file, "--format", "json")[1])
    b = json.loads(run(capsys, "solve", bilinear_file, "--format", "json")[1])
    assert strip_times(a) == strip_times(b)


def test_solve_text_lists_solutions(bilinear_file, capsys):
    code, out, _ = run(capsys, "solve", bilinear_file)
    S = load(str(bilinear_file))
    assert code == 0
    assert "solution: " + " ".join(map(str, S.plant)) in out
    assert "delta: 6" in out


def test_gb_text_emits_poly_stanzas(bilinear_file, capsys):
    code, out, _ = run(capsys, "gb", bilinear_file, "--max-degree", 3)
    assert code == 0 and out.count("poly\n") == out.count("end\n") > 0
    assert 'budget: {"D": 3, "source": "user"}' in out


def test_order_weights_flag(bilinear_file, capsys):
    code, out, _ = run(capsys, "gb", bilinear_file, "--format", "json", "--order-weights", "1,1,1,1;1,0,0,0;0,1,0,0;0,0,1,0")
    assert code == 0 and json.loads(out)["basis_size"] > 0


def test_polytope_info_family(capsys):
    code, out, _ = run(capsys, "polytope-info", "--family", "2", "2", "--degrees", "1,1,1,1", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["volume"] == 6 and rep["budgets"][0]["multihom"] == 3
    code, out, _ = run(capsys, "polytope-info", "--family", "1:1", "1:1")
    assert "Q: 1 1" in out and "regularity: 1" in out


def test_bench_small(capsys, tmp_path):
    path = tmp_path / "b.txt"
    run(capsys, "gen", "bilinear", 2, 3, 6, "-o", path)
    code, out, _ = run(capsys, "bench", path, "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["sparse"]["columns_at_D"] < rep["dense"]["columns_at_corresponding_degree"]


def test_errors_exit_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("support generators\n0\n1\n-1\nend\npoly\n1 : 1\n1 : -1\nend\n")
    code, _, err = run(capsys, "solve", bad)
    assert code == 2 and "[support]" in err
    code, _, err = run(capsys, "solve", tmp_path / "missing.txt")
    assert code == 2
    code, _, err = run(capsys, "gen", "bilinear", 1, 2)
    assert code == 2


def test_write_atomic_replaces(tmp_path):
    p = tmp_path / "o.txt"
    write_atomic(str(p), "a")
    write_atomic(str(p), "b")
    assert p.read_text() == "b" and [x.name for x in tmp_path.iterdir()] == ["o.txt"]


def test_format_text_sorted_keys():
    out = format_text({"b": 1, "a": [1, 2], "times": {"x": 0.5}})
    assert out.splitlines() == ["a: [1, 2]", "b: 1", "time x: 0.5000"]
