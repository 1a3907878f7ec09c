import json

from click.testing import CliRunner

from orbivertex.cli import main
from test_webdiagram import NOT_TRANSVERSE


def invoke(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env)


def test_vertex_macmahon():
    r = invoke("vertex", "-n", "1", "--leg1", "", "--leg2", "", "--leg3", "", "-D", "4")
    assert r.exit_code == 0
    assert r.output.strip() == "1 + q0 + 3*q0^2 + 6*q0^3 + 13*q0^4"


def test_vertex_all_methods():
    r = invoke("vertex", "-n", "2", "-D", "4", "--method", "all")
    assert r.exit_code == 0
    assert "3 methods agree to degree 4" in r.output


def test_vertex_bad_partition():
    r = invoke("vertex", "--leg1", "3,x")
    assert r.exit_code != 0


def test_vertex_cache(tmp_path):
    env = {"ORBIVERTEX_CACHE_DIR": str(tmp_path)}
    a = invoke("vertex", "-n", "2", "--leg3", "1", "-D", "3", env=env)
    assert len(list(tmp_path.iterdir())) == 1
    b = invoke("vertex", "-n", "2", "--leg3", "1", "-D", "3", env=env)
    assert a.output == b.output


def test_dt_json_is_deterministic():
    args = ("dt", "football_2_3", "-D", "4", "--vdegree", "1", "--output", "json", "--jobs", "1")
    a, b = invoke(*args), invoke(*args)
    assert a.exit_code == 0 and a.output == b.output
    doc = json.loads(a.output)
    assert doc["provenance"]["diagram"] == "football_2_3"
    assert doc["series"]["terms"][0]["coeff"] == "1"


def test_dt_bz2_underline():
    r = invoke("dt", "bz2_gerbe", "--multiregular", "--underline", "-D", "4", "--vdegree", "1",
               "--jobs", "1")
    assert r.exit_code == 0
    assert "2*q_e0*q_e1^2*v_e" in r.output


def test_dt_substitution(tmp_path):
    sub = tmp_path / "sub.json"
    sub.write_text(json.dumps({"vars": [{"name": "q"}, {"name": "v", "kind": "v"}],
                               "map": {"v_e": {"v": 1}}}))
    r = invoke("dt", "conifold", "-D", "3", "--vdegree", "1", "--subst", str(sub), "--jobs", "1")
    assert r.exit_code == 0, r.output
    assert "q*v" in r.output


def test_dt_rejects_non_transverse(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(NOT_TRANSVERSE))
    r = invoke("dt", str(path))
    assert r.exit_code != 0
    assert "vertex v" in r.output


def test_check_targeted():
    r = invoke("check", "--criterion", "macmahon", "--criterion", "signs", "--output", "json")
    assert r.exit_code == 0
    doc = json.loads(r.output)
    assert [x["criterion"] for x in doc["results"]] == ["macmahon", "signs"]
    assert all(x["pass"] for x in doc["results"])
