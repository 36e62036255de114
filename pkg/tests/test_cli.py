import json

import pytest

from carto import cli, verify


def run(argv, capsys):
    code = cli.run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_twopoint_example(capsys):
    code, out, _ = run(["twopoint", "--family", "general", "--i", "1", "--order", "3"], capsys)
    assert code == 0
    data = json.loads(out)
    r = data["observables"]["R"]["coefficients"]
    assert r["0"] == "1" and r["1"] == "1"
    assert all(isinstance(v, str) for v in r.values())


def test_twopoint_both_and_csv(capsys):
    code, out, _ = run(["twopoint", "--family", "bipartite", "--i", "2", "--order", "5",
                        "--provenance", "both"], capsys)
    assert code == 0
    code, out, _ = run(["twopoint", "--family", "general", "--i", "1", "--order", "2",
                        "--format", "csv"], capsys)
    assert code == 0 and out.splitlines()[0].count(",") >= 2


def test_twopoint_z(capsys):
    code, out, _ = run(["twopoint", "--family", "general2", "--i", "1", "--order", "3",
                        "--z", "1"], capsys)
    assert code == 0
    code2, out2, _ = run(["twopoint", "--family", "general", "--i", "1", "--order", "3"], capsys)
    one = json.loads(out)["observables"]["T"]["coefficients"]
    assert one == json.loads(out2)["observables"]["T"]["coefficients"]


def test_asymptotics_exact(capsys):
    code, out, _ = run(["asymptotics", "--family", "general", "--i", "1", "--exact"], capsys)
    assert code == 0
    data = json.loads(out)
    assert "28/9" in json.dumps(data)


def test_verify_roundtrip(capsys):
    code, out, _ = run(["verify", "--suite", "roundtrip", "--max-edges", "3"], capsys)
    assert code == 0 and json.loads(out)["ok"]


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(verify, "run_suite",
                        lambda name, **kw: {"suite": name, "checked": 1, "ok": False,
                                            "failures": [{"why": "forced"}], "n_failures": 1})
    code, out, _ = run(["verify", "--suite", "cpq"], capsys)
    assert code == 1
    assert json.loads(out)["suites"]["cpq"]["failures"] == [{"why": "forced"}]


@pytest.mark.parametrize("argv", [
    ["twopoint", "--family", "cubic", "--i", "1"],
    ["twopoint", "--family", "general", "--i", "0"],
    ["twopoint", "--family", "general", "--i", "1", "--order", "100000"],
    ["twopoint", "--family", "general", "--i", "1", "--z", "2"],
    ["verify", "--max-edges", "9"],
    ["asymptotics", "--family", "general", "--i", "1", "--estimate", "--n-max", "10"],
    ["enumerate", "--family", "general", "--n", "99"],
    ["frobnicate"],
    [],
    ["--jobs", "0", "verify"],
])
def test_usage_errors(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_byte_identical(capsys):
    argv = ["sample", "--n", "3", "--count", "4", "--seed", "7"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b and a
    argv = ["twopoint", "--family", "3-hypermap", "--i", "2", "--order", "3"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b


def test_enumerate_and_cache(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("CARTO_CACHE_DIR", str(tmp_path))
    argv = ["enumerate", "--family", "general", "--n", "2"]
    code, first, _ = run(argv, capsys)
    assert code == 0 and json.loads(first)["count"] == 18
    files = list(tmp_path.glob("*.ctab"))
    assert len(files) == 1
    assert files[0].read_bytes().startswith(cli.CACHE_MAGIC)
    _, second, _ = run(argv, capsys)
    assert first == second
    # a foreign file is ignored and recomputed
    files[0].write_bytes(b"junk")
    _, third, _ = run(argv, capsys)
    assert third == first


def test_export(capsys, tmp_path):
    out = tmp_path / "general.json"
    code, _, _ = run(["export", "--family", "general", "--i-max", "2", "--order", "4",
                      "--out", str(out)], capsys)
    assert code == 0
    data = json.loads(out.read_text())
    assert data
