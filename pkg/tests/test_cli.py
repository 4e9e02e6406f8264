import io
import json

import pytest

from csadim.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv, expected", [
    (["dims", "4"], "4 6 8 10 16\n"),
    (["dims", "0"], "0\n"),
    (["dims", "2"], "2 4\n"),
    (["dims", "4", "--runs"], "4..10 16\n"),
    (["greedy", "40"], "6 3 2 2 | G=13\n"),
    (["greedy", "640"], "25 6 3 2 2 | G=38\n"),
    (["width", "40"], "exact=10 greedy=13\n"),
    (["check", "4", "10"], "true\n"),
    (["check", "5", "8"], "false\n"),
    (["witness", "10", "50"], "5 5\n"),
    (["witness", "4", "12"], "none\n"),
    (["density", "4"], "0.647059\n"),
])
def test_text_outputs(argv, expected):
    assert run(*argv) == (0, expected)


def test_sweep_rows():
    code, out = run("sweep", "4", "4")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "n,gap,normalized,sign_13_4,sign_7_2"
    assert lines[1] == "4,7,1.125000,-1,-1"
    assert lines[2].startswith("# summary,min_normalized=1.125000,max_normalized=1.125000")
    assert run("sweep", "1", "1")[1].splitlines()[1].startswith("1,2,")


def test_sweep_deterministic():
    assert run("sweep", "1", "60")[1] == run("sweep", "1", "60")[1]


def test_sweep_json():
    code, out = run("--format", "json", "sweep", "3", "5")
    doc = json.loads(out)
    assert [r["n"] for r in doc["rows"]] == [3, 4, 5]
    assert doc["rows"][1]["gap"] == 7
    assert set(doc["summary"]) == {
        "min_normalized", "max_normalized", "frac_13_4_positive", "frac_7_2_negative"}


def test_gap():
    assert run("gap", "4")[1].splitlines()[1] == "4,7,1.125000,-1,-1"


def test_json_dims():
    assert json.loads(run("--format", "json", "dims", "3")[1]) == {"n": 3, "dims": [3, 5, 9]}


def test_verify_greedy(capsys):
    code, out = run("verify", "greedy", "--m-max", "3042")
    assert code == 0
    assert out.splitlines()[-1].startswith("640,38,37.947")
    assert "last at 640" in capsys.readouterr().err


def test_verify_theorem():
    code, out = run("verify", "theorem", "--n", "225..240")
    assert code == 0
    assert len(out.splitlines()) == 17


def test_verify_corollary():
    assert run("verify", "corollary", "--n", "49..120")[0] == 0


def test_verify_failure_exit_code(monkeypatch):
    from csadim import analysis
    from csadim.analysis import CoverageReport

    monkeypatch.setattr(analysis, "verify_corollary",
                        lambda n, t: CoverageReport(n, 5, 6, [3]))
    assert run("verify", "corollary", "--n", "49..50")[0] == 1
    # below the claim's threshold failures are informational
    assert run("verify", "corollary", "--n", "10..12")[0] == 0


@pytest.mark.parametrize("argv", [
    ["greedy", "41"],
    ["width", "3"],
    ["--memory-cap", "1000", "dims", "100"],
    ["--n-max", "5", "dims", "10"],
    ["check", "4", "17"],
])
def test_errors_exit_2(argv, capsys):
    assert run(*argv)[0] == 2
    assert "csadim: error" in capsys.readouterr().err


def test_oracle_mode():
    assert run("dims", "4", "--oracle") == (0, "4 6 8 10 16\n")
    assert run("dims", "12", "--oracle")[1] == run("dims", "12")[1]
    assert run("--oracle-cap", "10", "dims", "11", "--oracle")[0] == 2
    assert run("--oracle-cap", "0", "dims", "1")[0] == 2


def test_env_override(monkeypatch):
    monkeypatch.setenv("CSADIM_FORMAT", "json")
    assert json.loads(run("dims", "2")[1])["dims"] == [2, 4]
    monkeypatch.setenv("CSADIM_MEMORY_CAP", "10")
    assert run("dims", "20")[0] == 2


def test_cache_commands(tmp_path):
    path = tmp_path / "t.csad"
    assert run("--n-max", "30", "cache", "save", str(path))[0] == 0
    assert run("cache", "load", str(path)) == (0, f"loaded n_max=30 from {path}\n")
    # commands reuse the cache when it is big enough
    assert run("--cache", str(path), "dims", "4")[1] == "4 6 8 10 16\n"
    path.write_bytes(path.read_bytes()[:-3])
    assert run("cache", "load", str(path))[0] == 2
    assert run("--cache", str(path), "dims", "4")[0] == 2


def test_cache_written_on_build(tmp_path):
    path = tmp_path / "c.csad"
    assert run("--cache", str(path), "dims", "6")[0] == 0
    assert path.exists()


def test_cache_save_needs_size(tmp_path):
    assert run("cache", "save", str(tmp_path / "x"))[0] == 2


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
