import io
import json
import subprocess
import sys

import pytest

from levelalg.cli import EXIT_NO, EXIT_OK, EXIT_PARSE, EXIT_UNKNOWN, EXIT_USAGE, main


def run(*argv, tmp=None):
    argv = list(argv)
    if tmp is not None:
        argv += ["--witness-dir", str(tmp)]
    out = io.StringIO()
    code = main(argv, out)
    text = out.getvalue()
    rec = json.loads(text) if "--format" not in argv else text
    return code, rec


def test_expand():
    code, rec = run("expand", "--n", "10", "--i", "3")
    assert code == EXIT_OK
    assert rec["trace"]["expansion"] == "C(5,3)" and rec["trace"]["upper"] == 15
    assert set(rec) == {"subcommand", "inputs", "verdict", "trace", "artifacts"}


@pytest.mark.parametrize("argv,code,verdict", [
    (["oseq", "--h", "1,3,6,10,9,7,5,2"], EXIT_OK, "Yes"),
    (["oseq", "--h", "1,2,4"], EXIT_NO, "No"),
    (["si", "--h", "1,3,4,4,3,1"], EXIT_OK, "Yes"),
    (["gor", "--h", "1,3,2,3,1"], EXIT_NO, "No"),
    (["gor", "--h", "1,5,5,1"], EXIT_UNKNOWN, "Unknown"),
    (["level2", "--h", "1,3,6,10,9,7,5,2"], EXIT_NO, "NotLevel"),
    (["level2", "--h", "1,3,6,10,9,7,5,2", "--screen", "cor22"], EXIT_UNKNOWN, "Unknown"),
    (["level2", "--h", "1,8,7,2"], EXIT_UNKNOWN, "Unknown"),
    (["bounds", "--r", "6", "--a", "6", "--e", "8", "--i", "3"], EXIT_UNKNOWN, "Unknown"),
    (["diesel", "--h", "1,3,3,3,1", "--q", "2,2,2,4,4", "--p", "5,5,5,3,3"], EXIT_OK, "Yes"),
    (["diesel", "--h", "1,3,4,4,3,1", "--q", "2,2,3,3", "--p", "6,6,5,5"], EXIT_NO, "No"),
    (["gotzmann", "--r", "3", "--d", "2", "--n", "4", "--m", "8"], EXIT_OK, "Yes"),
])
def test_verdicts(argv, code, verdict, tmp_path):
    got, rec = run(*argv, tmp=tmp_path)
    assert (got, rec["verdict"]) == (code, verdict)


def test_level2_trace(tmp_path):
    _, rec = run("level2", "--h", "1,3,6,10,9,7,5,2", tmp=tmp_path)
    assert rec["trace"]["stage"] == "thm23-screen"
    assert [1, 3, 2, 0, 1, 1, 1, 0] in [p["h_double"] for p in rec["trace"]["pairs"]]


def test_witness_roundtrip(tmp_path):
    code, rec = run("level2", "--h", "1,3,4,4,3,2", tmp=tmp_path)
    assert code == EXIT_OK
    path = rec["artifacts"]["witness_file"]
    code, rec = run("socle", "--module", path)
    assert code == EXIT_OK
    assert rec["trace"]["hvector"] == [1, 3, 4, 4, 3, 2]
    assert rec["trace"]["socle"] == [0, 0, 0, 0, 0, 2]


def test_maxh_and_witness(tmp_path):
    code, rec = run("maxh", "--r", "3", "--a", "6", "--e", "7")
    assert code == EXIT_OK and rec["trace"]["hvector"] == [1, 3, 6, 10, 15, 12, 6, 2]
    code, rec = run("witness", "--r", "3", "--a", "6", "--e", "7", tmp=tmp_path)
    assert code == EXIT_OK and rec["trace"]["socle"] == [0] * 7 + [2]
    code, rec = run("witness", "--r", "3", "--m", "4", "--d", "7", tmp=tmp_path)
    assert rec["trace"]["hvector"] == [1, 3, 4, 4, 4, 4, 3, 1]


def test_betti_and_pencil(tmp_path):
    ideal = tmp_path / "ideal.txt"
    ideal.write_text("x1^2\nx1*x2\nx2^2\nx3^4\n")
    code, rec = run("betti", "--ideal", str(ideal), "--cap", "7")
    assert code == EXIT_OK and rec["trace"]["functional_equation"]
    assert rec["trace"]["socle"] == [0, 0, 0, 0, 2]
    mod = tmp_path / "mod.txt"
    mod.write_text("y1*y3^4\ny2*y3^4\n")
    code, rec = run("pencil", "--module", str(mod))
    assert code == EXIT_OK and rec["trace"]["certified_max"] == 2


def test_errors(tmp_path):
    assert run("oseq", "--h", "1,a,3")[0] == EXIT_PARSE
    assert run("oseq")[0] == EXIT_USAGE
    assert run("nonsense")[0] == EXIT_USAGE
    bad = tmp_path / "bad.txt"
    bad.write_text("y1^2 +\n")
    assert run("hvector", "--module", str(bad))[0] == EXIT_PARSE
    assert run("hvector", "--module", str(tmp_path / "missing.txt"))[0] in (EXIT_USAGE, EXIT_PARSE)


def test_plain_format():
    code, text = run("expand", "--n", "7", "--i", "3", "--format", "plain")
    assert code == EXIT_OK
    assert "C(4,3) + C(3,2)" in text


def test_deterministic(tmp_path):
    argv = ["level2", "--h", "1,5,5,5,5,2", "--seed", "3"]
    assert run(*argv, tmp=tmp_path) == run(*argv, tmp=tmp_path)


def test_entry_point():
    p = subprocess.run([sys.executable, "-m", "levelalg", "expand", "--n", "10", "--i", "3"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)["trace"]["upper"] == 15
