from __future__ import annotations

import json

import pytest

from symrank.cli import BINFORM_HELP, build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_admissible_table(capsys):
    code, out, _ = run(capsys, "admissible", "-m", "2", "-s", "5", "-d", "12")
    assert code == 0 and out.strip().endswith("admissible: {5, 9, 11, 13, 15, 21, 22}")

    code, out, _ = run(capsys, "admissible", "-m", "2", "-s", "5", "-d", "12", "--json")
    assert code == 0
    rows = json.loads(out)
    ranks = [row["r"] for row in rows if row["band"] != "inadmissible"]
    assert ranks == [5, 9, 11, 13, 15, 21, 22]


def test_admissible_is_m_independent(capsys):
    _, a, _ = run(capsys, "admissible", "-m", "2", "-s", "6", "-d", "14", "--json")
    _, b, _ = run(capsys, "admissible", "-m", "3", "-s", "6", "-d", "14", "--json")
    bands = lambda text: [(row["r"], row["band"], row["params"]) for row in json.loads(text)]
    assert bands(a) == bands(b)


def test_hypothesis_and_usage_errors(capsys):
    assert run(capsys, "admissible", "-m", "2", "-s", "5", "-d", "11")[0] == 2
    assert run(capsys, "rank-binary", "0", "x")[0] == 2
    assert run(capsys, "rank-binary", "0", "0", "0")[0] == 2
    assert run(capsys, "rank-binary", "-e", "3", "1", "0")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_rank_binary(capsys):
    code, out, _ = run(capsys, "rank-binary", "0", "1", "0", "0", "0")
    res = json.loads(out)
    assert code == 0 and (res["rank"], res["border_rank"], res["squarefree"]) == (4, 2, False)
    code, out, _ = run(capsys, "rank-binary", "1", "1/2", "1/4")
    assert json.loads(out)["rank"] == 1


def test_binform_convention_in_help(capsys):
    assert BINFORM_HELP in build_parser().format_help()
    with pytest.raises(SystemExit):
        build_parser().parse_args(["rank-binary", "--help"])
    assert "C(e, i)" in capsys.readouterr().out


def test_h1(tmp_path, capsys):
    f = tmp_path / "pts.json"
    f.write_text(json.dumps([[1, t, 0] for t in range(6)]))
    code, out, _ = run(capsys, "h1", str(f), "-d", "4")
    assert code == 0 and json.loads(out)["h1"] == 1
    f.write_text("[]")
    code, out, _ = run(capsys, "h1", str(f), "-d", "3")
    assert json.loads(out)["h1"] == 0
    f.write_text("{not json")
    assert run(capsys, "h1", str(f), "-d", "3")[0] == 2


def test_witness_determinism_and_refusal(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["witness", "-m", "2", "-s", "5", "-d", "12", "-r", "21", "--seed", "7"]
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["band"] == "top-even"
    assert run(capsys, "witness", "-m", "2", "-s", "5", "-d", "12", "-r", "10")[0] == 3


def test_certify_verify_round_trip(tmp_path, capsys):
    w, c = tmp_path / "w.json", tmp_path / "c.json"
    assert run(capsys, "witness", "-m", "2", "-s", "5", "-d", "12", "-r", "13", "--out", str(w))[0] == 0
    assert run(capsys, "certify", str(w), "--budget", "100", "--out", str(c))[0] == 0
    code, out, _ = run(capsys, "verify", str(c))
    assert code == 0 and out.strip() == "OK"

    cert = json.loads(c.read_text())
    cert["sr_upper"]["coefficients"][0] = "7/3"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(cert))
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 5 and "sr_upper" in err

    cert = json.loads(c.read_text())
    cert["schema"] = "rank-cert/0"
    bad.write_text(json.dumps(cert))
    assert run(capsys, "verify", str(bad))[0] == 6


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "2")
    assert code == 0 and "[PASS] criterion 2" in out
