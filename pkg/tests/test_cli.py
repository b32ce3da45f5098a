import json

import pytest

from x3ent.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_fixture(capsys):
    code, out, _ = run(capsys, "classify", "rho1", "--format", "json")
    assert code == 0
    d = json.loads(out)
    verdict = {e["cone"]: e["member"] for e in d["cones"]}
    assert verdict["A"] and not verdict["(A^B)v(A^C)"]
    assert d["exact"] and not d["necessary_only"]


def test_classify_zero_and_float(capsys, tmp_path):
    p = tmp_path / "zero.json"
    p.write_text(json.dumps({"a": [0] * 4, "b": [0] * 4, "z": [0] * 4}))
    code, out, _ = run(capsys, "classify", str(p), "--format", "json")
    assert code == 0 and all(e["member"] for e in json.loads(out)["cones"])
    code, out, _ = run(capsys, "classify", "rho1", "--float", "--format", "json")
    assert not json.loads(out)["exact"]


def test_classify_dense_sets_flag(capsys, tmp_path, rng):
    m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    m = m @ m.conj().T
    p = tmp_path / "dense.json"
    p.write_text(json.dumps({"matrix": [[[v.real, v.imag] for v in row] for row in m]}))
    code, out, _ = run(capsys, "classify", str(p), "--format", "json")
    assert code == 0 and json.loads(out)["necessary_only"]


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "rho1", "--cone", "(A^B)v(A^C)", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["verified"] and d["pairing"].startswith("-")
    code, out, _ = run(capsys, "certify", "rho1", "--cone", "A")
    assert code == 0 and out.strip() == "member"
    code, out, _ = run(capsys, "certify", "s3-violator", "--cone", "AvBvC")
    assert code == 0 and out.startswith("outside AvBvC")


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--cone", "A^B^C", "--ghz", "--format", "json")
    assert code == 0 and json.loads(out)["count"] == 20
    code, out, _ = run(capsys, "enumerate", "--cone", "A")
    assert out.splitlines()[0].startswith("A: 12 extreme rays")
    code, out, _ = run(capsys, "enumerate", "--cone", "Bv(C^A)")
    assert code == 0 and "extreme rays" in out


@pytest.mark.parametrize("argv", [
    ("enumerate", "--cone", "A*"),
    ("enumerate", "--cone", "A^^B"),
    ("certify", "rho1", "--cone", "D"),
    ("classify", "no-such-file.json"),
    ("fixtures", "show", "nope"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_malformed_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"a": [1, 2]}')
    code, _, err = run(capsys, "classify", str(p))
    assert code == 2 and "field 'a'" in err


def test_verify_suites(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--suite", "table2", "--report", str(report))
    assert code == 0 and "table2: 9/9 passed" in out
    assert json.loads(report.read_text())["ok"]
    code, out, _ = run(capsys, "verify", "--suite", "redundancy", "--format", "json")
    assert code == 0 and json.loads(out)["suites"][0]["ok"]


def test_verify_failure_exit_1(capsys, monkeypatch):
    from x3ent import cli
    from x3ent.ghzpoly import SuiteReport

    def broken():
        r = SuiteReport("broken")
        r.add("always fails", False, "by construction")
        return r

    monkeypatch.setitem(cli.SUITES, "fixtures", broken)
    code, _, err = run(capsys, "verify", "--suite", "fixtures")
    assert code == 1 and "always fails" in err


def test_fixtures_commands(capsys):
    code, out, _ = run(capsys, "fixtures", "list")
    assert code == 0 and "rho1" in out and "ghz-ones" in out
    code, out, _ = run(capsys, "fixtures", "show", "rho2", "--format", "json")
    assert json.loads(out)["z"][1] == ["1", "0"]
