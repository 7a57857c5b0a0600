import json
import subprocess
import sys

import pytest

from qcongruences.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_examples(capsys):
    assert run(capsys, "expand", "phi(q^1)", "-N", "4")[1] == "0,1\n1,2\n2,0\n3,0\n4,2\n"
    code, out, _ = run(capsys, "expand", "l4^5/(l1^2*l2*l8^2)", "-N", "3")
    assert code == 0 and [l.split(",")[1] for l in out.split()] == ["1", "2", "6", "12"]
    assert run(capsys, "expand", "l1", "-N", "2")[1] == "0,1\n1,-1\n2,-1\n"
    assert run(capsys, "expand", "l1", "-N", "2", "--mod", "4")[1] == "0,1\n1,3\n2,3\n"


def test_expand_parse_error(capsys):
    code, _, err = run(capsys, "expand", "l1*foo")
    assert code == 2 and "position 3" in err


def test_verify_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "identities", "-N", "60")
    assert code == 0 and "8 passed, 0 failed" in out
    code, out, _ = run(capsys, "verify", "--suite", "intermediates", "--terms", "40", "--format", "json")
    d = json.loads(out)
    assert code == 1 and d["summary"]["fail"] == 1
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "verify", "-N", "0")[0] == 2
    bad = tmp_path / "r.jsonl"
    bad.write_text('{"id": "x"}\n')
    assert run(capsys, "verify", "--registry", str(bad))[0] == 2


def test_verify_lemmas_with_primes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemmas", "--primes", "3,5,7", "-N", "100", "--format", "csv")
    assert code == 0
    ids = [l.split(",")[0] for l in out.splitlines()[1:]]
    assert "lemma2.1[p=7]" in ids and "lemma2.1[p=11]" not in ids and "lemma2.2[p=5]" in ids


def test_module_entry_point(tmp_path):
    out = tmp_path / "rep.json"
    proc = subprocess.run([sys.executable, "-m", "qcongruences", "verify", "--suite", "proof-displays",
                           "--terms", "50", "--no-timing", "--format", "json", "-o", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    d = json.loads(out.read_text())
    assert "elapsed_ms" not in d["checks"][0]
    assert {c["id"] for c in d["checks"] if c["status"] == "fail"} == {"proof:m1", "proof:m2[p=5,alpha=0]"}
