import json
import shutil
import subprocess

import pytest

from pakernel.cli import Store, corpus_run, main
from pakernel.corpus import write_golden
from pakernel.encoding import encode
from pakernel.kernel import dump_proof
from pakernel.syntax import BOT


@pytest.fixture
def proof_file(tmp_path, two_line):
    f = tmp_path / "proof.pf"
    f.write_text(dump_proof(two_line))
    return f


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_ok(capsys, proof_file):
    code, out, _ = run(capsys, "check", str(proof_file))
    assert code == 0
    assert out.strip() == "(= (plus (succ zero) zero) (succ zero))"


def test_check_missing_file_arg(capsys):
    code, _, err = run(capsys, "check")
    assert code == 2 and err


def test_no_subcommand(capsys):
    assert run(capsys)[0] == 2


def test_check_rejects_tampered(capsys, tmp_path, two_line):
    doc = json.loads(dump_proof(two_line))
    doc["lines"][2]["formula"] = "(bot)"
    f = tmp_path / "bad.pf"
    f.write_text(json.dumps(doc))
    code, _, err = run(capsys, "check", str(f))
    assert code == 1 and "line 2" in err


def test_parse_encode_decode(capsys):
    assert run(capsys, "parse", "(bot)")[1].strip() == "(bot)"
    assert run(capsys, "encode", "(bot)")[1].strip() == "266"
    assert run(capsys, "decode", "266")[1].strip() == "(bot)"
    assert run(capsys, "decode", "0")[0] == 1
    assert run(capsys, "parse", "(= zero)")[0] == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "(exists x0 (= x0 zero))")
    assert code == 0 and out.strip() == "Sigma(1)"


def test_trn(capsys):
    code, out, _ = run(capsys, "trn", "1")
    assert code == 0 and out.startswith("(exists")


def test_tarski(capsys, tmp_path):
    out_file = tmp_path / "t.pf"
    code, out, _ = run(capsys, "tarski", "(= x0 zero)", "--level", "1", "--out", str(out_file))
    assert code == 0 and json.loads(out)["accepted"]
    assert run(capsys, "check", str(out_file))[0] == 0


def test_certify_verify_and_store(capsys, tmp_path, proof_file):
    store = tmp_path / "store"
    code, out, _ = run(capsys, "certify", "--mode", "invariant", str(proof_file), "--store", str(store))
    assert code == 0
    info = json.loads(out)
    assert info["kind"] == "invariant" and info["verdict"] == "pass"
    recs = Store(store).records()
    assert len(recs) == 1 and recs[0].path == info["path"]
    code, out, _ = run(capsys, "verify", info["path"])
    assert code == 0 and "FAIL" not in out
    # audit appends, never edits
    code, _, _ = run(capsys, "--store", str(store), "audit")
    assert code == 0
    recs2 = Store(store).records()
    assert len(recs2) == 2 and recs2[0] == recs[0]


def test_certify_evaluation_by_code(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "--mode", "evaluation", "--code", str(encode(BOT)),
                       "--store", str(tmp_path))
    assert code == 0 and json.loads(out)["kind"] == "evaluation"


def test_certify_needs_one_target(capsys):
    assert run(capsys, "certify")[0] == 2


def test_verify_tampered_certificate(capsys, tmp_path, proof_file):
    run(capsys, "certify", str(proof_file), "--store", str(tmp_path))
    path = Store(tmp_path).records()[0].path
    doc = json.loads(open(path).read())
    doc["lineLemmas"][0]["closure"]["lines"].pop()
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1 and "FAIL\tlemma 0" in out


def test_scheme_commands(capsys, tmp_path):
    assert run(capsys, "scheme", "check", "--kind", "consistency", "--sample", "0-3")[0] == 0
    assert run(capsys, "scheme", "check", "--kind", "ci", "--psi", "(= x0 x0);(< x0 (succ x0))")[0] == 0
    assert run(capsys, "scheme", "demo-ci")[0] == 0
    assert run(capsys, "scheme", "check", "--kind", "strong")[0] == 2


def test_scheme_strong(capsys, tmp_path):
    from pakernel.corpus import universal_theorems

    f = tmp_path / "u.pf"
    f.write_text(dump_proof(universal_theorems()["add_zero"]))
    code, out, _ = run(capsys, "scheme", "check", "--kind", "strong", "--proof", str(f), "--sample", "0,5,9")
    assert code == 0 and out.count("pass") == 3


def test_corpus_empty_dir(capsys, tmp_path):
    code, out, _ = run(capsys, "--store", str(tmp_path / "s"), "corpus", "run", str(tmp_path))
    assert code == 0
    assert json.loads(out)["files"] == []


def test_corpus_isolation_and_determinism(tmp_path):
    d = tmp_path / "c"
    paths = write_golden(d)
    keep = {p.name for p in paths[:3]}
    for p in paths:
        if p.name not in keep:
            p.unlink()
    bad = d / "99_corrupt.json"
    bad.write_text("{not json")
    s1 = corpus_run(d, "invariant")
    s2 = corpus_run(d, "invariant")
    assert s1["pass"] == 3 and s1["fail"] == 1
    assert [r["file"] for r in s1["files"]][-1] == "99_corrupt.json"

    def strip(s):
        return [{k: v for k, v in r.items() if k != "seconds"} for r in s["files"]]
    assert strip(s1) == strip(s2)


@pytest.mark.skipif(shutil.which("pk") is None, reason="console script not installed")
def test_console_script(proof_file):
    r = subprocess.run(["pk", "check", str(proof_file)], capture_output=True, text=True)
    assert r.returncode == 0
    r = subprocess.run(["pk", "check"], capture_output=True, text=True)
    assert r.returncode == 2
