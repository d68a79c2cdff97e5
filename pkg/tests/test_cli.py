from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from ltcrit import certificates
from ltcrit.cli import main
from ltcrit.jobs import Settings, execute, inputs_hash, parse_field, run_job
from ltcrit.errors import InvalidArgument

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_single_commands(capsys):
    code, out, _ = run(capsys, "verdict-abelian", FIX / "imai.toml")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["verdict"] == "FiniteTorsion" and doc["schema_version"] == certificates.SCHEMA_VERSION
    assert run(capsys, "verdict-abelian", FIX / "cm.toml")[0] == 1
    assert run(capsys, "weil", FIX / "weil.toml")[0] == 0
    code, out, _ = run(capsys, "galois", FIX / "galois_cube_root.toml")
    assert code == 0 and json.loads(out)["result"]["d_G"] == 6


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "verdict-abelian", FIX / "malformed.toml")
    assert code == 2 and "field.p" in err
    code, _, err = run(capsys, "weil", FIX / "broken.toml")
    assert code == 2 and "broken.toml" in err
    assert run(capsys, "weil", tmp_path / "missing.toml")[0] == 2
    # the job's declared command must match the invoked one
    assert run(capsys, "galois", FIX / "weil.toml")[0] == 2


def test_capability_error(capsys):
    assert run(capsys, "galois", FIX / "galois_cube_root.toml", "--galois-cap", "3")[0] == 3


def test_asserted_galois_flag(capsys):
    code, out, _ = run(capsys, "verdict-abelian", FIX / "imai.toml", "--assert-galois", "2,1")
    res = json.loads(out)["result"]
    assert "galois-asserted" in res["flags"]
    assert res["galois"]["provenance"] == "asserted, not computed"


def test_out_file_and_replay(capsys, tmp_path):
    cert = tmp_path / "cm.json"
    assert run(capsys, "verdict-abelian", FIX / "cm.toml", "--out", cert)[0] == 1
    code, out, _ = run(capsys, "replay", cert)
    assert code == 1 and "consistent" in out and "INCONSISTENT" not in out
    doc = json.loads(cert.read_text())
    doc["result"]["verdict"] = "FiniteTorsion"
    cert.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "replay", cert)
    assert code == 2


def test_brief_format_omits_transcripts(capsys):
    _, out, _ = run(capsys, "verdict-abelian", FIX / "cm.toml", "--format", "brief")
    doc = json.loads(out)
    assert "omitted" in out and doc["settings"]["format"] == "brief"
    assert certificates.replay(doc)


def test_batch_determinism_and_replay(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    code_a, table_a, _ = run(capsys, "batch", FIX / "corpus.toml", "--out-dir", a)
    code_b, table_b, _ = run(capsys, "batch", FIX / "corpus.toml", "--out-dir", b, "--jobs", 3)
    assert code_a == code_b == 2  # the corpus contains malformed jobs
    assert table_a == table_b
    files = sorted(p.name for p in a.iterdir())
    assert files == sorted(p.name for p in b.iterdir())
    for name in files:
        assert (a / name).read_bytes() == (b / name).read_bytes()
    for cert in sorted(a.glob("job-*.json")):
        assert certificates.replay(certificates.loads(cert.read_text()))
    header = table_a.splitlines()[0].split("\t")
    assert header == ["index", "name", "command", "inputs_hash", "status", "result", "witnesses"]


def test_empty_batch(capsys, tmp_path):
    empty = tmp_path / "empty.toml"
    empty.write_text("")
    code, out, _ = run(capsys, "batch", empty)
    assert code == 0 and out.count("\n") == 1


def test_batch_rejects_non_tables(capsys, tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("jobs = [1, 2]\n")
    assert run(capsys, "batch", bad)[0] == 2


def test_inputs_hash_depends_on_settings():
    job = {"command": "weil", "alpha": {"rational": 5}, "q": 5, "w": 2}
    assert inputs_hash(job, Settings()) == inputs_hash(dict(job), Settings())
    assert inputs_hash(job, Settings()) != inputs_hash(job, Settings(precision=32))


def test_job_paths_in_errors():
    with pytest.raises(InvalidArgument, match=r"field\.eisenstein\[1\]"):
        parse_field({"p": 5, "eisenstein": [-5, "x", 1]})
    with pytest.raises(InvalidArgument, match="pi.padic_digits"):
        execute({"command": "verdict-abelian", "field": {"p": 5},
                 "pi": {"min_poly": [5, -4, 1], "padic_digits": [7]}})
    outcome, err = run_job({"command": "weil", "alpha": {"rational": 0}, "q": 5, "w": 1})
    assert outcome.status == 2 and err


def test_field_keys():
    K = parse_field({"p": 3, "f": 2, "eisenstein": [[3, 3], [0, 3], 1]})
    assert (K.e, K.f) == (2, 2)
    assert parse_field({"p": 5, "e": 3}).eisenstein_poly[0] == (-5,)
    with pytest.raises(InvalidArgument):
        parse_field({"p": 5, "e": 2, "eisenstein": [-5, 0, 0, 1]})


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "ltcrit", "weil", str(FIX / "weil.toml")],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["result"]["is_weil"] is True
