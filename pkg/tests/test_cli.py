import io
import json
import subprocess
import sys

import pytest

from qhopf.cli import EXIT_FAIL, EXIT_LIMIT, EXIT_PASS, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_list():
    code, text = run("list")
    assert code == EXIT_PASS
    assert "drinfeldian_generic:g2" in text.split()


def test_show():
    code, text = run("show", "uq:sl2")
    assert code == EXIT_PASS
    assert "mixed[a,-a]" in text


def test_reduce():
    code, text = run("reduce", "uq:sl2", "e[a]*e[-a]")
    assert code == EXIT_PASS
    assert text.strip() == "(-q)/(q^2 - 1)*k^-1[a] + (q)/(q^2 - 1)*k[a] + e[-a]*e[a]"


def test_counit_and_coproduct():
    assert run("counit", "uq:sl2", "k[a] + e[a]")[1].strip() == "1"
    code, text = run("coproduct", "uq:sl2", "k[a]")
    assert code == EXIT_PASS and text.strip() == "(k[a] (x) k[a])"


@pytest.mark.parametrize("argv", [
    ("reduce", "uq:sl2", "e[a] *"),
    ("reduce", "uq:sl2", "e[z]"),
    ("show", "nosuch:sl2"),
    ("show", "uq:e8"),
    ("verify", "uq:sl2", "--suite", "automorphism"),
    ("frobnicate",),
    (),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_engine_limit():
    assert run("reduce", "uq:sl2", "e[a]^4", "--max-degree", "3")[0] == EXIT_LIMIT
    # unresolved overlaps leave nonzero normal forms uncertified
    code, text = run("verify", "drinfeldian_explicit:osp12", "--verbatim", "--suite", "hopf")
    assert code == EXIT_LIMIT and text.endswith("INCONCLUSIVE\n")


def test_verify_pass():
    code, text = run("verify", "uq:sl2", "--suite", "hopf")
    assert code == EXIT_PASS


def test_verify_verbatim_fails():
    code, text = run("verify", "drinfeldian_explicit:c2", "--verbatim", "--suite", "generic-vs-explicit")
    assert code == EXIT_FAIL
    assert "FAIL conjugation[b]" in text


def test_verify_json():
    code, text = run("verify", "uq:sl2", "--suite", "hopf", "--json")
    doc = json.loads(text)
    assert code == EXIT_PASS and doc["exit"] == 0 and all(r["passed"] for r in doc["reports"])


@pytest.mark.parametrize("alg, extra", [
    ("uq:sl2", ()), ("drinfeldian_generic:g2", ()), ("drinfeldian_explicit:osp12", ()),
    ("yangian_expected:c2", ("--verbatim",)), ("classical_loop:c2", ()), ("uq_loop:osp12", ()),
])
def test_export_import_fixed_point(tmp_path, alg, extra):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("export", alg, *extra, "--out", str(a))[0] == EXIT_PASS
    assert run("import", str(a), "--out", str(b))[0] == EXIT_PASS
    assert a.read_bytes() == b.read_bytes()


def test_import_rejects_tampering(tmp_path):
    a = tmp_path / "a.json"
    run("export", "uq:sl2", "--out", str(a))
    tree = json.loads(a.read_text())
    tree["relations"][0]["poly"] = "e[a] *"
    a.write_text(json.dumps(tree))
    assert run("import", str(a))[0] == EXIT_USAGE
    a.write_text("{not json")
    assert run("import", str(a))[0] == EXIT_USAGE


def test_repeat_runs_byte_identical():
    cmd = [sys.executable, "-m", "qhopf", "export", "drinfeldian_generic:c2"]
    outs = [subprocess.run(cmd, capture_output=True, check=True,
                           env={"PYTHONHASHSEED": str(seed), "PATH": ""}).stdout for seed in (1, 2)]
    assert outs[0] == outs[1]
    assert outs[0] == run("export", "drinfeldian_generic:c2")[1].encode()
