"""End-to-end acceptance criteria; each test prints one PASS/FAIL line."""
import io
import json
import subprocess
import sys

import pytest

from qhopf import catalog, limits
from qhopf.cli import EXIT_FAIL, EXIT_LIMIT, EXIT_PASS, EXIT_USAGE, main
from qhopf.hopf import hopf_suite
from qhopf.rewrite import check_confluence, complete, orient, system_for
from mutations import apply, mutations, reference_detect, reference_for
from randexpr import sample

BASES = ("sl2", "c2", "g2", "osp12")
EXPLICIT = ("c2", "g2", "osp12")
HOPF_ALGEBRAS = (
    [f"uq:{b}" for b in BASES]
    + [f"uq_loop:{b}" for b in BASES]
    + [f"drinfeldian_generic:{b}" for b in EXPLICIT]
)
MAX_DEGREE = 10


@pytest.fixture
def verdict(capsys):
    def report(number, title, failures):
        status = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            detail = "" if not failures else f" ({len(failures)} problems; first: {failures[0]})"
            print(f"\ncriterion {number} {title}: {status}{detail}")
        assert not failures, failures

    return report


def _problems(reports):
    return [f"{r.algebra}/{r.check}/{i.name}: {i.status}" for r in reports for i in r.items if i.status != "pass"]


def test_criterion_1_hopf_suite(verdict):
    bad = []
    for alg in HOPF_ALGEBRAS:
        bad += _problems(hopf_suite(catalog.build(alg), MAX_DEGREE))
    verdict(1, "Hopf suite at max-degree 10", bad)


def test_criterion_2_generic_vs_explicit(verdict):
    bad = []
    for base in EXPLICIT:
        rep = limits.generic_vs_explicit(base, MAX_DEGREE)
        names = {i.name for i in rep.items}
        bad += _problems([rep])
        if not any(n.startswith("coproduct") for n in names) or not any(n.startswith("antipode") for n in names):
            bad.append(f"{base}: coproduct or antipode not compared")
    verdict(2, "generic builder reproduces the explicit presentations", bad)


def test_criterion_3_limits(verdict):
    bad = []
    for base in BASES:
        bad += _problems([limits.eta_zero_report(catalog.build_drinfeldian_generic(base), MAX_DEGREE)])
    for base in EXPLICIT:
        bad += _problems([limits.yangian_report(catalog.build_drinfeldian_explicit(base))])
    verdict(3, "eta -> 0 and q -> 1 limits", bad)


def test_criterion_4_nonsingularity(verdict):
    bad = []
    for base in BASES:
        bad += _problems([limits.nonsingularity_report(catalog.build_drinfeldian_generic(base))])
    verdict(4, "generic builder is regular at q = 1", bad)


def test_criterion_5_automorphism(verdict):
    bad = []
    algs = [f"uq_loop:{b}" for b in BASES] + [f"drinfeldian_generic:{b}" for b in BASES]
    algs += [f"drinfeldian_explicit:{b}" for b in EXPLICIT]
    for alg in algs:
        rep = catalog.verify_Ta(catalog.build(alg), MAX_DEGREE)
        if not any(i.name.startswith("eps(") for i in rep.items):
            bad.append(f"{alg}: counit condition not checked")
        bad += _problems([rep])
    verdict(5, "T_a is a Hopf-compatible automorphism", bad)


def test_criterion_6_rewriting(verdict):
    bad = []
    for alg in catalog.list_algebras():
        p = catalog.build(alg)
        rs = orient(p)
        complete(rs, 8)
        if rs.unresolved:
            bad.append(f"{alg}: {len(rs.unresolved)} unresolved relations")
        missed = check_confluence(rs, 8)
        if missed:
            bad.append(f"{alg}: {len(missed)} unresolved overlaps")
        xs = sample(p.alphabet, 1000, seed=2024, max_degree=6)
        for i, x in enumerate(xs):
            nf = rs.normal_form(x)
            if rs.normal_form(nf) != nf:
                bad.append(f"{alg}: normal form not idempotent on sample {i}")
                break
            if i < 50:
                tnf, steps = rs.traced_normal_form(x)
                if tnf != nf or rs.replay(tnf, steps) != x:
                    bad.append(f"{alg}: trace of sample {i} does not replay")
                    break
    verdict(6, "completion, trace replay and idempotence", bad)


def test_criterion_7_negative_controls(verdict):
    bad = []
    for alg in HOPF_ALGEBRAS + [f"drinfeldian_explicit:{b}" for b in EXPLICIT]:
        p = catalog.build(alg)
        ref = reference_for(p)
        rs = system_for(ref, 8)
        changes = mutations(p, 20, seed=1)
        if len(changes) < 20:
            bad.append(f"{alg}: only {len(changes)} mutations available")
        for change in changes:
            mutant = apply(p, *change)
            bound = max(MAX_DEGREE, mutant.max_relation_degree())
            hit = reference_detect(p, mutant, ref, rs, bound)
            if hit is None or not hit[1].witness:
                bad.append(f"{alg}: mutation {change[0]} {change[1]} {change[3]} undetected")
    verdict(7, "every single-term mutation is caught with a witness", bad)


def _cli(*argv):
    out = io.StringIO()
    return main(list(argv), out=out), out.getvalue()


def test_criterion_8_cli(verdict, tmp_path):
    bad = []
    for alg in ("uq:c2", "drinfeldian_generic:g2", "drinfeldian_explicit:osp12", "yangian_expected:c2"):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        _cli("export", alg, "--out", str(a))
        _cli("import", str(a), "--out", str(b))
        if a.read_bytes() != b.read_bytes():
            bad.append(f"{alg}: export/import is not a fixed point")
        json.loads(a.read_text())
    cmd = [sys.executable, "-m", "qhopf", "verify", "uq:c2", "--suite", "hopf", "--json"]
    runs = [subprocess.run(cmd, capture_output=True, env={"PYTHONHASHSEED": s, "PATH": ""}) for s in ("0", "7")]
    if runs[0].stdout != runs[1].stdout:
        bad.append("repeat runs differ")
    if runs[0].returncode != EXIT_PASS:
        bad.append(f"verify uq:c2 exited {runs[0].returncode}")
    codes = {
        EXIT_PASS: _cli("verify", "uq:sl2")[0],
        EXIT_FAIL: _cli("verify", "drinfeldian_explicit:c2", "--verbatim", "--suite", "generic-vs-explicit")[0],
        EXIT_USAGE: _cli("reduce", "uq:sl2", "e[a] +")[0],
        EXIT_LIMIT: _cli("reduce", "uq:sl2", "e[a]^5", "--max-degree", "4")[0],
    }
    bad += [f"expected exit {k}, got {v}" for k, v in codes.items() if k != v]
    verdict(8, "CLI round trip, determinism and exit codes", bad)
