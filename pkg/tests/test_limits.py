import pytest

from qhopf import catalog, limits
from qhopf.cli.expr import elaborate
from qhopf.errors import SingularAtQ1
from qhopf.freealg import NcPoly, TensorPoly
from qhopf.rewrite import system_for


def ex(p, text):
    x = elaborate(text, p.alphabet, p.meta["composites"])
    return x if isinstance(x, (NcPoly, TensorPoly)) else NcPoly.scalar(p.alphabet, x)


@pytest.mark.parametrize("base", ["sl2", "c2", "g2", "osp12"])
def test_eta_zero(base):
    rep = limits.eta_zero_report(catalog.build(f"drinfeldian:{base}"))
    assert rep.passed, rep.witnesses()


def test_osp_coproduct_at_eta_zero():
    s = limits.specialize_eta_zero(catalog.build("drinfeldian_explicit:osp12"))
    want = ex(s, "(e[d-2a] (x) 1) + (k^-1[d]*k^2[a] (x) e[d-2a])")
    assert s.hopf.coproduct["e[d-2a]"] == want


def test_k_expansion():
    p = catalog.build("uq:sl2")
    target = limits.classical_alphabet(catalog.build("uq_loop:sl2"))
    # (k - k^-1)/(q - q^-1) -> h
    x = ex(p, "(k[a] - k^-1[a])/(q - q^-1)")
    r = limits.classical_limit(x, limits.classical_alphabet(p))
    assert r.regular and str(r.value) == "h[a]"
    assert target.classical


def test_lower_bracket_limit_c2():
    # the eta q coefficient of the explicit relation becomes eta in the limit
    p = catalog.build("drinfeldian_explicit:c2")
    y = catalog.build("yangian:c2")
    r = limits.classical_limit(p.relation("affine_lower[-a]"), y.alphabet)
    assert r.regular and r.value == y.relation("affine_lower[-a]")


def test_coproduct_limit_c2():
    # (k_{a+2b} - k_{d-a-2b})/(q - q^-1) -> h_{a+2b} - h_d/2 in the Yangian coproduct
    p = catalog.build("drinfeldian_explicit:c2")
    y = catalog.build("yangian:c2")
    r = limits.classical_limit(p.hopf.coproduct["xi[d-a-2b]"], y.alphabet)
    rs = system_for(y)
    assert r.regular
    assert rs.normal_form_tensor(r.value - y.hopf.coproduct["xi[d-a-2b]"]).is_zero()


def test_nonsingular_generic():
    p = catalog.build("drinfeldian:c2")
    ok, bad = limits.check_nonsingular_q1(limits.reduced_relation(p, "affine_lower[-a]"))
    assert ok and bad == []


def test_bare_tau_is_singular():
    p = catalog.build("drinfeldian:c2")
    ok, bad = limits.check_nonsingular_q1(ex(p, "tau*e[a]"))
    assert not ok and "e[a]" in bad[0]
    with pytest.raises(SingularAtQ1):
        sing = p.__class__("s", p.datum, p.alphabet, [("bad", ex(p, "tau*e[a]"))], None, p.meta)
        limits.classical_limit_q1(sing)


def test_eta_free_relations_regular():
    p = catalog.build("uq:g2")
    for name, rel in p.relations:
        assert limits.check_nonsingular_q1(rel)[0], name


@pytest.mark.parametrize("base", ["c2", "g2", "osp12"])
def test_yangian_explicit(base):
    rep = limits.yangian_report(catalog.build(f"drinfeldian_explicit:{base}"))
    assert rep.passed, rep.witnesses()


def test_yangian_generic_osp():
    rep = limits.yangian_report(catalog.build("drinfeldian:osp12"), modulo="others")
    assert rep.passed, rep.witnesses()


def test_nonsingularity_report_osp():
    assert limits.nonsingularity_report(catalog.build("drinfeldian:osp12")).passed


def test_generic_vs_explicit_osp():
    assert limits.generic_vs_explicit("osp12").passed


def test_verbatim_c2_differs_from_generic():
    rep = limits.generic_vs_explicit("c2", errata=False)
    failed = {i.name for i in rep.items if i.status == "fail"}
    assert any(n.startswith("affine_serre[a]") for n in failed)
    assert any(n.startswith("affine_double[a]") for n in failed)


def test_transport_embeds_uq():
    p = catalog.build("uq:c2")
    loop = catalog.build("uq_loop:c2")
    x = limits.transport(p.relation("mixed[a,-a]"), loop.alphabet)
    assert x == loop.relation("mixed[a,-a]")
