import pytest

from qhopf import catalog
from qhopf.cli.expr import elaborate
from qhopf.errors import InsufficientCompletionDegree, NonUnitLeadingCoefficient
from qhopf.freealg import NcPoly
from qhopf.rewrite import Presentation, check_confluence, complete, orient, system_for
from qhopf.scalars import eta
from randexpr import sample


def ex(p, text):
    x = elaborate(text, p.alphabet, p.meta["composites"])
    return x if isinstance(x, NcPoly) else NcPoly.scalar(p.alphabet, x)


SL2 = catalog.build("uq:sl2")
COMMUTATOR = "(-q)/(q^2 - 1)*k^-1[a] + (q)/(q^2 - 1)*k[a] + e[-a]*e[a]"


def test_orient_sl2():
    rs = orient(SL2)
    (lead, rhs), = rs.rule_list()
    assert SL2.alphabet.format_monomial((SL2.alphabet.zero_cartan, lead)) == "e[a]*e[-a]"
    assert str(rhs) == COMMUTATOR


def test_normal_form_examples():
    rs = system_for(SL2)
    assert str(rs.normal_form(ex(SL2, "e[a]*e[-a]"))) == COMMUTATOR
    assert rs.normal_form(ex(SL2, "k[a]*k^-1[a]")) == NcPoly.one(SL2.alphabet)


def test_zero_relation_emits_no_rule():
    p = Presentation("z", SL2.datum, SL2.alphabet, [("zero", NcPoly.zero(SL2.alphabet))])
    assert orient(p).rules == {}


def test_eta_leading_coefficient():
    rel = ex(SL2, "e[a]*e[-a]").scale(eta()) + ex(SL2, "k[a]")
    p = Presentation("eta", SL2.datum, SL2.alphabet, [("r", rel)])
    with pytest.raises(NonUnitLeadingCoefficient):
        orient(p)


def test_empty_completion():
    p = Presentation("empty", SL2.datum, SL2.alphabet, [])
    rs = complete(orient(p), 8)
    assert rs.rules == {} and rs.report.rules_added == 0


# completion counts, frozen after an independent confluence check
GOLDEN = {
    "uq:sl2": (1, 1), "uq:c2": (8, 10), "uq:g2": (8, 16), "uq:osp12": (1, 1),
    "uq_loop:sl2": (4, 4), "uq_loop:c2": (13, 16), "uq_loop:g2": (13, 21), "uq_loop:osp12": (4, 4),
    "drinfeldian_explicit:c2": (13, 16), "drinfeldian_explicit:g2": (13, 21),
    "yangian_expected:g2": (13, 21), "classical_loop:osp12": (4, 4),
}


@pytest.mark.parametrize("alg", sorted(GOLDEN))
def test_completion_golden(alg):
    rs = complete(orient(catalog.build(alg)), 8)
    assert (rs.report.rules_initial, rs.report.rules_final) == GOLDEN[alg]
    assert rs.unresolved == []
    assert check_confluence(rs) == []


@pytest.mark.parametrize("alg", ["uq:c2", "drinfeldian:osp12", "yangian:c2"])
def test_relations_reduce_to_zero(alg):
    p = catalog.build(alg)
    rs = system_for(p)
    for name, rel in p.relations:
        assert rs.normal_form(rel).is_zero(), name


def test_is_zero_mod():
    rs = system_for(SL2)
    assert rs.is_zero_mod(SL2.relation("mixed[a,-a]")) == (True, None)
    ok, witness = rs.is_zero_mod(ex(SL2, "e[a]"))
    assert not ok and str(witness) == "e[a]"


def test_is_zero_mod_beyond_completion():
    rs = orient(catalog.build("uq:c2"))
    complete(rs, 2)
    with pytest.raises(InsufficientCompletionDegree):
        rs.is_zero_mod(ex(catalog.build("uq:c2"), "e[b]^3*e[a]"))


@pytest.mark.parametrize("alg", ["uq:c2", "uq_loop:g2", "drinfeldian:c2", "classical:osp12"])
def test_trace_replay(alg):
    p = catalog.build(alg)
    rs = system_for(p)
    for x in sample(p.alphabet, 40, seed=7):
        nf, steps = rs.traced_normal_form(x)
        assert nf == rs.normal_form(x)
        assert rs.replay(nf, steps) == x


@pytest.mark.parametrize("alg", ["uq:g2", "drinfeldian:osp12", "yangian:c2"])
def test_idempotent_sample(alg):
    p = catalog.build(alg)
    rs = system_for(p)
    for x in sample(p.alphabet, 100, seed=3):
        nf = rs.normal_form(x)
        assert rs.normal_form(nf) == nf
        assert all(rs.is_normal_tail(t) for (_, t) in nf.terms)
