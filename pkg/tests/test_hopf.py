from dataclasses import replace

import pytest

from qhopf import catalog, hopf
from qhopf.freealg import NcPoly, TensorPoly
from qhopf.hopf import HopfStructure
from qhopf.rewrite import system_for
from qhopf.scalars import ONE


def with_hopf(p, kind, name, value):
    h = HopfStructure(dict(p.hopf.coproduct), dict(p.hopf.antipode), dict(p.hopf.counit))
    getattr(h, kind)[name] = value
    return replace(p, hopf=h, label=p.label + "~bad")


def statuses(rep):
    return {i.name: i.status for i in rep.items}


@pytest.mark.parametrize("alg", ["uq:sl2", "uq:c2", "uq:osp12", "uq_loop:c2", "drinfeldian:osp12", "yangian:osp12"])
def test_suite_passes(alg):
    for rep in hopf.hopf_suite(catalog.build(alg), 10):
        assert rep.passed, (rep.summary(), rep.witnesses())


def test_commutator_respected():
    rep = hopf.check_delta_respects_relations(catalog.build("uq:sl2"))
    assert statuses(rep)["mixed[a,-a]"] == "pass"


def test_corrupted_coproduct_fails():
    p = catalog.build("uq:sl2")
    e = NcPoly.gen(p.alphabet, "e[a]")
    bad = with_hopf(p, "coproduct", "e[a]", TensorPoly.pure(e, NcPoly.one(p.alphabet)))
    rep = hopf.check_delta_respects_relations(bad)
    item = next(i for i in rep.items if i.name == "mixed[a,-a]")
    assert item.status == "fail" and item.witness


def test_corrupted_counit_fails():
    p = catalog.build("uq:sl2")
    bad = with_hopf(p, "counit", "e[a]", ONE)
    rep = hopf.check_counit(bad)
    assert rep.failed
    assert any(i.witness for i in rep.items if i.status == "fail")


def test_drinfeldian_lower_bracket():
    rep = hopf.check_delta_respects_relations(catalog.build("drinfeldian_explicit:c2"))
    assert statuses(rep)["affine_lower[-b]"] == "pass"


def test_antipode_on_generator_sl2():
    # m(S x id) D(e) = -k e + k e = 0
    p = catalog.build("uq:sl2")
    rep = hopf.check_antipode(p)
    assert statuses(rep)["m(S x id)D(e[a])"] == "pass"


def test_group_like_coassociative():
    p = catalog.build("uq:c2")
    rs = system_for(p)
    delta = hopf.coproduct_evaluator(p, rs)
    k = NcPoly.gen(p.alphabet, "k[a]")
    assert delta(k) == TensorPoly.pure(k, k)


def test_counit_of_cartan():
    p = catalog.build("drinfeldian:osp12")
    k = NcPoly.gen(p.alphabet, "k[d]")
    assert hopf.counit_of(p, k) == ONE
    pc = catalog.build("classical:c2")
    assert hopf.counit_of(pc, NcPoly.gen(pc.alphabet, "h[a]")).is_zero()


def test_report_serialization():
    rep = hopf.check_counit(catalog.build("uq:sl2"))
    d = rep.as_dict()
    assert d["passed"] and "seconds" not in d
