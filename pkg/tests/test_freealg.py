import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhopf import catalog, hopf
from qhopf.cli.expr import elaborate
from qhopf.errors import UnknownGenerator
from qhopf.freealg import NcPoly, TensorPoly, ad_q_power, apply_hom, q_commutator
from qhopf.scalars import ONE, q_power


def alpha(base, family="uq"):
    return catalog.build(f"{family}:{base}").alphabet


def ex(base, text, family="uq"):
    p = catalog.build(f"{family}:{base}")
    x = elaborate(text, p.alphabet, p.meta["composites"])
    return x if isinstance(x, NcPoly) else NcPoly.scalar(p.alphabet, x)


def test_letter_crosses_cartan():
    a = alpha("sl2")
    e, k = NcPoly.gen(a, "e[a]"), NcPoly.gen(a, "k[a]")
    assert e * k == (k * e).scale(q_power(-2))
    assert str(e * k) == "q^-2*k[a]*e[a]"


def test_identity_and_inverse():
    a = alpha("sl2")
    e = NcPoly.gen(a, "e[a]")
    assert NcPoly.one(a) * e == e
    assert NcPoly.gen(a, "k[a]") * NcPoly.gen(a, "k[a]", -1) == NcPoly.one(a)


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        NcPoly.gen(alpha("sl2"), "e[b]")


def test_q_commutator_c2():
    assert str(ex("c2", "qc(e[a], e[b])")) == "e[a]*e[b] - q^-2*e[b]*e[a]"
    one = NcPoly.one(alpha("c2"))
    assert q_commutator(ex("c2", "e[a]"), one).is_zero()


def test_q_commutator_odd():
    # both factors odd: the bracket is an anticommutator-type sum
    x = ex("osp12", "qc(e[a], e[a])")
    assert x == ex("osp12", "e[a]^2").scale(ONE + q_power(1))


def test_ad_powers():
    e, f = ex("c2", "e[b]"), ex("c2", "e[a]")
    assert ad_q_power(e, 0, f) == f
    assert ad_q_power(e, 1, f) == q_commutator(e, f)
    nested = q_commutator(e, q_commutator(e, q_commutator(e, f)))
    assert ad_q_power(e, 3, f) == nested


def test_ad_power_expansion_c2():
    # (ad_q e_b)^3 e_a expanded by hand: weights give q-factors q^{-(b, a + j b)}
    x = ad_q_power(ex("c2", "e[b]"), 3, ex("c2", "e[a]"))
    assert str(x) == (
        "-e[a]*e[b]^3 + (q^2 + 1 + q^-2)*e[b]*e[a]*e[b]^2"
        " + (-q^2 - 1 - q^-2)*e[b]^2*e[a]*e[b] + e[b]^3*e[a]"
    )


def _tensor(base, left, right):
    return TensorPoly.pure(ex(base, left), ex(base, right))


def test_tensor_signs():
    # Koszul sign for two odd factors
    assert _tensor("osp12", "1", "e[a]") * _tensor("osp12", "e[a]", "1") == -_tensor("osp12", "e[a]", "e[a]")
    assert _tensor("c2", "1", "e[a]") * _tensor("c2", "e[b]", "1") == _tensor("c2", "e[b]", "e[a]")
    assert _tensor("sl2", "k^-1[a]", "e[a]") * _tensor("sl2", "e[a]", "1") == _tensor("sl2", "k^-1[a]*e[a]", "e[a]")


def test_coproduct_images():
    p = catalog.build("uq:sl2")
    images, _ = hopf.coproduct_images(p)
    k = ex("sl2", "k[a]")
    assert apply_hom(images, k) == TensorPoly.pure(k, k)
    assert apply_hom(images, NcPoly.one(p.alphabet)) == TensorPoly.one(p.alphabet)
    # (e (x) 1 + k^-1 (x) e)(f (x) k + 1 (x) f), unreduced
    assert len(apply_hom(images, ex("sl2", "e[a]*e[-a]")).terms) == 4


def test_antipode_images():
    from qhopf.rewrite import system_for

    p = catalog.build("uq:sl2")
    S = hopf.antipode_evaluator(p, system_for(p))
    assert S(ex("sl2", "k[a]")) == ex("sl2", "k^-1[a]")
    assert S(ex("sl2", "e[a]")) == p.hopf.antipode["e[a]"]
    po = catalog.build("uq:osp12")
    So = hopf.antipode_evaluator(po, system_for(po))
    s = po.hopf.antipode["e[a]"]
    assert So(ex("osp12", "e[a]^2")) == -(s * s)


words = st.lists(st.sampled_from(["e[a]", "e[b]", "e[-a]", "e[-b]", "k[a]", "k^-1[b]"]), min_size=1, max_size=4)


def _word(ws):
    a = alpha("c2")
    out = NcPoly.one(a)
    for w in ws:
        out = out * ex("c2", w)
    return out


@given(words, words, words)
def test_associativity(x, y, z):
    a, b, c = _word(x), _word(y), _word(z)
    assert (a * b) * c == a * (b * c)


@given(words, words)
def test_distributive(x, y):
    a, b = _word(x), _word(y)
    assert (a + b) * (a - b) == a * a - a * b + b * a - b * b
