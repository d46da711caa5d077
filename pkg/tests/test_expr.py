import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhopf import catalog
from qhopf.cli.expr import elaborate, parse, tokenize
from qhopf.errors import ExprSyntaxError, UnknownAtom
from qhopf.scalars import q_bracket
from randexpr import sample


def ev(alg, text):
    p = catalog.build(alg)
    return elaborate(text, p.alphabet, p.meta["composites"])


def test_qb():
    assert ev("uq:sl2", "qb(3)") == q_bracket(3)
    assert str(ev("uq:sl2", "qb(3)")) == "q^2 + 1 + q^-2"


def test_mixed_relation_text():
    p = catalog.build("uq:sl2")
    rel = dict(p.relations)["mixed[a,-a]"]
    assert ev("uq:sl2", "e[a]*e[-a] - e[-a]*e[a] - (k[a] - k^-1[a])/(q - q^-1)") == rel


def test_qc_uses_weight_pairing():
    assert ev("uq:sl2", "qc(e[a], e[-a])") == ev("uq:sl2", "e[a]*e[-a] - q^-2*e[-a]*e[a]")


@pytest.mark.parametrize("text, column", [
    ("e[a] *", 7), ("e[a] + + e[b]", 8), ("(e[a]", 6), ("q^(1/0)", 7), ("e[a] $ e[b]", 6), ("qc(e[a])", 8),
])
def test_syntax_error_column(text, column):
    with pytest.raises(ExprSyntaxError) as err:
        parse(text)
    assert err.value.column == column


@pytest.mark.parametrize("text", ["e[c]", "xi[d-a-2b]", "h[a]", "zeta", "e[-a-b-c]"])
def test_unknown_atoms(text):
    with pytest.raises(UnknownAtom):
        ev("uq:c2", text)


def test_composite_generator():
    assert ev("uq:c2", "e[-a-b]") == ev("uq:c2", "qc(e[-a], e[-b])")


def test_cartan_forms():
    assert ev("uq:c2", "k^-1[a]*k[a]") == ev("uq:c2", "1")
    assert ev("uq:c2", "k^2[a+b]") == ev("uq:c2", "k^2[a]*k^2[b]")
    assert ev("classical:c2", "h[a+b]") == ev("classical:c2", "h[a] + h[b]")


def test_ad_and_powers():
    assert ev("uq:c2", "ad(e[b], 2, e[a])") == ev("uq:c2", "qc(e[b], qc(e[b], e[a]))")
    assert ev("uq:c2", "e[a]^3") == ev("uq:c2", "e[a]*e[a]*e[a]")
    assert ev("uq:sl2", "q^(1/2)*q^(1/2)") == ev("uq:sl2", "q")


def test_tensor():
    t = ev("uq:sl2", "(e[a] (x) 1) + (k^-1[a] (x) e[a])")
    assert str(t) == "(k^-1[a] (x) e[a]) + (e[a] (x) 1)"


def test_tokens_have_columns():
    toks = tokenize("qc(e[a], 2)")
    assert [t[2] for t in toks] == [1, 3, 4, 5, 8, 10, 11, 12]


@pytest.mark.parametrize("alg", ["uq:g2", "drinfeldian:c2", "yangian:osp12", "drinfeldian_explicit:g2"])
def test_print_parse_roundtrip(alg):
    p = catalog.build(alg)
    for x in sample(p.alphabet, 60, seed=11):
        text = str(x)
        y = elaborate(text, p.alphabet)
        assert y == x
        assert str(y) == text


@pytest.mark.parametrize("alg", ["drinfeldian_explicit:c2", "yangian:g2"])
def test_catalog_text_roundtrip(alg):
    p = catalog.build(alg)
    for _, rel in p.relations:
        assert elaborate(str(rel), p.alphabet) == rel
    for v in p.hopf.coproduct.values():
        assert elaborate(str(v), p.alphabet) == v


@given(st.integers(-20, 20), st.integers(1, 6))
def test_rational_exponent_roundtrip(n, d):
    from fractions import Fraction

    from qhopf.errors import OffLattice

    p = catalog.build("uq:sl2")
    try:
        x = elaborate(f"q^({n}/{d})", p.alphabet)
    except OffLattice:
        assert 6 % Fraction(n, d).denominator
        return
    assert elaborate(str(x), p.alphabet) == x
