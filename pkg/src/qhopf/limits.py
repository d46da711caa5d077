"""The two degenerations: eta -> 0 and q -> 1, plus presentation comparison.

The q -> 1 limit expands every term ``c * k^m * word`` as a Laurent series
in ``t = q - 1``: ``k^m = q^H = sum_j binomial(H, j) t^j`` with
``H = sum_i m_i h_i`` (one set of ``h`` symbols per tensor factor).  Poles
of ``c`` must cancel across terms; the order-0 part is the limit.
"""
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import scalars
from .catalog import (
    Ctx,
    _finite_relations,
    build_uq_loop,
    build_yangian_expected,
    make_alphabet,
)
from .errors import SingularAtQ1, UnsupportedFamily
from .freealg import NcPoly, TensorPoly
from .hopf import HopfStructure, Item, VerificationReport, judge
from .rewrite import Presentation, complete, orient, system_for
from .scalars import ONE, ZERO, laurent_coefficients

# -- transport between alphabets ----------------------------------------------------


def letter_map(source, target, rename=None):
    """Index map from ``source`` letters to ``target`` letters by (renamed) name."""
    rename = rename or {}
    out = []
    for g in source.letters:
        out.append(target.letter_index(rename.get(g.name, g.name)))
    return tuple(out)


def transport(x, target, rename=None, coefficient=None):
    """Move an NcPoly or TensorPoly to ``target``, letters by name.

    The source Cartan generators must be a prefix of the target's (so
    ``U_q(g)`` embeds in the loop algebra).
    """
    src = x.alphabet
    lm = letter_map(src, target, rename)
    if [g.name for g in src.cartan] != [g.name for g in target.cartan[:src.nc]]:
        raise UnsupportedFamily("Cartan layouts differ")
    pad = (0,) * (target.nc - src.nc)
    f = coefficient or (lambda c: c)

    def mono(m):
        return (tuple(m[0]) + pad, tuple(lm[i] for i in m[1]))

    out = {}
    for ms, c in x.terms.items():
        c = f(c)
        if c.is_zero():
            continue
        key = mono(ms) if isinstance(x, NcPoly) else tuple(mono(m) for m in ms)
        out[key] = c
    if isinstance(x, NcPoly):
        return NcPoly(target, out)
    return TensorPoly(target, x.rank, out)


def transport_presentation(p, alphabet, label, rename=None, coefficient=None, meta=None):
    rels = [(n, transport(r, alphabet, rename, coefficient)) for n, r in p.relations]
    rename = rename or {}
    h = p.hopf
    hopf = None
    if h is not None:
        hopf = HopfStructure(
            {rename.get(k, k): transport(v, alphabet, rename, coefficient) for k, v in h.coproduct.items()},
            {rename.get(k, k): transport(v, alphabet, rename, coefficient) for k, v in h.antipode.items()},
            {rename.get(k, k): (coefficient(scalars.Scalar.coerce(v)) if coefficient else v)
             for k, v in h.counit.items()},
        )
    return Presentation(label, p.datum, alphabet, rels, hopf, dict(meta or p.meta))


# -- eta -> 0 ---------------------------------------------------------------------------


def specialize_eta_zero(p):
    """Set eta = 0 in every coefficient and rename ``xi`` to ``e`` (the loop generator)."""
    fam = p.meta.get("family", "")
    if not fam.startswith("drinfeldian"):
        raise UnsupportedFamily(f"eta specialization needs a Drinfeldian, got {p.label}")
    target = build_uq_loop(p.meta["base"]).alphabet
    rename = {p.meta["affine"]: target.letters[-1].name}
    meta = dict(p.meta, family="uq_loop", affine=target.letters[-1].name, specialized_from=p.label)
    return transport_presentation(
        p, target, f"eta0({p.label})", rename, lambda c: c.subs_eta_zero(), meta
    )


# -- comparisons --------------------------------------------------------------------------


def _nf_any(rs, x):
    return rs.normal_form(x) if isinstance(x, NcPoly) else rs.normal_form_tensor(x)


def compare_presentations(p1, p2, bound=10, check="compare", rs1=None, rs2=None, hopf=True):
    """Relation-by-relation and Hopf-image comparison by mutual reduction.

    For each shared relation name the difference must reduce to zero in both
    systems; relations present on one side only must reduce to zero in the
    other system.  Hopf images are compared in both systems as well.
    """
    start = time.perf_counter()
    rs1 = rs1 or system_for(p1, min(bound, 8))
    rs2 = rs2 or system_for(p2, min(bound, 8))
    rep = VerificationReport(check, f"{p1.label} vs {p2.label}")
    r1, r2 = dict(p1.relations), dict(p2.relations)

    def both(name, x):
        a = judge(rs1, name, x, _nf_any(rs1, x), bound)
        if a.status != "pass":
            a.name = f"{name} in {p1.label}"
            return a
        b = judge(rs2, name, x, _nf_any(rs2, x), bound)
        if b.status != "pass":
            b.name = f"{name} in {p2.label}"
        return b

    for name in r1:
        if name in r2:
            rep.items.append(both(name, r1[name] - r2[name]))
        else:
            x = r1[name]
            rep.items.append(judge(rs2, f"{name} (only in {p1.label})", x, rs2.normal_form(x), bound))
    for name in r2:
        if name not in r1:
            x = r2[name]
            rep.items.append(judge(rs1, f"{name} (only in {p2.label})", x, rs1.normal_form(x), bound))
    if hopf and p1.hopf is not None and p2.hopf is not None:
        for kind in ("coproduct", "antipode"):
            m1, m2 = getattr(p1.hopf, kind), getattr(p2.hopf, kind)
            for g in sorted(set(m1) | set(m2)):
                if g not in m1 or g not in m2:
                    rep.items.append(Item(f"{kind}({g})", "fail", "missing on one side"))
                    continue
                rep.items.append(both(f"{kind}({g})", m1[g] - m2[g]))
        for g in sorted(set(p1.hopf.counit) | set(p2.hopf.counit)):
            e1 = scalars.Scalar.coerce(p1.hopf.counit.get(g, ZERO))
            e2 = scalars.Scalar.coerce(p2.hopf.counit.get(g, ZERO))
            ok = e1 == e2
            rep.items.append(Item(f"counit({g})", "pass" if ok else "fail", "" if ok else f"{e1} != {e2}"))
    rep.seconds = time.perf_counter() - start
    return rep


def eta_zero_report(p, bound=10):
    """``specialize_eta_zero(p)`` against ``build_uq_loop``."""
    s = specialize_eta_zero(p)
    return compare_presentations(s, build_uq_loop(p.meta["base"]), bound, check="eta_zero_limit")


def generic_vs_explicit(base, bound=10, errata=True):
    from .catalog import build_drinfeldian_explicit, build_drinfeldian_generic

    g = build_drinfeldian_generic(base)
    e = build_drinfeldian_explicit(base, errata=errata)
    return compare_presentations(g, e, bound, check="generic_vs_explicit")


# -- q -> 1 -----------------------------------------------------------------------------------


def classical_alphabet(p):
    """Classical alphabet matching ``p``'s letters (``k`` replaced by ``h``)."""
    a = p.alphabet
    affine = None
    if a.nc > p.datum.rank:
        affine = a.letters[-1].name.split("[")[0]
    target = make_alphabet(p.datum, affine=affine, classical=True)
    if [g.name for g in target.letters] != [g.name for g in a.letters]:
        raise UnsupportedFamily("no classical counterpart for this alphabet")
    return target


def _binomial_cartan(ctx, vec, j, cache):
    """``binomial(H, j)`` for ``H = sum vec_i h_i`` as a Cartan-only classical element."""
    key = (vec, j)
    hit = cache.get(key)
    if hit is not None:
        return hit
    A = ctx.A
    H = NcPoly.zero(A)
    for i, m in enumerate(vec):
        if m:
            e = [0] * A.nc
            e[i] = 1
            H = H + NcPoly.monomial(A, cartan=tuple(e)).scale(m)
    out = ctx.one
    for r in range(j):
        out = out * (H - ctx.c(r))
    out = out.scale(Fraction(1, _factorial(j)))
    cache[key] = out
    return out


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


@dataclass
class LimitResult:
    value: object  # NcPoly or TensorPoly over the classical alphabet
    residues: dict = field(default_factory=dict)  # negative order -> nonzero remainder

    @property
    def regular(self):
        return not self.residues


def _expand(x, target, cache):
    """Laurent expansion of ``x`` in ``t = q - 1`` with ``k = q^h``; returns per-order elements."""
    ctx = Ctx(target)
    tensor = isinstance(x, TensorPoly)
    rank = x.rank if tensor else 1
    orders = {}
    for ms, c in x.terms.items():
        monos = ms if tensor else (ms,)
        low, coeffs = laurent_coefficients(c, 0)
        for idx, cn in enumerate(coeffs):
            if cn.is_zero():
                continue
            n = low + idx
            # binomial degrees j_1 + ... + j_rank = J reach every order n + J <= 0
            for J in range(0, -n + 1):
                for split in _compositions(J, rank):
                    factors = []
                    for (cartan, tail), j in zip(monos, split):
                        b = _binomial_cartan(ctx, cartan, j, cache)
                        factors.append(b * NcPoly(target, {(target.zero_cartan, tail): ONE}))
                    if tensor:
                        piece = TensorPoly.pure(*factors, coeff=cn)
                    else:
                        piece = factors[0].scale(cn)
                    order = n + J
                    cur = orders.get(order)
                    orders[order] = piece if cur is None else cur + piece
    return orders


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def classical_limit(x, target, cache=None):
    """q -> 1 limit of one element (NcPoly or TensorPoly)."""
    cache = {} if cache is None else cache
    orders = _expand(x, target, cache)
    residues = {o: v for o, v in orders.items() if o < 0 and not v.is_zero()}
    zero = NcPoly.zero(target) if isinstance(x, NcPoly) else TensorPoly.zero(target, x.rank)
    return LimitResult(orders.get(0, zero), residues)


def classical_limit_q1(p, strict=True):
    """Classical presentation obtained as the q -> 1 limit of ``p`` (over eta-polynomials)."""
    target = classical_alphabet(p)
    cache = {}

    def lim(name, x):
        r = classical_limit(x, target, cache)
        if strict and not r.regular:
            order = min(r.residues)
            raise SingularAtQ1(f"{name}: pole of order {-order} survives: {r.residues[order]}")
        return r.value

    rels = [(n, lim(n, r)) for n, r in p.relations]
    hopf = None
    if p.hopf is not None:
        hopf = HopfStructure(
            {g: lim(f"coproduct({g})", v) for g, v in p.hopf.coproduct.items()},
            {g: lim(f"antipode({g})", v) for g, v in p.hopf.antipode.items()},
            {g: scalars.limit_q1(scalars.Scalar.coerce(v)) for g, v in p.hopf.counit.items()},
        )
    meta = dict(p.meta, classical_from=p.label)
    return Presentation(f"q1({p.label})", p.datum, target, rels, hopf, meta)


def check_nonsingular_q1(x, target=None):
    """``(ok, offending)`` where ``offending`` lists surviving negative-order parts."""
    if target is None:
        from .catalog import make_alphabet as _mk

        src = x.alphabet
        affine = src.letters[-1].name.split("[")[0] if src.nc > src.datum.rank else None
        target = _mk(src.datum, affine=affine, classical=True)
    r = classical_limit(x, target)
    offending = [f"order {o}: {v}" for o, v in sorted(r.residues.items())]
    return r.regular, offending


@lru_cache(maxsize=None)
def _finite_system(alphabet):
    """Completed system of the finite (U(g) or U_q(g)) relations over ``alphabet``."""
    ctx = Ctx(alphabet)
    p = Presentation("finite", alphabet.datum, alphabet, _finite_relations(ctx))
    rs = orient(p)
    complete(rs, 8)
    return rs


def _structural_action(p):
    """Report items comparing printed [h_i, xi] coefficients with -(alpha_i, theta)."""
    items = []
    claims = p.meta.get("cartan_action") or {}
    for root, (printed, structural) in sorted(claims.items()):
        ok = printed == structural
        items.append(Item(f"cartan_action[{root}]", "pass" if ok else "fail",
                          "" if ok else f"printed {printed}, structural {structural}"))
    return items


def yangian_report(p, expected=None, bound=10, modulo="finite"):
    """``classical_limit_q1(p)`` against the expected Yangian.

    ``modulo="finite"`` compares each relation modulo the U(g) relations only
    (coefficient-exact).  ``modulo="others"`` first reduces each relation of
    ``p`` by its other relations and compares modulo the other expected
    relations; this is the form in which generic right-hand sides are regular.
    """
    start = time.perf_counter()
    base = p.meta["base"]
    expected = expected or build_yangian_expected(base)
    rep = VerificationReport("q1_limit", f"{p.label} vs {expected.label}")
    target = expected.alphabet
    rs = _finite_system(target)
    cache = {}
    got = {}
    for name, rel in p.relations:
        if name.startswith("conjugation["):
            continue
        if modulo == "others":
            rel = reduced_relation(p, name)
        r = classical_limit(rel, target, cache)
        if not r.regular:
            rep.items.append(Item(name, "fail", f"singular at q=1: {r.residues[min(r.residues)]}"))
            continue
        got[name] = r.value
    exp = dict(expected.relations)
    for name, val in got.items():
        if name not in exp:
            rep.items.append(Item(name, "fail", "relation missing from the expected presentation"))
            continue
        rs_cmp = rs if modulo == "finite" else _others_system(expected, name, val.max_degree())
        diff = rs_cmp.normal_form(val - exp[name])
        ok = diff.is_zero()
        rep.items.append(Item(name, "pass" if ok else "fail", "" if ok else str(diff), val.max_degree()))
    for name in exp:
        if name not in got and not name.startswith("cartan_action["):
            rep.items.append(Item(name, "fail", "expected relation has no counterpart"))
    for kind in ("coproduct", "antipode"):
        mp, me = getattr(p.hopf, kind), getattr(expected.hopf, kind)
        for g in sorted(me):
            r = classical_limit(mp[g], target, cache)
            if not r.regular:
                rep.items.append(Item(f"{kind}({g})", "fail", "singular at q=1"))
                continue
            d = _nf_any(rs, r.value - me[g])
            ok = d.is_zero()
            rep.items.append(Item(f"{kind}({g})", "pass" if ok else "fail", "" if ok else str(d)))
    rep.items.extend(_structural_action(expected))
    rep.seconds = time.perf_counter() - start
    return rep


def _others_system(p, name, degree):
    others = Presentation("others", p.datum, p.alphabet, [r for r in p.relations if r[0] != name])
    rs = orient(others)
    complete(rs, min(8, degree))
    return rs


def reduced_relation(p, name):
    """Relation ``name`` reduced by the completed system of the other relations."""
    rel = p.relation(name)
    return _others_system(p, name, rel.max_degree()).normal_form(rel)


def nonsingularity_report(p):
    """Every relation and Hopf image of ``p`` is regular at q = 1 (after k-expansion).

    A relation is only defined modulo the others, so each one is first
    reduced by the completed system of the remaining relations.
    """
    start = time.perf_counter()
    rep = VerificationReport("nonsingular_q1", p.label)
    target = classical_alphabet(p)
    items = [(name, reduced_relation(p, name)) for name, _ in p.relations]
    if p.hopf is not None:
        items += [(f"coproduct({g})", v) for g, v in sorted(p.hopf.coproduct.items())]
        items += [(f"antipode({g})", v) for g, v in sorted(p.hopf.antipode.items())]
    for name, x in items:
        ok, bad = check_nonsingular_q1(x, target)
        rep.items.append(Item(name, "pass" if ok else "fail", "; ".join(bad)))
    rep.seconds = time.perf_counter() - start
    return rep
