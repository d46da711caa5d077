"""Hopf data and the axiom verifiers (coproduct, counit, antipode, coassociativity).

Equality in quotient tensor powers is tested by factor-wise normal forms.
A zero normal form is always a sound "pass"; a nonzero one is reported as a
failure only when the system is confluent up to the element's degree,
otherwise the item is marked inconclusive.
"""
import time
from dataclasses import dataclass, field

from .errors import MissingImage
from .freealg import Images, NcPoly, TensorPoly, hom_evaluator
from .rewrite import system_for
from .scalars import ONE, ZERO, Scalar


@dataclass
class HopfStructure:
    """Images of the non-Cartan generators; ``k`` is group-like and ``h`` primitive."""

    coproduct: dict
    antipode: dict
    counit: dict

    def copy(self):
        return HopfStructure(dict(self.coproduct), dict(self.antipode), dict(self.counit))


@dataclass
class Item:
    name: str
    status: str  # "pass", "fail" or "inconclusive"
    witness: str = ""
    degree: int = 0


@dataclass
class VerificationReport:
    check: str
    algebra: str
    items: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return all(i.status == "pass" for i in self.items)

    @property
    def failed(self):
        return any(i.status == "fail" for i in self.items)

    @property
    def inconclusive(self):
        return any(i.status == "inconclusive" for i in self.items)

    def witnesses(self):
        return [(i.name, i.witness) for i in self.items if i.status == "fail"]

    def as_dict(self):
        return {
            "check": self.check,
            "algebra": self.algebra,
            "passed": self.passed,
            "items": [
                {"name": i.name, "status": i.status, "degree": i.degree, "witness": i.witness}
                for i in self.items
            ],
        }

    def summary(self):
        n_pass = sum(i.status == "pass" for i in self.items)
        return f"{self.check} on {self.algebra}: {n_pass}/{len(self.items)} pass"


def _degree(x):
    return x.max_degree()


def judge(rs, name, original, reduced, bound=None):
    """Turn a reduced element into a report item."""
    deg = _degree(original)
    if reduced.is_zero():
        return Item(name, "pass", "", deg)
    if bound is not None and rs.completed_to < deg <= bound:
        from .rewrite import complete

        complete(rs, deg)
        reduced = rs.reduce(original)
        if reduced.is_zero():
            return Item(name, "pass", "", deg)
    if deg > rs.completed_to or rs.unresolved:
        # not confluent at this degree: a nonzero normal form certifies nothing
        return Item(name, "inconclusive", str(reduced), deg)
    return Item(name, "fail", str(reduced), deg)


# -- evaluators ---------------------------------------------------------------


def coproduct_images(p):
    a = p.alphabet
    h = p.hopf
    one1 = NcPoly.one(a)
    cartan = {}
    for g in a.cartan:
        k = NcPoly.gen(a, g.name)
        if a.classical:
            cartan[g.name] = TensorPoly.pure(k, one1) + TensorPoly.pure(one1, k)
        else:
            cartan[g.name] = TensorPoly.pure(k, k)
    letters = {}
    for g in a.letters:
        if g.name not in h.coproduct:
            raise MissingImage(f"no coproduct image for {g.name}")
        letters[g.name] = h.coproduct[g.name]
    return Images(letters, cartan, TensorPoly.one(a, 2)), one1


def antipode_images(p):
    a = p.alphabet
    h = p.hopf
    if a.classical:
        cartan = {g.name: -NcPoly.gen(a, g.name) for g in a.cartan}
    else:
        cartan = {g.name: NcPoly.gen(a, g.name, -1) for g in a.cartan}
    letters = {}
    for g in a.letters:
        if g.name not in h.antipode:
            raise MissingImage(f"no antipode image for {g.name}")
        letters[g.name] = h.antipode[g.name]
    return Images(letters, cartan, NcPoly.one(a))


def coproduct_evaluator(p, rs):
    images, _ = coproduct_images(p)
    return hom_evaluator(p.alphabet, images, reduce=rs.normal_form_tensor)


def antipode_evaluator(p, rs):
    return hom_evaluator(p.alphabet, antipode_images(p), reduce=rs.normal_form, anti=True)


def counit_of(p, x):
    """Counit extended multiplicatively (``k`` maps to 1, ``h`` to 0)."""
    a = p.alphabet
    eps = p.hopf.counit
    total = ZERO
    for (cartan, tail), c in x.terms.items():
        if a.classical and any(cartan):
            continue
        val = c
        for i in tail:
            val = val * Scalar.coerce(eps.get(a.letters[i].name, ZERO))
            if val.is_zero():
                break
        total = total + val
    return total


def _counit_factor(p, t, position):
    """Apply the counit to one factor of a rank-2 tensor."""
    a = p.alphabet
    out = NcPoly.zero(a)
    for ms, c in t.terms.items():
        e = counit_of(p, NcPoly(a, {ms[position]: ONE}))
        if e.is_zero():
            continue
        keep = ms[1 - position]
        out = out + NcPoly(a, {keep: c * e})
    return out


# -- checks ---------------------------------------------------------------------


def _system(p, rs, bound):
    return rs if rs is not None else system_for(p, bound)


def check_delta_respects_relations(p, bound=10, rs=None):
    start = time.perf_counter()
    rs = _system(p, rs, min(bound, 8))
    ev = coproduct_evaluator(p, rs)
    rep = VerificationReport("delta_respects_relations", p.label)
    for name, rel in p.relations:
        img = ev(rel)
        red = rs.normal_form_tensor(img)
        rep.items.append(judge(rs, name, img, red, bound))
    rep.seconds = time.perf_counter() - start
    return rep


def check_counit(p, rs=None, bound=10):
    start = time.perf_counter()
    rs = _system(p, rs, min(bound, 8))
    a = p.alphabet
    rep = VerificationReport("counit", p.label)
    for name, rel in p.relations:
        e = counit_of(p, rel)
        rep.items.append(Item(f"eps({name})", "pass" if e.is_zero() else "fail", "" if e.is_zero() else str(e)))
    images, _ = coproduct_images(p)
    for g in list(a.cartan) + list(a.letters):
        gen = NcPoly.gen(a, g.name)
        d = images.cartan[g.name] if g.is_cartan else images.letters[g.name]
        for pos, label in ((0, "(eps x id)"), (1, "(id x eps)")):
            diff = rs.normal_form(_counit_factor(p, d, pos) - gen)
            rep.items.append(judge(rs, f"{label}D({g.name})", gen, diff))
    rep.seconds = time.perf_counter() - start
    return rep


def check_antipode(p, bound=10, rs=None):
    start = time.perf_counter()
    rs = _system(p, rs, min(bound, 8))
    a = p.alphabet
    sev = antipode_evaluator(p, rs)
    rep = VerificationReport("antipode", p.label)
    for name, rel in p.relations:
        img = sev(rel)
        rep.items.append(judge(rs, f"S({name})", img, rs.normal_form(img), bound))
    images, _ = coproduct_images(p)
    for g in list(a.cartan) + list(a.letters):
        d = images.cartan[g.name] if g.is_cartan else images.letters[g.name]
        gen = NcPoly.gen(a, g.name)
        eps = counit_of(p, gen)
        for side in ("left", "right"):
            acc = NcPoly.zero(a)
            for (m1, m2), c in d.terms.items():
                x1 = NcPoly(a, {m1: ONE})
                x2 = NcPoly(a, {m2: ONE})
                if side == "left":
                    acc = acc + (sev(x1) * x2).scale(c)
                else:
                    acc = acc + (x1 * sev(x2)).scale(c)
            diff = acc - NcPoly.scalar(a, eps)
            rep.items.append(judge(rs, f"m(S x id)D({g.name})" if side == "left" else f"m(id x S)D({g.name})",
                                   acc, rs.normal_form(diff), bound))
    rep.seconds = time.perf_counter() - start
    return rep


def _delta_on_factor(ev, rs, t, position):
    """``(D x id)`` or ``(id x D)`` applied to a rank-2 tensor."""
    a = t.alphabet
    out = {}
    cache = {}
    for (m1, m2), c in t.terms.items():
        m = (m1, m2)[position]
        d = cache.get(m)
        if d is None:
            d = ev(NcPoly(a, {m: ONE}))
            cache[m] = d
        for (n1, n2), x in d.terms.items():
            key = (n1, n2, m2) if position == 0 else (m1, n1, n2)
            y = out.get(key)
            v = x * c if y is None else y + x * c
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
    return TensorPoly(a, 3, out)


def check_coassociativity(p, bound=10, rs=None):
    start = time.perf_counter()
    rs = _system(p, rs, min(bound, 8))
    a = p.alphabet
    ev = coproduct_evaluator(p, rs)
    images, _ = coproduct_images(p)
    rep = VerificationReport("coassociativity", p.label)
    for g in list(a.cartan) + list(a.letters):
        d = images.cartan[g.name] if g.is_cartan else images.letters[g.name]
        d = rs.normal_form_tensor(d)
        lhs = _delta_on_factor(ev, rs, d, 0)
        rhs = _delta_on_factor(ev, rs, d, 1)
        diff = rs.normal_form_tensor(lhs - rhs)
        rep.items.append(judge(rs, f"coassoc({g.name})", lhs, diff, bound))
    rep.seconds = time.perf_counter() - start
    return rep


def hopf_suite(p, bound=10, rs=None):
    rs = _system(p, rs, min(bound, 8))
    return [
        check_delta_respects_relations(p, bound, rs),
        check_counit(p, rs, bound),
        check_antipode(p, bound, rs),
        check_coassociativity(p, bound, rs),
    ]
