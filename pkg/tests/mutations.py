"""Single-term mutations of a presentation, for negative controls."""
import random
from dataclasses import replace

from qhopf import catalog, hopf, limits, scalars
from qhopf.freealg import NcPoly, TensorPoly
from qhopf.hopf import HopfStructure, judge

OPERATIONS = ("double", "negate", "drop", "times_q")


def _mutate_terms(x, key, op):
    terms = dict(x.terms)
    c = terms[key]
    if op == "double":
        terms[key] = c * 2
    elif op == "negate":
        terms[key] = -c
    elif op == "times_q":
        terms[key] = c * scalars.q()
    else:
        del terms[key]
    if isinstance(x, TensorPoly):
        return TensorPoly(x.alphabet, x.rank, terms)
    return NcPoly(x.alphabet, terms)


def targets(p):
    """Every (kind, name) whose value can be mutated."""
    out = [("relation", n) for n, _ in p.relations]
    out += [("coproduct", g) for g in sorted(p.hopf.coproduct)]
    out += [("antipode", g) for g in sorted(p.hopf.antipode)]
    return out


def _value(p, kind, name):
    if kind == "relation":
        return p.relation(name)
    return getattr(p.hopf, kind)[name]


def apply(p, kind, name, key, op):
    """Presentation with one term of one relation or Hopf image changed."""
    new = _mutate_terms(_value(p, kind, name), key, op)
    if kind == "relation":
        rels = [(n, new if n == name else r) for n, r in p.relations]
        return replace(p, relations=rels, label=p.label + "~mut")
    h = HopfStructure(dict(p.hopf.coproduct), dict(p.hopf.antipode), dict(p.hopf.counit))
    getattr(h, kind)[name] = new
    return replace(p, hopf=h, label=p.label + "~mut")


def mutations(p, count, seed=0):
    """``count`` distinct mutations ``(kind, name, key, op)``, deterministic in ``seed``."""
    rng = random.Random(seed)
    pool = []
    for kind, name in targets(p):
        x = _value(p, kind, name)
        keys = sorted(x.terms, key=repr)
        for key in keys:
            for op in OPERATIONS:
                if op == "drop" and len(keys) == 1:
                    continue
                pool.append((kind, name, key, op))
    rng.shuffle(pool)
    # spread over targets: round-robin by target
    by_target = {}
    for change in pool:
        by_target.setdefault(change[:2], []).append(change)
    order = sorted(by_target, key=repr)
    rng.shuffle(order)
    out = []
    while len(out) < count and any(by_target.values()):
        for t in order:
            if by_target[t] and len(out) < count:
                out.append(by_target[t].pop())
    return out


def hopf_detect(mutant, bound=8):
    """First failing item of the Hopf suite on ``mutant``, or None."""
    for rep in hopf.hopf_suite(mutant, bound):
        for item in rep.items:
            if item.status == "fail":
                return rep.check, item
    return None


def reference_for(p):
    """Independently built presentation that ``p`` must agree with."""
    fam, base = p.meta["family"], p.meta["base"]
    if fam == "uq":
        return catalog.build_uq_loop(base)
    if fam == "uq_loop":
        return limits.specialize_eta_zero(catalog.build_drinfeldian_generic(base))
    if fam == "drinfeldian_explicit":
        return catalog.build_drinfeldian_generic(base)
    if fam == "drinfeldian_generic" and base in catalog.EXPLICIT_BASES:
        return catalog.build_drinfeldian_explicit(base)
    raise ValueError(f"no reference for {p.label}")


def reference_detect(p, mutant, ref, rs, bound=None):
    """Compare the mutated item with ``ref`` in its confluent system ``rs``.

    Relations must lie in the reference ideal and Hopf images must agree
    modulo it; the first certified failure ``(check, Item)`` is returned.
    """
    if bound is None:
        # the mutated relation may lie above the default verification degree
        bound = max(10, mutant.max_relation_degree())
    a = rs.alphabet
    ref_co, ref_an = ref.hopf.coproduct, ref.hopf.antipode
    for name, rel in mutant.relations:
        x = limits.transport(rel, a)
        item = judge(rs, name, x, rs.normal_form(x), bound)
        if item.status == "fail":
            return "relation", item
    for kind, table in (("coproduct", ref_co), ("antipode", ref_an)):
        for g, v in sorted(getattr(mutant.hopf, kind).items()):
            x = limits.transport(v, a) - table[g]
            red = rs.normal_form(x) if isinstance(x, NcPoly) else rs.normal_form_tensor(x)
            item = judge(rs, f"{kind}({g})", x, red, bound)
            if item.status == "fail":
                return kind, item
    return None
