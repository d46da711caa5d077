"""Presentations, oriented rewrite systems, normal forms and bounded completion.

Monomials are ordered by weighted degree of the tail (Cartan exponents have
weight 0), ties broken lexicographically on letter precedence.  Rules have
Cartan-free leading words; the Cartan part of a normal monomial rides along
on the left and never takes part in matching.
"""
import heapq
import sys
from dataclasses import dataclass, field

from .errors import (
    AmbiguousLeader,
    CompletionDiverged,
    InsufficientCompletionDegree,
    NonUnitLeadingCoefficient,
    StepBoundExceeded,
)
from .freealg import NcPoly, TensorPoly, _accumulate
from .scalars import ONE

sys.setrecursionlimit(max(sys.getrecursionlimit(), 200000))

DEFAULT_COMPLETION_DEGREE = 8
DEFAULT_REDUCTION_DEGREE = 10
DEFAULT_RULE_CAP = 20000


@dataclass
class Presentation:
    label: str
    datum: object
    alphabet: object
    relations: list  # list of (name, NcPoly)
    hopf: object = None
    meta: dict = field(default_factory=dict)

    @property
    def generators(self):
        return list(self.alphabet.cartan) + list(self.alphabet.letters)

    def relation(self, name):
        for n, r in self.relations:
            if n == name:
                return r
        raise KeyError(name)

    def relation_names(self):
        return [n for n, _ in self.relations]

    def max_relation_degree(self):
        return max((r.max_degree() for _, r in self.relations), default=0)


@dataclass
class CompletionReport:
    label: str
    rules_initial: int
    rules_final: int
    rules_added: int
    overlaps_checked: int
    completed_to: int
    unresolved: int

    def as_dict(self):
        return dict(self.__dict__)


def leading_tail(p):
    a = p.alphabet
    return max((t for (_, t) in p.terms), key=a.order_key)


def _lead_data(p):
    """Leading tail and its list of (cartan, coefficient) pairs."""
    lt = leading_tail(p)
    items = [(c, x) for (c, t), x in p.terms.items() if t == lt]
    return lt, items


class Unorientable(Exception):
    def __init__(self, kind, detail):
        super().__init__(detail)
        self.kind = kind


def monic(p):
    """Scale ``p`` so that its leading monomial is a bare word with coefficient 1."""
    a = p.alphabet
    lt, items = _lead_data(p)
    if len(items) != 1:
        raise Unorientable("ambiguous", "leading word carries a non-monomial Cartan coefficient")
    cartan, c = items[0]
    if any(cartan) and a.classical:
        raise Unorientable("nonunit", "leading word carries a factor h, which is not invertible")
    if any(cartan):
        p = NcPoly.monomial(a, cartan=tuple(-e for e in cartan)) * p
    if c.is_one():
        return lt, p
    if c.is_unit():
        return lt, p.scale(ONE / c)
    if all(c.divides(x) for x in p.terms.values()):
        return lt, NcPoly(a, {m: x / c for m, x in p.terms.items()})
    raise Unorientable("nonunit", f"leading coefficient {c} is not a unit")


class RewriteSystem:
    """Oriented rules ``lead -> rhs`` with a memoized normal form."""

    def __init__(self, alphabet, label=""):
        self.alphabet = alphabet
        self.label = label
        self.rules = {}
        self.origin = {}
        self.completed_to = 0
        self.unresolved = []
        self.report = None
        self._memo = {}
        self._lens = ()
        self._max_len = 0

    # -- rule management ----------------------------------------------------
    def _refresh_lengths(self):
        self._lens = tuple(sorted({len(t) for t in self.rules}))
        self._max_len = max(self._lens, default=0)

    def _invalidate(self, degree):
        deg = self.alphabet.tail_degree
        self._memo = {t: v for t, v in self._memo.items() if deg(t) < degree}

    def add_rule(self, lead, rhs, origin=""):
        self.rules[lead] = rhs
        self.origin[lead] = origin
        self._refresh_lengths()
        self._invalidate(self.alphabet.tail_degree(lead))

    def remove_rule(self, lead):
        rhs = self.rules.pop(lead)
        origin = self.origin.pop(lead)
        self._refresh_lengths()
        self._invalidate(self.alphabet.tail_degree(lead))
        return rhs, origin

    def copy(self):
        rs = RewriteSystem(self.alphabet, self.label)
        rs.rules = dict(self.rules)
        rs.origin = dict(self.origin)
        rs.completed_to = self.completed_to
        rs.unresolved = list(self.unresolved)
        rs.report = self.report
        rs._refresh_lengths()
        return rs

    def rule_list(self):
        a = self.alphabet
        return [(lead, self.rules[lead]) for lead in sorted(self.rules, key=a.order_key)]

    def find_match(self, tail):
        """First (position, length) of a rule lead inside ``tail``, scanning left to right."""
        rules = self.rules
        n = len(tail)
        for i in range(n):
            for L in self._lens:
                if i + L > n:
                    break
                if tail[i:i + L] in rules:
                    return i, L
        return None

    def is_normal_tail(self, tail):
        return self.find_match(tail) is None

    # -- normal forms ---------------------------------------------------------
    def nf_tail(self, tail):
        hit = self._memo.get(tail)
        if hit is not None:
            return hit
        a = self.alphabet
        rules = self.rules
        if not tail:
            out = NcPoly.one(a)
            self._memo[tail] = out
            return out
        if len(tail) == 1:
            if tail in rules:
                out = self.normal_form(rules[tail])
            else:
                out = NcPoly.monomial(a, tail=tail)
            self._memo[tail] = out
            return out
        prefix = self.nf_tail(tail[:-1])
        x = tail[-1]
        acc = {}
        for (cartan, u), coef in prefix.terms.items():
            w = u + (x,)
            hit_len = 0
            for L in self._lens:
                if L > len(w):
                    break
                if w[len(w) - L:] in rules:
                    hit_len = L
                    break
            if not hit_len:
                _accumulate(acc, (((cartan, w), coef),))
                continue
            p = w[:len(w) - hit_len]
            rhs = rules[w[len(w) - hit_len:]]
            piece = NcPoly.monomial(a, cartan=cartan, tail=p, coeff=coef) * rhs
            _accumulate(acc, self._normalize_terms(piece).terms.items())
        out = NcPoly(a, acc)
        self._memo[tail] = out
        return out

    def _normalize_terms(self, p):
        a = self.alphabet
        acc = {}
        for (cartan, t), coef in p.terms.items():
            nf = self.nf_tail(t)
            if not any(cartan):
                items = nf.terms.items()
                if coef.is_one():
                    _accumulate(acc, items)
                else:
                    _accumulate(acc, ((m, x * coef) for m, x in items))
            else:
                _accumulate(
                    acc,
                    (((tuple(e + f for e, f in zip(cartan, c2)), t2), x * coef)
                     for (c2, t2), x in nf.terms.items()),
                )
        return NcPoly(a, acc)

    def normal_form(self, p, step_bound=None):
        """Normal form of an NcPoly (memoized per tail).

        ``step_bound`` is honoured by the traced reducer; the memoized path
        always terminates because every step decreases the monomial order.
        """
        if step_bound is not None:
            return self.traced_normal_form(p, step_bound)[0]
        return self._normalize_terms(p)

    def nf_monomial(self, m):
        cartan, tail = m
        nf = self.nf_tail(tail)
        if not any(cartan):
            return nf
        return NcPoly(self.alphabet, {
            (tuple(e + f for e, f in zip(cartan, c2)), t2): x for (c2, t2), x in nf.terms.items()
        })

    def normal_form_tensor(self, t):
        """Factor-wise normal form in a tensor power."""
        a = self.alphabet
        out = {}
        cache = {}
        for ms, coef in t.terms.items():
            parts = [((), coef)]
            for m in ms:
                nf = cache.get(m)
                if nf is None:
                    nf = self.nf_monomial(m)
                    cache[m] = nf
                if not nf.terms:
                    parts = []
                    break
                parts = [(acc + (n,), c * x) for acc, c in parts for n, x in nf.terms.items()]
            _accumulate(out, parts)
        return TensorPoly(a, t.rank, out)

    def reduce(self, x):
        if isinstance(x, TensorPoly):
            return self.normal_form_tensor(x)
        return self.normal_form(x)

    # -- traced reduction -------------------------------------------------------
    def traced_normal_form(self, p, step_bound=10**6):
        """Leftmost reduction of the largest reducible monomial, recording each step.

        Returns ``(nf, steps)``; each step is ``(coeff, cartan, left, lead, right)``
        meaning ``coeff * k^cartan * left * (lead - rhs) * right`` was subtracted.
        """
        a = self.alphabet
        cur = dict(p.terms)
        steps = []
        key = a.order_key
        while True:
            reducible = [(m, self.find_match(m[1])) for m in cur]
            reducible = [(m, hit) for m, hit in reducible if hit is not None]
            if not reducible:
                break
            if len(steps) >= step_bound:
                raise StepBoundExceeded(f"more than {step_bound} rewrite steps")
            m, (i, L) = max(reducible, key=lambda t: (key(t[0][1]), t[0][0]))
            cartan, tail = m
            coef = cur[m]
            left, lead, right = tail[:i], tail[i:i + L], tail[i + L:]
            diff = _sandwich(a, cartan, left, NcPoly.monomial(a, tail=lead) - self.rules[lead], right)
            _accumulate(cur, ((mm, -x * coef) for mm, x in diff.terms.items()))
            steps.append((coef, cartan, left, lead, right))
        return NcPoly(a, cur), steps

    def replay(self, nf, steps):
        """Reconstruct the reduced input from its normal form and trace."""
        a = self.alphabet
        out = nf
        for coef, cartan, left, lead, right in steps:
            diff = _sandwich(a, cartan, left, NcPoly.monomial(a, tail=lead) - self.rules[lead], right)
            out = out + diff.scale(coef)
        return out

    # -- queries --------------------------------------------------------------
    def is_zero_mod(self, x):
        """``(True, None)`` if ``x`` reduces to 0, else ``(False, witness)``.

        A nonzero normal form is only a certificate of non-membership when the
        system is confluent up to the degree of ``x``.
        """
        nf = self.reduce(x)
        if nf.is_zero():
            return True, None
        if x.max_degree() > self.completed_to:
            raise InsufficientCompletionDegree(
                f"{self.label}: element of degree {x.max_degree()} but system completed to {self.completed_to}"
            )
        return False, nf


def _sandwich(a, cartan, left, middle, right):
    return (
        NcPoly.monomial(a, cartan=cartan, tail=left)
        * middle
        * NcPoly.monomial(a, tail=right)
    )


def orient(p, label=None):
    """Rewrite system from a presentation (inter-reduced, not completed)."""
    rs = RewriteSystem(p.alphabet, label or p.label)
    queue = []
    for name, rel in p.relations:
        if rel.is_zero():
            continue
        queue.append((name, rel))
    _insert_all(rs, queue, strict=True)
    return rs


def _insert_all(rs, queue, strict, unresolved=None, heap=None):
    """Reduce each relation, make it monic and add it; re-queue displaced rules."""
    a = rs.alphabet
    added = []
    pending = list(queue)
    pending.sort(key=lambda t: a.order_key(leading_tail(t[1])) if t[1].terms else (0, ()))
    while pending:
        name, rel = pending.pop(0)
        red = rs.normal_form(rel)
        if red.is_zero():
            continue
        try:
            lead, mon = monic(red)
        except Unorientable as exc:
            if strict:
                if exc.kind == "ambiguous":
                    raise AmbiguousLeader(f"{name}: {exc}") from None
                raise NonUnitLeadingCoefficient(f"{name}: {exc}") from None
            if unresolved is not None:
                unresolved.append((name, red))
            continue
        rhs = NcPoly.monomial(a, tail=lead) - mon
        displaced = [L for L in rs.rules if _contains(L, lead)]
        for L in displaced:
            old_rhs, origin = rs.remove_rule(L)
            pending.append((origin, NcPoly.monomial(a, tail=L) - old_rhs))
        rs.add_rule(lead, rhs, name)
        added.append(lead)
        if displaced:
            pending.sort(key=lambda t: a.order_key(leading_tail(t[1])) if t[1].terms else (0, ()))
    return added


def _contains(word, sub):
    n, k = len(word), len(sub)
    for i in range(n - k + 1):
        if word[i:i + k] == sub:
            return True
    return False


def overlaps(a, l1, l2):
    """Proper overlaps: suffix of ``l1`` equal to prefix of ``l2``."""
    out = []
    for k in range(1, min(len(l1), len(l2))):
        if l1[len(l1) - k:] == l2[:k]:
            out.append(k)
    return out


def complete(rs, max_degree=DEFAULT_COMPLETION_DEGREE, rule_cap=DEFAULT_RULE_CAP):
    """Degree-bounded Bergman completion (in place); returns ``rs``.

    Every overlap ambiguity whose overlap word has weighted degree at most
    ``max_degree`` is resolved or turned into a new rule.  Relations whose
    leading coefficient cannot be normalized are kept in ``rs.unresolved``.
    """
    a = rs.alphabet
    deg = a.tail_degree
    initial = len(rs.rules)
    checked = set()
    heap = []
    counter = 0
    n_checked = 0

    def push_pairs(lead):
        nonlocal counter
        for other in list(rs.rules):
            for l1, l2 in ((lead, other), (other, lead)):
                for k in overlaps(a, l1, l2):
                    word = l1 + l2[k:]
                    d = deg(word)
                    if d <= max_degree and (l1, l2, k) not in checked:
                        counter += 1
                        heapq.heappush(heap, (d, counter, l1, l2, k))

    for lead in list(rs.rules):
        push_pairs(lead)
    added_total = 0
    while heap:
        d, _, l1, l2, k = heapq.heappop(heap)
        if (l1, l2, k) in checked:
            continue
        checked.add((l1, l2, k))
        if l1 not in rs.rules or l2 not in rs.rules:
            continue
        n_checked += 1
        left = rs.rules[l1] * NcPoly.monomial(a, tail=l2[k:])
        right = NcPoly.monomial(a, tail=l1[:len(l1) - k]) * rs.rules[l2]
        s = rs.normal_form(left - right)
        if s.is_zero():
            continue
        name = f"overlap:{a.format_monomial((a.zero_cartan, l1 + l2[k:]))}"
        new = _insert_all(rs, [(name, s)], strict=False, unresolved=rs.unresolved)
        added_total += len(new)
        if len(rs.rules) > rule_cap:
            raise CompletionDiverged(f"{rs.label}: more than {rule_cap} rules")
        for lead in new:
            if lead in rs.rules:
                push_pairs(lead)
    rs.completed_to = max(rs.completed_to, max_degree)
    rs.report = CompletionReport(
        label=rs.label,
        rules_initial=initial,
        rules_final=len(rs.rules),
        rules_added=added_total,
        overlaps_checked=n_checked,
        completed_to=rs.completed_to,
        unresolved=len(rs.unresolved),
    )
    return rs


def check_confluence(rs, max_degree=None):
    """Overlaps up to ``max_degree`` whose two reductions disagree (empty if confluent)."""
    a = rs.alphabet
    bound = rs.completed_to if max_degree is None else max_degree
    bad = []
    leads = list(rs.rules)
    for l1 in leads:
        for l2 in leads:
            for k in overlaps(a, l1, l2):
                word = l1 + l2[k:]
                if a.tail_degree(word) > bound:
                    continue
                left = rs.rules[l1] * NcPoly.monomial(a, tail=l2[k:])
                right = NcPoly.monomial(a, tail=l1[:len(l1) - k]) * rs.rules[l2]
                if not rs.normal_form(left - right).is_zero():
                    bad.append(word)
    return bad


_SYSTEMS = {}


def system_for(p, max_degree=DEFAULT_COMPLETION_DEGREE):
    """Completed system for a presentation, cached per (presentation, degree)."""
    key = id(p)
    entry = _SYSTEMS.get(key)
    if entry is not None and entry[0] is p:
        rs = entry[1]
        if rs.completed_to >= max_degree:
            return rs
        complete(rs, max_degree)
        return rs
    rs = orient(p)
    complete(rs, max_degree)
    _SYSTEMS[key] = (p, rs)
    return rs
