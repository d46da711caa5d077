"""Noncommutative (super)polynomials with Cartan generators kept on the left.

A monomial is a pair ``(cartan, tail)``: ``cartan`` is an exponent vector
over the alphabet's Cartan generators and ``tail`` a tuple of letter
indices.  Two flavours of Cartan generator are supported:

* quantum: group-like ``k_mu^{+-1}`` with ``k_mu x k_mu^-1 = q^{(mu, wt x)} x``;
* classical: ``h_mu`` with ``[h_mu, x] = (mu, wt x) x`` (exponents >= 0).

Crossing a Cartan generator over the tail is part of multiplication, so
those relations never appear as rewrite rules.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import scalars
from .errors import (
    InhomogeneousArgument,
    MissingImage,
    NonInvertibleCartanImage,
    RankMismatch,
    UnknownGenerator,
)
from .scalars import ONE, Scalar
from .weights import Weight, pairing, zero_weight

KIND_ORDER = {"lowering": 0, "raising": 1, "affine": 2}


@dataclass(frozen=True)
class GenSym:
    name: str
    weight: Weight
    parity: int
    kind: str  # "cartan", "lowering", "raising", "affine"
    degree: int = 1  # weight in the monomial order; cartan generators ignore it

    @property
    def is_cartan(self):
        return self.kind == "cartan"


@lru_cache(maxsize=None)
def _v_monomial(n):
    return scalars._v_power(n)


class Alphabet:
    """Registry of generators for one algebra.

    ``cartan`` lists Cartan generators by label weight (``k_mu`` or ``h_mu``);
    ``letters`` lists the remaining generators in increasing precedence.
    """

    def __init__(self, datum, cartan, letters, classical=False):
        self.datum = datum
        self.classical = classical
        self.cartan = tuple(cartan)
        self.letters = tuple(letters)
        self.nc = len(self.cartan)
        self._by_name = {}
        for i, g in enumerate(self.letters):
            self._by_name[g.name] = ("letter", i)
        for i, g in enumerate(self.cartan):
            self._by_name[g.name] = ("cartan", i)
        # cross[x][i] = (weight of letter x, label of cartan i), in lattice units for quantum mode
        self.cross = []
        for g in self.letters:
            row = []
            for c in self.cartan:
                p = pairing(c.weight.finite(), g.weight.finite(), datum)
                if classical:
                    row.append(p)
                else:
                    n = p * scalars.LATTICE
                    if n.denominator != 1:
                        raise scalars.OffLattice(f"pairing {p} is off the exponent lattice")
                    row.append(int(n))
            self.cross.append(tuple(row))
        self.zero_cartan = (0,) * self.nc
        self._tail_cross = {(): (0,) * self.nc}
        self._tail_weight = {}
        self._tail_degree = {}
        # pairing between letters, for q-commutators (lattice units / rationals)
        self.degrees = tuple(g.degree for g in self.letters)
        self.parities = tuple(g.parity for g in self.letters)

    # -- lookup -----------------------------------------------------------
    def lookup(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {name!r}") from None

    def letter_index(self, name):
        kind, i = self.lookup(name)
        if kind != "letter":
            raise UnknownGenerator(f"{name!r} is a Cartan generator")
        return i

    def cartan_index(self, name):
        kind, i = self.lookup(name)
        if kind != "cartan":
            raise UnknownGenerator(f"{name!r} is not a Cartan generator")
        return i

    def cartan_vector(self, weight):
        """Exponent vector of ``k_weight`` in terms of the Cartan generators.

        Cartan generators are labelled by the simple roots and delta, so any
        lattice weight decomposes uniquely.
        """
        out = [0] * self.nc
        labels = [c.weight for c in self.cartan]
        rank = self.datum.rank
        for i, c in enumerate(weight.coords):
            idx = _label_index(labels, rank, i)
            if Fraction(c).denominator != 1:
                raise ValueError(f"non-integral cartan weight {weight}")
            out[idx] += int(c)
        if weight.delta:
            idx = _label_index(labels, rank, None)
            out[idx] += int(weight.delta)
        return tuple(out)

    # -- tail data --------------------------------------------------------
    def tail_cross(self, tail):
        v = self._tail_cross.get(tail)
        if v is None:
            prev = self.tail_cross(tail[:-1])
            row = self.cross[tail[-1]]
            v = tuple(a + b for a, b in zip(prev, row))
            self._tail_cross[tail] = v
        return v

    def tail_weight(self, tail):
        w = self._tail_weight.get(tail)
        if w is None:
            w = zero_weight(self.datum.rank)
            for x in tail:
                w = w + self.letters[x].weight
            self._tail_weight[tail] = w
        return w

    def tail_degree(self, tail):
        d = self._tail_degree.get(tail)
        if d is None:
            d = sum(self.degrees[x] for x in tail)
            self._tail_degree[tail] = d
        return d

    def tail_parity(self, tail):
        return sum(self.parities[x] for x in tail) & 1

    def order_key(self, tail):
        """Weighted degree, then lexicographic on letter precedence."""
        return (self.tail_degree(tail), tail)

    # -- monomial products --------------------------------------------------
    def mul_monomials(self, m1, m2):
        """Product of two monomials as a list of ``(coefficient, monomial)``."""
        c1, t1 = m1
        c2, t2 = m2
        if not self.classical:
            if not t1 or not any(c2):
                return [(ONE, (_vadd(c1, c2), t1 + t2))]
            tc = self.tail_cross(t1)
            n = 0
            for a, b in zip(c2, tc):
                if a:
                    n -= a * b
            coeff = _v_monomial(n) if n else ONE
            return [(coeff, (_vadd(c1, c2), t1 + t2))]
        if not t1 or not any(c2):
            return [(ONE, (_vadd(c1, c2), t1 + t2))]
        shifts = self.tail_cross(t1)
        out = []
        for sub, coeff in _shifted_expansion(c2, shifts):
            out.append((coeff, (_vadd(c1, sub), t1 + t2)))
        return out

    def monomial_weight(self, m):
        return self.tail_weight(m[1])

    def monomial_parity(self, m):
        return self.tail_parity(m[1])

    # -- rendering ----------------------------------------------------------
    def format_monomial(self, m):
        cartan, tail = m
        parts = []
        for i, e in enumerate(cartan):
            if not e:
                continue
            name = self.cartan[i].name
            if self.classical:
                parts.append(name if e == 1 else f"{name}^{e}")
            else:
                label = name[name.index("["):]
                if e == 1:
                    parts.append(name)
                elif e == -1:
                    parts.append(f"k^-1{label}")
                else:
                    parts.append(f"k^{e}{label}")
        # compress runs of equal letters as powers
        i = 0
        while i < len(tail):
            j = i
            while j < len(tail) and tail[j] == tail[i]:
                j += 1
            name = self.letters[tail[i]].name
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts) if parts else "1"


def _label_index(labels, rank, i):
    for idx, w in enumerate(labels):
        if i is None:
            if w.delta == 1 and all(c == 0 for c in w.coords):
                return idx
        elif w.delta == 0 and all((c == 1) if j == i else (c == 0) for j, c in enumerate(w.coords)):
            return idx
    raise UnknownGenerator("no Cartan generator for this weight component")


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


_SHIFT_CACHE = {}


def _shifted_expansion(exps, shifts):
    """Expand ``prod_i (h_i - s_i)^{e_i}`` into ``[(sub_exponents, coefficient)]``."""
    key = (exps, shifts)
    hit = _SHIFT_CACHE.get(key)
    if hit is not None:
        return hit
    terms = [((), ONE)]
    for e, s in zip(exps, shifts):
        new = []
        for sub, c in terms:
            for j in range(e + 1):
                k = comb(e, j) * Fraction(-s) ** (e - j)
                if k:
                    new.append((sub + (j,), c * Scalar.coerce(k)))
        terms = new
    _SHIFT_CACHE[key] = terms
    return terms


def monomial_sort_key(alphabet, m):
    cartan, tail = m
    return (alphabet.tail_degree(tail), len(tail), tail, cartan)


class NcPoly:
    """Finite map monomial -> nonzero Scalar over an :class:`Alphabet`."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms=None):
        self.alphabet = alphabet
        self.terms = terms if terms is not None else {}

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet, {})

    @classmethod
    def scalar(cls, alphabet, c):
        c = Scalar.coerce(c)
        if c.is_zero():
            return cls(alphabet, {})
        return cls(alphabet, {(alphabet.zero_cartan, ()): c})

    @classmethod
    def one(cls, alphabet):
        return cls.scalar(alphabet, ONE)

    @classmethod
    def monomial(cls, alphabet, cartan=None, tail=(), coeff=ONE):
        cartan = alphabet.zero_cartan if cartan is None else tuple(cartan)
        return cls(alphabet, {(cartan, tuple(tail)): Scalar.coerce(coeff)})

    @classmethod
    def gen(cls, alphabet, name, power=1):
        kind, i = alphabet.lookup(name)
        if kind == "letter":
            if power < 0:
                raise ValueError("letters are not invertible")
            return cls.monomial(alphabet, tail=(i,) * power)
        vec = [0] * alphabet.nc
        vec[i] = power
        if alphabet.classical and power < 0:
            raise ValueError("classical Cartan generators are not invertible")
        return cls.monomial(alphabet, cartan=vec)

    @classmethod
    def k(cls, alphabet, weight, power=1):
        """Group-like ``k_weight^power`` (quantum) for any lattice weight."""
        vec = alphabet.cartan_vector(weight * power)
        return cls.monomial(alphabet, cartan=vec)

    # -- basic protocol ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def copy(self):
        return NcPoly(self.alphabet, dict(self.terms))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = NcPoly.scalar(self.alphabet, other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.scalar(self.alphabet, other)
        out = dict(self.terms)
        _accumulate(out, other.terms.items())
        return NcPoly(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly(self.alphabet, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.scalar(self.alphabet, other)
        return self + (-other)

    def __rsub__(self, other):
        return NcPoly.scalar(self.alphabet, other) - self

    def scale(self, c):
        c = Scalar.coerce(c)
        if c.is_zero():
            return NcPoly(self.alphabet, {})
        if c.is_one():
            return self
        out = {}
        for m, x in self.terms.items():
            y = x * c
            if not y.is_zero():
                out[m] = y
        return NcPoly(self.alphabet, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        result = NcPoly.one(self.alphabet)
        for _ in range(n):
            result = result * self
        return result

    # -- inspection ---------------------------------------------------------
    def sorted_terms(self):
        a = self.alphabet
        return sorted(self.terms.items(), key=lambda t: monomial_sort_key(a, t[0]))

    def weights(self):
        return {self.alphabet.tail_weight(t).finite() for (_, t) in self.terms}

    def weight(self):
        """Finite weight of a homogeneous polynomial; ``None`` for zero."""
        ws = self.weights()
        if not ws:
            return None
        if len(ws) > 1:
            raise InhomogeneousArgument(f"polynomial has weights {sorted(map(str, ws))}")
        return ws.pop()

    def parity(self):
        ps = {self.alphabet.tail_parity(t) for (_, t) in self.terms}
        if not ps:
            return None
        if len(ps) > 1:
            raise InhomogeneousArgument("polynomial mixes parities")
        return ps.pop()

    def max_degree(self):
        return max((self.alphabet.tail_degree(t) for (_, t) in self.terms), default=0)

    def coefficients(self):
        return list(self.terms.values())

    def map_coefficients(self, f):
        out = {}
        for m, c in self.terms.items():
            y = f(c)
            if not y.is_zero():
                out[m] = y
        return NcPoly(self.alphabet, out)

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"NcPoly({render_poly(self)!r})"


def _accumulate(out, items):
    for m, c in items:
        prev = out.get(m)
        if prev is None:
            if not c.is_zero():
                out[m] = c
        else:
            s = prev + c
            if s.is_zero():
                del out[m]
            else:
                out[m] = s


def multiply(x, y):
    """Product in the free algebra with structural Cartan normalization."""
    a = x.alphabet
    if y.alphabet is not a:
        raise UnknownGenerator("polynomials over different alphabets")
    out = {}
    mul = a.mul_monomials
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            c12 = c1 * c2
            for k, m in mul(m1, m2):
                _accumulate(out, ((m, c12 * k if not k.is_one() else c12),))
    return NcPoly(a, out)


def _sign(parity_x, parity_y):
    return -1 if (parity_x and parity_y) else 1


def q_commutator(x, y):
    """``x y - (-1)^{|x||y|} q^{(wt x, wt y)} y x`` for homogeneous ``x``, ``y``.

    In a classical alphabet the q-factor is 1 (plain supercommutator).
    """
    if x.is_zero() or y.is_zero():
        return NcPoly.zero(x.alphabet)
    a = x.alphabet
    wx, wy = x.weight(), y.weight()
    px, py = x.parity(), y.parity()
    factor = Scalar.coerce(_sign(px, py))
    if not a.classical:
        p = pairing(wx, wy, a.datum)
        factor = factor * scalars.q_power(p)
    return x * y - (y * x).scale(factor)


def supercommutator(x, y):
    """``x y - (-1)^{|x||y|} y x`` (no q-factor)."""
    if x.is_zero() or y.is_zero():
        return NcPoly.zero(x.alphabet)
    return x * y - (y * x).scale(_sign(x.parity(), y.parity()))


def anticommutator(x, y):
    return x * y + y * x


def ad_q_power(x, n, y):
    """``(ad_q x)^n y``: ``n``-fold left-nested q-commutator."""
    for _ in range(n):
        y = q_commutator(x, y)
    return y


# -- tensor powers ------------------------------------------------------------


class TensorPoly:
    """Element of the graded tensor power ``A^{(x) rank}`` of an alphabet's algebra."""

    __slots__ = ("alphabet", "rank", "terms")

    def __init__(self, alphabet, rank, terms=None):
        if rank not in (2, 3):
            raise RankMismatch("tensor rank must be 2 or 3")
        self.alphabet = alphabet
        self.rank = rank
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, alphabet, rank=2):
        return cls(alphabet, rank, {})

    @classmethod
    def one(cls, alphabet, rank=2):
        unit = (alphabet.zero_cartan, ())
        return cls(alphabet, rank, {(unit,) * rank: ONE})

    @classmethod
    def pure(cls, *factors, coeff=ONE):
        """Tensor product of NcPolys ``f1 (x) f2 (x) ...``."""
        a = factors[0].alphabet
        out = {}
        items = [((), Scalar.coerce(coeff))]
        for f in factors:
            items = [(ms + (m,), c * d) for ms, c in items for m, d in f.terms.items()]
        _accumulate(out, items)
        return cls(a, len(factors), out)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = TensorPoly.one(self.alphabet, self.rank).scale(other)
        if self.rank != other.rank:
            raise RankMismatch("adding tensors of different rank")
        out = dict(self.terms)
        _accumulate(out, other.terms.items())
        return TensorPoly(self.alphabet, self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorPoly(self.alphabet, self.rank, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Scalar.coerce(c)
        if c.is_zero():
            return TensorPoly(self.alphabet, self.rank, {})
        out = {}
        for m, x in self.terms.items():
            y = x * c
            if not y.is_zero():
                out[m] = y
        return TensorPoly(self.alphabet, self.rank, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return tensor_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def max_degree(self):
        a = self.alphabet
        return max((a.tail_degree(m[1]) for ms in self.terms for m in ms), default=0)

    def sorted_terms(self):
        a = self.alphabet
        return sorted(
            self.terms.items(),
            key=lambda t: tuple(monomial_sort_key(a, m) for m in t[0]),
        )

    def __str__(self):
        return render_tensor(self)

    def __repr__(self):
        return f"TensorPoly({render_tensor(self)!r})"


def tensor_multiply(s, t):
    """Graded product ``(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd`` (pairwise for rank 3)."""
    if s.rank != t.rank:
        raise RankMismatch("tensor ranks differ")
    a = s.alphabet
    mul = a.mul_monomials
    par = a.tail_parity
    out = {}
    for ms, c1 in s.terms.items():
        for ns, c2 in t.terms.items():
            sign = 0
            for i in range(1, s.rank):
                pi = par(ms[i][1]) if any(par(m[1]) for m in ms[i:i + 1]) else 0
                if pi:
                    for j in range(i):
                        if par(ns[j][1]):
                            sign ^= 1
            coeff = c1 * c2
            if sign:
                coeff = -coeff
            parts = [((), coeff)]
            for m, n in zip(ms, ns):
                prods = mul(m, n)
                parts = [(acc + (p,), c * k) for acc, c in parts for k, p in prods]
            _accumulate(out, parts)
    return TensorPoly(a, s.rank, out)


# -- homomorphisms ------------------------------------------------------------


class Images:
    """Generator images for an (anti)homomorphism.

    ``letters`` maps letter names to NcPoly/TensorPoly images; Cartan
    images are given for ``k`` only, as single invertible monomials, and
    inverses are derived.  ``cartan=None`` means the identity on Cartan
    generators (target must then share the alphabet).
    """

    def __init__(self, letters, cartan=None, target_one=None):
        self.letters = dict(letters)
        self.cartan = None if cartan is None else dict(cartan)
        self.target_one = target_one


def _invert_monomial(img):
    if len(img.terms) != 1:
        raise NonInvertibleCartanImage("Cartan image is not a single monomial")
    (ms, c), = img.terms.items()
    if not c.is_unit():
        raise NonInvertibleCartanImage("Cartan image has a non-unit coefficient")
    if isinstance(img, TensorPoly):
        if any(m[1] for m in ms):
            raise NonInvertibleCartanImage("Cartan image contains non-Cartan letters")
        inv = tuple((tuple(-e for e in m[0]), ()) for m in ms)
        return TensorPoly(img.alphabet, img.rank, {inv: scalars.ONE / c})
    cartan, tail = ms
    if tail:
        raise NonInvertibleCartanImage("Cartan image contains non-Cartan letters")
    return NcPoly(img.alphabet, {(tuple(-e for e in cartan), ()): scalars.ONE / c})


def _power(x, n, one):
    out = one
    for _ in range(n):
        out = out * x
    return out


class _HomEvaluator:
    def __init__(self, source, images, reduce=None, anti=False):
        self.source = source
        self.images = images
        self.reduce = reduce or (lambda p: p)
        self.anti = anti
        self._letter = {}
        for i, g in enumerate(source.letters):
            img = images.letters.get(g.name)
            self._letter[i] = img
        self._cartan_cache = {}
        self._tail_cache = {}
        self.one = images.target_one

    def letter_image(self, i):
        img = self._letter[i]
        if img is None:
            raise MissingImage(f"no image for generator {self.source.letters[i].name}")
        return img

    def cartan_image(self, vec):
        hit = self._cartan_cache.get(vec)
        if hit is not None:
            return hit
        if self.images.cartan is None:
            img = NcPoly.monomial(self.source, cartan=vec)
        else:
            img = self.one
            for i, e in enumerate(vec):
                if not e:
                    continue
                name = self.source.cartan[i].name
                try:
                    base = self.images.cartan[name]
                except KeyError:
                    raise MissingImage(f"no image for Cartan generator {name}") from None
                if e < 0:
                    if self.source.classical:
                        raise NonInvertibleCartanImage("classical Cartan generators are not invertible")
                    base = _invert_monomial(base)
                img = img * _power(base, abs(e), self.one)
        self._cartan_cache[vec] = img
        return img

    def tail_image(self, tail):
        hit = self._tail_cache.get(tail)
        if hit is not None:
            return hit
        if not tail:
            img = self.one
        else:
            prev = self.tail_image(tail[:-1])
            last = self.letter_image(tail[-1])
            if self.anti:
                # S(t x) = (-1)^{|t||x|} S(x) S(t)
                sign = _sign(self.source.tail_parity(tail[:-1]), self.source.parities[tail[-1]])
                img = self.reduce(last * prev)
                if sign < 0:
                    img = -img
            else:
                img = self.reduce(prev * last)
        self._tail_cache[tail] = img
        return img

    def __call__(self, p):
        acc = None
        groups = {}
        for (cartan, tail), c in p.terms.items():
            groups.setdefault(tail, []).append((cartan, c))
        for tail, items in groups.items():
            timg = self.tail_image(tail)
            for cartan, c in items:
                cimg = self.cartan_image(cartan)
                if self.anti:
                    piece = timg * cimg
                else:
                    piece = cimg * timg
                piece = piece.scale(c)
                acc = piece if acc is None else acc + piece
        if acc is None:
            return self.one.scale(0)
        return self.reduce(acc)


def apply_hom(images, p, reduce=None):
    """Multiplicative extension of generator images, applied to ``p``."""
    if images.target_one is None:
        images.target_one = NcPoly.one(p.alphabet)
    return _HomEvaluator(p.alphabet, images, reduce=reduce)(p)


def apply_antihom(images, p, reduce=None):
    """Graded antihomomorphic extension: reverses words with the Koszul sign."""
    if images.target_one is None:
        images.target_one = NcPoly.one(p.alphabet)
    return _HomEvaluator(p.alphabet, images, reduce=reduce, anti=True)(p)


def hom_evaluator(source, images, reduce=None, anti=False):
    """Reusable evaluator (keeps its prefix cache between calls)."""
    if images.target_one is None:
        images.target_one = NcPoly.one(source)
    return _HomEvaluator(source, images, reduce=reduce, anti=anti)


def tensor_factor(p, position, rank=2):
    """Embed an NcPoly as ``1 (x) .. p .. (x) 1``."""
    a = p.alphabet
    unit = (a.zero_cartan, ())
    out = {}
    for m, c in p.terms.items():
        key = [unit] * rank
        key[position] = m
        out[tuple(key)] = c
    return TensorPoly(a, rank, out)


def multiply_out(t, anti_first=None):
    """Multiplication map ``m: A (x) A -> A``."""
    a = t.alphabet
    out = NcPoly.zero(a)
    for (m1, m2), c in t.terms.items():
        out = out + NcPoly(a, {m1: ONE}) * NcPoly(a, {m2: c})
    return out


# -- rendering ----------------------------------------------------------------


def _coef_text(c):
    s = str(c)
    if len(list(c.den.terms())) == 1 and len(list(c.num.terms())) > 1:
        s = f"({s})"
    return s


def _join_terms(pieces):
    if not pieces:
        return "0"
    out = []
    for i, (c, body) in enumerate(pieces):
        text = _coef_text(c)
        neg = text.startswith("-") and not text.startswith("(")
        if neg:
            text = text[1:]
        if body == "1":
            piece = text
        elif text == "1":
            piece = body
        else:
            piece = f"{text}*{body}"
        if i == 0:
            out.append(("-" if neg else "") + piece)
        else:
            out.append((" - " if neg else " + ") + piece)
    return "".join(out)


def render_poly(p):
    a = p.alphabet
    return _join_terms([(c, a.format_monomial(m)) for m, c in p.sorted_terms()])


def render_tensor(t):
    a = t.alphabet
    pieces = []
    for ms, c in t.sorted_terms():
        body = " (x) ".join(a.format_monomial(m) for m in ms)
        pieces.append((c, "(" + body + ")"))
    return _join_terms(pieces)
