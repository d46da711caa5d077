"""Root data for the cataloged algebras: forms, Cartan matrices, highest roots."""
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import IsotropicRoot, RankMismatch

DEFAULT_OSP_FORM = 1


@dataclass(frozen=True)
class RootDatum:
    name: str
    cartan: tuple
    form: tuple
    parity: tuple
    theta_coeffs: tuple
    root_names: tuple  # one-letter names used in root words, e.g. ("a", "b")

    @property
    def rank(self):
        return len(self.form)

    def simple_root(self, i):
        coords = [0] * self.rank
        coords[i] = 1
        return Weight(tuple(Fraction(c) for c in coords))

    @property
    def theta(self):
        return Weight(tuple(Fraction(c) for c in self.theta_coeffs))

    @property
    def delta(self):
        return Weight((Fraction(0),) * self.rank, Fraction(1))

    def height(self, w):
        return sum(w.coords)

    def parity_of(self, w):
        """Parity of a weight: sum of coordinate * parity bit over odd simple roots, mod 2."""
        total = sum(c * p for c, p in zip(w.coords, self.parity))
        if Fraction(total).denominator != 1:
            raise ValueError(f"weight {w} has no integral parity")
        return int(total) % 2


@dataclass(frozen=True)
class Weight:
    """Simple-root coordinates plus the coefficient of delta."""

    coords: tuple
    delta: Fraction = Fraction(0)

    def __add__(self, other):
        if len(self.coords) != len(other.coords):
            raise RankMismatch("weights of different rank")
        return Weight(
            tuple(a + b for a, b in zip(self.coords, other.coords)), self.delta + other.delta
        )

    def __neg__(self):
        return Weight(tuple(-a for a in self.coords), -self.delta)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        k = Fraction(k)
        return Weight(tuple(a * k for a in self.coords), self.delta * k)

    __rmul__ = __mul__

    def finite(self):
        return Weight(self.coords)

    def is_zero(self):
        return all(c == 0 for c in self.coords) and self.delta == 0

    def __str__(self):
        return format_weight(self, None)


def zero_weight(rank):
    return Weight((Fraction(0),) * rank)


def pairing(w1, w2, datum):
    """The invariant form; delta pairs to zero with everything."""
    if len(w1.coords) != datum.rank or len(w2.coords) != datum.rank:
        raise RankMismatch(f"weights do not match rank {datum.rank} of {datum.name}")
    total = Fraction(0)
    for i, a in enumerate(w1.coords):
        if a == 0:
            continue
        row = datum.form[i]
        for j, b in enumerate(w2.coords):
            if b:
                total += a * b * row[j]
    return total


def serre_exponent(datum, i):
    """``n_{i0} = 1 + 2 (alpha_i, theta) / (alpha_i, alpha_i)``."""
    a = datum.simple_root(i)
    aa = pairing(a, a, datum)
    if aa == 0:
        raise IsotropicRoot(f"simple root {i} of {datum.name} is isotropic")
    n = 1 + 2 * pairing(a, datum.theta, datum) / aa
    if n.denominator != 1 or n < 1:
        raise ValueError(f"non-integral Serre exponent {n}")
    return int(n)


def cartan_from_form(form):
    r = len(form)
    return tuple(
        tuple(Fraction(2 * form[i][j], form[i][i]) for j in range(r)) for i in range(r)
    )


def validate_datum(datum):
    """Return a list of invariant violations (empty when the datum is valid)."""
    problems = []
    r = len(datum.form)
    for name, seq in (("cartan", datum.cartan), ("parity", datum.parity),
                      ("theta_coeffs", datum.theta_coeffs), ("root_names", datum.root_names)):
        if len(seq) != r:
            problems.append(f"{name} has length {len(seq)}, expected rank {r}")
    if problems:
        return problems
    for i in range(r):
        if len(datum.form[i]) != r or len(datum.cartan[i]) != r:
            problems.append(f"row {i} has wrong length")
            return problems
    for i in range(r):
        for j in range(i + 1, r):
            if datum.form[i][j] != datum.form[j][i]:
                problems.append(f"form not symmetric at ({i},{j})")
    for i in range(r):
        aii = datum.form[i][i]
        if aii == 0:
            problems.append(f"root {i} is isotropic")
            continue
        for j in range(r):
            want = Fraction(2 * datum.form[i][j], aii)
            if want != datum.cartan[i][j]:
                problems.append(f"cartan[{i}][{j}]={datum.cartan[i][j]} but 2(a_i,a_j)/(a_i,a_i)={want}")
    for i, c in enumerate(datum.theta_coeffs):
        if c <= 0:
            problems.append(f"theta coefficient {i} is not positive")
    for i, p in enumerate(datum.parity):
        if p not in (0, 1):
            problems.append(f"parity bit {i} is {p}")
    return problems


def _datum(name, form, parity, theta, names):
    form = tuple(tuple(Fraction(x) for x in row) for row in form)
    return RootDatum(
        name=name,
        cartan=cartan_from_form(form),
        form=form,
        parity=tuple(parity),
        theta_coeffs=tuple(theta),
        root_names=tuple(names),
    )


def sl2():
    return _datum("sl2", [[2]], [0], [1], "a")


def c2():
    # alpha long, beta short; theta = alpha + 2 beta
    return _datum("c2", [[4, -2], [-2, 2]], [0, 0], [1, 2], "ab")


def g2():
    # alpha long, beta short; theta = 2 alpha + 3 beta
    return _datum("g2", [[6, -3], [-3, 2]], [0, 0], [2, 3], "ab")


def osp12(form=DEFAULT_OSP_FORM):
    # alpha odd; theta = 2 alpha
    return _datum("osp12", [[form]], [1], [2], "a")


BASES = ("sl2", "c2", "g2", "osp12")


def get_datum(base, **options):
    try:
        factory = {"sl2": sl2, "c2": c2, "g2": g2, "osp12": osp12}[base]
    except KeyError:
        raise ValueError(f"unknown base {base!r}; expected one of {BASES}") from None
    return factory(**options)


# -- root words -------------------------------------------------------------

_TERM = re.compile(r"([+-]?)(\d*)([a-z])")


def parse_weight(text, datum):
    """Parse a signed root word such as ``-a-2b`` or ``d-2a-3b`` (``d`` is delta)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty root word")
    coords = [Fraction(0)] * datum.rank
    delta = Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or (pos > 0 and not m.group(1)):
            raise ValueError(f"bad root word {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        k = int(m.group(2)) if m.group(2) else 1
        letter = m.group(3)
        if letter == "d":
            delta += sign * k
        elif letter in datum.root_names:
            coords[datum.root_names.index(letter)] += sign * k
        else:
            raise ValueError(f"unknown root letter {letter!r} in {text!r}")
        pos = m.end()
    return Weight(tuple(coords), delta)


def format_weight(w, datum):
    names = datum.root_names if datum is not None else tuple(
        "abcdefgh"[i] if i < 3 else f"r{i}" for i in range(len(w.coords))
    )
    parts = []
    if w.delta:
        parts.append(("" if w.delta == 1 else "-" if w.delta == -1 else str(w.delta)) + "d")
    for c, n in zip(w.coords, names):
        if c == 0:
            continue
        body = n if abs(c) == 1 else f"{abs(c)}{n}"
        if c < 0:
            parts.append("-" + body)
        else:
            parts.append(("+" if parts else "") + body)
    return "".join(parts) if parts else "0"
