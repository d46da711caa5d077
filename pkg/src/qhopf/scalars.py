"""Exact coefficient arithmetic for the ground ring.

A :class:`Scalar` is a fraction ``N/D`` where ``N`` is a polynomial in
``v``, ``eta`` and the declared parameters, and ``D`` is a polynomial in
``v`` alone.  The deformation parameter is ``q = v**LATTICE``, so rational
powers of ``q`` whose exponent lies on ``(1/LATTICE) Z`` are monomials.

Backed by FLINT multivariate polynomials (``python-flint``).
"""
from fractions import Fraction

import flint

from .errors import (
    DivisionByZero,
    NonUnitDivisor,
    OffLattice,
    SingularAtQ1,
    UndeclaredParameter,
)

LATTICE = 6
SERIES_ORDER = 2

_PARAM_SLOTS = ("p0", "p1", "p2", "p3")
_CTX = flint.fmpq_mpoly_ctx.get(("v", "eta") + _PARAM_SLOTS, "lex")
_NVARS = 2 + len(_PARAM_SLOTS)
_ZERO_EXP = (0,) * _NVARS

_declared = {}  # parameter name -> slot index (0-based into _PARAM_SLOTS)


def declare_parameter(name):
    """Adjoin the symbolic parameter ``name`` to the ground ring.

    Re-declaring a name is a no-op.  Only a handful of slots exist.
    """
    if name in _declared:
        return param(name)
    if name in ("q", "v", "eta", "tau", "h"):
        raise ValueError(f"reserved symbol {name!r}")
    if not name.isidentifier():
        raise ValueError(f"bad parameter name {name!r}")
    if len(_declared) >= len(_PARAM_SLOTS):
        raise ValueError("no free parameter slots")
    _declared[name] = len(_declared)
    return param(name)


def declared_parameters():
    return tuple(sorted(_declared, key=_declared.get))


def _to_fmpq(c):
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    return flint.fmpq(c)


def _const(c):
    if c == 0:
        return _CTX.from_dict({})
    return _CTX.from_dict({_ZERO_EXP: _to_fmpq(c)})


def _mono(exp, c=1):
    return _CTX.from_dict({tuple(exp): _to_fmpq(c)})


_P_ZERO = _const(0)
_P_ONE = _const(1)


def _v_only(p):
    degs = p.degrees()
    return all(d <= 0 for d in degs[1:])


class Scalar:
    """Reduced fraction ``num/den`` with a monic, ``v``-only denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        # callers outside this module go through the constructors below
        self.num = num
        self.den = _P_ONE if den is None else den
        self._hash = None

    # -- constructors -------------------------------------------------
    @staticmethod
    def _reduced(num, den):
        if num.is_zero():
            return ZERO
        if den.is_one():
            return Scalar(num, den)
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return Scalar(num, den)

    @staticmethod
    def coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(_const(x)) if x != 0 else ZERO
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # -- predicates ---------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.den.is_one() and self.num.is_one()

    def is_v_only(self):
        """True when no ``eta`` or parameter occurs."""
        return _v_only(self.num)

    def is_unit(self):
        return not self.is_zero() and self.is_v_only()

    def eta_degree(self):
        return max(0, self.num.degrees()[1])

    def parameter_degree(self, name):
        return max(0, self.num.degrees()[2 + _slot(name)])

    def is_rational(self):
        """True when the scalar is a plain rational number."""
        return self.den.is_one() and self.num.is_constant()

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        if self.num.is_zero():
            return Fraction(0)
        c = self.num.leading_coefficient()
        return Fraction(int(c.p), int(c.q))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar.coerce(other)
            else:
                return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        d1, d2 = self.den, other.den
        if d1.is_one() and d2.is_one():
            n = self.num + other.num
            return Scalar(n) if not n.is_zero() else ZERO
        if d1 == d2:
            return Scalar._reduced(self.num + other.num, d1)
        return Scalar._reduced(self.num * d2 + other.num * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        if self.num.is_zero():
            return self
        return Scalar(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    return ZERO
                return Scalar(self.num * _to_fmpq(other), self.den)
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num * other.num)
        return Scalar._reduced(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero scalar")
        if self.is_zero():
            return ZERO
        num = self.num * other.den
        den = self.den * other.num
        if _v_only(other.num):
            return Scalar._reduced(num, den)
        g = num.gcd(den)
        if not _v_only(den / g):
            raise NonUnitDivisor(f"{other} is not a unit and does not divide {self}")
        return Scalar._reduced(num / g, den / g)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (ONE / self) ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divides(self, other):
        """True if ``other / self`` stays in the ring."""
        try:
            Scalar.coerce(other) / self
        except (NonUnitDivisor, DivisionByZero):
            return False
        return True

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar.coerce(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    # -- substitutions ------------------------------------------------
    def subs_eta_zero(self):
        if self.num.degrees()[1] <= 0:
            return self
        return Scalar._reduced(self.num.subs({"eta": 0}), self.den)

    def subs_parameter(self, name, value):
        """Substitute a Scalar for a declared parameter (polynomial substitution)."""
        value = Scalar.coerce(value)
        i = 2 + _slot(name)
        result = ZERO
        for exp, c in self.num.terms():
            k = int(exp[i])
            rest = list(exp)
            rest[i] = 0
            result = result + Scalar(_mono(rest, c)) * value**k
        return result / Scalar(self.den)

    def coefficient_map(self):
        """Numerator terms keyed by ``(v_exp, eta_deg, param_degs)``; plus denominator."""
        return {
            (e[0], e[1], tuple(e[2:])): c for e, c in self.num.terms()
        }

    # -- rendering ----------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Scalar({render(self)!r})"


def _slot(name):
    try:
        return _declared[name]
    except KeyError:
        raise UndeclaredParameter(f"parameter {name!r} has not been declared") from None


ZERO = Scalar(_P_ZERO)
ONE = Scalar(_P_ONE)


def param(name):
    exp = [0] * _NVARS
    exp[2 + _slot(name)] = 1
    return Scalar(_mono(exp))


def eta():
    exp = [0] * _NVARS
    exp[1] = 1
    return Scalar(_mono(exp))


def _v_power(n):
    exp = [0] * _NVARS
    if n >= 0:
        exp[0] = n
        return Scalar(_mono(exp))
    exp[0] = -n
    return Scalar(_P_ONE, _mono(exp))


def _lattice_exponent(r):
    r = Fraction(r)
    n = r * LATTICE
    if n.denominator != 1:
        raise OffLattice(f"q^({r}) is not on the 1/{LATTICE} exponent lattice")
    return int(n)


def q_power(r):
    """The monomial ``q**r``; ``r`` must lie on the exponent lattice."""
    return _v_power(_lattice_exponent(r))


def q():
    return q_power(1)


def q_minus_qinv():
    return q_power(1) - q_power(-1)


def tau():
    """``eta / (q - q^-1)``."""
    return eta() / q_minus_qinv()


def q_bracket(a):
    """``[a] = (q^a - q^-a) / (q - q^-1)``."""
    a = Fraction(a)
    _lattice_exponent(a)
    if a == 0:
        return ZERO
    return (q_power(a) - q_power(-a)) / q_minus_qinv()


def q_bracket_shifted(cartan_term, shift):
    """Helper for ``[h + c]`` style brackets: returns the two scalar weights.

    ``[h + c] = (q^c K - q^-c K^-1) / (q - q^-1)`` with ``K = q^h``; the
    caller multiplies by the group-like elements.  Returns
    ``(coefficient of K, coefficient of K^-1)``.
    """
    d = q_minus_qinv()
    return q_power(shift) / d, -q_power(-Fraction(shift)) / d


# -- limits and series ------------------------------------------------------


def _eval_v1(p):
    return p.subs({"v": 1})


def limit_q1(x):
    """Value at ``q = 1`` (``v = 1``) as a v-free Scalar.

    Raises :class:`SingularAtQ1` if a pole at ``v = 1`` survives reduction.
    """
    x = Scalar.coerce(x)
    d1 = _eval_v1(x.den)
    if d1.is_zero():
        raise SingularAtQ1(f"{x} has a pole at q = 1")
    return Scalar._reduced(_eval_v1(x.num), d1)


def eta_zero(x):
    return Scalar.coerce(x).subs_eta_zero()


def _binomial(r, j):
    out = Fraction(1)
    for i in range(j):
        out = out * (r - i) / (i + 1)
    return out


def _series_of_poly(p, order):
    """Expand a polynomial in v (and eta, params) at v = 1 as a series in h = q - 1."""
    coeffs = [{} for _ in range(order + 1)]
    for exp, c in p.terms():
        n = int(exp[0])
        rest = (0,) + tuple(int(e) for e in exp[1:])
        cf = Fraction(int(c.p), int(c.q))
        r = Fraction(n, LATTICE)
        for j in range(order + 1):
            b = _binomial(r, j)
            if b:
                slot = coeffs[j]
                slot[rest] = slot.get(rest, 0) + cf * b
    return [
        _CTX.from_dict({k: _to_fmpq(v) for k, v in d.items() if v != 0}) for d in coeffs
    ]


class Q1Series:
    """Truncated expansion ``sum_j c_j h^j`` (``h = q - 1``) for ``low <= j <= SERIES_ORDER``.

    Coefficients are polynomials in eta and the declared parameters.  A
    negative ``low`` records a pole at ``q = 1``.
    """

    __slots__ = ("low", "coeffs")

    def __init__(self, low, coeffs):
        self.low = low
        self.coeffs = list(coeffs)
        want = SERIES_ORDER - low + 1
        if len(self.coeffs) < want:
            self.coeffs += [_P_ZERO] * (want - len(self.coeffs))
        del self.coeffs[want:]

    @classmethod
    def constant(cls, c):
        c = Scalar.coerce(c)
        if not c.den.is_one() or c.num.degrees()[0] > 0:
            raise ValueError("constant series needs a v-free polynomial")
        return cls(0, [c.num])

    def coefficient(self, j):
        """Coefficient of ``h**j`` as a Scalar (zero outside the stored window)."""
        i = j - self.low
        if 0 <= i < len(self.coeffs):
            return Scalar._reduced(self.coeffs[i], _P_ONE)
        return ZERO

    @property
    def c0(self):
        return self.coefficient(0)

    @property
    def c1(self):
        return self.coefficient(1)

    @property
    def c2(self):
        return self.coefficient(2)

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return self.low + i
        return None

    def is_regular(self):
        v = self.valuation()
        return v is None or v >= 0

    def __add__(self, other):
        low = min(self.low, other.low)
        out = []
        for j in range(low, SERIES_ORDER + 1):
            out.append(self.coefficient(j).num + other.coefficient(j).num)
        return Q1Series(low, out)

    def __neg__(self):
        return Q1Series(self.low, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            if not other.den.is_one():
                raise ValueError("series can only be scaled by polynomials")
            return Q1Series(self.low, [c * other.num for c in self.coeffs])
        low = self.low + other.low
        out = [_P_ZERO] * (SERIES_ORDER - low + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                k = self.low + i + other.low + j - low
                if k < len(out):
                    out[k] = out[k] + a * b
        return Q1Series(low, out)

    def __eq__(self, other):
        if not isinstance(other, Q1Series):
            return NotImplemented
        low = min(self.low, other.low)
        return all(
            self.coefficient(j) == other.coefficient(j) for j in range(low, SERIES_ORDER + 1)
        )

    def __repr__(self):
        parts = [f"({self.coefficient(j)})*h^{j}" for j in range(self.low, SERIES_ORDER + 1)]
        return "Q1Series(" + " + ".join(parts) + ")"


def _pole_order(den):
    """Multiplicity of the root v = 1 of a v-only polynomial."""
    v = _CTX.gens()[0]
    lin = v - 1
    k = 0
    p = den
    while _eval_v1(p).is_zero():
        p = p / lin
        k += 1
    return k


def laurent_coefficients(x, upto):
    """Coefficients of ``x`` at ``q = 1`` in powers of ``h = q - 1``.

    Returns ``(low, coeffs)`` with ``coeffs[i]`` the coefficient of
    ``h**(low + i)`` for ``low <= low + i <= upto``; any pole order allowed.
    """
    x = Scalar.coerce(x)
    p = _pole_order(x.den)
    order = upto + 2 * p
    if order < 0:
        return -p, []
    num = _series_of_poly(x.num, order)
    den = [Fraction(0)] * (order + 1)
    for j, c in enumerate(_series_of_poly(x.den, order)):
        if not c.is_zero():
            lc = c.leading_coefficient()
            den[j] = Fraction(int(lc.p), int(lc.q))
    unit = den[p:]
    inv = [Fraction(0)] * len(unit)
    inv[0] = 1 / unit[0]
    for n in range(1, len(unit)):
        s = sum(unit[k] * inv[n - k] for k in range(1, n + 1))
        inv[n] = -s * inv[0]
    out = []
    for n in range(upto + p + 1):
        acc = _P_ZERO
        for k in range(n + 1):
            if inv[n - k] and not num[k].is_zero():
                acc = acc + num[k] * _to_fmpq(inv[n - k])
        out.append(Scalar._reduced(acc, _P_ONE))
    return -p, out


def to_q1_series(x, allow_pole=False):
    """Expand ``x`` at ``q = 1`` to order ``h**SERIES_ORDER``.

    With ``allow_pole`` a pole of order at most 2 is expanded Laurent-style.
    """
    x = Scalar.coerce(x)
    p = _pole_order(x.den)
    if p and (not allow_pole or p > 2):
        raise SingularAtQ1(f"{x} has a pole of order {p} at q = 1")
    order = SERIES_ORDER + 2 * p
    num = _series_of_poly(x.num, order)
    den = [Fraction(0)] * (order + 1)
    for j, c in enumerate(_series_of_poly(x.den, order)):
        if not c.is_zero():
            lc = c.leading_coefficient()
            den[j] = Fraction(int(lc.p), int(lc.q))
    # den = h^p * (den[p] + den[p+1] h + ...); invert the unit part
    unit = den[p:]
    inv = [Fraction(0)] * len(unit)
    inv[0] = 1 / unit[0]
    for n in range(1, len(unit)):
        s = sum(unit[k] * inv[n - k] for k in range(1, n + 1))
        inv[n] = -s * inv[0]
    out = []
    for n in range(SERIES_ORDER + p + 1):
        acc = _P_ZERO
        for k in range(n + 1):
            if inv[n - k] and not num[k].is_zero():
                acc = acc + num[k] * _to_fmpq(inv[n - k])
        out.append(acc)
    return Q1Series(-p, out)


# -- canonical text ---------------------------------------------------------


def _fmt_q_exp(n):
    r = Fraction(n, LATTICE)
    if r == 1:
        return "q"
    if r.denominator == 1:
        return f"q^{r.numerator}"
    return f"q^({r})"


def _fmt_term(exp, c, v_shift=0):
    n = int(exp[0]) - int(v_shift)
    factors = []
    if n:
        factors.append(_fmt_q_exp(n))
    if exp[1]:
        factors.append("eta" if exp[1] == 1 else f"eta^{exp[1]}")
    names = declared_parameters()
    for i, name in enumerate(names):
        k = exp[2 + i]
        if k:
            factors.append(name if k == 1 else f"{name}^{k}")
    c = Fraction(int(c.p), int(c.q))
    neg = c < 0
    c = abs(c)
    if not factors:
        body = str(c)
    elif c == 1:
        body = "*".join(factors)
    else:
        body = str(c) + "*" + "*".join(factors)
    return neg, body


def _sort_key(exp):
    return (exp[0], exp[1]) + tuple(exp[2:])


def _fmt_poly(p, v_shift=0):
    terms = sorted(p.terms(), key=lambda t: _sort_key(t[0]), reverse=True)
    if not terms:
        return "0"
    out = []
    for i, (exp, c) in enumerate(terms):
        neg, body = _fmt_term(exp, c, v_shift)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def render(x):
    """Canonical text: ``num`` or ``(num)/(den)``, den normalized to lowest q-exponent 0."""
    if x.num.is_zero():
        return "0"
    if x.den.is_one():
        return _fmt_poly(x.num)
    den_terms = list(x.den.terms())
    shift = min(int(exp[0]) for exp, _ in den_terms)
    num = _fmt_poly(x.num, shift)
    if len(den_terms) == 1:
        return num
    den = _fmt_poly(x.den, shift)
    return f"({num})/({den})"


def n_terms(x):
    return len(list(x.num.terms()))
