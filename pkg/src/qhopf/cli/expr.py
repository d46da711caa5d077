"""Surface expression language: tokenizer, recursive-descent parser, elaboration.

Grammar (lowest precedence first)::

    tensor  := sum ('(x)' sum)*
    sum     := product (('+' | '-') product)*
    product := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' int)?
    atom    := NUMBER | '(' tensor ')' | 'eta' | 'tau' | q-atom | 'qb(' rat ')'
             | 'qc(' tensor ',' tensor ')' | 'ad(' tensor ',' int ',' tensor ')'
             | cartan | letter | parameter
    q-atom  := 'q' ('^' (int | '(' rat ')'))?
    cartan  := ('k' | 'h') ('^' int)? '[' word ']'
    letter  := NAME '[' word ']'

Columns in error messages are 1-based; end of input is ``len(text) + 1``.
"""
import re
from fractions import Fraction

from .. import scalars
from ..errors import ExprSyntaxError, UnknownAtom, UnknownGenerator
from ..freealg import NcPoly, TensorPoly, ad_q_power, q_commutator
from ..scalars import Scalar
from ..weights import parse_weight

_TOKEN = re.compile(
    r"\s*(?:(?P<tensor>\(x\))|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<word>\[[^\]]*\])|(?P<op>[-+*/^(),]))"
)


def tokenize(text):
    """List of ``(kind, value, column)``; a final ``("end", None, len + 1)``."""
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExprSyntaxError(f"unexpected character {text[col - 1]!r}", col)
        kind = m.lastgroup
        col = m.start(kind) + 1
        out.append((kind, m.group(kind), col))
        pos = m.end()
    out.append(("end", None, n + 1))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(msg, tok[2])

    def expect_op(self, op):
        t = self.peek()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}")
        return self.take()

    def at_op(self, *ops):
        t = self.peek()
        return t[0] == "op" and t[1] in ops

    def parse(self):
        node = self.tensor()
        if self.peek()[0] != "end":
            self.error("unexpected input")
        return node

    def tensor(self):
        node = self.sum()
        while self.peek()[0] == "tensor":
            self.take()
            node = ("tensor", node, self.sum())
        return node

    def sum(self):
        node = self.product()
        while self.at_op("+", "-"):
            op = self.take()[1]
            rhs = self.product()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def product(self):
        node = self.unary()
        while self.at_op("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            node = ("mul" if op == "*" else "div", node, rhs)
        return node

    def unary(self):
        if self.at_op("-"):
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.at_op("^"):
            self.take()
            node = ("pow", node, self.signed_int())
        return node

    def signed_int(self):
        sign = 1
        if self.at_op("-"):
            self.take()
            sign = -1
        t = self.peek()
        if t[0] != "num":
            self.error("expected an integer")
        self.take()
        return sign * int(t[1])

    def rational(self):
        num = self.signed_int()
        den = 1
        if self.at_op("/"):
            self.take()
            den = self.signed_int()
            if den == 0:
                self.error("zero denominator")
        return Fraction(num, den)

    def word(self):
        t = self.peek()
        if t[0] != "word":
            self.error("expected a root word in brackets")
        self.take()
        return t[1][1:-1].strip(), t[2] + 1

    def atom(self):
        t = self.peek()
        kind, val, col = t
        if kind == "num":
            self.take()
            return ("num", Fraction(int(val)))
        if kind == "op" and val == "(":
            self.take()
            node = self.tensor()
            self.expect_op(")")
            return node
        if kind != "name":
            self.error("expected an expression")
        self.take()
        if val in ("eta", "tau"):
            return (val,)
        if val == "q":
            if self.at_op("^"):
                self.take()
                if self.at_op("("):
                    self.take()
                    r = self.rational()
                    self.expect_op(")")
                    return ("qpow", r)
                return ("qpow", Fraction(self.signed_int()))
            return ("qpow", Fraction(1))
        if val == "qb":
            self.expect_op("(")
            r = self.rational()
            self.expect_op(")")
            return ("qb", r)
        if val == "qc":
            self.expect_op("(")
            a = self.tensor()
            self.expect_op(",")
            b = self.tensor()
            self.expect_op(")")
            return ("qc", a, b)
        if val == "ad":
            self.expect_op("(")
            a = self.tensor()
            self.expect_op(",")
            n = self.signed_int()
            if n < 0:
                self.error("ad exponent must be nonnegative")
            self.expect_op(",")
            b = self.tensor()
            self.expect_op(")")
            return ("ad", a, n, b)
        if val in ("k", "h"):
            power = 1
            if self.at_op("^") and self.peek(1)[0] in ("num", "op") and self._cartan_power_ahead():
                self.take()
                power = self.signed_int()
            if self.peek()[0] == "word":
                w, wcol = self.word()
                return ("cartan", val, w, power, col)
            if power != 1:
                self.error("expected a root word in brackets")
            return ("param", val, col)
        if self.peek()[0] == "word":
            w, wcol = self.word()
            return ("letter", val, w, col)
        return ("param", val, col)

    def _cartan_power_ahead(self):
        # k^n[w] or k^-n[w]
        j = 1
        if self.peek(j)[0] == "op" and self.peek(j)[1] == "-":
            j += 1
        return self.peek(j)[0] == "num" and self.peek(j + 1)[0] == "word"


def parse(text):
    """Parse text into an AST (nested tuples)."""
    return _Parser(text).parse()


# -- elaboration ---------------------------------------------------------------------


def _is_alg(x):
    return isinstance(x, (NcPoly, TensorPoly))


def _mul(a, b):
    if _is_alg(a) and _is_alg(b):
        if isinstance(a, TensorPoly) != isinstance(b, TensorPoly):
            raise ExprSyntaxError("cannot multiply a tensor by a non-tensor element", 0)
        return a * b
    if _is_alg(a):
        return a.scale(b)
    if _is_alg(b):
        return b.scale(a)
    return a * b


def _add(a, b, alphabet):
    if isinstance(a, TensorPoly) or isinstance(b, TensorPoly):
        if not (isinstance(a, TensorPoly) and isinstance(b, TensorPoly)):
            raise ExprSyntaxError("cannot add a tensor and a non-tensor element", 0)
        return a + b
    if _is_alg(a) or _is_alg(b):
        a = a if _is_alg(a) else NcPoly.scalar(alphabet, a)
        b = b if _is_alg(b) else NcPoly.scalar(alphabet, b)
    return a + b


def _as_alg(x, alphabet):
    return x if _is_alg(x) else NcPoly.scalar(alphabet, x)


def elaborate(node, alphabet, composites=None):
    """Evaluate an AST (or text) to a Scalar, NcPoly or TensorPoly over ``alphabet``."""
    if isinstance(node, str):
        node = parse(node)
    composites = composites or {}
    datum = alphabet.datum

    def ev(n):
        tag = n[0]
        if tag == "num":
            return Scalar.coerce(n[1])
        if tag == "eta":
            return scalars.eta()
        if tag == "tau":
            return scalars.tau()
        if tag == "qpow":
            return scalars.q_power(n[1])
        if tag == "qb":
            return scalars.q_bracket(n[1])
        if tag == "param":
            name, col = n[1], n[2]
            if name in scalars.declared_parameters():
                return scalars.param(name)
            raise UnknownAtom(f"unknown atom {name!r} at column {col}")
        if tag == "cartan":
            _, kind, w, power, col = n
            weight = _weight(w, col)
            if kind == "k":
                if alphabet.classical:
                    raise UnknownAtom(f"k[{w}] in a classical algebra at column {col}")
                return NcPoly.k(alphabet, weight, power)
            if not alphabet.classical:
                raise UnknownAtom(f"h[{w}] in a quantum algebra at column {col}")
            if power < 0:
                raise UnknownAtom(f"h[{w}] is not invertible (column {col})")
            from ..catalog import Ctx

            return Ctx(alphabet).h(w) ** power if power else NcPoly.one(alphabet)
        if tag == "letter":
            _, kind, w, col = n
            name = f"{kind}[{w}]"
            try:
                return NcPoly.gen(alphabet, name)
            except UnknownGenerator:
                pass
            norm = _canonical_word(w, col)
            name = f"{kind}[{norm}]"
            try:
                return NcPoly.gen(alphabet, name)
            except UnknownGenerator:
                pass
            if kind == "e" and norm in composites:
                return composites[norm]
            raise UnknownAtom(f"unknown generator {name!r} at column {col}")
        if tag == "neg":
            v = ev(n[1])
            return -v
        if tag == "add":
            return _add(ev(n[1]), ev(n[2]), alphabet)
        if tag == "sub":
            return _add(ev(n[1]), -ev(n[2]), alphabet)
        if tag == "mul":
            return _mul(ev(n[1]), ev(n[2]))
        if tag == "div":
            a, b = ev(n[1]), ev(n[2])
            if _is_alg(b):
                b = _scalar_of(b)
            return a.scale(scalars.ONE / b) if _is_alg(a) else a / b
        if tag == "pow":
            a, k = ev(n[1]), n[2]
            if _is_alg(a):
                if k < 0:
                    raise UnknownAtom("negative power of a non-scalar element")
                return a ** k
            return a ** k
        if tag == "qc":
            return q_commutator(_as_alg(ev(n[1]), alphabet), _as_alg(ev(n[2]), alphabet))
        if tag == "ad":
            return ad_q_power(_as_alg(ev(n[1]), alphabet), n[2], _as_alg(ev(n[3]), alphabet))
        if tag == "tensor":
            a, b = ev(n[1]), ev(n[2])
            if isinstance(b, TensorPoly):
                raise ExprSyntaxError("tensor factors must be plain elements", 0)
            fa = [a] if not isinstance(a, TensorPoly) else None
            b = _as_alg(b, alphabet)
            if fa is not None:
                return TensorPoly.pure(_as_alg(a, alphabet), b)
            out = TensorPoly.zero(alphabet, a.rank + 1)
            for ms, c in a.terms.items():
                for m2, c2 in b.terms.items():
                    out = out + TensorPoly(alphabet, a.rank + 1, {ms + (m2,): c * c2})
            return out
        raise ExprSyntaxError(f"unknown node {tag}", 0)

    def _weight(w, col):
        try:
            return parse_weight(w, datum)
        except ValueError as exc:
            raise UnknownAtom(f"{exc} at column {col}") from None

    def _canonical_word(w, col):
        from ..weights import format_weight

        return format_weight(_weight(w, col), datum)

    return ev(node)


def _scalar_of(p):
    """A constant NcPoly as a Scalar (for division)."""
    if isinstance(p, NcPoly) and len(p.terms) <= 1:
        if not p.terms:
            return scalars.ZERO
        (m, c), = p.terms.items()
        if m == (p.alphabet.zero_cartan, ()):
            return c
    raise UnknownAtom("division by a non-scalar element")


def to_element(value, alphabet):
    """Coerce an elaborated value to an NcPoly (scalars become constants)."""
    if isinstance(value, (NcPoly, TensorPoly)):
        return value
    return NcPoly.scalar(alphabet, value)
