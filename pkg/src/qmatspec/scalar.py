"""Exact arithmetic over Q(q).

``LaurentPoly`` holds a finite Laurent polynomial in ``q`` with rational
coefficients, ``RatFunc`` a reduced quotient of two of them.  Nothing in this
module touches floating point.

Canonical form of a ``RatFunc``: the denominator has lowest exponent 0 and
leading coefficient 1, and shares no nontrivial polynomial factor with the
numerator.  Equal values therefore have identical stored forms, so ``==`` and
``hash`` are structural.

A ``ScalarBackend`` picks the field the tensor layer computes in: either
``Q(q)`` itself (symbolic) or ``Q`` with ``q`` specialised to a generic
rational ``q0`` (sampled).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Union

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "ScalarBackend",
    "PoleError",
    "NonGenericError",
    "q_number",
    "q_int",
    "ratfunc_reduce",
    "eval_at",
    "parse_scalar",
    "render_scalar",
]


class PoleError(ZeroDivisionError):
    """A denominator vanishes where a value was requested."""


class NonGenericError(ValueError):
    """A sampled value of q is a root of unity (or 0) of small order."""


def _norm(c):
    # keep integral coefficients as int: int arithmetic is much faster
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Finite sum ``sum c_e q^e`` with rational ``c_e != 0``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: dict | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if isinstance(v, float):
                    raise TypeError("floating-point coefficients are not allowed")
                if v:
                    c[int(e)] = _norm(Fraction(v) if not isinstance(v, int) else v)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> LaurentPoly:
        p = object.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def const(cls, v) -> LaurentPoly:
        return cls({0: v})

    @classmethod
    def monomial(cls, e: int, c=1) -> LaurentPoly:
        return cls({e: c})

    # -- inspection ------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, Rational]:
        return dict(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_one(self) -> bool:
        return len(self._c) == 1 and self._c.get(0) == 1

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    @property
    def low(self) -> int:
        return min(self._c)

    @property
    def high(self) -> int:
        return max(self._c)

    def leading(self):
        return self._c[max(self._c)]

    def items(self):
        return sorted(self._c.items(), reverse=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({render_scalar(self)!r})"

    # -- ring operations -------------------------------------------------
    @staticmethod
    def _coerce(x) -> LaurentPoly | None:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly._raw({0: _norm(x)} if x else {})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for e, v in o._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = _norm(s)
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if not a or not b:
            return LaurentPoly._raw({})
        if len(b) == 1:
            (eb, vb), = b.items()
            return LaurentPoly._raw({e + eb: _norm(v * vb) for e, v in a.items()})
        if len(a) == 1:
            (ea, va), = a.items()
            return LaurentPoly._raw({e + ea: _norm(v * va) for e, v in b.items()})
        c: dict = {}
        for ea, va in a.items():
            for eb, vb in b.items():
                e = ea + eb
                c[e] = c.get(e, 0) + va * vb
        return LaurentPoly._raw({e: _norm(v) for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self) ** n
        result = LaurentPoly._raw({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        return RatFunc(self) / other

    def __rtruediv__(self, other):
        return RatFunc(other) / self

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``q^k``."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def __call__(self, q0) -> Fraction:
        q0 = Fraction(q0)
        if q0 == 0 and self._c and min(self._c) < 0:
            raise PoleError("negative power of q at q = 0")
        return sum((v * q0 ** e for e, v in self._c.items()), Fraction(0))


Q = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def q_number(n: int) -> LaurentPoly:
    """``(q^n - q^-n)/(q - q^-1)`` as an explicit Laurent polynomial."""
    if n == 0:
        return LaurentPoly()
    s = 1 if n > 0 else -1
    a = abs(n)
    return LaurentPoly({a - 1 - 2 * j: s for j in range(a)})


def q_int(n: int, q):
    """The q-number ``n_q`` evaluated at an arbitrary scalar ``q``."""
    if n == 0:
        return q - q  # a zero of the right type
    a = abs(n)
    total = q ** (a - 1)
    for j in range(1, a):
        total = total + q ** (a - 1 - 2 * j)
    return total if n > 0 else -total


# -- dense univariate helpers over Q (ascending coefficient lists) -----------

def _to_dense(p: LaurentPoly) -> tuple[int, list]:
    lo = p.low
    out = [0] * (p.high - lo + 1)
    for e, v in p._c.items():
        out[e - lo] = v
    return lo, out


def _from_dense(lo: int, coeffs: list) -> LaurentPoly:
    return LaurentPoly._raw({lo + i: _norm(v) for i, v in enumerate(coeffs) if v})


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) <= db:
        return [], a
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db]
        if c:
            c = Fraction(c, lead) if isinstance(c, int) and isinstance(lead, int) else c / lead
            c = _norm(c)
            quo[i] = c
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    return quo, _trim(a[:db])


def _gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [_norm(Fraction(v) / lead) for v in a]


def _exact_div(a: list, b: list) -> list:
    quo, rem = _divmod(a, b)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return quo


def _pg_split(p: LaurentPoly) -> tuple[int, list]:
    """Write ``p = q^lo * poly`` with ``poly(0) != 0``."""
    return _to_dense(p)


class RatFunc:
    """Reduced quotient ``num/den`` of Laurent polynomials."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = LaurentPoly._coerce(num) if not isinstance(num, RatFunc) else num
        den = LaurentPoly._coerce(den) if not isinstance(den, RatFunc) else den
        if isinstance(num, RatFunc) or isinstance(den, RatFunc):
            r = RatFunc._as(num) / RatFunc._as(den)
            self.num, self.den, self._hash = r.num, r.den, None
            return
        if num is None or den is None:
            raise TypeError("RatFunc parts must be LaurentPoly or rational")
        r = ratfunc_reduce(num, den)
        self.num, self.den, self._hash = r.num, r.den, None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> RatFunc:
        r = object.__new__(cls)
        r.num = num
        r.den = den
        r._hash = None
        return r

    @classmethod
    def _as(cls, x) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, LaurentPoly):
            return cls._raw(x, ONE)
        if isinstance(x, (int, Fraction)):
            return cls._raw(LaurentPoly._raw({0: _norm(x)} if x else {}), ONE)
        raise TypeError(f"cannot convert {type(x).__name__} to RatFunc")

    @classmethod
    def q(cls) -> RatFunc:
        return cls._raw(Q, ONE)

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RatFunc({render_scalar(self)!r})"

    def __str__(self) -> str:
        return render_scalar(self)

    # -- field operations ------------------------------------------------
    def __add__(self, other):
        try:
            o = RatFunc._as(other)
        except TypeError:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return RatFunc._raw(self.num + o.num, ONE)
        if self.den == o.den:
            return ratfunc_reduce(self.num + o.num, self.den)
        return ratfunc_reduce(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = RatFunc._as(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return RatFunc._as(other) + (-self)

    def __mul__(self, other):
        try:
            o = RatFunc._as(other)
        except TypeError:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return RatFunc._raw(self.num * o.num, ONE)
        if not self.num or not o.num:
            return RatFunc._raw(ZERO, ONE)
        return ratfunc_reduce(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if not self.num:
            raise ZeroDivisionError("RatFunc division by zero")
        return ratfunc_reduce(self.den, self.num)

    def __truediv__(self, other):
        try:
            o = RatFunc._as(other)
        except TypeError:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("RatFunc division by zero")
        if o.num.is_monomial() and o.den.is_one():
            (e, v), = o.num._c.items()
            inv = LaurentPoly._raw({-e: _norm(Fraction(1) / v)})
            if self.den.is_one():
                return RatFunc._raw(self.num * inv, ONE)
            return ratfunc_reduce(self.num * inv, self.den)
        return ratfunc_reduce(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc._as(other) / self

    def __pow__(self, n: int) -> RatFunc:
        if n < 0:
            return self.inverse() ** (-n)
        # powers of a reduced pair stay reduced
        num, den = self.num ** n, self.den ** n
        return RatFunc._raw(num, den)


def ratfunc_reduce(num, den) -> RatFunc:
    """Canonical reduced form of ``num/den``."""
    num = LaurentPoly._coerce(num) if not isinstance(num, LaurentPoly) else num
    den = LaurentPoly._coerce(den) if not isinstance(den, LaurentPoly) else den
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return RatFunc._raw(ZERO, ONE)
    dlo, d = _pg_split(den)
    nlo, n = _pg_split(num)
    if len(d) > 1 and len(n) > 1:
        g = _gcd(n, d)
        if len(g) > 1:
            n = _exact_div(n, g)
            d = _exact_div(d, g)
    lead = d[-1]
    if lead != 1:
        inv = Fraction(1) / lead
        n = [v * inv for v in n]
        d = [v * inv for v in d]
    return RatFunc._raw(_from_dense(nlo - dlo, n), _from_dense(0, d))


def eval_at(f, q0) -> Fraction:
    """Exact value of ``f`` at ``q = q0``."""
    q0 = Fraction(q0)
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    if isinstance(f, LaurentPoly):
        return f(q0)
    if not isinstance(f, RatFunc):
        raise TypeError(f"cannot evaluate {type(f).__name__}")
    if q0 == 0:
        if f.den.low < 0 or f.den(0) == 0:
            raise PoleError(f"denominator {render_scalar(f.den)} vanishes at q = 0")
        if f.num and f.num.low < 0:
            raise PoleError("negative power of q at q = 0")
    d = f.den(q0)
    if d == 0:
        raise PoleError(f"denominator {render_scalar(f.den)} vanishes at q = {q0}")
    return f.num(q0) / d


# -- backends ----------------------------------------------------------------

@dataclass(frozen=True)
class ScalarBackend:
    """Field in which tensor entries live.

    ``mode == "symbolic"``: entries are ``RatFunc`` in ``q``.
    ``mode == "sampled"``: entries are ``Fraction`` with ``q = q0``.
    """

    mode: str = "symbolic"
    q0: Fraction | None = None
    guard: int = 64

    def __post_init__(self):
        if self.mode not in ("symbolic", "sampled"):
            raise ValueError(f"unknown backend mode {self.mode!r}")
        if self.mode == "sampled":
            if self.q0 is None:
                raise ValueError("sampled backend needs q0")
            q0 = Fraction(self.q0)
            object.__setattr__(self, "q0", q0)
            check_generic(q0, self.guard)

    @classmethod
    def symbolic(cls) -> ScalarBackend:
        return cls("symbolic")

    @classmethod
    def sampled(cls, q0, guard: int = 64) -> ScalarBackend:
        return cls("sampled", Fraction(q0), guard)

    @property
    def is_symbolic(self) -> bool:
        return self.mode == "symbolic"

    @cached_property
    def q(self):
        return RatFunc.q() if self.is_symbolic else self.q0

    @property
    def one(self):
        return RatFunc._as(1) if self.is_symbolic else Fraction(1)

    @property
    def zero(self):
        return RatFunc._as(0) if self.is_symbolic else Fraction(0)

    def convert(self, x):
        """Bring a rational, Laurent polynomial or RatFunc into this field."""
        if self.is_symbolic:
            return RatFunc._as(x)
        if isinstance(x, (LaurentPoly, RatFunc)):
            return eval_at(x, self.q0)
        return Fraction(x)

    def parse(self, text: str):
        return self.convert(parse_scalar(text))

    def describe(self) -> str:
        return "symbolic" if self.is_symbolic else f"sampled(q={self.q0})"


def check_generic(q0: Fraction, bound: int = 64) -> None:
    if q0 == 0:
        raise NonGenericError("q0 must be nonzero")
    if q0 in (1, -1):
        raise NonGenericError(f"q0 = {q0} is not generic")
    # a rational with |q0| != 1 is never a root of unity; the loop documents
    # the guard literally and costs nothing at this bound
    p = Fraction(1)
    for j in range(1, bound + 1):
        p *= q0
        if p == 1:
            raise NonGenericError(f"q0^{j} = 1")


# -- rendering and parsing ---------------------------------------------------

def _render_coeff(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _render_laurent(p: LaurentPoly) -> str:
    if not p:
        return "0"
    parts = []
    for i, (e, v) in enumerate(p.items()):
        neg = v < 0
        a = -v if neg else v
        if e == 0:
            body = _render_coeff(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{_render_coeff(a)}*{mono}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def render_scalar(x) -> str:
    """Render in the scalar grammar (``q``, ``^``, ``+ - * /``, parentheses)."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return _render_coeff(x)
    if isinstance(x, LaurentPoly):
        return _render_laurent(x)
    if isinstance(x, RatFunc):
        if x.den.is_one():
            return _render_laurent(x.num)
        num = _render_laurent(x.num)
        if len(x.num._c) > 1 or (x.num and next(iter(x.num._c.values())) < 0):
            num = f"({num})"
        elif "/" in num:
            num = f"({num})"
        den = _render_laurent(x.den)
        if len(x.den._c) > 1 or "*" in den or "/" in den:
            den = f"({den})"
        return f"{num}/{den}"
    raise TypeError(f"cannot render {type(x).__name__}")


_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(\^)|([-+*/()]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        out.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    return out


class _Parser:
    # expr   := ['-'] term (('+'|'-') term)*
    # term   := factor (('*'|'/') factor)*
    # factor := ['-'] power
    # power  := atom ['^' ['-'] INT]
    # atom   := INT | 'q' | '(' expr ')'

    def __init__(self, tokens: list[str]):
        self.t = tokens
        self.i = 0

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            val = val * rhs if op == "*" else val / rhs
        return val

    def factor(self):
        if self.peek() == "-":
            self.take()
            return -self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            tok = self.take()
            if not tok.isdigit():
                raise ValueError(f"integer exponent expected, got {tok!r}")
            base = base ** (sign * int(tok))
        return base

    def atom(self):
        tok = self.take()
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        if tok == "q":
            return RatFunc.q()
        if tok.isdigit():
            return RatFunc._as(int(tok))
        raise ValueError(f"unexpected token {tok!r}")


def parse_scalar(text: str) -> RatFunc:
    """Parse the scalar grammar into a canonical ``RatFunc``."""
    p = _Parser(_tokenize(text))
    if p.peek() is None:
        raise ValueError("empty scalar expression")
    val = p.expr()
    if p.peek() is not None:
        raise ValueError(f"trailing input at token {p.peek()!r}")
    return val


Scalar = Union[RatFunc, LaurentPoly, Fraction, int]


def sum_scalars(values: Iterable, zero):
    total = zero
    for v in values:
        total = total + v
    return total
