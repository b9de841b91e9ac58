"""Exact arithmetic in Q(q): Laurent polynomials, rational functions, quantum integers.

Everything here is immutable and exact (integer/Fraction coefficients, no
floats).  RatFunc values are kept in a normal form so that equality is
structural: numerator and denominator share no polynomial factor, the
denominator is a primitive integer polynomial with nonzero positive constant
coefficient, and any overall power of q lives in the numerator.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce


class LaurentPoly:
    """Laurent polynomial in q with Fraction coefficients, stored sparsely."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for e, c in coeffs.items():
                c = Fraction(c)
                if c != 0:
                    d[int(e)] = c
        self.coeffs = d

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero():
        return LaurentPoly()

    @staticmethod
    def one():
        return LaurentPoly({0: 1})

    @staticmethod
    def const(c):
        return LaurentPoly({0: Fraction(c)})

    @staticmethod
    def q_power(n):
        return LaurentPoly({n: 1})

    # -- structure ----------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def min_exp(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        return min(self.coeffs)

    def max_exp(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = d.get(e, 0) + c
            if s == 0:
                d.pop(e, None)
            else:
                d[e] = s
        return LaurentPoly(d)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        d = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = d.get(e, 0) + c1 * c2
                if s == 0:
                    d.pop(e, None)
                else:
                    d[e] = s
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a LaurentPoly; use RatFunc")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return LaurentPoly()
        return LaurentPoly({e: c * v for e, v in self.coeffs.items()})

    def shift(self, n):
        """Multiply by q^n."""
        return LaurentPoly({e + n: c for e, c in self.coeffs.items()})

    def bar(self):
        """The involution q -> q^{-1}."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def subs_one(self):
        """Exact evaluation at q = 1."""
        return sum(self.coeffs.values(), Fraction(0))

    # -- polynomial helpers (nonnegative exponents) ---------------------

    def divmod_poly(self, other):
        """Euclidean division for ordinary polynomials (min_exp >= 0)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = dict(self.coeffs)
        qout = {}
        ddeg = other.max_exp()
        dlead = other.coeffs[ddeg]
        while r:
            rdeg = max(r)
            if rdeg < ddeg:
                break
            f = r[rdeg] / dlead
            qout[rdeg - ddeg] = f
            for e, c in other.coeffs.items():
                e2 = e + rdeg - ddeg
                s = r.get(e2, 0) - f * c
                if s == 0:
                    r.pop(e2, None)
                else:
                    r[e2] = s
        return LaurentPoly(qout), LaurentPoly(r)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"


def poly_gcd(a, b):
    """Monic gcd in Q[q] of two ordinary polynomials (min_exp >= 0)."""
    while not b.is_zero():
        a, b = b, a.divmod_poly(b)[1]
    if a.is_zero():
        return a
    return a.scale(1 / a.coeffs[a.max_exp()])


def qint(k):
    """Quantum integer [k] = (q^k - q^{-k})/(q - q^{-1})."""
    if k < 0:
        return -qint(-k)
    return LaurentPoly({k - 1 - 2 * nu: 1 for nu in range(k)})


def qfact(k):
    """Quantum factorial [k]! = [1][2]...[k]."""
    if k < 0:
        raise ValueError(f"quantum factorial of negative integer {k}")
    return reduce(lambda acc, nu: acc * qint(nu), range(1, k + 1), LaurentPoly.one())


class RatFunc:
    """Element of Q(q) as a normalized quotient of Laurent polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = LaurentPoly.const(num)
        if den is None:
            den = LaurentPoly.one()
        elif isinstance(den, (int, Fraction)):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = LaurentPoly.zero()
            self.den = LaurentPoly.one()
            return
        # Move q-power shifts into the numerator, cancel the polynomial gcd,
        # then rescale so the denominator is a primitive integer polynomial
        # with positive constant coefficient.
        vn, vd = num.min_exp(), den.min_exp()
        num = num.shift(-vn)
        den = den.shift(-vd)
        g = poly_gcd(num, den)
        if g.max_exp() > 0:
            num = num.divmod_poly(g)[0]
            den = den.divmod_poly(g)[0]
        c0 = den.coeffs[den.min_exp()]
        lcm = 1
        for c in den.coeffs.values():
            lcm = lcm * c.denominator // _gcd_int(lcm, c.denominator)
        gg = 0
        for c in den.coeffs.values():
            gg = _gcd_int(gg, c.numerator * (lcm // c.denominator))
        scale = Fraction(lcm, gg)
        if c0 < 0:
            scale = -scale
        self.num = num.scale(scale).shift(vn - vd)
        self.den = den.scale(scale)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_poly(p):
        return RatFunc(p)

    @staticmethod
    def zero():
        return RatFunc(0)

    @staticmethod
    def one():
        return RatFunc(1)

    @staticmethod
    def q_power(n):
        return RatFunc(LaurentPoly.q_power(n))

    # -- structure ------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(other)
        if isinstance(other, LaurentPoly):
            return RatFunc(other)
        if isinstance(other, RatFunc):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        r = RatFunc.__new__(RatFunc)
        r.num = -self.num
        r.den = self.den
        return r

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __pow__(self, n):
        if n < 0:
            return RatFunc(1) / self ** (-n)
        out = RatFunc(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self):
        """The field involution q -> q^{-1}."""
        return RatFunc(self.num.bar(), self.den.bar())

    def subs_one(self):
        """Exact evaluation at q = 1 (denominator must not vanish there)."""
        d = self.den.subs_one()
        if d == 0:
            raise ZeroDivisionError("pole at q = 1")
        return self.num.subs_one() / d

    # -- membership predicates ---------------------------------------------

    def in_A(self):
        """Member of A = Q[q, q^{-1}]: the denominator is a unit monomial."""
        return self.den == LaurentPoly.one()

    def in_A0(self):
        """Regular at q = 0 (the denominator has nonzero constant term)."""
        return self.is_zero() or self.num.min_exp() >= 0

    def in_Ainf(self):
        """Regular at q = infinity."""
        return self.is_zero() or self.num.max_exp() <= self.den.max_exp()

    def in_qZq(self):
        """Member of q.Q[q]."""
        return self.is_zero() or (self.in_A() and self.num.min_exp() >= 1)

    def laurent(self):
        """The underlying LaurentPoly; raises unless in_A()."""
        if not self.in_A():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def positive_part(self):
        """Sum of the strictly positive q-degree terms (requires in_A())."""
        p = self.laurent()
        return RatFunc(LaurentPoly({e: c for e, c in p.coeffs.items() if e > 0}))

    def __str__(self):
        return format_ratfunc(self)

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)!r})"


def _gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# canonical string form and its parser
# ---------------------------------------------------------------------------

def _format_term(coef, exp, first):
    sign = "-" if coef < 0 else "+"
    mag = abs(coef)
    if exp == 0:
        body = str(mag)
    else:
        qpart = "q" if exp == 1 else f"q^{exp}"
        body = qpart if mag == 1 else f"{mag}*{qpart}"
    if first:
        return body if coef > 0 else "-" + body
    return f" {sign} {body}"


def format_poly(p):
    if p.is_zero():
        return "0"
    out = []
    for e in sorted(p.coeffs, reverse=True):
        out.append(_format_term(p.coeffs[e], e, not out))
    return "".join(out)


def format_ratfunc(x):
    """Canonical string, e.g. "q + q^-1" or "(q^2+1)/(q^2+q+1)"."""
    if x.is_zero():
        return "0"
    # display with integer coefficients on both sides
    lcm = 1
    for c in x.num.coeffs.values():
        lcm = lcm * c.denominator // _gcd_int(lcm, c.denominator)
    num = x.num.scale(lcm)
    den = x.den.scale(lcm)
    if den == LaurentPoly.one():
        return format_poly(num)
    return f"({format_poly(num)})/({format_poly(den)})"


class _Parser:
    """Recursive-descent parser for the canonical RatFunc grammar."""

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ValueError(f"parse error at position {self.pos}: {msg} (in {self.text!r})")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def integer(self):
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start:self.pos].lstrip("+-"):
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def expression(self):
        value = self.term()
        while True:
            if self.take("+"):
                value = value + self.term()
            elif self.take("-"):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            if self.take("*"):
                value = value * self.factor()
            elif self.take("/"):
                value = value / self.factor()
            elif self.peek() in ("q", "("):  # juxtaposition, e.g. "2q^3"
                value = value * self.atom()
            else:
                return value

    def factor(self):
        if self.take("-"):
            return -self.factor()
        return self.atom()

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.take("(")
            value = self.expression()
            if not self.take(")"):
                self.error("expected ')'")
        elif ch == "q":
            self.pos += 1
            value = RatFunc.q_power(1)
        elif ch.isdigit():
            value = RatFunc(self.integer())
        else:
            self.error("expected '(', 'q' or a number")
        if self.take("^"):
            value = value ** self.integer()
        return value


def parse_ratfunc(text):
    """Parse the canonical RatFunc grammar, e.g. "(q^2+1)/(q)" or "q + q^-1"."""
    p = _Parser(text)
    value = p.expression()
    p.skip()
    if p.pos != len(text):
        p.error("trailing input")
    return value
