"""Exact univariate polynomials in the parameter mu, and their fraction field.

Coefficients are Python ints or ``fractions.Fraction``; a Fraction with unit
denominator is stored as an int so that the common integer case stays fast.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Union

Scalar = Union[int, Fraction]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _trim(coeffs: Iterable) -> tuple:
    out = [_norm(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer string exactly. Floats are rejected."""
    text = text.strip().replace("−", "-")
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


class Poly:
    """Element of Q[mu]. Immutable; ``c[k]`` is the coefficient of mu**k."""

    __slots__ = ("c", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.c = _trim(coeffs)
        self._hash = None

    @classmethod
    def const(cls, value: Scalar) -> "Poly":
        return cls((value,))

    @classmethod
    def mu(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def coerce(cls, value) -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Rational)):
            return cls((Fraction(value),))
        raise TypeError(f"cannot coerce {type(value).__name__} to Poly")

    # -- structure --------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree in mu; -1 for the zero polynomial."""
        return len(self.c) - 1

    def is_const(self) -> bool:
        return len(self.c) <= 1

    def const_value(self) -> Scalar:
        if len(self.c) > 1:
            raise ValueError(f"{self} is not constant")
        return self.c[0] if self.c else 0

    def lead(self) -> Scalar:
        return self.c[-1] if self.c else 0

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, (int, Rational)):
            return self.c == _trim((other,))
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    # -- ring operations ----------------------------------------------------
    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (int, Rational)):
                other = Poly((other,))
            else:
                return NotImplemented
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] = out[k] + v
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-v for v in self.c)

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (int, Rational)):
                other = Poly((other,))
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            if not self.c or not other.c:
                return ZERO
            if other.c == (1,):
                return self
            if self.c == (1,):
                return other
            out = [0] * (len(self.c) + len(other.c) - 1)
            for i, a in enumerate(self.c):
                if a == 0:
                    continue
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
            return Poly(out)
        if isinstance(other, (int, Rational)):
            if other == 0:
                return ZERO
            return Poly(v * other for v in self.c)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other) -> "Poly":
        """Exact division by a nonzero scalar."""
        if isinstance(other, (int, Rational)):
            return Poly(Fraction(v) / other for v in self.c)
        if isinstance(other, Poly) and other.is_const():
            return self / other.const_value()
        return NotImplemented

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(v) for v in self.c]
        q = [Fraction(0)] * max(len(rem) - len(other.c) + 1, 1)
        lead = Fraction(other.c[-1])
        dq = len(other.c) - 1
        for k in range(len(rem) - 1, dq - 1, -1):
            coef = rem[k] / lead
            if coef == 0:
                continue
            q[k - dq] = coef
            for i, b in enumerate(other.c):
                rem[k - dq + i] -= coef * b
        return Poly(q), Poly(rem[:dq] if dq else ())

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self / self.c[-1]

    def evaluate(self, value: Scalar) -> Scalar:
        acc = 0
        for v in reversed(self.c):
            acc = acc * value + v
        return _norm(Fraction(acc)) if isinstance(acc, Fraction) else acc

    def content(self) -> Fraction:
        """Positive-leading rational ``c`` with ``self / c`` integral and primitive."""
        if not self.c:
            return Fraction(0)
        fr = [Fraction(v) for v in self.c]
        den = lcm(*(f.denominator for f in fr))
        num = 0
        for f in fr:
            num = gcd(num, f.numerator * (den // f.denominator))
        out = Fraction(num, den)
        return out if self.c[-1] > 0 else -out

    # -- display ----------------------------------------------------------
    def __str__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for k in range(len(self.c) - 1, -1, -1):
            v = self.c[k]
            if v == 0:
                continue
            sign = "-" if v < 0 else "+"
            a = -v if v < 0 else v
            if k == 0:
                body = str(a)
            else:
                var = "mu" if k == 1 else f"mu^{k}"
                body = var if a == 1 else f"{a}*{var}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    def factored_str(self) -> str:
        """``2*(mu - 1)`` style: scalar content times a primitive polynomial."""
        if self.is_const():
            return str(self.const_value())
        cont = _norm(self.content())
        prim = str(self / cont)
        if cont == 1:
            return f"({prim})"
        return f"{cont}*({prim})"


ZERO = Poly()
ONE = Poly((1,))
MU = Poly((0, 1))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q (zero if both are zero)."""
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def falling_factorial(k: int) -> Poly:
    """mu (mu - 1) ... (mu - k + 1)."""
    out = ONE
    for i in range(k):
        out = out * Poly((-i, 1))
    return out


class RatFunc:
    """Element of Q(mu) as a reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num, den = Poly.coerce(num), Poly.coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        g = poly_gcd(num, den)
        if g != ONE:
            num, den = num.divmod(g)[0], den.divmod(g)[0]
        lead = den.lead()
        self.num, self.den = num / lead, den / lead

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        return self + (-other)

    def __mul__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        if not other:
            raise ZeroDivisionError("division by zero in Q(mu)")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __repr__(self) -> str:
        if self.den == ONE:
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num})/({self.den}))"
