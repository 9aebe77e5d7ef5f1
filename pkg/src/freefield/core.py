"""The supercommutative algebra W (and its mode-carrying version).

W is the polynomial algebra in even variables x_2..x_m tensored with the
exterior algebra in odd variables y_1..y_n.  In the affine signature every
variable additionally carries an integer mode, x_i(r), y_k(r).

Monomials are kept in a unique canonical form: the even part is a sorted
tuple of ``(variable, exponent)`` pairs and the odd part a strictly
increasing tuple of variables.  Signs produced by reordering odd factors are
pushed into the coefficient.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

from .poly import MU, ONE, ZERO, Poly, parse_rational

EVEN, ODD = 0, 1


@dataclass(frozen=True)
class Signature:
    """Block sizes (m|n) and whether variables carry loop modes."""

    m: int
    n: int
    affine: bool = False

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.n < 0:
            raise ValueError("n must be nonnegative")

    @property
    def size(self) -> int:
        return self.m + self.n

    def parity(self, i: int) -> int:
        """Parity of a matrix index 1..m+n: 0 for i <= m, else 1."""
        self.check_index(i)
        return 0 if i <= self.m else 1

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.m + self.n:
            raise ValueError(f"index {i} out of range 1..{self.m + self.n}")

    def var_for_index(self, i: int, mode: int = 0) -> "Variable":
        """The free-field variable attached to matrix index i >= 2."""
        self.check_index(i)
        if i == 1:
            raise ValueError("index 1 has no variable")
        if i <= self.m:
            return Variable(EVEN, i, mode)
        return Variable(ODD, i - self.m, mode)

    def index_of(self, v: "Variable") -> int:
        return v.index if v.parity == EVEN else self.m + v.index

    def variables(self, modes: Iterable[int] = (0,)) -> list["Variable"]:
        modes = list(modes) if self.affine else [0]
        out = [Variable(EVEN, i, r) for i in range(2, self.m + 1) for r in modes]
        out += [Variable(ODD, k, r) for k in range(1, self.n + 1) for r in modes]
        return sorted(out)

    def check_var(self, v: "Variable") -> None:
        if v.parity == EVEN:
            ok = 2 <= v.index <= self.m
        else:
            ok = 1 <= v.index <= self.n
        if not ok:
            raise ValueError(f"variable {v} outside signature ({self.m}|{self.n})")
        if not self.affine and v.mode != 0:
            raise ValueError(f"variable {v} carries a mode in a non-affine signature")


class Variable(NamedTuple):
    """Tuple order (parity, index, mode) is the canonical variable order."""

    parity: int
    index: int
    mode: int = 0

    def text(self, affine: bool) -> str:
        name = ("x" if self.parity == EVEN else "y") + str(self.index)
        return f"{name}({self.mode})" if affine else name


def x(i: int, mode: int = 0) -> Variable:
    return Variable(EVEN, i, mode)


def y(k: int, mode: int = 0) -> Variable:
    return Variable(ODD, k, mode)


class Monomial(NamedTuple):
    even: tuple = ()  # ((Variable, exponent), ...) sorted by variable
    odd: tuple = ()  # strictly increasing Variables

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.even) + len(self.odd)

    def sort_key(self):
        return (self.degree, self.even, self.odd)

    def factors(self) -> Iterator[Variable]:
        """Every variable with multiplicity, even part first."""
        for v, e in self.even:
            for _ in range(e):
                yield v
        yield from self.odd

    def exponent(self, v: Variable) -> int:
        if v.parity == ODD:
            return 1 if v in self.odd else 0
        for w, e in self.even:
            if w == v:
                return e
        return 0

    def mode_sum(self) -> int:
        return sum(v.mode * e for v, e in self.even) + sum(v.mode for v in self.odd)

    def text(self, affine: bool = False) -> str:
        if not self.even and not self.odd:
            return "1"
        parts = []
        for v, e in self.even:
            parts.append(v.text(affine) + (f"^{e}" if e > 1 else ""))
        parts += [v.text(affine) for v in self.odd]
        return "*".join(parts)


UNIT = Monomial()


def monomial(*factors: Variable) -> tuple[int, Monomial] | None:
    """Canonicalize a word of variables read left to right.

    Returns ``(sign, monomial)`` or ``None`` when an odd variable repeats.
    """
    sign, out = 1, UNIT
    for v in reversed(factors):
        res = _mul_var_mono(v, out)
        if res is None:
            return None
        s, out = res
        sign *= s
    return sign, out


def make_monomial(even: dict | None = None, odd: Iterable[Variable] = ()) -> Monomial:
    """Build a canonical monomial directly; ``odd`` must already be distinct."""
    ev = tuple(sorted((v, e) for v, e in (even or {}).items() if e))
    od = tuple(sorted(odd))
    if len(set(od)) != len(od):
        raise ValueError("repeated odd variable")
    return Monomial(ev, od)


def _merge_even(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_mul(a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
    """Product a*b as ``(sign, canonical monomial)``; None when it vanishes."""
    if a.odd and b.odd:
        sb = set(b.odd)
        if any(v in sb for v in a.odd):
            return None
        # sign = parity of inversions between the concatenated odd lists
        inv = 0
        for p in a.odd:
            for q in b.odd:
                if p > q:
                    inv += 1
        odd = tuple(sorted(a.odd + b.odd))
        sign = -1 if inv & 1 else 1
    else:
        odd = a.odd or b.odd
        sign = 1
    return sign, Monomial(_merge_even(a.even, b.even), odd)


def _mul_var_mono(v: Variable, mono: Monomial) -> tuple[int, Monomial] | None:
    if v.parity == EVEN:
        return 1, Monomial(_merge_even(((v, 1),), mono.even), mono.odd)
    if v in mono.odd:
        return None
    pos = 0
    while pos < len(mono.odd) and mono.odd[pos] < v:
        pos += 1
    sign = -1 if pos & 1 else 1
    return sign, Monomial(mono.even, mono.odd[:pos] + (v,) + mono.odd[pos:])


def _partial_mono(v: Variable, mono: Monomial) -> tuple[int, Monomial] | None:
    """Left (super)derivative of one monomial: ``(integer factor, monomial)``."""
    if v.parity == EVEN:
        for k, (w, e) in enumerate(mono.even):
            if w == v:
                if e == 1:
                    ev = mono.even[:k] + mono.even[k + 1:]
                else:
                    ev = mono.even[:k] + ((w, e - 1),) + mono.even[k + 1:]
                return e, Monomial(ev, mono.odd)
        return None
    try:
        p = mono.odd.index(v)
    except ValueError:
        return None
    return (-1 if p & 1 else 1), Monomial(mono.even, mono.odd[:p] + mono.odd[p + 1:])


class Element:
    """Finite linear combination of canonical monomials with Q[mu] coefficients.

    Treated as immutable: every operation returns a new element.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {} if terms is None else {k: v for k, v in terms.items() if v}

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        el = cls.__new__(cls)
        el.terms = terms
        return el

    @classmethod
    def of(cls, mono: Monomial, coeff=ONE) -> "Element":
        coeff = Poly.coerce(coeff)
        return cls._raw({mono: coeff} if coeff else {})

    @classmethod
    def unit(cls) -> "Element":
        return cls.of(UNIT)

    @classmethod
    def var(cls, v: Variable) -> "Element":
        return cls.of(Monomial(((v, 1),), ()) if v.parity == EVEN else Monomial((), (v,)))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coeff(self, mono: Monomial) -> Poly:
        return self.terms.get(mono, ZERO)

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, key=Monomial.sort_key)

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Element") -> "Element":
        if not other.terms:
            return self
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Element._raw(out)

    def __neg__(self) -> "Element":
        return Element._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = Poly.coerce(c)
        if not c:
            return Element()
        if c == ONE:
            return self
        return Element({k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c) -> "Element":
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        acc: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                res = mono_mul(a, b)
                if res is None:
                    continue
                s, ab = res
                c = ca * cb if s > 0 else -(ca * cb)
                _acc(acc, ab, c)
        return Element._raw({k: v for k, v in acc.items() if v})

    def text(self, affine: bool = False) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{self.terms[mono].factored_str()} * {mono.text(affine)}" for mono in self.monomials()
        )

    def __repr__(self) -> str:
        return f"Element({self.text(any(v.mode for m in self.terms for v in m.factors()))!r})"


def _acc(acc: dict, mono: Monomial, c: Poly) -> None:
    s = acc.get(mono)
    acc[mono] = c if s is None else s + c


def linear_map(e: Element, on_mono) -> Element:
    """Extend ``on_mono: Monomial -> Element`` linearly to ``e``."""
    if len(e.terms) == 1:
        (mono, c), = e.terms.items()
        img = on_mono(mono)
        return img if c == ONE else img.scale(c)
    acc: dict = {}
    for mono, c in e.terms.items():
        img = on_mono(mono)
        for k, v in img.terms.items():
            _acc(acc, k, v if c == ONE else v * c)
    return Element._raw({k: v for k, v in acc.items() if v})


def partial(v: Variable, e: Element) -> Element:
    """d/dv, acting from the left (odd case picks up (-1)^(position-1))."""
    acc: dict = {}
    for mono, c in e.terms.items():
        res = _partial_mono(v, mono)
        if res is None:
            continue
        f, out = res
        _acc(acc, out, c * f)
    return Element._raw({k: w for k, w in acc.items() if w})


def mul_var(v: Variable, e: Element) -> Element:
    """Left multiplication by the variable v."""
    acc: dict = {}
    for mono, c in e.terms.items():
        res = _mul_var_mono(v, mono)
        if res is None:
            continue
        s, out = res
        _acc(acc, out, c if s > 0 else -c)
    return Element._raw({k: w for k, w in acc.items() if w})


def checked_partial(sig: Signature, v: Variable, e: Element) -> Element:
    sig.check_var(v)
    return partial(v, e)


def checked_mul_var(sig: Signature, v: Variable, e: Element) -> Element:
    sig.check_var(v)
    return mul_var(v, e)


def specialize_mu(e: Element, value) -> Element:
    """Evaluate every coefficient at mu = value (an exact rational)."""
    value = Fraction(value)
    return Element({k: Poly.const(c.evaluate(value)) for k, c in e.terms.items()})


def mu_value(mu) -> Poly:
    """The scalar that mu acts by: the symbol itself, or a specialized value."""
    return MU if mu is None else Poly.const(Fraction(mu))


# -- enumeration ----------------------------------------------------------------


def monomials_of_degree(sig: Signature, s: int, modes: Iterable[int] = (0,)) -> list[Monomial]:
    """All canonical monomials of total degree s over the given modes."""
    vars_ = sig.variables(modes)
    evens = [v for v in vars_ if v.parity == EVEN]
    odds = [v for v in vars_ if v.parity == ODD]
    out = []
    for k in range(0, min(s, len(odds)) + 1):
        for od in itertools.combinations(odds, k):
            for ev in itertools.combinations_with_replacement(evens, s - k):
                d: dict = {}
                for v in ev:
                    d[v] = d.get(v, 0) + 1
                out.append(Monomial(tuple(sorted(d.items())), od))
    return sorted(out, key=Monomial.sort_key)


def monomials_up_to(sig: Signature, cap: int, modes: Iterable[int] = (0,)) -> list[Monomial]:
    modes = list(modes)
    out = []
    for s in range(cap + 1):
        out += monomials_of_degree(sig, s, modes)
    return out


# -- text grammar ------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<var>[xy])(?P<idx>\d+)(?:\((?P<mode>[-−]?\d+)\))?"
    r"|(?P<mu>mu)|(?P<num>\d+)|(?P<op>[-−+*/^()]))"
)


def _tokenize(text: str) -> list[tuple]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse element near {text[pos:]!r}")
        pos = m.end()
        if m.group("var"):
            mode = m.group("mode")
            out.append(("var", m.group("var"), int(m.group("idx")),
                        None if mode is None else int(mode.replace("−", "-"))))
        elif m.group("mu"):
            out.append(("mu",))
        elif m.group("num"):
            out.append(("num", int(m.group("num"))))
        else:
            out.append(("op", m.group("op").replace("−", "-")))
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, sig: Signature, tokens: list):
        self.sig, self.toks, self.i = sig, tokens, 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take_op(self, op: str) -> bool:
        t = self.peek()
        if t is not None and t[0] == "op" and t[1] == op:
            self.i += 1
            return True
        return False

    def expr(self) -> Element:
        neg = self.take_op("-")
        if not neg:
            self.take_op("+")
        out = self.term()
        if neg:
            out = -out
        while True:
            if self.take_op("+"):
                out = out + self.term()
            elif self.take_op("-"):
                out = out - self.term()
            else:
                return out

    def term(self) -> Element:
        out = self.power()
        while True:
            if self.take_op("*"):
                out = out * self.power()
            elif self.take_op("/"):
                den = self.power()
                if len(den) != 1 or UNIT not in den.terms or not den.coeff(UNIT).is_const():
                    raise ValueError("division only by nonzero rational constants")
                out = out.scale(Poly.const(Fraction(1) / Fraction(den.coeff(UNIT).const_value())))
            else:
                return out

    def power(self) -> Element:
        base = self.atom()
        if self.take_op("^"):
            t = self.peek()
            if t is None or t[0] != "num":
                raise ValueError("exponent must be a nonnegative integer")
            self.i += 1
            out = Element.unit()
            for _ in range(t[1]):
                out = out * base
            return out
        return base

    def atom(self) -> Element:
        t = self.peek()
        if t is None:
            raise ValueError("unexpected end of element text")
        self.i += 1
        if t[0] == "num":
            return Element.of(UNIT, Poly.const(t[1]))
        if t[0] == "mu":
            return Element.of(UNIT, MU)
        if t[0] == "var":
            _, kind, idx, mode = t
            if mode is not None and not self.sig.affine:
                raise ValueError("mode suffix given in a non-affine signature")
            v = Variable(EVEN if kind == "x" else ODD, idx, mode or 0)
            self.sig.check_var(v)
            return Element.var(v)
        if t == ("op", "("):
            out = self.expr()
            if not self.take_op(")"):
                raise ValueError("unbalanced parenthesis")
            return out
        if t == ("op", "-"):
            return -self.power()
        raise ValueError(f"unexpected token {t}")


def parse_element(sig: Signature, text: str) -> Element:
    """Parse the exchange grammar, e.g. ``2*(mu - 1) * x2 + y1(-2)*y3(0)``."""
    p = _Parser(sig, _tokenize(text))
    out = p.expr()
    if p.peek() is not None:
        raise ValueError(f"trailing input in element text {text!r}")
    return out


def parse_monomial(sig: Signature, text: str) -> Monomial:
    e = parse_element(sig, text)
    if len(e) != 1:
        raise ValueError(f"{text!r} is not a single monomial")
    (mono, c), = e.terms.items()
    if c != ONE:
        raise ValueError(f"{text!r} is not a monic canonical monomial")
    return mono


def format_element(sig: Signature, e: Element) -> str:
    return e.text(sig.affine)


__all__ = [
    "EVEN", "ODD", "Signature", "Variable", "Monomial", "Element", "UNIT", "x", "y",
    "monomial", "make_monomial", "mono_mul", "partial", "mul_var", "specialize_mu",
    "monomials_of_degree", "monomials_up_to", "parse_element", "parse_monomial",
    "format_element", "linear_map", "mu_value", "parse_rational",
]
