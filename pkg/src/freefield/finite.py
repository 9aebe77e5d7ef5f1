"""The gl(m|n) action on W by first-order differential operators.

Generators are matrix-unit index pairs ``(i, j)`` with 1 <= i, j <= m+n.
Index 1 is special: E_{1,1} acts as ``mu`` minus the Euler operator, E_{i,1}
multiplies by the variable attached to i, and E_{1,j} differentiates by the
variable attached to j and then applies E_{1,1}.  Every other E_{i,j} is the
substitution operator ``var_i * d/d var_j``.

``mu=None`` everywhere means mu stays a formal parameter; pass an exact
rational to act with a specialized value.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Sequence

from .core import (
    EVEN,
    ODD,
    UNIT,
    Element,
    Monomial,
    Signature,
    Variable,
    linear_map,
    monomials_of_degree,
    monomials_up_to,
    mu_value,
    mul_var,
    partial,
)
from .linalg import SpanTracker, nullspace
from .poly import MU, ONE, Poly, RatFunc, poly_gcd

GlGenerator = tuple  # (i, j)


def _require_finite(sig: Signature) -> None:
    if sig.affine:
        raise ValueError("operation needs a non-affine signature")


def generators(sig: Signature) -> list[GlGenerator]:
    return [(i, j) for i in range(1, sig.size + 1) for j in range(1, sig.size + 1)]


def gen_parity(sig: Signature, g: GlGenerator) -> int:
    return (sig.parity(g[0]) + sig.parity(g[1])) % 2


def gl_superbracket(sig: Signature, a: GlGenerator, b: GlGenerator) -> dict:
    """[E_ab, E_cd] = d_bc E_ad - (-1)^{p(E_ab) p(E_cd)} d_da E_cb."""
    (i, j), (k, l) = a, b
    for idx in (i, j, k, l):
        sig.check_index(idx)
    sign = -1 if gen_parity(sig, a) * gen_parity(sig, b) else 1
    out: dict = {}
    if j == k:
        out[(i, l)] = out.get((i, l), 0) + 1
    if l == i:
        out[(k, j)] = out.get((k, j), 0) - sign
    return {g: c for g, c in out.items() if c}


# -- the operators ----------------------------------------------------------------


def _euler_part(sig: Signature, e: Element) -> Element:
    """sum_s x_s d/dx_s + sum_t y_t d/dy_t."""
    out = Element()
    for v in sig.variables():
        out = out + mul_var(v, partial(v, e))
    return out


def _e11(sig: Signature, e: Element, mu) -> Element:
    return e.scale(mu_value(mu)) - _euler_part(sig, e)


def apply_gl(sig: Signature, g: GlGenerator, e: Element, mu=None) -> Element:
    """Image of ``e`` under the operator realizing E_{i,j}."""
    _require_finite(sig)
    i, j = g
    sig.check_index(i)
    sig.check_index(j)
    if i == 1 and j == 1:
        return _e11(sig, e, mu)
    if j == 1:
        return mul_var(sig.var_for_index(i), e)
    if i == 1:
        return _e11(sig, partial(sig.var_for_index(j), e), mu)
    return mul_var(sig.var_for_index(i), partial(sig.var_for_index(j), e))


class _MonoCache:
    """Memoized action on basis monomials, extended linearly."""

    def __init__(self, sig: Signature, act: Callable, mu=None):
        self.sig, self.act, self.mu = sig, act, mu
        self.cache: dict = {}

    def mono(self, g, mono: Monomial) -> Element:
        key = (g, mono)
        out = self.cache.get(key)
        if out is None:
            out = self.act(self.sig, g, Element.of(mono), self.mu)
            self.cache[key] = out
        return out

    def __call__(self, g, e: Element) -> Element:
        return linear_map(e, lambda mono: self.mono(g, mono))


@dataclass
class HomReport:
    signature: Signature
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_finite_homomorphism(sig: Signature, degree_cap: int) -> HomReport:
    """Check [phi(g), phi(h)] = phi([g, h]) on every basis monomial up to the cap."""
    _require_finite(sig)
    gens = generators(sig)
    act = _MonoCache(sig, apply_gl)
    report = HomReport(sig)
    for v in monomials_up_to(sig, degree_cap):
        once = {g: act.mono(g, v) for g in gens}
        for g in gens:
            for h in gens:
                sign = -1 if gen_parity(sig, g) * gen_parity(sig, h) else 1
                lhs = act(g, once[h])
                other = act(h, once[g])
                lhs = lhs - other if sign > 0 else lhs + other
                rhs = Element()
                for gen, c in gl_superbracket(sig, g, h).items():
                    rhs = rhs + once[gen].scale(c)
                report.checked += 1
                if lhs != rhs:
                    report.violations.append(
                        {"g": list(g), "h": list(h), "monomial": v.text(),
                         "lhs": lhs.text(), "rhs": rhs.text()}
                    )
    return report


# -- weights ------------------------------------------------------------------------


def _exponents(sig: Signature, v: Monomial) -> tuple[list[int], list[int]]:
    a = [v.exponent(Variable(EVEN, i)) for i in range(2, sig.m + 1)]
    b = [v.exponent(Variable(ODD, k)) for k in range(1, sig.n + 1)]
    return a, b


def weight_of(sig: Signature, v: Monomial) -> tuple[Poly, ...]:
    """Eigenvalues under E_{1,1}, ..., E_{m+n,m+n}: (mu - deg, a_2..a_m | b_1..b_n)."""
    _require_finite(sig)
    a, b = _exponents(sig, v)
    return (MU - v.degree,) + tuple(Poly.const(t) for t in a + b)


def diagonal_eigenvalues(sig: Signature, v: Monomial) -> tuple[Poly, ...]:
    """Same weight, read off by actually applying the diagonal operators."""
    out = []
    ev = Element.of(v)
    for i in range(1, sig.size + 1):
        img = apply_gl(sig, (i, i), ev)
        if set(img.terms) - {v}:
            raise AssertionError(f"E_{i},{i} does not act diagonally on {v.text()}")
        out.append(img.coeff(v))
    return tuple(out)


def sl_weight_of(sig: Signature, v: Monomial) -> tuple[Poly, ...]:
    """Weight on {E11 - Eii : i=2..m} then {E11 + E_{m+k,m+k} : k=1..n}."""
    w = weight_of(sig, v)
    out = [w[0] - w[i - 1] for i in range(2, sig.m + 1)]
    out += [w[0] + w[sig.m + k - 1] for k in range(1, sig.n + 1)]
    return tuple(out)


def sl_weight_standard(sig: Signature, v: Monomial) -> tuple[Poly, ...]:
    """Weight on h_1..h_{m-1}, h_m (if n >= 1), h'_1..h'_{n-1}.

    h_i = E_ii - E_{i+1,i+1}, h_m = E_mm + E_{m+1,m+1},
    h'_j = E_{m+j,m+j} - E_{m+j+1,m+j+1}.
    """
    w = weight_of(sig, v)
    m, n = sig.m, sig.n
    out = [w[i - 1] - w[i] for i in range(1, m)]
    if n >= 1:
        out.append(w[m - 1] + w[m])
    out += [w[m + j - 1] - w[m + j] for j in range(1, n)]
    return tuple(out)


def weight_collisions(sig: Signature, degree_cap: int) -> list[tuple[Monomial, Monomial]]:
    """Pairs of distinct monomials sharing an sl-weight, lower-degree member within the cap.

    Equal sl-weights force |deg difference| <= 1 (the odd exponents differ by at
    most one), so searching one degree past the cap finds every partner.
    """
    _require_finite(sig)
    groups: dict = {}
    for v in monomials_up_to(sig, degree_cap + 1):
        groups.setdefault(sl_weight_of(sig, v), []).append(v)
    pairs = []
    for members in groups.values():
        members.sort(key=Monomial.sort_key)
        for p, q in itertools.combinations(members, 2):
            if p.degree <= degree_cap:
                pairs.append((p, q))
    pairs.sort(key=lambda pq: (pq[0].sort_key(), pq[1].sort_key()))
    return pairs


# -- singular vectors ------------------------------------------------------------


def simple_raising(sig: Signature) -> list[GlGenerator]:
    return [(i, i + 1) for i in range(1, sig.size)]


def _clear_denominators(vec: Sequence[RatFunc]) -> list[Poly]:
    den = ONE
    for c in vec:
        if c:
            den = den * c.den.divmod(poly_gcd(den, c.den))[0]
    polys = [c.num * den.divmod(c.den)[0] if c else Poly() for c in vec]
    g = Poly()
    for p in polys:
        g = poly_gcd(g, p) if p else g
    polys = [p.divmod(g)[0] if p else p for p in polys]
    lead = next(p for p in polys if p)
    return [p / lead.content() for p in polys]


def singular_vectors(sig: Signature, degree_cap: int, mu=None) -> list[tuple[tuple, Element]]:
    """Basis of vectors of degree <= cap killed by every simple raising operator.

    Solved one sl-weight space at a time.  ``mu=None`` solves over Q(mu), so a
    reported vector is singular for generic mu; otherwise mu is specialized
    first and the system is solved over Q.
    """
    _require_finite(sig)
    raising = simple_raising(sig)
    groups: dict = {}
    for v in monomials_up_to(sig, degree_cap):
        groups.setdefault(sl_weight_of(sig, v), []).append(v)
    out = []
    for wt, members in groups.items():
        members.sort(key=Monomial.sort_key)
        eqs: dict = {}
        for col, v in enumerate(members):
            for g in raising:
                for mono, c in apply_gl(sig, g, Element.of(v)).terms.items():
                    eqs.setdefault((g, mono), [Poly()] * len(members))[col] = c
        if mu is None:
            rows = [[RatFunc(c) for c in row] for row in eqs.values()]
            basis = nullspace(rows, len(members), RatFunc(1))
            vecs = [_clear_denominators(b) for b in basis]
        else:
            val = Fraction(mu)
            rows = [[Fraction(c.evaluate(val)) for c in row] for row in eqs.values()]
            basis = nullspace(rows, len(members), Fraction(1))
            vecs = []
            for b in basis:
                lead = next(c for c in b if c)
                vecs.append([Poly.const(c / lead) for c in b])
        if mu is not None:
            wt = tuple(Poly.const(w.evaluate(Fraction(mu))) for w in wt)
        for vec in vecs:
            out.append((wt, Element(dict(zip(members, vec)))))
    out.sort(key=lambda pair: min(m.sort_key() for m in pair[1].terms))
    return out


# -- the maximal submodule V(mu) ---------------------------------------------------


def _check_vmu(sig: Signature, mu) -> int:
    if int(mu) != mu or mu < 0:
        raise ValueError(f"mu must be a nonnegative integer, got {mu}")
    mu = int(mu)
    if sig.m == 1 and mu >= sig.n:
        raise ValueError(f"for m = 1 need mu <= n - 1 = {sig.n - 1}; W is irreducible at mu = {mu}")
    return mu


def vmu_generator(sig: Signature, mu) -> Monomial:
    """x_2^(mu+1) for m >= 2, y_1 ... y_(mu+1) for m = 1."""
    _require_finite(sig)
    mu = _check_vmu(sig, mu)
    if sig.m >= 2:
        return Monomial(((Variable(EVEN, 2), mu + 1),), ())
    return Monomial((), tuple(Variable(ODD, k) for k in range(1, mu + 2)))


def vmu_contains(v: Monomial, mu, sig: Signature | None = None) -> bool:
    """V(mu) is spanned by the monomials of degree >= mu + 1."""
    if sig is not None:
        mu = _check_vmu(sig, mu)
    elif int(mu) != mu or mu < 0:
        raise ValueError(f"mu must be a nonnegative integer, got {mu}")
    return v.degree >= mu + 1


# -- reachability of the vacuum ----------------------------------------------------


@dataclass
class ReachResult:
    reached: bool
    certificate: list = field(default_factory=list)  # [(coeff, steps)]
    span_dim: int = 0

    def as_dict(self, fmt: Callable = str) -> dict:
        return {
            "reached": self.reached,
            "span_dim": self.span_dim,
            "certificate": [
                {"coeff": str(c), "steps": [fmt(g) for g in steps]} for c, steps in self.certificate
            ],
        }


def _as_fraction_vec(e: Element) -> dict:
    return {k: Fraction(v.const_value()) for k, v in e.terms.items()}


def apply_steps(act: Callable, steps: Iterable, e: Element) -> Element:
    for g in steps:
        e = act(g, e)
    return e


def span_reach(start: Element, gens: Sequence, act: Callable, admissible: Callable,
               target: Element, step_cap: int | None = None) -> ReachResult:
    """Close span{start} under ``gens`` and test whether ``target`` lies in it.

    Images rejected by ``admissible`` are dropped whole, so the computed span is
    always contained in the true cyclic submodule.
    """
    tracker = SpanTracker(key=Monomial.sort_key)
    target_vec = _as_fraction_vec(target)
    words: list[tuple] = [()]
    tracker.insert(_as_fraction_vec(start), 0)
    queue = deque([(0, start)])
    while True:
        combo = tracker.express(target_vec)
        if combo is not None:
            cert = [(c, words[k]) for k, c in sorted(combo.items())]
            return ReachResult(True, cert, len(tracker))
        if not queue:
            return ReachResult(False, [], len(tracker))
        label, e = queue.popleft()
        if step_cap is not None and len(words[label]) >= step_cap:
            continue
        for g in gens:
            img = act(g, e)
            if not img or not admissible(img):
                continue
            new_label = len(words)
            if tracker.insert(_as_fraction_vec(img), new_label) is None:
                continue
            words.append(words[label] + (g,))
            queue.append((new_label, img))
            if len(img) == 1 and UNIT in img.terms:
                break


def proof_order_steps(sig: Signature, v: Monomial) -> list[GlGenerator]:
    """Generator sequence (applied first to last) carrying v(a;b) to a multiple of 1.

    m >= 2: e_{2,3}^{a_3} ... e_{2,m}^{a_m}, then e_{2,m+k}^{b_k}, then e_{1,2}^s.
    m = 1: e_{1,1+i_1}, e_{1,1+i_2}, ... for v = y_{i_1} ... y_{i_k}.
    """
    a, b = _exponents(sig, v)
    if sig.m >= 2:
        steps = []
        for i, ai in zip(range(3, sig.m + 1), a[1:]):
            steps += [(2, i)] * ai
        for k, bk in enumerate(b, start=1):
            steps += [(2, sig.m + k)] * bk
        return steps + [(1, 2)] * v.degree
    return [(1, 1 + k) for k, bk in enumerate(b, start=1) if bk]


def reach_unit_finite(start, sig: Signature, mu) -> ReachResult:
    """Decide whether 1 lies in the submodule generated by ``start`` at this mu."""
    _require_finite(sig)
    if mu is None:
        raise ValueError("reach_unit_finite needs a specialized mu")
    mu = Fraction(mu)
    if isinstance(start, Monomial):
        start_el = Element.of(start)
        act = _MonoCache(sig, apply_gl, mu)
        steps = proof_order_steps(sig, start)
        img = apply_steps(act, steps, start_el)
        if len(img) == 1 and UNIT in img.terms:
            c = Fraction(img.coeff(UNIT).const_value())
            return ReachResult(True, [(1 / c, tuple(steps))], 0)
    else:
        start_el = start
    start_el = Element({k: Poly.const(c.evaluate(mu)) for k, c in start_el.terms.items()})
    cap = max((m.degree for m in start_el.terms), default=0)
    act = _MonoCache(sig, apply_gl, mu)
    gens = generators(sig)
    return span_reach(start_el, gens, act,
                      lambda e: all(m.degree <= cap for m in e.terms), Element.unit())


# -- characters -------------------------------------------------------------------


def dim_Ws(sig: Signature, s: int) -> int:
    """Number of basis monomials of degree s."""
    _require_finite(sig)
    if s < 0:
        return 0
    return len(monomials_of_degree(sig, s))


def dim_Ws_formula(sig: Signature, s: int) -> int:
    """sum_k C(n,k) C(s-k+m-2, m-2); for m = 1 the inner factor is [s == k]."""
    total = 0
    for k in range(0, min(sig.n, s) + 1):
        if sig.m == 1:
            inner = 1 if s == k else 0
        else:
            inner = comb(s - k + sig.m - 2, sig.m - 2)
        total += comb(sig.n, k) * inner
    return total


def monomial_to_roots(sig: Signature, v: Monomial) -> tuple[int, ...]:
    """Coordinates t with weight(v) = mu eps_1 - sum t_i alpha_i.

    t_1 = deg, and t_j - t_{j+1} is the exponent of the variable attached to j+1.
    """
    a, b = _exponents(sig, v)
    steps = a + b  # t_j - t_{j+1} for j = 1..m+n-1
    t, rest = [], v.degree
    for d in steps:
        t.append(rest)
        rest -= d
    return tuple(t)


def in_P(sig: Signature, t: Sequence[int]) -> bool:
    """Membership in the character support set: nonincreasing, nonnegative,
    and steps t_j - t_{j+1} in {0, 1} for j >= m (with t_{m+n} = 0)."""
    L = sig.size - 1
    if len(t) != L:
        return False
    full = list(t) + [0]
    for j in range(1, L + 1):
        d = full[j - 1] - full[j]
        if d < 0:
            return False
        if j >= sig.m and d > 1:
            return False
    return True


def enumerate_P(sig: Signature, t1_cap: int) -> list[tuple[int, ...]]:
    """All t in P with t_1 <= cap, by brute force over the box [0, cap]^(m+n-1)."""
    _require_finite(sig)
    L = sig.size - 1
    if L == 0:
        return [()]
    return [t for t in itertools.product(range(t1_cap + 1), repeat=L) if in_P(sig, t)]


def enumerate_Q(sig: Signature, mu, t1_cap: int) -> list[tuple[int, ...]]:
    """Support of the character of V(mu): the part of P with t_1 >= mu + 1."""
    mu = _check_vmu(sig, mu)
    return [t for t in enumerate_P(sig, t1_cap) if t and t[0] >= mu + 1]


def quotient_character(sig: Signature, mu) -> dict[tuple, int]:
    """Weights of W / V(mu) (mu substituted) with multiplicities."""
    _require_finite(sig)
    mu = _check_vmu(sig, mu)
    out: dict = {}
    for v in monomials_up_to(sig, mu):
        w = tuple(c.evaluate(mu) for c in weight_of(sig, v))
        out[w] = out.get(w, 0) + 1
    return out


# -- the degree-preserving subalgebra S ----------------------------------------------


@dataclass
class SpanCheck:
    ok: bool
    dim: int
    closure_dims: dict
    highest_weight_vector: Element | None

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "dim": self.dim,
            "closure_dims": {k.text(): d for k, d in self.closure_dims.items()},
            "highest_weight_vector": None if self.highest_weight_vector is None
            else self.highest_weight_vector.text(),
        }


def s_generators(sig: Signature) -> list[GlGenerator]:
    return [(i, j) for i in range(2, sig.size + 1) for j in range(2, sig.size + 1)]


def s_span_check(sig: Signature, s: int) -> SpanCheck:
    """W_s is irreducible under S = <e_ij : i, j >= 2> with the expected top vector."""
    _require_finite(sig)
    if s < 0:
        raise ValueError("degree must be nonnegative")
    if sig.m == 1 and s > sig.n:
        raise ValueError(f"W_{s} = 0 for m = 1 and s > n = {sig.n}")
    basis = monomials_of_degree(sig, s)
    gens = s_generators(sig)
    act = _MonoCache(sig, apply_gl)
    closure = {}
    for v in basis:
        closure[v] = _closure_dim(Element.of(v), gens, act)
    ok = all(d == len(basis) for d in closure.values())
    # S-singular vectors inside W_s
    raising = [(i, i + 1) for i in range(2, sig.size)]
    rows: dict = {}
    for col, v in enumerate(basis):
        for g in raising:
            for mono, c in act.mono(g, v).terms.items():
                rows.setdefault((g, mono), [Fraction(0)] * len(basis))[col] = Fraction(c.const_value())
    ns = nullspace(list(rows.values()), len(basis), Fraction(1))
    hw = None
    if len(ns) == 1:
        lead = next(c for c in ns[0] if c)
        hw = Element({mono: Poly.const(c / lead) for mono, c in zip(basis, ns[0])})
    expected = (Monomial(((Variable(EVEN, 2), s),), ()) if s else Monomial()) if sig.m >= 2 \
        else Monomial((), tuple(Variable(ODD, k) for k in range(1, s + 1)))
    ok = ok and hw is not None and hw == Element.of(expected)
    return SpanCheck(ok, len(basis), closure, hw)


def _closure_dim(start: Element, gens: Sequence, act: Callable) -> int:
    tracker = SpanTracker(key=Monomial.sort_key)
    tracker.insert(_as_fraction_vec(start), 0)
    queue = deque([start])
    label = 1
    while queue:
        e = queue.popleft()
        for g in gens:
            img = act(g, e)
            if img and tracker.insert(_as_fraction_vec(img), label) is not None:
                queue.append(img)
            label += 1
    return len(tracker)
