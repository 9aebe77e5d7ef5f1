"""Level-zero action of the affinization on the mode-carrying algebra.

A generator is E_{i,j} (x) t^r, the central element K (acting as 0), or the
derivation d (acting as D, the total-mode operator).  The formally infinite
mode sums in the operators collapse on each monomial to the finitely many
modes actually present, so no truncation is involved in applying them.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .core import (
    EVEN,
    UNIT,
    Element,
    Monomial,
    Signature,
    Variable,
    monomials_up_to,
    mu_value,
    mul_var,
    partial,
)
from .finite import ReachResult, _MonoCache, gl_superbracket, span_reach
from .poly import MU, Poly


class AffineGenerator(NamedTuple):
    kind: str  # "E", "K" or "d"
    i: int = 0
    j: int = 0
    mode: int = 0

    def text(self) -> str:
        if self.kind == "E":
            return f"e[{self.i},{self.j}]({self.mode})"
        return self.kind


def E(i: int, j: int, r: int = 0) -> AffineGenerator:
    return AffineGenerator("E", i, j, r)


K = AffineGenerator("K")
d = AffineGenerator("d")


def _require_affine(sig: Signature) -> None:
    if not sig.affine:
        raise ValueError("operation needs an affine signature")


def _check_gen(sig: Signature, g: AffineGenerator) -> None:
    if g.kind == "E":
        sig.check_index(g.i)
        sig.check_index(g.j)
    elif g.kind not in ("K", "d"):
        raise ValueError(f"unknown generator kind {g.kind!r}")


def parity(sig: Signature, g: AffineGenerator) -> int:
    if g.kind != "E":
        return 0
    return (sig.parity(g.i) + sig.parity(g.j)) % 2


# -- operators ---------------------------------------------------------------------


def _present(mono: Monomial, parity_: int, index: int) -> list[Variable]:
    """Distinct variables of the given kind (any mode) occurring in mono."""
    if parity_ == EVEN:
        return [v for v, _ in mono.even if v.index == index]
    return [v for v in mono.odd if v.index == index]


def _shifted(v: Variable, r: int) -> Variable:
    return Variable(v.parity, v.index, v.mode + r)


def _e11_mono(mono: Monomial, r: int, mu) -> Element:
    out = Element.of(mono, mu_value(mu)) if r == 0 else Element()
    base = Element.of(mono)
    for v in {w for w, _ in mono.even} | set(mono.odd):
        out = out - mul_var(_shifted(v, r), partial(v, base))
    return out


def _e11(e: Element, r: int, mu) -> Element:
    out = Element()
    for mono, c in e.terms.items():
        out = out + _e11_mono(mono, r, mu).scale(c)
    return out


def apply_D(e: Element) -> Element:
    """Scale each monomial by the sum of its modes (counted with exponent)."""
    return Element({mono: c * mono.mode_sum() for mono, c in e.terms.items()})


def apply_affine(sig: Signature, g: AffineGenerator, e: Element, mu=None) -> Element:
    """Image of ``e`` under the operator attached to ``g`` (K acts as 0)."""
    _require_affine(sig)
    _check_gen(sig, g)
    if g.kind == "K":
        return Element()
    if g.kind == "d":
        return apply_D(e)
    i, j, r = g.i, g.j, g.mode
    if j == 1:
        if i == 1:
            return _e11(e, r, mu)
        return mul_var(sig.var_for_index(i, r), e)
    target = sig.var_for_index(j)
    out = Element()
    for mono, c in e.terms.items():
        base = Element.of(mono, c)
        for v in _present(mono, target.parity, target.index):
            stripped = partial(v, base)
            if i == 1:
                out = out + _e11(stripped, r + v.mode, mu)
            else:
                out = out + mul_var(sig.var_for_index(i, r + v.mode), stripped)
    return out


# -- the affine bracket ------------------------------------------------------------


def str_form(sig: Signature, a: tuple, b: tuple) -> int:
    """(E_ab, E_cd) = str(E_ab E_cd) = (-1)^{|a|} d_bc d_ad."""
    (i, j), (k, l) = a, b
    if j == k and i == l:
        return -1 if sig.parity(i) else 1
    return 0


def affine_superbracket(sig: Signature, a: AffineGenerator, b: AffineGenerator) -> dict:
    """[a, b] as {generator: coefficient}, central term included."""
    _check_gen(sig, a)
    _check_gen(sig, b)
    if a.kind == "K" or b.kind == "K":
        return {}
    if a.kind == "d" and b.kind == "d":
        return {}
    if a.kind == "d":
        return {b: b.mode} if b.mode else {}
    if b.kind == "d":
        return {a: -a.mode} if a.mode else {}
    out: dict = {}
    r = a.mode + b.mode
    for (i, j), c in gl_superbracket(sig, (a.i, a.j), (b.i, b.j)).items():
        out[E(i, j, r)] = c
    if r == 0 and a.mode:
        c = a.mode * str_form(sig, (a.i, a.j), (b.i, b.j))
        if c:
            out[K] = c
    return out


def all_generators(sig: Signature, modes: Sequence[int], with_central: bool = True) -> list:
    out = [E(i, j, r) for i in range(1, sig.size + 1) for j in range(1, sig.size + 1) for r in modes]
    if with_central:
        out += [K, d]
    return out


@dataclass
class AffineHomReport:
    signature: Signature
    mode_window: tuple
    bracket_mode_range: tuple
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _sweep(sig: Signature, gens: list, monos: list) -> tuple[int, list]:
    act = _MonoCache(sig, apply_affine)
    par = {g: parity(sig, g) for g in gens}
    brackets = {(g, h): affine_superbracket(sig, g, h) for g in gens for h in gens}
    checked, violations = 0, []
    for v in monos:
        once = {g: act.mono(g, v) for g in gens}
        for g in gens:
            for h in gens:
                lhs = act(g, once[h])
                other = act(h, once[g])
                lhs = lhs + other if par[g] and par[h] else lhs - other
                rhs = Element()
                for gen, c in brackets[(g, h)].items():
                    if gen.kind == "K":
                        continue
                    img = once.get(gen)
                    if img is None:
                        img = act.mono(gen, v)
                    rhs = rhs + img.scale(c)
                checked += 1
                if lhs != rhs:
                    violations.append(
                        {"g": g.text(), "h": h.text(), "monomial": v.text(True),
                         "lhs": lhs.text(True), "rhs": rhs.text(True)}
                    )
    return checked, violations


def _sweep_star(args):
    return _sweep(*args)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("FREEFIELD_WORKERS", "1")))
    except ValueError:
        return 1


def verify_affine_homomorphism(sig: Signature, mode_window=(-2, 2), degree_cap: int = 3,
                               bracket_mode_range=(-2, 2), workers: int | None = None) -> AffineHomReport:
    """Check the level-zero bracket relations on every basis monomial in the window.

    K is sent to 0, so the central term of the bracket drops out.  The pairs
    include d against every generator.  With ``workers > 1`` (default from
    FREEFIELD_WORKERS) monomial chunks are swept in separate processes and the
    results joined in canonical monomial order.
    """
    _require_affine(sig)
    lo, hi = mode_window
    blo, bhi = bracket_mode_range
    if lo > 0 or hi < 0 or blo > bhi:
        raise ValueError("mode window must contain 0 and bracket range must be ordered")
    gens = all_generators(sig, range(blo, bhi + 1))
    monos = monomials_up_to(sig, degree_cap, range(lo, hi + 1))
    report = AffineHomReport(sig, tuple(mode_window), tuple(bracket_mode_range))
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(monos) < 2 * workers:
        parts = [_sweep(sig, gens, monos)]
    else:
        chunks = [monos[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_sweep_star, [(sig, gens, c) for c in chunks]))
    order = {v.text(True): k for k, v in enumerate(monos)}
    for checked, violations in parts:
        report.checked += checked
        report.violations += violations
    report.violations.sort(key=lambda r: order[r["monomial"]])
    return report


# -- weights ------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineWeight:
    diag: tuple
    level: int
    d_eigen: int


def affine_weight_of(sig: Signature, v: Monomial) -> AffineWeight:
    """Closed form: (mu - deg, k_2, ..., k_{m+n}), level 0, d = total mode."""
    _require_affine(sig)
    counts = [0] * (sig.size + 1)
    for var in v.factors():
        counts[sig.index_of(var)] += 1
    diag = (MU - v.degree,) + tuple(Poly.const(c) for c in counts[2:])
    return AffineWeight(diag, 0, v.mode_sum())


def affine_eigenvalues(sig: Signature, v: Monomial) -> AffineWeight:
    """The same weight read off by applying E_{i,i}(0), K and D."""
    ev = Element.of(v)
    diag = []
    for i in range(1, sig.size + 1):
        img = apply_affine(sig, E(i, i, 0), ev)
        if set(img.terms) - {v}:
            raise AssertionError(f"E_{i},{i}(0) does not act diagonally on {v.text(True)}")
        diag.append(img.coeff(v))
    level = apply_affine(sig, K, ev).coeff(v)
    dval = apply_D(ev).coeff(v)
    return AffineWeight(tuple(diag), int(level.const_value()), int(dval.const_value()))


# -- irreducibility ----------------------------------------------------------------


def _in_window(e: Element, lo: int, hi: int, cap: int) -> bool:
    for mono in e.terms:
        if mono.degree > cap:
            return False
        for v in mono.factors():
            if not lo <= v.mode <= hi:
                return False
    return True


def shift_order(lo: int, hi: int) -> list[int]:
    """Shifts that can move a mode within [lo, hi]; smallest |r| first, ties to r > 0."""
    span = hi - lo
    return sorted(range(-span, span + 1), key=lambda r: (abs(r), -r))


def reach_generators(sig: Signature, window) -> list[AffineGenerator]:
    """Degree-nonraising generators: e_{1,1}(r), e_{1,j}(r), e_{i,j}(r) with i, j >= 2."""
    lo, hi = window
    out = []
    for r in shift_order(lo, hi):
        for j in range(2, sig.size + 1):
            out.append(E(1, j, r))
        out.append(E(1, 1, r))
        for i in range(2, sig.size + 1):
            for j in range(2, sig.size + 1):
                out.append(E(i, j, r))
    return out


def reach_unit_affine(start, sig: Signature, mu, window=(-2, 2), step_cap: int | None = 8) -> ReachResult:
    """Search for 1 in the submodule generated by ``start`` at a nonzero mu.

    Only degree-nonraising generators are used and every image must keep all
    modes inside the window, so a positive answer is a genuine certificate.
    """
    _require_affine(sig)
    if mu is None:
        raise ValueError("reach_unit_affine needs a specialized mu")
    mu = Fraction(mu)
    if mu == 0:
        raise ValueError("mu = 0 admits no positive certificate; use mu_zero_witness")
    lo, hi = window
    if not lo <= 0 <= hi:
        raise ValueError(f"mode window {window} must contain 0")
    start_el = Element.of(start) if isinstance(start, Monomial) else start
    cap = max((m.degree for m in start_el.terms), default=0)
    if not _in_window(start_el, lo, hi, cap):
        raise ValueError("start has modes outside the window")
    start_el = Element({k: Poly.const(c.evaluate(mu)) for k, c in start_el.terms.items()})
    act = _MonoCache(sig, apply_affine, mu)
    return span_reach(start_el, reach_generators(sig, window), act,
                      lambda e: _in_window(e, lo, hi, cap), Element.unit(), step_cap)


@dataclass
class MuZeroReport:
    signature: Signature
    mode_window: tuple
    degree_cap: int
    basis_size: int = 0
    images_checked: int = 0
    images_in_truncation: int = 0
    leaks: list = field(default_factory=list)  # images with a nonzero vacuum component
    degree_one_nonzero: list = field(default_factory=list)  # e_{1,j}(r) x(s) != 0

    @property
    def ok(self) -> bool:
        return self.basis_size > 0 and not self.leaks and not self.degree_one_nonzero


def mu_zero_witness(sig: Signature, window=(-2, 2), degree_cap: int = 2) -> MuZeroReport:
    """At mu = 0 the span of all monomials of degree >= 1 is a proper submodule.

    Applies every generator (modes able to act within the window, plus d) to
    every basis monomial of degree 1..cap and checks that no image has a
    component along 1.  Separately checks that each e_{1,j}(r) kills every
    degree-one monomial outright.
    """
    _require_affine(sig)
    lo, hi = window
    if not lo <= 0 <= hi:
        raise ValueError(f"mode window {window} must contain 0")
    gens = all_generators(sig, shift_order(lo, hi))
    act = _MonoCache(sig, apply_affine, Fraction(0))
    basis = [v for v in monomials_up_to(sig, degree_cap, range(lo, hi + 1)) if v.degree >= 1]
    report = MuZeroReport(sig, (lo, hi), degree_cap, len(basis))
    for v in basis:
        for g in gens:
            img = act.mono(g, v)
            report.images_checked += 1
            if _in_window(img, lo, hi, degree_cap):
                report.images_in_truncation += 1
            if img.coeff(UNIT):
                report.leaks.append({"g": g.text(), "monomial": v.text(True), "image": img.text(True)})
            if v.degree == 1 and g.kind == "E" and g.i == 1 and g.j >= 2 and img:
                report.degree_one_nonzero.append({"g": g.text(), "monomial": v.text(True)})
    return report
