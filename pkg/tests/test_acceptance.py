"""Acceptance criteria, one test each.

Every check is exact (rational or Q[mu] equality, tolerance 0).  The only
non-exact quantities are the wall-clock budgets of the two sweeps, pinned
below.  Each test records a PASS/FAIL line that pytest prints in its terminal
summary; ``python3 tests/test_acceptance.py`` prints the same lines directly.
"""
import sys
import time
from fractions import Fraction
from math import comb, factorial
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402
from freefield.affine import mu_zero_witness, reach_unit_affine, verify_affine_homomorphism  # noqa: E402
from freefield.cli import cross_check  # noqa: E402
from freefield.core import UNIT, Element, Signature, make_monomial, monomials_up_to, x, y  # noqa: E402
from freefield.finite import (  # noqa: E402
    apply_gl, dim_Ws, enumerate_P, enumerate_Q, monomial_to_roots, reach_unit_finite, s_span_check,
    sl_weight_of, sl_weight_standard, singular_vectors, verify_finite_homomorphism, weight_collisions,
)
from freefield.poly import MU, falling_factorial  # noqa: E402

EXACT_TOL = 0  # all identities compared exactly
FINITE_SWEEP_BUDGET_S = 60.0
AFFINE_SWEEP_BUDGET_S = 300.0
CROSS_CHECK_COUNT = 200
CROSS_CHECK_SEED = 20240601


def record(num: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def mono(even=None, odd=()):
    return make_monomial(even or {}, odd)


# 1 -------------------------------------------------------------------------------


def check_finite_sweep():
    t0 = time.perf_counter()
    checked, bad = 0, 0
    for m, n in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)]:
        rep = verify_finite_homomorphism(Signature(m, n), 4)
        checked += rep.checked
        bad += len(rep.violations)
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < FINITE_SWEEP_BUDGET_S
    return ok, f"{checked} checks, {bad} violations, {dt:.1f}s of {FINITE_SWEEP_BUDGET_S:.0f}s"


def test_criterion_1_finite_homomorphism():
    ok, detail = check_finite_sweep()
    record(1, "finite homomorphism sweep", ok, detail)
    assert ok, detail


# 2 -------------------------------------------------------------------------------


def check_affine_sweep():
    t0 = time.perf_counter()
    checked, bad = 0, 0
    for m, n in [(1, 1), (2, 1), (2, 2)]:
        rep = verify_affine_homomorphism(Signature(m, n, True), (-2, 2), 3, (-2, 2))
        checked += rep.checked
        bad += len(rep.violations)
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < AFFINE_SWEEP_BUDGET_S
    return ok, f"{checked} checks incl. d, {bad} violations, {dt:.1f}s of {AFFINE_SWEEP_BUDGET_S:.0f}s"


def test_criterion_2_affine_homomorphism():
    ok, detail = check_affine_sweep()
    record(2, "affine level-zero homomorphism sweep", ok, detail)
    assert ok, detail


# 3 -------------------------------------------------------------------------------


def check_factorial():
    sig = Signature(2, 1)
    fails = []
    for s in range(1, 7):
        e = Element.of(mono({x(2): s}))
        for _ in range(s):
            e = apply_gl(sig, (1, 2), e)
        if e != Element.unit().scale(falling_factorial(s) * factorial(s)):
            fails.append(s)
    sig13 = Signature(1, 3)
    e = Element.of(mono(odd=[y(1), y(2), y(3)]))
    for g in [(1, 2), (1, 3), (1, 4)]:
        e = apply_gl(sig13, g, e)
    odd_ok = e == Element.unit().scale((MU - 2) * (MU - 1) * MU)
    return not fails and odd_ok, f"even s=1..6 failures {fails}, odd (1|3) {'ok' if odd_ok else e.text()}"


def test_criterion_3_factorial_identity():
    ok, detail = check_factorial()
    record(3, "factorial identities", ok, detail)
    assert ok, detail


# 4 -------------------------------------------------------------------------------


def _vectors(sig, cap, mu):
    return [v for _, v in singular_vectors(sig, cap, mu)]


def check_finite_dichotomy():
    s21, s12 = Signature(2, 1), Signature(1, 2)
    monos = monomials_up_to(s21, 4)
    unreached = [v.text() for v in monos if not reach_unit_finite(v, s21, Fraction(7, 2)).reached]
    sing2 = _vectors(s21, 4, 2) == [Element.unit(), Element.of(mono({x(2): 3}))]
    blocked = not reach_unit_finite(mono({x(2): 3}), s21, 2).reached
    sing12_1 = _vectors(s12, 4, 1) == [Element.unit(), Element.of(mono(odd=[y(1), y(2)]))]
    sing12_2 = _vectors(s12, 4, 2) == [Element.unit()]
    ok = not unreached and sing2 and blocked and sing12_1 and sing12_2
    detail = (f"(2|1) mu=7/2 reached {len(monos) - len(unreached)}/{len(monos)}; mu=2 singular {sing2}, "
              f"x2^3 blocked {blocked}; (1|2) mu=1 {sing12_1}, mu=2 {sing12_2}")
    return ok, detail


def test_criterion_4_finite_dichotomy():
    ok, detail = check_finite_dichotomy()
    record(4, "finite irreducibility dichotomy", ok, detail)
    assert ok, detail


# 5 -------------------------------------------------------------------------------


def check_weights():
    s21, s22 = Signature(2, 1), Signature(2, 2)
    monos = monomials_up_to(s21, 5)
    distinct = len({sl_weight_of(s21, v) for v in monos}) == len(monos)
    y12 = [y(1), y(2)]
    expected = [(mono({x(2): a + 1}), mono({x(2): a}, y12)) for a in range(4)]
    pairs_ok = weight_collisions(s22, 4) == expected
    triples_ok = True
    for a in range(6):
        checks = [
            (mono({x(2): a}), (MU - 2 * a, a, 0)),
            (mono({x(2): a}, [y(1)]), (MU - 2 * a - 1, a + 1, 1)),
            (mono({x(2): a}, [y(2)]), (MU - 2 * a - 1, a, -1)),
            (mono({x(2): a}, y12), (MU - 2 * a - 2, a + 1, 0)),
        ]
        triples_ok &= all(sl_weight_standard(s22, v) == w for v, w in checks)
    ok = distinct and pairs_ok and triples_ok
    return ok, f"(2|1) distinct {distinct}, (2|2) pairs {pairs_ok}, triples {triples_ok}"


def test_criterion_5_weight_spaces():
    ok, detail = check_weights()
    record(5, "weight spaces and collisions", ok, detail)
    assert ok, detail


# 6 -------------------------------------------------------------------------------


def check_characters():
    problems = []
    for m, n in [(2, 1), (2, 2), (3, 1)]:
        sig = Signature(m, n)
        coords = [monomial_to_roots(sig, v) for v in monomials_up_to(sig, 6)]
        if len(set(coords)) != len(coords) or sorted(coords) != enumerate_P(sig, 6):
            problems.append(f"bijection {m}|{n}")
        P = enumerate_P(sig, 6)
        if enumerate_Q(sig, 2, 6) != [t for t in P if t[0] >= 3]:
            problems.append(f"Q {m}|{n}")
        for mu in range(0, 7):
            below = [t for t in enumerate_P(sig, mu) if t not in set(enumerate_Q(sig, mu, mu))]
            if len(below) != sum(dim_Ws(sig, s) for s in range(mu + 1)):
                problems.append(f"P-Q count {m}|{n} mu={mu}")
    if dim_Ws(Signature(2, 2), 2) != 4:
        problems.append("dim W_2")
    for m, n in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 3)]:
        for s in range(7):
            formula = sum(comb(n, k) * comb(s - k + m - 2, m - 2) for k in range(min(n, s) + 1))
            if dim_Ws(Signature(m, n), s) != formula:
                problems.append(f"dim {m}|{n} s={s}")
    return not problems, f"problems {problems}" if problems else "bijection, Q, |P-Q|, dims all exact"


def test_criterion_6_characters():
    ok, detail = check_characters()
    record(6, "character combinatorics", ok, detail)
    assert ok, detail


# 7 -------------------------------------------------------------------------------


def check_s_span():
    fails = []
    for s in range(4):
        r = s_span_check(Signature(2, 1), s)
        top = Element.of(mono({x(2): s}) if s else UNIT)
        if not (r.ok and r.highest_weight_vector == top):
            fails.append(f"(2|1) s={s}")
    for s in range(3):
        r = s_span_check(Signature(1, 2), s)
        top = Element.of(mono(odd=[y(k) for k in range(1, s + 1)]))
        if not (r.ok and r.highest_weight_vector == top):
            fails.append(f"(1|2) s={s}")
    return not fails, f"failures {fails}"


def test_criterion_7_s_irreducibility():
    ok, detail = check_s_span()
    record(7, "S-irreducibility of W_s", ok, detail)
    assert ok, detail


# 8 -------------------------------------------------------------------------------


def check_affine_dichotomy():
    notes, ok = [], True
    for m, n in [(1, 1), (1, 2)]:
        sig = Signature(m, n, True)
        monos = monomials_up_to(sig, 2, range(-2, 3))
        for mu in (Fraction(1), Fraction(1, 2), Fraction(-3)):
            miss = [v for v in monos if not reach_unit_affine(v, sig, mu, (-2, 2)).reached]
            ok &= not miss
            notes.append(f"({m}|{n}) mu={mu}: {len(monos) - len(miss)}/{len(monos)}")
        rep = mu_zero_witness(sig, (-2, 2), 2)
        ok &= rep.ok
        notes.append(f"({m}|{n}) mu=0 witness {rep.ok}")
    sig = Signature(2, 1, True)
    r = reach_unit_affine(mono({x(2, -1): 1}, [y(1, 1)]), sig, 3, (-1, 1))
    ok &= r.reached
    notes.append(f"(2|1) x2(-1)y1(1) mu=3 {r.reached}")
    return ok, "; ".join(notes)


def test_criterion_8_affine_dichotomy():
    ok, detail = check_affine_dichotomy()
    record(8, "affine irreducibility dichotomy", ok, detail)
    assert ok, detail


# 9 -------------------------------------------------------------------------------


def check_cross_consistency():
    total = 0
    for m, n in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)]:
        total += len(cross_check(m, n, CROSS_CHECK_COUNT, CROSS_CHECK_SEED))
    return total == 0, f"{CROSS_CHECK_COUNT} seeded elements x 5 signatures, {total} mismatches"


def test_criterion_9_cross_consistency():
    ok, detail = check_cross_consistency()
    record(9, "mode-zero affine vs finite", ok, detail)
    assert ok, detail


if __name__ == "__main__":
    titles = {1: "finite homomorphism sweep", 2: "affine level-zero homomorphism sweep",
              3: "factorial identities", 4: "finite irreducibility dichotomy", 5: "weight spaces and collisions",
              6: "character combinatorics", 7: "S-irreducibility of W_s", 8: "affine irreducibility dichotomy",
              9: "mode-zero affine vs finite"}
    checks = [check_finite_sweep, check_affine_sweep, check_factorial, check_finite_dichotomy, check_weights,
              check_characters, check_s_span, check_affine_dichotomy, check_cross_consistency]
    results = []
    for num, fn in enumerate(checks, start=1):
        ok, detail = fn()
        record(num, titles[num], ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
