"""Command-line front end.  Every subcommand prints one JSON report on stdout.

Exit codes: 0 when the check passes or the query succeeds, 1 when a check
fails, 2 for usage errors.
"""
from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import affine, finite
from .core import (
    Element,
    Monomial,
    Signature,
    monomials_up_to,
    parse_element,
    parse_monomial,
)
from .poly import Poly, parse_rational

COMMANDS = (
    "verify-finite", "verify-affine", "weights", "collisions", "singular", "vmu",
    "character", "reach-finite", "reach-affine", "mu-zero", "span-check", "apply",
    "cross-check",
)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    m: int = 2
    n: int = 1
    mu: str = "symbolic"
    degree_cap: int = 4
    mode_window: tuple = (-2, 2)
    bracket_mode_range: tuple = (-2, 2)
    output: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.degree_cap < 0:
            raise UsageError("degree cap must be nonnegative")
        lo, hi = self.mode_window
        if not lo <= 0 <= hi:
            raise UsageError(f"mode window {lo}..{hi} must contain 0")
        blo, bhi = self.bracket_mode_range
        if blo > bhi:
            raise UsageError(f"bracket mode range {blo}..{bhi} is not ordered")
        if self.m < 1 or self.n < 0:
            raise UsageError("need m >= 1 and n >= 0")
        self.mu_value()

    def mu_value(self) -> Fraction | None:
        if self.mu == "symbolic":
            return None
        try:
            return parse_rational(self.mu)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc

    def signature(self, affine_: bool = False) -> Signature:
        return Signature(self.m, self.n, affine_)


def _weight_json(w) -> list:
    return [str(c) for c in w]


_GEN = re.compile(r"^\s*e\[(\d+),\s*(\d+)\](?:\(([-−]?\d+)\))?\s*$")


def parse_generator(text: str):
    """``e[i,j]`` (finite), ``e[i,j](r)`` (affine), ``K`` or ``d``."""
    t = text.strip()
    if t in ("K", "d"):
        return affine.AffineGenerator(t)
    m = _GEN.match(t)
    if not m:
        raise UsageError(f"cannot parse generator {text!r}")
    i, j = int(m.group(1)), int(m.group(2))
    if m.group(3) is None:
        return (i, j)
    return affine.E(i, j, int(m.group(3).replace("−", "-")))


def _fmt_gen(g) -> str:
    if isinstance(g, affine.AffineGenerator):
        return g.text()
    return f"e[{g[0]},{g[1]}]"


# -- subcommands -------------------------------------------------------------------


def cmd_verify_finite(cfg: RunConfig, args) -> tuple[bool, dict]:
    rep = finite.verify_finite_homomorphism(cfg.signature(), cfg.degree_cap)
    return rep.ok, {"checked": rep.checked, "violations": rep.violations}


def cmd_verify_affine(cfg: RunConfig, args) -> tuple[bool, dict]:
    rep = affine.verify_affine_homomorphism(cfg.signature(True), cfg.mode_window, cfg.degree_cap,
                                           cfg.bracket_mode_range)
    return rep.ok, {"checked": rep.checked, "violations": rep.violations,
                    "mode_window": list(cfg.mode_window),
                    "bracket_mode_range": list(cfg.bracket_mode_range)}


def cmd_weights(cfg: RunConfig, args) -> tuple[bool, dict]:
    out = []
    if args.affine:
        sig = cfg.signature(True)
        lo, hi = cfg.mode_window
        for v in monomials_up_to(sig, cfg.degree_cap, range(lo, hi + 1)):
            w = affine.affine_weight_of(sig, v)
            out.append({"monomial": v.text(True), "diag": _weight_json(w.diag),
                        "level": w.level, "d": w.d_eigen})
        return True, {"basis": out, "mode_window": list(cfg.mode_window)}
    sig = cfg.signature()
    for v in monomials_up_to(sig, cfg.degree_cap):
        out.append({"monomial": v.text(), "weight": _weight_json(finite.weight_of(sig, v)),
                    "sl_weight": _weight_json(finite.sl_weight_of(sig, v))})
    return True, {"basis": out}


def cmd_collisions(cfg: RunConfig, args) -> tuple[bool, dict]:
    pairs = finite.weight_collisions(cfg.signature(), cfg.degree_cap)
    return True, {"basis": [[p.text(), q.text()] for p, q in pairs]}


def cmd_singular(cfg: RunConfig, args) -> tuple[bool, dict]:
    res = finite.singular_vectors(cfg.signature(), cfg.degree_cap, cfg.mu_value())
    return True, {"basis": [{"sl_weight": _weight_json(w), "vector": e.text()} for w, e in res]}


def _int_mu(cfg: RunConfig) -> int:
    mu = cfg.mu_value()
    if mu is None or mu.denominator != 1 or mu < 0:
        raise UsageError("this command needs --mu set to a nonnegative integer")
    return int(mu)


def cmd_vmu(cfg: RunConfig, args) -> tuple[bool, dict]:
    sig = cfg.signature()
    mu = _int_mu(cfg)
    gen = finite.vmu_generator(sig, mu)
    out = {"generator": gen.text()}
    if args.elem:
        v = parse_monomial(sig, args.elem)
        out["element"] = v.text()
        out["contains"] = finite.vmu_contains(v, mu, sig)
    return True, {"result": out}


def cmd_character(cfg: RunConfig, args) -> tuple[bool, dict]:
    sig = cfg.signature()
    cap = cfg.degree_cap
    out = {
        "dims": {str(s): finite.dim_Ws(sig, s) for s in range(cap + 1)},
        "P": [list(t) for t in finite.enumerate_P(sig, cap)],
    }
    mu = cfg.mu_value()
    if mu is not None:
        mu = _int_mu(cfg)
        out["Q"] = [list(t) for t in finite.enumerate_Q(sig, mu, cap)]
        out["quotient"] = [{"weight": [str(c) for c in w], "multiplicity": k}
                           for w, k in sorted(finite.quotient_character(sig, mu).items())]
    return True, {"result": out}


def _reach_json(res) -> dict:
    return {"reached": res.reached, "span_dim": res.span_dim,
            "certificate": [{"coeff": str(c), "steps": [_fmt_gen(g) for g in steps]}
                            for c, steps in res.certificate]}


def _start(sig: Signature, text: str | None):
    if not text:
        raise UsageError("--start is required")
    e = parse_element(sig, text)
    if len(e) == 1:
        (mono, c), = e.terms.items()
        if c == 1:
            return mono
    return e


def cmd_reach_finite(cfg: RunConfig, args) -> tuple[bool, dict]:
    sig = cfg.signature()
    mu = cfg.mu_value()
    if mu is None:
        raise UsageError("reach-finite needs an exact --mu")
    res = finite.reach_unit_finite(_start(sig, args.start), sig, mu)
    return res.reached, {"certificate": _reach_json(res)}


def cmd_reach_affine(cfg: RunConfig, args) -> tuple[bool, dict]:
    sig = cfg.signature(True)
    mu = cfg.mu_value()
    if mu is None:
        raise UsageError("reach-affine needs an exact --mu")
    if mu == 0:
        raise UsageError("mu = 0 has no positive certificate; run `mu-zero` instead")
    res = affine.reach_unit_affine(_start(sig, args.start), sig, mu, cfg.mode_window, args.step_cap)
    return res.reached, {"certificate": _reach_json(res), "mode_window": list(cfg.mode_window)}


def cmd_mu_zero(cfg: RunConfig, args) -> tuple[bool, dict]:
    rep = affine.mu_zero_witness(cfg.signature(True), cfg.mode_window, cfg.degree_cap)
    return rep.ok, {"result": {"basis_size": rep.basis_size, "images_checked": rep.images_checked,
                               "images_in_truncation": rep.images_in_truncation},
                    "violations": rep.leaks + rep.degree_one_nonzero,
                    "mode_window": list(cfg.mode_window)}


def cmd_span_check(cfg: RunConfig, args) -> tuple[bool, dict]:
    res = finite.s_span_check(cfg.signature(), args.s)
    return res.ok, {"result": res.as_dict()}


def cmd_apply(cfg: RunConfig, args) -> tuple[bool, dict]:
    if not args.gen or args.elem is None:
        raise UsageError("apply needs --gen and --elem")
    g = parse_generator(args.gen)
    use_affine = args.affine or isinstance(g, affine.AffineGenerator)
    sig = cfg.signature(use_affine)
    e = parse_element(sig, args.elem)
    mu = cfg.mu_value()
    if use_affine:
        if not isinstance(g, affine.AffineGenerator):
            g = affine.E(g[0], g[1], 0)
        img = affine.apply_affine(sig, g, e, mu)
    else:
        img = finite.apply_gl(sig, g, e, mu)
    return True, {"result": img.text(use_affine)}


def _random_element(sig: Signature, rng: random.Random, monos: list[Monomial]) -> Element:
    terms = {}
    for v in rng.sample(monos, k=min(len(monos), rng.randint(1, 4))):
        terms[v] = Poly([rng.randint(-3, 3), rng.randint(-2, 2)])
    return Element(terms)


def cross_check(m: int, n: int, count: int, seed: int, degree_cap: int = 3) -> list:
    """Mode-0 affine operators against the finite ones on seeded random elements."""
    fsig, asig = Signature(m, n), Signature(m, n, True)
    rng = random.Random(seed)
    monos = monomials_up_to(fsig, degree_cap)
    gens = finite.generators(fsig)
    mismatches = []
    for _ in range(count):
        e = _random_element(fsig, rng, monos)
        for g in gens:
            a = finite.apply_gl(fsig, g, e)
            b = affine.apply_affine(asig, affine.E(g[0], g[1], 0), e)
            if a != b:
                mismatches.append({"g": _fmt_gen(g), "element": e.text(), "finite": a.text(),
                                   "affine": b.text()})
    return mismatches


def cmd_cross_check(cfg: RunConfig, args) -> tuple[bool, dict]:
    bad = cross_check(cfg.m, cfg.n, args.count, cfg.seed, cfg.degree_cap)
    return not bad, {"violations": bad}


HANDLERS = {
    "verify-finite": cmd_verify_finite, "verify-affine": cmd_verify_affine,
    "weights": cmd_weights, "collisions": cmd_collisions, "singular": cmd_singular,
    "vmu": cmd_vmu, "character": cmd_character, "reach-finite": cmd_reach_finite,
    "reach-affine": cmd_reach_affine, "mu-zero": cmd_mu_zero, "span-check": cmd_span_check,
    "apply": cmd_apply, "cross-check": cmd_cross_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, default=2)
    common.add_argument("--n", type=int, default=1)
    common.add_argument("--mu", default="symbolic", help='"symbolic" or an exact rational "p/q"')
    common.add_argument("--degree-cap", type=int, default=4)
    common.add_argument("--mode-window", type=int, nargs=2, default=(-2, 2), metavar=("LO", "HI"))
    common.add_argument("--bracket-mode-range", type=int, nargs=2, default=(-2, 2),
                        metavar=("LO", "HI"))
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true",
                        help="record runtime_ms (otherwise null, keeping output deterministic)")

    parser = argparse.ArgumentParser(prog="freefield", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("apply", "vmu"):
            p.add_argument("--elem")
        if name == "apply":
            p.add_argument("--gen")
        if name in ("apply", "weights"):
            p.add_argument("--affine", action="store_true")
        if name in ("reach-finite", "reach-affine"):
            p.add_argument("--start")
        if name == "reach-affine":
            p.add_argument("--step-cap", type=int, default=8)
        if name == "span-check":
            p.add_argument("--s", type=int, required=True)
        if name == "cross-check":
            p.add_argument("--count", type=int, default=200)
    return parser


def _emit_text(name: str, payload: dict, ok: bool) -> str:
    if name == "apply":
        return payload["result"]
    lines = [f"{name}: {'ok' if ok else 'FAILED'}"]
    for key, val in payload.items():
        lines.append(f"  {key}: {json.dumps(val, sort_keys=True)}")
    return "\n".join(lines)


def _uses_affine(args) -> bool:
    if args.command in ("verify-affine", "reach-affine", "mu-zero"):
        return True
    if getattr(args, "affine", False):
        return True
    gen = getattr(args, "gen", None) or ""
    return "(" in gen or gen.strip() in ("K", "d")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        cfg = RunConfig(args.m, args.n, args.mu, args.degree_cap, tuple(args.mode_window),
                        tuple(args.bracket_mode_range), args.output, args.seed)
        ok, payload = HANDLERS[args.command](cfg, args)
    except ValueError as exc:
        print(f"freefield {args.command}: {exc}", file=sys.stderr)
        return 2
    elapsed = (time.perf_counter() - t0) * 1000 if args.timing else None
    params = asdict(cfg)
    params["mode_window"] = list(cfg.mode_window)
    params["bracket_mode_range"] = list(cfg.bracket_mode_range)
    for extra in ("elem", "gen", "start", "step_cap", "s", "count", "affine"):
        if hasattr(args, extra):
            params[extra] = getattr(args, extra)
    report = {
        "signature": {"m": cfg.m, "n": cfg.n,
                      "affine": _uses_affine(args)},
        "operation": args.command,
        "parameters": params,
        "ok": ok,
        **payload,
        "runtime_ms": elapsed,
    }
    if args.output == "text":
        print(_emit_text(args.command, payload, ok))
    else:
        print(json.dumps(report, sort_keys=True))
    if not ok:
        print(f"freefield {args.command}: check failed", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
