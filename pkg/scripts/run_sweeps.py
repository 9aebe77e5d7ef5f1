"""Run the homomorphism sweeps over a list of signatures and write a JSON summary.

    python3 scripts/run_sweeps.py --finite-cap 4 --affine-cap 3 --out sweeps.json
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from freefield.affine import verify_affine_homomorphism
from freefield.core import Signature
from freefield.finite import verify_finite_homomorphism


@dataclass
class SweepConfig:
    finite_sigs: list = field(default_factory=lambda: [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)])
    affine_sigs: list = field(default_factory=lambda: [(1, 1), (2, 1), (2, 2)])
    finite_cap: int = 4
    affine_cap: int = 3
    window: tuple = (-2, 2)
    skip_affine: bool = False


def run(cfg: SweepConfig) -> dict:
    rows = []
    for m, n in cfg.finite_sigs:
        t0 = time.perf_counter()
        rep = verify_finite_homomorphism(Signature(m, n), cfg.finite_cap)
        rows.append({"kind": "finite", "m": m, "n": n, "checked": rep.checked,
                     "violations": len(rep.violations), "seconds": round(time.perf_counter() - t0, 2)})
        print(rows[-1])
    if not cfg.skip_affine:
        for m, n in cfg.affine_sigs:
            t0 = time.perf_counter()
            rep = verify_affine_homomorphism(Signature(m, n, True), cfg.window, cfg.affine_cap, cfg.window)
            rows.append({"kind": "affine", "m": m, "n": n, "checked": rep.checked,
                         "violations": len(rep.violations), "seconds": round(time.perf_counter() - t0, 2)})
            print(rows[-1])
    return {"config": asdict(cfg), "rows": rows}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--finite-cap", type=int, default=4)
    ap.add_argument("--affine-cap", type=int, default=3)
    ap.add_argument("--window", type=int, nargs=2, default=(-2, 2))
    ap.add_argument("--skip-affine", action="store_true")
    ap.add_argument("--out")
    a = ap.parse_args()
    cfg = SweepConfig(finite_cap=a.finite_cap, affine_cap=a.affine_cap, window=tuple(a.window),
                      skip_affine=a.skip_affine)
    summary = run(cfg)
    if a.out:
        with open(a.out, "w") as fh:
            json.dump(summary, fh, indent=2)


if __name__ == "__main__":
    main()
