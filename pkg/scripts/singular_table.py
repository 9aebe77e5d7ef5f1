"""Tabulate singular vectors of W for small integer mu, next to the generic answer.

    python3 scripts/singular_table.py --m 2 --n 1 --cap 4 --mus 0 1 2 3
"""
import argparse

from freefield.core import Signature
from freefield.finite import singular_vectors


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--cap", type=int, default=4)
    ap.add_argument("--mus", nargs="*", default=["0", "1", "2", "3", "7/2"])
    a = ap.parse_args()
    sig = Signature(a.m, a.n)
    generic = singular_vectors(sig, a.cap)
    print(f"({a.m}|{a.n}) cap {a.cap}")
    print(f"  mu generic : {', '.join(v.text() for _, v in generic)}")
    for mu in a.mus:
        vecs = singular_vectors(sig, a.cap, mu)
        print(f"  mu = {mu:<7}: {', '.join(v.text() for _, v in vecs)}")


if __name__ == "__main__":
    main()
