"""Exact linear algebra used by the solvers: nullspaces and span closures."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence


def nullspace(rows: Sequence[Sequence], ncols: int, one) -> list[list]:
    """Basis of {c : rows @ c = 0} over an exact field.

    ``one`` is the field's multiplicative identity (``Fraction(1)`` or
    ``RatFunc(1)``); entries must support ``+ - * /`` and truthiness.
    """
    zero = one - one
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = one / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for i, pc in enumerate(pivots):
            vec[pc] = zero - mat[i][fc]
        basis.append(vec)
    return basis


class SpanTracker:
    """Incrementally maintained echelon basis of sparse vectors over Q.

    Each inserted vector gets an integer label; basis rows remember which
    combination of labelled inputs produced them, so membership queries can
    return an explicit certificate.
    """

    def __init__(self, key: Callable = lambda k: k):
        self.key = key
        self.rows: dict[Hashable, tuple[dict, dict]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict, combo: dict | None = None) -> tuple[dict, dict]:
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        combo = dict(combo or {})
        while vec:
            p = max(vec, key=self.key)
            row = self.rows.get(p)
            if row is None:
                break
            f = vec[p]
            rvec, rcombo = row
            for k, v in rvec.items():
                s = vec.get(k, 0) - f * v
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
            for k, v in rcombo.items():
                s = combo.get(k, 0) - f * v
                if s:
                    combo[k] = s
                else:
                    combo.pop(k, None)
        return vec, combo

    def insert(self, vec: dict, label) -> dict | None:
        """Add a vector; returns its reduced (pivot-normalized) form if new."""
        rvec, combo = self.reduce(vec, {label: Fraction(1)})
        if not rvec:
            return None
        p = max(rvec, key=self.key)
        f = rvec[p]
        rvec = {k: v / f for k, v in rvec.items()}
        combo = {k: v / f for k, v in combo.items()}
        self.rows[p] = (rvec, combo)
        return rvec

    def express(self, vec: dict) -> dict | None:
        """Labels-combination equal to ``vec``, or None if outside the span."""
        rest, combo = self.reduce(vec)
        if rest:
            return None
        return {k: -v for k, v in combo.items()}


def rank(vectors: Iterable[dict], key: Callable = lambda k: k) -> int:
    t = SpanTracker(key)
    for i, v in enumerate(vectors):
        t.insert(v, i)
    return len(t)
