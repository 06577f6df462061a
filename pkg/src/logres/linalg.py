"""Exact sparse Gaussian elimination over Q or Q(t).

Vectors are dicts mapping a column index to a nonzero scalar.  Pivots are the
smallest column index of a row, so column order decides which coordinates
lead; results are deterministic.
"""
from __future__ import annotations

from fractions import Fraction


def _inv(c):
    return Fraction(1, c) if isinstance(c, int) else 1 / c


def axpy(y: dict, a, x: dict) -> None:
    """In place: y <- y + a*x."""
    for k, v in x.items():
        w = y.get(k)
        if w is None:
            y[k] = a * v
        else:
            w = w + a * v
            if w:
                y[k] = w
            else:
                del y[k]


def scaled(x: dict, a) -> dict:
    return {k: a * v for k, v in x.items()}


def rref(rows):
    """Reduced row echelon form; returns ``[(pivot, row), ...]`` sorted by pivot."""
    pivots: dict = {}
    for r in rows:
        r = {k: v for k, v in r.items() if v}
        for c in [c for c in r if c in pivots]:
            v = r.get(c)
            if v:
                axpy(r, -v, pivots[c])
        if not r:
            continue
        p = min(r)
        inv = _inv(r[p])
        r = {k: v * inv for k, v in r.items()}
        for row in pivots.values():
            v = row.get(p)
            if v:
                axpy(row, -v, r)
        pivots[p] = r
    return sorted(pivots.items())


def rank(rows) -> int:
    return len(rref(rows))


def nullspace(rows, ncols: int):
    """Basis of {v : row . v = 0 for all rows}, one vector per free column."""
    ech = rref(rows)
    pivot_cols = {p for p, _ in ech}
    basis = []
    for j in range(ncols):
        if j in pivot_cols:
            continue
        v = {j: Fraction(1)}
        for p, row in ech:
            c = row.get(j)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def transpose(vectors):
    """Turn a list of column vectors into row dicts keyed by column position."""
    rows: dict = {}
    for j, v in enumerate(vectors):
        for i, c in v.items():
            rows.setdefault(i, {})[j] = c
    return list(rows.values())


def solve(columns, target: dict):
    """Find x with sum_j x_j * columns[j] = target, or None if inconsistent."""
    m = len(columns)
    rows: dict = {}
    for j, v in enumerate(columns):
        for i, c in v.items():
            rows.setdefault(i, {})[j] = c
    for i, c in target.items():
        rows.setdefault(i, {})[m] = c
    ech = rref(list(rows.values()))
    x = {}
    for p, row in ech:
        if p == m:
            return None
        c = row.get(m)
        if c:
            x[p] = c
    return x


class EchelonBasis:
    """Incrementally maintained echelon basis with combination tracking.

    Each stored row equals ``sum(combo[tag] * original[tag])`` over the vectors
    that were added with those tags.
    """

    def __init__(self):
        self.rows = []  # (pivot, row, combo), in insertion order

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict):
        """Return (residual, combo) with vec = residual + sum(combo[tag] * original[tag])."""
        r = dict(vec)
        combo: dict = {}
        for p, row, rc in self.rows:
            v = r.get(p)
            if v:
                axpy(r, -v, row)
                axpy(combo, v, rc)
        return r, combo

    def add(self, vec: dict, tag):
        """Insert ``vec``; returns None if it was new, otherwise its expression
        as a combination of earlier tags."""
        r, combo = self.reduce(vec)
        if not r:
            return combo
        p = min(r)
        inv = _inv(r[p])
        rc = scaled(combo, -inv)
        rc[tag] = inv
        self.rows.append((p, {k: v * inv for k, v in r.items()}, rc))
        return None
