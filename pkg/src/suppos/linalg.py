"""Exact rank of integer matrices over the rationals."""
from __future__ import annotations

from math import gcd


def _normalize(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def rank(rows: list[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix given as ``{col: value}`` rows.

    Fraction-free elimination: a pivot row p eliminates column c from row r
    via ``r <- p[c]*r - r[c]*p``; rows are divided by their content to keep
    entries small.  No division ever leaves the integers.
    """
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                pivots[c] = _normalize(row)
                r += 1
                break
            a, b = p[c], row[c]
            new = {k: a * v for k, v in row.items()}
            for k, v in p.items():
                x = new.get(k, 0) - b * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            row = _normalize(new)
    return r


def dense_rank(m: list[list[int]]) -> int:
    """Bareiss elimination on a dense integer matrix (kept as an independent
    cross-check of :func:`rank`)."""
    a = [list(row) for row in m]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    prev = 1
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        for i in range(rk + 1, nrows):
            for j in range(col + 1, ncols):
                a[i][j] = (a[rk][col] * a[i][j] - a[i][col] * a[rk][j]) // prev
            a[i][col] = 0
        prev = a[rk][col]
        rk += 1
        if rk == nrows:
            break
    return rk
