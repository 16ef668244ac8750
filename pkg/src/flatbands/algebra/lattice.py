"""Hermite normal form of integer row lattices."""

from __future__ import annotations

from typing import Sequence


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style HNF of the lattice spanned by ``rows``.

    Returns the nonzero rows in echelon form with positive pivots and entries
    above each pivot reduced into [0, pivot).
    """
    mat = [list(map(int, r)) for r in rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while mat and col < ncols:
        live = [r for r in mat if r[col] != 0]
        rest = [r for r in mat if r[col] == 0]
        if not live:
            col += 1
            continue
        # Euclid on the pivot column
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        p = live[0]
        if p[col] < 0:
            p = [-a for a in p]
        out.append(p)
        mat = rest
        col += 1
    for i, r in enumerate(out):
        piv = next(j for j, a in enumerate(r) if a)
        for k in range(i):
            q = out[k][piv] // r[piv]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], r)]
    return out


def lattice_is_full(rows: Sequence[Sequence[int]], d: int) -> bool:
    """True iff the rows generate all of Z^d."""
    h = hermite_normal_form(rows, d)
    if len(h) != d:
        return False
    return all(h[i][i] == 1 for i in range(d))
