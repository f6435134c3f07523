"""Gaussian elimination over GF(p).

Kept separate from the Smith-form solver so it can serve as an independent
check of it.
"""

from __future__ import annotations

from typing import Sequence


def _echelon(rows: list[list[int]], p: int, ncols: int) -> tuple[list[list[int]], list[int]]:
    rows = [[v % p for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank_mod_p(A: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> int:
    if not A:
        return 0
    n = ncols if ncols is not None else len(A[0])
    return len(_echelon([list(r) for r in A], p, n)[1])


def solve_mod_p(A: Sequence[Sequence[int]], b: Sequence[int], p: int, ncols: int) -> list[int] | None:
    """A solution of A x = b over GF(p), or None when the system is inconsistent."""
    if not A:
        return [0] * ncols
    aug = [list(r) + [v] for r, v in zip(A, b)]
    rows, pivots = _echelon(aug, p, ncols + 1)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][ncols]
    return x


def betti_mod_p(dims: Sequence[int], deltas: Sequence[Sequence[Sequence[int]]], q: int, p: int) -> int:
    """dim H^q over GF(p) from cochain dimensions and coboundary matrices.

    ``deltas[k]`` maps C^k -> C^(k+1) as a dims[k+1] x dims[k] matrix.
    """
    out_rank = rank_mod_p(deltas[q], p, dims[q]) if q < len(deltas) else 0
    in_rank = rank_mod_p(deltas[q - 1], p, dims[q - 1]) if q >= 1 else 0
    return dims[q] - out_rank - in_rank
