"""Smith normal form over the integers, with unimodular transforms.

All arithmetic is on Python ints; matrices are lists of rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix, cols: int | None = None) -> Matrix:
    if not A:
        return []
    k = len(B)
    m = cols if cols is not None else (len(B[0]) if B else 0)
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(len(A))]


def matvec(A: Matrix, x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


@dataclass(frozen=True)
class SmithForm:
    """P @ A @ Q == D with P, Q unimodular and D diagonal, d1 | d2 | ... ."""

    rows: int
    cols: int
    D: Matrix
    P: Matrix
    Q: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(self.rows, self.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]


def smith_normal_form(A: Sequence[Sequence[int]], cols: int | None = None) -> SmithForm:
    m = len(A)
    n = cols if cols is not None else (len(A[0]) if m else 0)
    D = [list(map(int, row)) for row in A]
    P = identity(m)
    Q = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        if c:
            D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
            P[dst] = [a + c * b for a, b in zip(P[dst], P[src])]

    def add_col(dst, src, c):
        if c:
            for row in D:
                row[dst] += c * row[src]
            for row in Q:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                add_col(j, t, -(D[t][j] // p))
            # a smaller remainder in row/column t becomes the new pivot
            cand = None
            for i in range(t + 1, m):
                if D[i][t] and (cand is None or abs(D[i][t]) < abs(cand[2])):
                    cand = ("r", i, D[i][t])
            for j in range(t + 1, n):
                if D[t][j] and (cand is None or abs(D[t][j]) < abs(cand[2])):
                    cand = ("c", j, D[t][j])
            if cand is not None:
                if cand[0] == "r":
                    swap_rows(t, cand[1])
                else:
                    swap_cols(t, cand[1])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            P[t] = [-a for a in P[t]]
    return SmithForm(m, n, D, P, Q)


def solve_congruence(snf: SmithForm, rhs: Sequence[int], modulus: int) -> list[int] | None:
    """Some x with A x == rhs (mod modulus), or None if there is none.

    With P A Q = D the system becomes D y == P rhs; each diagonal row is a
    single congruence d y_i == b_i, solvable iff gcd(d, n) | b_i, and rows
    past the rank need b_i == 0.
    """
    n = modulus
    b = [v % n for v in matvec(snf.P, rhs)] if snf.rows else []
    y = [0] * snf.cols
    for i in range(snf.rows):
        d = snf.D[i][i] if i < snf.cols else 0
        if d == 0:
            if b[i] % n:
                return None
            continue
        g = gcd(d, n)
        if b[i] % g:
            return None
        m = n // g
        y[i] = (b[i] // g) * pow(d // g, -1, m) % m if m > 1 else 0
    return [v % n for v in matvec(snf.Q, y)] if snf.cols else []


def kernel_size_mod(snf: SmithForm, modulus: int) -> int:
    """|{x in (Z/n)^cols : A x == 0}|"""
    size = modulus ** (snf.cols - snf.rank)
    for d in snf.invariant_factors:
        size *= gcd(d, modulus)
    return size


def image_size_mod(snf: SmithForm, modulus: int) -> int:
    size = 1
    for d in snf.invariant_factors:
        size *= modulus // gcd(d, modulus)
    return size


def invariant_factor_form(orders: Sequence[int]) -> list[int]:
    """Normalize a direct sum of cyclic groups to invariant factors (trivial factors dropped)."""
    orders = [o for o in orders if o > 1]
    if not orders:
        return []
    k = len(orders)
    diag = [[orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
    return [d for d in smith_normal_form(diag).invariant_factors if d > 1]
