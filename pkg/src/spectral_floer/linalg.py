"""Small exact linear algebra over the rationals (dense, row-major lists)."""

from fractions import Fraction
from typing import List, Sequence

Matrix = List[List[Fraction]]


def rref(rows: Sequence[Sequence], ncols: int):
    """Reduced row echelon form.  Returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : M x = 0} for M given by ``rows``."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def complement_basis(span: Matrix, vectors: Matrix, ncols: int) -> Matrix:
    """Vectors from ``vectors`` extending a basis of ``span`` (greedy, in order)."""
    current = [list(v) for v in span]
    r = rank(current, ncols) if current else 0
    chosen = []
    for v in vectors:
        trial = current + [list(v)]
        rr = rank(trial, ncols)
        if rr > r:
            current, r = trial, rr
            chosen.append(list(v))
    return chosen


def transpose(m: Matrix, ncols: int) -> Matrix:
    return [[row[j] for row in m] for j in range(ncols)]
