"""Exact linear algebra over the rationals (small dense systems only)."""

from __future__ import annotations

from fractions import Fraction

Q = Fraction


def rank(matrix) -> int:
    """Rank of a rational matrix given as a list of rows."""
    rows = [[c if isinstance(c, Fraction) else Q(c) for c in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [c * inv for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def solve_square(a, rhs_columns):
    """Solve A x = b for each b in rhs_columns; raises on a singular matrix."""
    n = len(a)
    m = len(rhs_columns)
    aug = [
        [x if isinstance(x, Fraction) else Q(x) for x in row] + [col[i] for col in rhs_columns]
        for i, row in enumerate(a)
    ]
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if aug[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            raise ArithmeticError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [c * inv for c in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [[aug[i][n + j] for i in range(n)] for j in range(m)]


class IncrementalSpan:
    """Row space built one vector at a time, tracking combinations.

    add(v_k) returns None while v_k is independent of everything added
    before; once it is dependent it returns coefficients c_0..c_k with
    c_k = 1 and sum(c_i * v_i) = 0 over all vectors added so far.
    """

    def __init__(self, dim):
        self.dim = dim
        self.rows = []  # (pivot index, reduced vector, combination over inputs)
        self.count = 0

    def add(self, vector):
        v = [c if isinstance(c, Fraction) else Q(c) for c in vector]
        combo = [Q(0)] * self.count + [Q(1)]
        for pivot, row, row_combo in self.rows:
            c = v[pivot]
            if c != 0:
                padded = row_combo + [Q(0)] * (len(combo) - len(row_combo))
                v = [a - c * b for a, b in zip(v, row)]
                combo = [a - c * b for a, b in zip(combo, padded)]
        pivot = next((i for i, c in enumerate(v) if c != 0), None)
        self.count += 1
        if pivot is None:
            return combo
        inv = 1 / v[pivot]
        v = [c * inv for c in v]
        combo = [c * inv for c in combo]
        self.rows.append((pivot, v, combo))
        return None
