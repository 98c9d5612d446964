"""Dual polar variety systems and real algebraic sample points.

For a variety cut out by p equations in n variables and a generic
(n-p) x (n+1) rational matrix, the i-th dual polar variety is cut out by
the maximal minors of the Jacobian bordered with the affine rows
(a_k1 - a_k0*X_1, ..., a_kn - a_k0*X_n) built from the first n-p-i+1 rows
of the matrix. Its real points include a distance-critical point for every
connected component of a smooth closed real variety, which is what makes
them sample points.

Sampling always uses the top polar order (one affine row, a zero-dimensional
system); lower orders exist for the degree invariants. Matrices are drawn
from a seeded generator and redrawn when a rank precondition or the
zero-dimensionality of the sampled system fails.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .errors import NotZeroDimensional, RegularityViolation
from .linalg import rank
from .poly import MultiPoly, PolyMatrix, jacobian
from .zerodim import COEFF_BOUND, RETRY_BUDGET, SolveRequest, solve_zero_dim

Q = Fraction


@dataclass(frozen=True)
class PolarMatrix:
    """Generic rational matrix defining dual polar varieties, used in
    descending chains: the i-th polar variety takes the first n-p-i+1 rows."""

    n: int
    p: int
    entries: tuple  # (n-p) rows x (n+1) columns of Fraction

    def __post_init__(self):
        if not 0 <= self.p <= self.n:
            raise ValueError("need 0 <= p <= n")
        if len(self.entries) != self.n - self.p:
            raise ValueError("polar matrix must have n-p rows")
        for row in self.entries:
            if len(row) != self.n + 1:
                raise ValueError("polar matrix rows must have n+1 entries")

    def rows_for_order(self, codim: int, i: int):
        """Rows used by the i-th polar variety of a codimension-`codim` variety."""
        count = self.n - codim - i + 1
        if count < 0 or count > len(self.entries):
            raise ValueError("polar order out of range for this matrix")
        return self.entries[:count]

    def center(self):
        """The generic point (a_11/a_10, ..., a_1n/a_10) whose distance function
        the top-order polar variety criticalizes."""
        row = self.entries[0]
        return tuple(c / row[0] for c in row[1:])

    def to_json(self):
        return [[str(c) for c in row] for row in self.entries]


def random_polar_matrix(n, p, seed=0, rng=None) -> PolarMatrix:
    """Draw a polar matrix with nonzero first column and full-rank right block."""
    if not 0 <= p <= n:
        raise ValueError("need 0 <= p <= n")
    rng = rng if rng is not None else random.Random(seed)
    rows = n - p
    for _ in range(RETRY_BUDGET):
        entries = []
        for _ in range(rows):
            first = 0
            while first == 0:
                first = rng.randint(-COEFF_BOUND, COEFF_BOUND)
            entries.append(tuple(Q(first) if j == 0 else Q(rng.randint(-COEFF_BOUND, COEFF_BOUND))
                                 for j in range(n + 1)))
        right_block = [row[1:] for row in entries]
        if rows == 0 or rank(right_block) == rows:
            return PolarMatrix(n, p, tuple(entries))
    raise RuntimeError("polar matrix rank precondition kept failing")


@dataclass
class PolarSystem:
    """Equations of one dual polar variety: the base system plus all maximal
    minors of the bordered matrix, localized at an optional inequation."""

    base: list
    minors: list
    order: int
    inequation: Optional[MultiPoly] = None

    @property
    def equations(self):
        return list(self.base) + list(self.minors)


def _affine_rows(matrix_rows, variables):
    """Polynomial rows (a_k1 - a_k0*X_1, ..., a_kn - a_k0*X_n)."""
    n = len(variables)
    out = []
    for row in matrix_rows:
        a0 = row[0]
        entries = []
        for l in range(1, n + 1):
            expo = [0] * n
            expo[l - 1] = 1
            entries.append(MultiPoly(variables, {(0,) * n: Q(row[l]), tuple(expo): -Q(a0)}))
        out.append(entries)
    return out


def polar_equations(fs, a: PolarMatrix, i: int, inequation=None) -> PolarSystem:
    """The system of the i-th dual polar variety of {fs = 0}."""
    fs = list(fs)
    if not fs:
        raise ValueError("polar system needs at least one base equation")
    variables = fs[0].vars
    n = len(variables)
    p = len(fs)
    if not 1 <= i <= n - p:
        raise ValueError("polar order must satisfy 1 <= i <= n - p")
    jac = jacobian(fs)
    affine = _affine_rows(a.rows_for_order(p, i), variables)
    bordered = PolyMatrix([list(jac.entries[r]) for r in range(p)] + affine)
    size = n - i + 1
    minors = [
        bordered.minor(range(size), cols) for cols in combinations(range(n), size)
    ]
    return PolarSystem(base=fs, minors=minors, order=i, inequation=inequation)


def jacobian_has_full_rank_at(fs, point, p=None) -> bool:
    """Exact test: does J(fs) have rank len(fs) at the algebraic point?"""
    fs = list(fs)
    p = len(fs) if p is None else p
    jac = jacobian(fs)
    n = jac.cols
    for cols in combinations(range(n), p):
        minor = jac.minor(range(p), cols)
        if point.sign_of(minor) != 0:
            return True
    return False


def _sample(fs, inequation, seed, matrix, on_irregular):
    fs = [f for f in fs if not f.is_zero()]
    if not fs:
        raise ValueError("sampling needs at least one nonzero equation")
    variables = fs[0].vars
    n = len(variables)
    p = len(fs)
    if p > n:
        raise NotZeroDimensional(
            f"{p} equations in {n} variables cannot form a regular sequence"
        )
    rng = random.Random(seed * 0x9E3779B1 + 5)
    attempts = RETRY_BUDGET if matrix is None else 1
    last = None
    for _ in range(attempts):
        a = matrix if matrix is not None else random_polar_matrix(n, p, rng=rng)
        if n - p == 0:
            equations = fs
        else:
            equations = polar_equations(fs, a, n - p, inequation).equations
        try:
            _, points = solve_zero_dim(
                SolveRequest(equations, inequation, seed=rng.getrandbits(32))
            )
        except NotZeroDimensional as exc:
            last = exc
            continue
        kept = []
        dropped = []
        for pt in points:
            if jacobian_has_full_rank_at(fs, pt, p):
                kept.append(pt)
            elif on_irregular == "discard":
                dropped.append(pt)
            else:
                raise RegularityViolation(
                    "sample point violates the rank condition; the smoothness "
                    "precondition fails at it",
                    point=pt,
                )
        return kept, dropped
    raise last if last is not None else NotZeroDimensional("polar sampling failed")


def sample_points_closed(fs, seed=0, matrix=None, on_irregular="raise"):
    """Real algebraic sample points of a closed variety {fs = 0}.

    When every real point of the variety is regular, the result contains at
    least one point in each connected component of the real trace. Each
    returned point satisfies fs exactly and passes an exact Jacobian rank
    check; irregular solutions raise RegularityViolation (or are discarded
    when on_irregular="discard").
    """
    kept, _ = _sample(fs, None, seed, matrix, on_irregular)
    return kept


def sample_points_localized(equations, inequation, seed=0, matrix=None, on_irregular="raise"):
    """Sample points of the localized variety {equations = 0, inequation != 0}.

    Contains every regular real point that locally minimizes the distance
    from the generic center to the real trace of the localized set.
    """
    if inequation is not None and inequation.is_zero():
        raise ValueError("inequation is identically zero")
    kept, _ = _sample(equations, inequation, seed, matrix, on_irregular)
    return kept


def sample_points_with_diagnostics(fs, inequation=None, seed=0, matrix=None):
    """Like the samplers but keeps going past irregular points, returning
    (regular points, irregular points) for diagnostic reporting."""
    return _sample(fs, inequation, seed, matrix, "discard")


def polar_degrees(fs, inequation=None, seed=0, matrix=None):
    """Degrees of the Zariski closures of all generic dual polar varieties
    of the (localized) variety {fs = 0}, for orders i = 1 .. n-p."""
    from .zerodim import degree_of_closure

    fs = [f for f in fs if not f.is_zero()]
    if not fs:
        return []
    variables = fs[0].vars
    n = len(variables)
    p = len(fs)
    if p >= n:
        return []
    rng = random.Random(seed * 0x9E3779B1 + 6)
    a = matrix if matrix is not None else random_polar_matrix(n, p, rng=rng)
    out = []
    for i in range(1, n - p + 1):
        system = polar_equations(fs, a, i, inequation)
        out.append(degree_of_closure(system.equations, inequation, seed=rng.getrandbits(32)))
    return out
