"""Zero-dimensional system solving with localization.

Solutions of a finite polynomial system are encoded by a rational
univariate representation (RUR): a square-free parameter polynomial q and
numerators v_i such that the solutions are exactly
(v_1(t)/q'(t), ..., v_n(t)/q'(t)) for the roots t of q, with t recovering
the value of a fixed separating linear form at the solution.

The pipeline behind the contract: a Groebner basis (sympy's engine) gives
the quotient ring, per-variable minimal polynomials make the ideal radical,
and a random separating form plus exact linear algebra produce the RUR.
Randomized choices are certified after the fact (verify_rur, agreement of
independent draws), so failures trigger a reseed instead of a wrong answer.

Localization by an inequation takes the gcd-strip fast path when the
equations alone are finite, and the Rabinowitsch trick (an inverse variable
for the inequation) when they are not.

Dimension and degree of Zariski closures are computed by slicing with
generic affine hyperplanes and counting solutions of the sliced systems.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy

from .errors import GenericityFailure, NotZeroDimensional
from .linalg import IncrementalSpan, solve_square
from .poly import MultiPoly
from .realalg import RealAlgebraicNumber, isolate_real_roots, sign_at
from .unipoly import UniPoly, gcd, invmod, mulmod, squarefree_part

Q = Fraction

COEFF_BOUND = 2**16
RETRY_BUDGET = 5


@dataclass
class SolveRequest:
    """A zero-dimensional solve: equations = 0, inequation != 0."""

    equations: list
    inequation: Optional[MultiPoly] = None
    seed: int = 0

    def __post_init__(self):
        if not self.equations:
            raise ValueError("a solve request needs at least one equation")
        variables = self.equations[0].vars
        for e in self.equations:
            if e.vars != variables:
                raise ValueError("equations over different variable lists")
        if self.inequation is not None and self.inequation.vars != variables:
            raise ValueError("inequation over a different variable list")

    @property
    def variables(self):
        return self.equations[0].vars

    def effective_inequation(self):
        """The inequation, or None when it is a nonzero constant (no-op)."""
        q = self.inequation
        if q is None or q.is_constant():
            if q is not None and q.is_zero():
                raise ValueError("inequation is identically zero")
            return None
        return q


class RUR:
    """Rational univariate representation of a finite solution set."""

    __slots__ = ("variables", "lam", "q", "numerators", "_coord_elements", "_dq_inv")

    def __init__(self, variables, lam, q: UniPoly, numerators):
        self.variables = tuple(variables)
        self.lam = tuple(Q(c) for c in lam)
        self.q = q
        self.numerators = tuple(numerators)
        self._coord_elements = None
        self._dq_inv = None

    @property
    def degree(self):
        """Number of distinct complex solutions."""
        return max(self.q.degree(), 0)

    def is_empty(self):
        return self.q.degree() <= 0

    def coordinate_elements(self):
        """Coordinates as elements of Q[T]/(q): w_i with x_i = w_i(t)."""
        if self._coord_elements is None:
            if self.is_empty():
                self._coord_elements = tuple(UniPoly.zero() for _ in self.variables)
            else:
                if self._dq_inv is None:
                    self._dq_inv = invmod(self.q.deriv(), self.q)
                self._coord_elements = tuple(
                    mulmod(v, self._dq_inv, self.q) for v in self.numerators
                )
        return self._coord_elements

    def element_of(self, p: MultiPoly) -> UniPoly:
        """p evaluated at the coordinates, as an element of Q[T]/(q)."""
        if p.vars != self.variables:
            raise ValueError("polynomial over a different variable list")
        if self.is_empty():
            return UniPoly.zero()
        coords = self.coordinate_elements()
        acc = UniPoly.zero()
        for expo, coeff in p.terms.items():
            term = UniPoly([coeff])
            for w, e in zip(coords, expo):
                if e == 1:
                    term = mulmod(term, w, self.q)
                elif e > 1:
                    term = mulmod(term, _powmod_cached(w, e, self.q), self.q)
            acc = (acc + term) % self.q
        return acc

    def to_json(self):
        return {
            "lambda": [str(c) for c in self.lam],
            "q": [str(c) for c in self.q.coeffs],
            "v": [[str(c) for c in v.coeffs] for v in self.numerators],
        }


def _powmod_cached(w, e, m):
    # plain square-and-multiply; exponents stay tiny at this scale
    result = UniPoly([1])
    base = w
    while e:
        if e & 1:
            result = mulmod(result, base, m)
        base = mulmod(base, base, m)
        e >>= 1
    return result


class AlgebraicPoint:
    """One real solution of a RUR: the representation plus a chosen real root."""

    __slots__ = ("rur", "root", "_coord_rans")

    def __init__(self, rur: RUR, root: RealAlgebraicNumber):
        self.rur = rur
        self.root = root
        self._coord_rans = {}

    @property
    def variables(self):
        return self.rur.variables

    def sign_of(self, p: MultiPoly) -> int:
        """Exact sign of p at the point."""
        return sign_at(self.rur.element_of(p), self.root)

    def value_of(self, p: MultiPoly) -> RealAlgebraicNumber:
        """p at the point as a real algebraic number."""
        return self._ran_of_element(self.rur.element_of(p))

    def coordinate(self, i) -> RealAlgebraicNumber:
        """The i-th coordinate (0-based) as a real algebraic number."""
        if i not in self._coord_rans:
            w = self.rur.coordinate_elements()[i]
            self._coord_rans[i] = self._ran_of_element(w)
        return self._coord_rans[i]

    def coordinates(self):
        return [self.coordinate(i) for i in range(len(self.variables))]

    def _ran_of_element(self, w: UniPoly) -> RealAlgebraicNumber:
        if w.degree() <= 0:
            return RealAlgebraicNumber.from_rational(w.coeffs[0] if w.coeffs else Q(0))
        if self.root.is_rational():
            return RealAlgebraicNumber.from_rational(w(self.root.lo))
        minpoly = _minimal_polynomial_mod(w, self.rur.q)
        if minpoly.degree() == 1:
            return RealAlgebraicNumber.from_rational(-minpoly.coeffs[0] / minpoly.coeffs[1])
        candidates = isolate_real_roots(minpoly)
        root = self.root
        while True:
            elo, ehi = w.eval_interval(root.lo, root.hi)
            viable = [c for c in candidates if not (c.hi < elo or c.lo > ehi)]
            if len(viable) == 1:
                return viable[0]
            if len(viable) == 0:
                # Interval overestimation can exclude everything only before
                # refinement; tighten and retry.
                root = root.refined(root.width() / 4 if not root.is_rational() else Q(1))
                if root.is_rational():
                    val = w(root.lo)
                    return RealAlgebraicNumber.from_rational(val)
                continue
            root = root._bisect_once()
            candidates = [
                c if c.width() <= (ehi - elo) else c._bisect_once() for c in candidates
            ]

    def same_point_as(self, other: "AlgebraicPoint") -> bool:
        if self.variables != other.variables:
            return False
        return all(
            self.coordinate(i).compare(other.coordinate(i)) == 0
            for i in range(len(self.variables))
        )

    def sort_key(self, digits=9):
        return tuple(
            self.coordinate(i).refined(Q(1, 10**digits)).lo
            for i in range(len(self.variables))
        )

    def approx(self, digits=12):
        return [self.coordinate(i).approx_decimal(digits) for i in range(len(self.variables))]

    def to_json(self, digits=12):
        return {
            "rur": self.rur.to_json(),
            "root": self.root.to_json(digits),
            "coordinates": [self.coordinate(i).to_json(digits) for i in range(len(self.variables))],
        }

    def __repr__(self):
        coords = ", ".join(self.coordinate(i).approx_decimal(6) for i in range(len(self.variables)))
        return f"AlgebraicPoint({coords})"


def _minimal_polynomial_mod(w: UniPoly, q: UniPoly) -> UniPoly:
    """Minimal polynomial of the element w of Q[T]/(q); square-free since q is."""
    d = q.degree()
    span = IncrementalSpan(d)
    power = UniPoly([1])
    while True:
        vec = list(power.coeffs) + [Q(0)] * (d - len(power.coeffs))
        combo = span.add(vec)
        if combo is not None:
            return UniPoly(combo).primitive()
        power = mulmod(power, w, q)


# -- sympy bridge ---------------------------------------------------------------


def _sympy_poly(p: MultiPoly, syms):
    rep = {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}
    if not rep:
        rep = {(0,) * len(syms): sympy.Integer(0)}
    return sympy.Poly.from_dict(rep, *syms, domain="QQ")


def _groebner(polys, syms):
    return sympy.groebner(
        [_sympy_poly(p, syms) for p in polys], *syms, order="grevlex", domain="QQ"
    )


def _is_unit_ideal(gb):
    exprs = gb.exprs
    return len(exprs) == 1 and exprs[0].is_number and exprs[0] != 0


def _staircase(gb, syms):
    """Monomial basis of the quotient ring (exponent tuples); None if infinite."""
    if _is_unit_ideal(gb):
        return []
    if not gb.is_zero_dimensional:
        return None
    leads = [p.monoms(order="grevlex")[0] for p in gb.polys]
    n = len(syms)
    # Bound per variable: some leading monomial is a pure power of each variable.
    bounds = []
    for i in range(n):
        pure = [lm[i] for lm in leads if all(lm[j] == 0 for j in range(n) if j != i)]
        bounds.append(min(pure))
    basis = []

    def divisible(e):
        return any(all(e[i] >= lm[i] for i in range(n)) for lm in leads)

    def walk(prefix):
        if len(prefix) == n:
            if not divisible(prefix):
                basis.append(tuple(prefix))
            return
        i = len(prefix)
        for e in range(bounds[i] + 1):
            walk(prefix + [e])

    walk([])
    basis.sort(key=lambda e: (sum(e), e))
    return basis


def _reduce_to_vector(gb, syms, expr, basis_index):
    """Normal form of expr as a coordinate vector over the quotient basis."""
    _, rem = gb.reduce(sympy.expand(expr))
    vec = [Q(0)] * len(basis_index)
    if rem == 0:
        return vec
    poly = sympy.Poly(rem, *syms, domain="QQ")
    for mono, coeff in poly.terms():
        vec[basis_index[tuple(mono)]] = Q(coeff.p, coeff.q)
    return vec


def _vector_to_expr(vec, basis, syms):
    terms = []
    for coeff, mono in zip(vec, basis):
        if coeff == 0:
            continue
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for s, e in zip(syms, mono):
            if e:
                term *= s**e
        terms.append(term)
    return sympy.Add(*terms) if terms else sympy.Integer(0)


def _minimal_polynomial_in_quotient(gb, syms, basis, basis_index, u_expr) -> UniPoly:
    """Minimal polynomial of the residue class of u_expr, by linear algebra."""
    span = IncrementalSpan(len(basis))
    vec = _reduce_to_vector(gb, syms, sympy.Integer(1), basis_index)
    while True:
        combo = span.add(vec)
        if combo is not None:
            return UniPoly(combo).primitive()
        vec = _reduce_to_vector(
            gb, syms, _vector_to_expr(vec, basis, syms) * u_expr, basis_index
        )


# -- the solver ------------------------------------------------------------------


def _empty_rur(variables):
    return RUR(variables, [Q(0)] * len(variables), UniPoly([1]),
               [UniPoly.zero() for _ in variables])


def _rur_from_radical_ideal(gb, syms, basis, variables, n_coords, rng):
    """Build a RUR from a zero-dimensional radical ideal.

    n_coords: how many leading generators are actual coordinates (the rest,
    e.g. a Rabinowitsch inverse variable, are dropped from the output).
    """
    basis_index = {m: i for i, m in enumerate(basis)}
    dim = len(basis)
    for _ in range(RETRY_BUDGET):
        lam = [Q(rng.randint(-COEFF_BOUND, COEFF_BOUND)) for _ in range(n_coords)]
        if all(c == 0 for c in lam):
            continue
        u_expr = sympy.Add(
            *[sympy.Rational(c.numerator, c.denominator) * s for c, s in zip(lam, syms)]
        )
        minpoly = _minimal_polynomial_in_quotient(gb, syms, basis, basis_index, u_expr)
        if minpoly.degree() != dim:
            continue  # not separating, redraw
        q = minpoly.monic()
        # Powers of u form a basis; express each coordinate in that basis.
        power_vectors = []
        vec = _reduce_to_vector(gb, syms, sympy.Integer(1), basis_index)
        for _ in range(dim):
            power_vectors.append(vec)
            vec = _reduce_to_vector(
                gb, syms, _vector_to_expr(vec, basis, syms) * u_expr, basis_index
            )
        matrix = [[power_vectors[j][i] for j in range(dim)] for i in range(dim)]
        rhs = []
        for i in range(n_coords):
            rhs.append(_reduce_to_vector(gb, syms, syms[i], basis_index))
        solutions = solve_square(matrix, rhs)
        dq = q.deriv()
        numerators = [mulmod(UniPoly(sol), dq, q) for sol in solutions]
        return RUR(variables, lam, q, numerators)
    raise GenericityFailure("no separating linear form found within the retry budget")


def _radicalize(polys, gb, syms, basis, basis_index):
    """Add square-free per-variable minimal polynomials; returns (gb, basis)."""
    extra = []
    for i, s in enumerate(syms):
        m = _minimal_polynomial_in_quotient(gb, syms, basis, basis_index, s)
        sf = squarefree_part(m)
        if sf.degree() < m.degree():
            extra.append(sympy.Poly(
                sympy.Add(*[
                    sympy.Rational(c.numerator, c.denominator) * s**k
                    for k, c in enumerate(sf.coeffs)
                ]),
                *syms,
                domain="QQ",
            ))
    if not extra:
        return gb, basis
    gb2 = sympy.groebner(list(gb.polys) + extra, *syms, order="grevlex")
    basis2 = _staircase(gb2, syms)
    return gb2, basis2


def _strip_inequation(rur: RUR, inequation: MultiPoly) -> RUR:
    """Drop the solutions where the inequation vanishes (gcd strip)."""
    if rur.is_empty():
        return rur
    w = rur.element_of(inequation)
    if w.is_zero():
        return _empty_rur(rur.variables)
    g = gcd(rur.q, w)
    if g.degree() == 0:
        return rur
    q_new = (rur.q.divmod(g)[0]).monic()
    if q_new.degree() == 0:
        return _empty_rur(rur.variables)
    coords = rur.coordinate_elements()
    dq = q_new.deriv()
    numerators = [mulmod(c % q_new, dq, q_new) for c in coords]
    return RUR(rur.variables, rur.lam, q_new, numerators)


def _solve_attempt(req: SolveRequest, rng) -> RUR:
    variables = req.variables
    syms = sympy.symbols(variables)
    if len(variables) == 1:
        syms = (syms,) if not isinstance(syms, tuple) else syms
    equations = [e for e in req.equations if not e.is_zero()]
    if not equations:
        raise NotZeroDimensional("system of zero polynomials is the whole space")
    if any(e.is_constant() for e in equations):
        return _empty_rur(variables)
    inequation = req.effective_inequation()

    gb = _groebner(equations, syms)
    basis = _staircase(gb, syms)
    if basis is not None:
        if not basis:
            return _empty_rur(variables)
        basis_index = {m: i for i, m in enumerate(basis)}
        gb, basis = _radicalize(equations, gb, syms, basis, basis_index)
        rur = _rur_from_radical_ideal(gb, syms, basis, variables, len(variables), rng)
        if inequation is not None:
            rur = _strip_inequation(rur, inequation)
        return rur

    # Equations alone are positive-dimensional; only the localized set can
    # still be finite. Rabinowitsch: inequation * Z = 1 with a fresh variable.
    if inequation is None:
        raise NotZeroDimensional("solution set is positive-dimensional")
    zname = "_Z"
    while zname in variables:
        zname += "_"
    ext_vars = variables + (zname,)
    ext_eqs = [_extend_vars(e, ext_vars) for e in equations]
    zpoly = MultiPoly.variable(ext_vars, zname)
    ext_eqs.append(_extend_vars(inequation, ext_vars) * zpoly - 1)
    ext_syms = sympy.symbols(ext_vars)
    gb = _groebner(ext_eqs, ext_syms)
    basis = _staircase(gb, ext_syms)
    if basis is None:
        raise NotZeroDimensional("localized solution set is positive-dimensional")
    if not basis:
        return _empty_rur(variables)
    basis_index = {m: i for i, m in enumerate(basis)}
    gb, basis = _radicalize(ext_eqs, gb, ext_syms, basis, basis_index)
    # The projection dropping Z is injective on solutions (Z = 1/inequation),
    # so a separating form in the original variables exists.
    ext_rur = _rur_from_radical_ideal(gb, ext_syms, basis, ext_vars, len(variables), rng)
    return RUR(variables, ext_rur.lam[: len(variables)], ext_rur.q,
               ext_rur.numerators[: len(variables)])


def _extend_vars(p: MultiPoly, new_vars) -> MultiPoly:
    mapping = [new_vars.index(v) for v in p.vars]
    terms = {}
    for expo, coeff in p.terms.items():
        new_expo = [0] * len(new_vars)
        for idx, e in zip(mapping, expo):
            new_expo[idx] = e
        terms[tuple(new_expo)] = coeff
    return MultiPoly(new_vars, terms)


def solve_zero_dim(req: SolveRequest):
    """Solve the localized system; returns (rur, real points sorted by root).

    Raises NotZeroDimensional when the localized solution set is infinite and
    GenericityFailure when randomized choices keep failing certification.
    """
    rng = random.Random(req.seed)
    last_error = None
    for _ in range(RETRY_BUDGET):
        rur = _solve_attempt(req, rng)
        if verify_rur(rur, req):
            points = [AlgebraicPoint(rur, root) for root in isolate_real_roots(rur.q)] \
                if not rur.is_empty() else []
            return rur, points
        last_error = GenericityFailure("RUR failed self-certification; reseeding")
    raise last_error or GenericityFailure("solver retries exhausted")


def verify_rur(rur: RUR, req: SolveRequest) -> bool:
    """Independent certification of a RUR against its request.

    Checks, with none of the solver's machinery: q is square-free, each
    numerator has degree below deg q, the separating form recovers the
    parameter, every equation vanishes after substituting v_i/q' and
    clearing denominators, and the inequation shares no root with q.
    """
    variables = req.variables
    if rur.variables != variables:
        return False
    if rur.is_empty():
        return True
    q = rur.q
    dq = q.deriv()
    if gcd(q, dq).degree() != 0:
        return False
    if any(v.degree() >= q.degree() for v in rur.numerators):
        return False
    # separating form: sum(lam_i * v_i) = T * q' modulo q
    acc = UniPoly.zero()
    for lam, v in zip(rur.lam, rur.numerators):
        acc = acc + v * lam
    if not ((acc - UniPoly([0, 1]) * dq) % q).is_zero():
        return False
    for equation in req.equations:
        if not _cleared_substitution(equation, rur).is_zero():
            return False
    inequation = req.effective_inequation()
    if inequation is not None:
        w = _cleared_substitution(inequation, rur)
        if w.is_zero() or gcd(q, w).degree() != 0:
            return False
    return True


def _cleared_substitution(p: MultiPoly, rur: RUR) -> UniPoly:
    """Numerator of p(v_1/q', ..., v_n/q') modulo q (cleared by a q' power)."""
    q = rur.q
    dq = q.deriv()
    total = p.total_degree()
    if total < 0:
        return UniPoly.zero()
    dq_pows = [UniPoly([1])]
    for _ in range(total):
        dq_pows.append(mulmod(dq_pows[-1], dq, q))
    acc = UniPoly.zero()
    for expo, coeff in p.terms.items():
        term = UniPoly([coeff])
        deg = 0
        for v, e in zip(rur.numerators, expo):
            deg += e
            if e == 1:
                term = mulmod(term, v, q)
            elif e > 1:
                term = mulmod(term, _powmod_cached(v, e, q), q)
        term = mulmod(term, dq_pows[total - deg], q)
        acc = (acc + term) % q
    return acc


# -- dimension and degree by hyperplane slicing -----------------------------------


def _random_hyperplane(variables, rng) -> MultiPoly:
    while True:
        coeffs = [rng.randint(-COEFF_BOUND, COEFF_BOUND) for _ in variables]
        if any(coeffs):
            break
    const = rng.randint(-COEFF_BOUND, COEFF_BOUND)
    terms = {}
    n = len(variables)
    for i, c in enumerate(coeffs):
        if c:
            expo = [0] * n
            expo[i] = 1
            terms[tuple(expo)] = Q(c)
    terms[(0,) * n] = Q(const)
    return MultiPoly(variables, terms)


def _sliced_solve(equations, inequation, extra, seed):
    req = SolveRequest(list(equations) + list(extra), inequation, seed=seed)
    return solve_zero_dim(req)[0]


def _dimension_once(equations, inequation, rng):
    variables = equations[0].vars
    n = len(variables)
    for j in range(n, -1, -1):
        planes = [_random_hyperplane(variables, rng) for _ in range(j)]
        try:
            rur = _sliced_solve(equations, inequation, planes, rng.getrandbits(32))
        except NotZeroDimensional:
            return None  # inconsistent with the scan so far; caller retries
        if rur.degree > 0:
            return j
    return -1


def dimension_of(equations, inequation=None, seed=0) -> int:
    """Dimension of the Zariski closure of the localized solution set; -1 if empty.

    Certified by agreement of two independent generic draws.
    """
    equations = list(equations)
    if not equations:
        raise ValueError("dimension_of needs at least one equation")
    variables = equations[0].vars
    equations = [e for e in equations if not e.is_zero()]
    if not equations:
        # only zero polynomials: the whole space (a localization keeps its dimension)
        return len(variables)
    rng = random.Random(seed * 0x9E3779B1 + 1)
    for _ in range(RETRY_BUDGET):
        first = _dimension_once(equations, inequation, rng)
        second = _dimension_once(equations, inequation, rng)
        if first is not None and first == second:
            return first
    raise GenericityFailure("dimension draws kept disagreeing")


def degree_of_closure(equations, inequation=None, seed=0) -> int:
    """Degree of the Zariski closure of the localized solution set (0 if empty).

    Slices with dimension-many generic hyperplanes and counts the finite
    section; two independent draws must agree.
    """
    equations = [e for e in equations if not e.is_zero()]
    if not equations:
        raise ValueError("degree of the full space is not defined here")
    dim = dimension_of(equations, inequation, seed=seed)
    if dim == -1:
        return 0
    variables = equations[0].vars
    rng = random.Random(seed * 0x9E3779B1 + 2)
    for _ in range(RETRY_BUDGET):
        counts = []
        ok = True
        for _ in range(2):
            planes = [_random_hyperplane(variables, rng) for _ in range(dim)]
            try:
                rur = _sliced_solve(equations, inequation, planes, rng.getrandbits(32))
            except NotZeroDimensional:
                ok = False
                break
            counts.append(rur.degree)
        if ok and counts[0] == counts[1]:
            return counts[0]
    raise GenericityFailure("degree draws kept disagreeing")
