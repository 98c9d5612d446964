"""Real algebraic numbers with certified isolating intervals.

A number is a square-free defining polynomial together with a rational
interval containing exactly one of its real roots (a point interval for
rational numbers). All queries -- sign of a polynomial at the number,
comparison, refinement -- are exact: interval arithmetic answers the easy
cases and gcd/Sturm arguments settle ties, so no answer ever depends on
precision.

Isolation runs Descartes bisection on the square-free part and certifies
the result against the Sturm-sequence root count.
"""

from __future__ import annotations

from fractions import Fraction

from .unipoly import (
    UniPoly,
    cauchy_root_bound,
    descartes_bound_01,
    gcd,
    squarefree_part,
    sturm_count,
    sturm_sequence,
)

Q = Fraction


class RealAlgebraicNumber:
    """A real root of a square-free rational polynomial, isolated by an interval."""

    __slots__ = ("defining", "lo", "hi")

    def __init__(self, defining: UniPoly, lo, hi, _checked=False):
        lo = lo if isinstance(lo, Fraction) else Q(lo)
        hi = hi if isinstance(hi, Fraction) else Q(hi)
        self.defining = defining
        self.lo = lo
        self.hi = hi
        if not _checked:
            if lo > hi:
                raise ValueError("empty interval")
            if lo == hi:
                if defining(lo) != 0:
                    raise ValueError("point interval is not a root of the defining polynomial")
            else:
                if defining(lo) * defining(hi) >= 0:
                    raise ValueError("defining polynomial does not change sign on the interval")
                if sturm_count(defining, lo, hi) != 1:
                    raise ValueError("interval does not isolate exactly one root")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_rational(cls, r) -> "RealAlgebraicNumber":
        r = r if isinstance(r, Fraction) else Q(r)
        return cls(UniPoly([-r, Q(1)]), r, r, _checked=True)

    # -- basic views -----------------------------------------------------------

    def is_rational(self):
        return self.lo == self.hi

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("number is not represented as a rational")
        return self.lo

    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self):
        a = self.refined(Q(1, 10**17))
        return float(a.lo + (a.hi - a.lo) / 2)

    def __repr__(self):
        if self.is_rational():
            return f"RAN({self.lo})"
        return f"RAN(~{float(self):.6g} in [{self.lo}, {self.hi}])"

    # -- refinement -------------------------------------------------------------

    def _bisect_once(self):
        """One bisection step; returns a new number with the same root."""
        if self.is_rational():
            return self
        mid = self.midpoint()
        fm = self.defining(mid)
        if fm == 0:
            return RealAlgebraicNumber(self.defining, mid, mid, _checked=True)
        if self.defining(self.lo) * fm < 0:
            return RealAlgebraicNumber(self.defining, self.lo, mid, _checked=True)
        return RealAlgebraicNumber(self.defining, mid, self.hi, _checked=True)

    def refined(self, width) -> "RealAlgebraicNumber":
        """Same number with interval width at most `width`."""
        width = width if isinstance(width, Fraction) else Q(width)
        if width <= 0:
            raise ValueError("width must be positive")
        a = self
        while a.hi - a.lo > width:
            a = a._bisect_once()
        return a

    # -- exact comparisons --------------------------------------------------------

    def compare_rational(self, r) -> int:
        """Exact three-way comparison with a rational number."""
        r = r if isinstance(r, Fraction) else Q(r)
        if self.is_rational():
            v = self.lo
            return (v > r) - (v < r)
        if r <= self.lo:
            return 1  # the root lies strictly inside (lo, hi)
        if r >= self.hi:
            return -1
        fr = self.defining(r)
        if fr == 0:
            return 0  # a rational root inside the isolating interval is the root
        if self.defining(self.lo) * fr < 0:
            return -1  # root is in (lo, r)
        return 1

    def sign(self) -> int:
        return self.compare_rational(Q(0))

    def compare(self, other) -> int:
        """Exact three-way comparison with another real algebraic number."""
        if isinstance(other, (int, Fraction)):
            return self.compare_rational(other)
        if other.is_rational():
            return self.compare_rational(other.lo)
        if self.is_rational():
            return -other.compare_rational(self.lo)
        if self.hi <= other.lo:
            return -1
        if other.hi <= self.lo:
            return 1
        # Overlapping open intervals: decide equality by a gcd argument.
        g = gcd(self.defining, other.defining)
        if g.degree() >= 1:
            ilo = max(self.lo, other.lo)
            ihi = min(self.hi, other.hi)
            # Endpoints are never roots of g since g divides both defining
            # polynomials and neither vanishes at its own interval endpoints.
            if ilo < ihi and sturm_count(g, ilo, ihi) == 1:
                return 0
            if ilo == ihi:
                pass  # touching open intervals cannot share their interior roots
        a, b = self, other
        while True:
            if a.hi <= b.lo:
                return -1
            if b.hi <= a.lo:
                return 1
            if a.width() >= b.width():
                a = a._bisect_once()
            else:
                b = b._bisect_once()
            if a.is_rational():
                return -b.compare_rational(a.lo)
            if b.is_rational():
                return a.compare_rational(b.lo)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (RealAlgebraicNumber, int, Fraction)):
            return self.compare(other) == 0
        return NotImplemented

    def __hash__(self):
        # A stable coarse hash: numbers that compare equal refine to the same
        # dyadic cell of width 1; fall back on the integer floor.
        a = self.refined(Q(1, 2))
        return hash(a.lo.__floor__())

    # -- decimal rendering -----------------------------------------------------------

    def approx_decimal(self, digits=12) -> str:
        """Deterministic decimal approximation with `digits` fractional digits."""
        a = self.refined(Q(1, 2 * 10 ** (digits + 1)))
        mid = a.lo + (a.hi - a.lo) / 2
        neg = mid < 0
        m = -mid if neg else mid
        scaled = m * 10**digits
        q, r = divmod(scaled.numerator, scaled.denominator)
        if 2 * r > scaled.denominator or (2 * r == scaled.denominator and q % 2 == 1):
            q += 1
        body = str(q).rjust(digits + 1, "0")
        out = f"{body[:-digits]}.{body[-digits:]}" if digits else body
        return f"-{out}" if neg and q != 0 else out

    def to_json(self, digits=12):
        return {
            "poly": [str(c) for c in self.defining.coeffs],
            "interval": [str(self.lo), str(self.hi)],
            "approx": self.approx_decimal(digits),
        }


def isolate_real_roots(p: UniPoly):
    """All distinct real roots of p, ascending, with disjoint isolating intervals."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    sf = squarefree_part(p).primitive()
    if sf.degree() <= 0:
        return []
    bound = cauchy_root_bound(sf)
    roots = []

    def explore(a, b):
        # Counts roots in the open interval (a, b); endpoint roots are
        # recorded by the caller before recursing.
        g = sf.shift(a).scale_arg(b - a)  # roots in (0,1) mirror roots in (a,b)
        v = descartes_bound_01(g)
        if v == 0:
            return
        if v == 1:
            roots.append(RealAlgebraicNumber(sf, a, b, _checked=False))
            return
        m = (a + b) / 2
        if sf(m) == 0:
            roots.append(RealAlgebraicNumber(sf, m, m, _checked=True))
        explore(a, m)
        explore(m, b)

    explore(-bound, bound)
    roots.sort(key=lambda r: (r.lo, r.hi))
    expected = sturm_count(sf)
    if len(roots) != expected:
        raise AssertionError(
            f"isolation found {len(roots)} roots but the Sturm count is {expected}"
        )
    return roots


def sign_at(p: UniPoly, a: RealAlgebraicNumber) -> int:
    """Exact sign of p at the real algebraic number a."""
    if p.is_zero():
        return 0
    if a.is_rational():
        v = p(a.lo)
        return (v > 0) - (v < 0)
    # Quick interval evaluations with a bit of refinement.
    x = a
    for _ in range(4):
        lo, hi = p.eval_interval(x.lo, x.hi)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        x = x._bisect_once()
        if x.is_rational():
            v = p(x.lo)
            return (v > 0) - (v < 0)
    # Exact zero test: a is a root of p iff it is a root of gcd(p, defining).
    g = gcd(p, a.defining)
    if g.degree() >= 1 and sturm_count(g, x.lo, x.hi) == 1:
        return 0
    # p(a) != 0: shrink until p has no root inside the interval.
    psf = squarefree_part(p)
    chain = sturm_sequence(psf)
    while True:
        if psf(x.lo) != 0 and sturm_count(psf, x.lo, x.hi, chain=chain) == 0:
            v = p(x.lo)
            return (v > 0) - (v < 0)
        x = x._bisect_once()
        if x.is_rational():
            v = p(x.lo)
            return (v > 0) - (v < 0)


def compare(a: RealAlgebraicNumber, b: RealAlgebraicNumber) -> int:
    return a.compare(b)


def refine(a: RealAlgebraicNumber, width) -> RealAlgebraicNumber:
    return a.refined(width)


def smallest_positive_root(p: UniPoly):
    """Least real root greater than zero, or None."""
    for root in isolate_real_roots(p):
        if root.sign() > 0:
            return root
    return None


def rational_strictly_below(a: RealAlgebraicNumber) -> Fraction:
    """A rational r with 0 < r < a; requires a > 0."""
    if a.sign() <= 0:
        raise ValueError("rational_strictly_below requires a positive number")
    if a.is_rational():
        return a.lo / 2
    x = a
    while x.lo <= 0:
        x = x._bisect_once()
        if x.is_rational():
            return x.lo / 2
    return x.lo
