"""Univariate polynomials over the rationals.

Coefficients are stored ascending by degree; the zero polynomial is the
empty list. Provides the Euclidean toolkit (division, gcd, square-free
part), Sturm sequences for certified root counting, and arithmetic modulo
a fixed polynomial used by the solver's quotient-ring computations.
"""

from __future__ import annotations

from fractions import Fraction

Q = Fraction


class UniPoly:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, Fraction) else Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls):
        return cls([])

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def shifted_monomial(cls, c, k):
        return cls([0] * k + [c])

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self):
        if self.is_zero():
            return self
        lead = self.leading()
        if lead == 1:
            return self
        return UniPoly([c / lead for c in self.coeffs])

    def primitive(self):
        """Integer-primitive rational multiple (content 1, positive leading)."""
        if self.is_zero():
            return self
        from math import gcd, lcm

        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        if ints[-1] < 0:
            g = -g
        return UniPoly([Q(v, g) for v in ints])

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return UniPoly.zero()
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly.zero()
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = UniPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other):
        """Quotient and remainder over the field of rationals."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        div = other.coeffs
        dd = len(div) - 1
        lead = div[-1]
        if len(rem) - 1 < dd:
            return UniPoly.zero(), UniPoly(rem)
        quot = [Q(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / lead
            quot[i - dd] = q
            for j in range(dd + 1):
                rem[i - dd + j] -= q * div[j]
        return UniPoly(quot), UniPoly(rem[:dd])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def deriv(self):
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x) -> Fraction:
        x = x if isinstance(x, Fraction) else Q(x)
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def eval_interval(self, lo, hi):
        """Interval extension: bounds of p over [lo, hi] by interval Horner."""
        alo = ahi = Q(0)
        for c in reversed(self.coeffs):
            cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
            alo, ahi = min(cands) + c, max(cands) + c
        return alo, ahi

    def compose(self, other):
        """p(other(t)) by Horner over the polynomial ring."""
        acc = UniPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly([c])
        return acc

    def shift(self, a):
        """p(t + a)."""
        return self.compose(UniPoly([a, 1]))

    def scale_arg(self, s):
        """p(s * t)."""
        s = s if isinstance(s, Fraction) else Q(s)
        return UniPoly([c * s**i for i, c in enumerate(self.coeffs)])

    def reverse(self):
        """t^deg * p(1/t)."""
        return UniPoly(list(reversed(self.coeffs)))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*T")
            else:
                parts.append(f"{c}*T^{i}")
        return " + ".join(parts)

    def __repr__(self):
        return f"UniPoly({str(self)})"


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def squarefree_part(p: UniPoly) -> UniPoly:
    """p divided by gcd(p, p'), made monic."""
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial")
    if p.degree() == 0:
        return UniPoly([1])
    g = gcd(p, p.deriv())
    if g.degree() == 0:
        return p.monic()
    return (p // g).monic()


def sturm_sequence(p: UniPoly):
    """Sturm chain of p (classically applied to a square-free p)."""
    seq = [p, p.deriv()]
    while not seq[-1].is_zero() and seq[-1].degree() > 0:
        seq.append(-(seq[-2] % seq[-1]))
    if seq[-1].is_zero():
        seq.pop()
    return seq


def _sign_variations(values):
    count = 0
    prev = 0
    for v in values:
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def sturm_count(p: UniPoly, lo=None, hi=None, chain=None):
    """Number of distinct real roots of p in (lo, hi]; open endpoints at infinity.

    lo=None means -infinity, hi=None means +infinity.
    """
    if p.is_zero():
        raise ValueError("root count of the zero polynomial")
    if p.degree() == 0:
        return 0
    seq = chain if chain is not None else sturm_sequence(p)

    def vals_at(point):
        if point is None:
            return None
        return [q(point) for q in seq]

    def vals_at_inf(sign):
        out = []
        for q in seq:
            if q.is_zero():
                out.append(Q(0))
            else:
                lead = q.leading()
                if sign > 0:
                    out.append(lead)
                else:
                    out.append(lead if q.degree() % 2 == 0 else -lead)
        return out

    lo_vals = vals_at(lo) if lo is not None else vals_at_inf(-1)
    hi_vals = vals_at(hi) if hi is not None else vals_at_inf(+1)
    return _sign_variations(lo_vals) - _sign_variations(hi_vals)


def cauchy_root_bound(p: UniPoly) -> Fraction:
    """All real roots of p lie in [-B, B] with B = 1 + max|c_i|/|c_lead|."""
    if p.is_zero() or p.degree() == 0:
        return Q(1)
    lead = abs(p.leading())
    top = max(abs(c) for c in p.coeffs[:-1]) if p.degree() >= 1 else Q(0)
    return 1 + top / lead


def descartes_bound(p: UniPoly) -> int:
    """Sign variation count of the coefficients (bounds positive real roots)."""
    return _sign_variations(p.coeffs)


def descartes_bound_01(p: UniPoly) -> int:
    """Descartes bound for the root count of p in the open interval (0, 1)."""
    n = p.degree()
    if n < 0:
        raise ValueError("zero polynomial")
    # roots in (0,1) of p(t) correspond to positive roots of (1+s)^n p(1/(1+s))
    q = p.reverse().shift(Q(1))
    return descartes_bound(q)


# -- arithmetic modulo a fixed polynomial --------------------------------------


def mulmod(a: UniPoly, b: UniPoly, m: UniPoly) -> UniPoly:
    return (a * b) % m


def powmod(a: UniPoly, k: int, m: UniPoly) -> UniPoly:
    result = UniPoly([1]) % m
    base = a % m
    while k:
        if k & 1:
            result = mulmod(result, base, m)
        base = mulmod(base, base, m)
        k >>= 1
    return result


def invmod(a: UniPoly, m: UniPoly) -> UniPoly:
    """Inverse of a modulo m; requires gcd(a, m) = 1."""
    r0, r1 = m, a % m
    s0, s1 = UniPoly.zero(), UniPoly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree() != 0:
        raise ArithmeticError("element is not invertible modulo m")
    return (s0 * (1 / r0.coeffs[0])) % m
