"""Exact multivariate polynomial arithmetic and input parsing.

Polynomials are stored sparsely: a map from exponent vectors to nonzero
rational coefficients, over a fixed ordered variable list. The graded
lexicographic order is the canonical term order used for printing and for
leading-term selection, so equal polynomials print identically and
structural equality of the term maps is semantic equality.

Input systems are parsed as expression trees (divisions only by rational
constants) and expanded eagerly; the node count of the tree is recorded as
the circuit size of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import ParseError

Q = Fraction


def _as_q(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected a rational, got {type(value).__name__}")


def grlex_key(exponents):
    """Sort key realizing graded lexicographic order (ascending)."""
    return (sum(exponents), exponents)


class MultiPoly:
    """Sparse multivariate polynomial over arbitrary-precision rationals.

    Immutable after construction; zero coefficients are never stored.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms):
        self.vars = tuple(variables)
        n = len(self.vars)
        clean = {}
        for expo, coeff in terms.items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != n:
                raise ValueError("exponent vector length does not match variable count")
            if any(e < 0 for e in expo):
                raise ValueError("negative exponent")
            coeff = _as_q(coeff)
            if coeff != 0:
                clean[expo] = coeff
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, value):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): _as_q(value)})

    @classmethod
    def variable(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        expo = [0] * len(variables)
        expo[i] = 1
        return cls(variables, {tuple(expo): Q(1)})

    # -- predicates and views ----------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Q(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def sorted_terms(self):
        """Terms in descending graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        expo = max(self.terms, key=grlex_key)
        return expo, self.terms[expo]

    # -- ring operations -----------------------------------------------------

    def _check_same_vars(self, other):
        if self.vars != other.vars:
            raise ValueError("polynomials over different variable lists")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.vars, other)
        self._check_same_vars(other)
        terms = dict(self.terms)
        for expo, coeff in other.terms.items():
            acc = terms.get(expo, Q(0)) + coeff
            if acc == 0:
                terms.pop(expo, None)
            else:
                terms[expo] = acc
        return MultiPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_q(other)
            if other == 0:
                return MultiPoly.zero(self.vars)
            return MultiPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        self._check_same_vars(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(expo, Q(0)) + c1 * c2
                if acc == 0:
                    terms.pop(expo, None)
                else:
                    terms[expo] = acc
        return MultiPoly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and evaluation ---------------------------------------------

    def deriv(self, i):
        """Formal partial derivative with respect to the i-th variable (0-based)."""
        terms = {}
        for expo, coeff in self.terms.items():
            e = expo[i]
            if e == 0:
                continue
            new = list(expo)
            new[i] = e - 1
            terms[tuple(new)] = coeff * e
        return MultiPoly(self.vars, terms)

    def evaluate(self, point) -> Fraction:
        point = [_as_q(c) for c in point]
        if len(point) != len(self.vars):
            raise ValueError("point dimension does not match variable count")
        total = Q(0)
        for expo, coeff in self.terms.items():
            val = coeff
            for c, e in zip(point, expo):
                if e:
                    val *= c ** e
            total += val
        return total

    def on_line(self, base, direction):
        """Coefficients (ascending) of t -> p(base + t*direction), exact."""
        base = [_as_q(c) for c in base]
        direction = [_as_q(c) for c in direction]
        out = [Q(0)]
        for expo, coeff in self.terms.items():
            term = [coeff]
            for b, d, e in zip(base, direction, expo):
                for _ in range(e):
                    term = _uni_mul_linear(term, b, d)
            out = _uni_add(out, term)
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    # -- printing --------------------------------------------------------------

    def _monomial_str(self, expo):
        parts = []
        for name, e in zip(self.vars, expo):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for i, (expo, coeff) in enumerate(self.sorted_terms()):
            mono = self._monomial_str(expo)
            mag = abs(coeff)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"


def _uni_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _uni_mul_linear(coeffs, b, d):
    """Multiply a univariate coefficient list by (b + d*t)."""
    out = [Q(0)] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        out[i] += c * b
        out[i + 1] += c * d
    return out


# -- polynomial matrices ------------------------------------------------------


class PolyMatrix:
    """Rectangular matrix of polynomials over a shared variable list."""

    __slots__ = ("rows", "cols", "entries", "vars")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise ValueError("matrix must be nonempty")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise ValueError("matrix rows have unequal lengths")
        variables = entries[0][0].vars
        for row in entries:
            for p in row:
                if p.vars != variables:
                    raise ValueError("matrix entries over different variable lists")
        self.entries = entries
        self.rows = len(entries)
        self.cols = width
        self.vars = variables

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def submatrix(self, rows, cols):
        return PolyMatrix(tuple(tuple(self.entries[r][c] for c in cols) for r in rows))

    def minor(self, rows, cols):
        """Determinant of the selected square submatrix, exact."""
        rows = tuple(rows)
        cols = tuple(cols)
        if len(rows) != len(cols):
            raise ValueError("minor requires equally many rows and columns")
        sub = [[self.entries[r][c] for c in cols] for r in rows]
        return det(sub)

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return det([list(row) for row in self.entries])


def det(grid):
    """Determinant of a square grid of MultiPoly.

    Cofactor expansion up to 4x4, fraction-free Bareiss elimination above
    (intermediate divisions are exact in the polynomial ring).
    """
    n = len(grid)
    if n == 0:
        raise ValueError("empty determinant")
    variables = grid[0][0].vars
    if n <= 4:
        return _det_cofactor(grid, variables)
    return _det_bareiss(grid, variables)


def _det_cofactor(grid, variables):
    n = len(grid)
    if n == 1:
        return grid[0][0]
    if n == 2:
        return grid[0][0] * grid[1][1] - grid[0][1] * grid[1][0]
    acc = MultiPoly.zero(variables)
    for j in range(n):
        entry = grid[0][j]
        if entry.is_zero():
            continue
        rest = [[row[c] for c in range(n) if c != j] for row in grid[1:]]
        cof = entry * _det_cofactor(rest, variables)
        acc = acc + cof if j % 2 == 0 else acc - cof
    return acc


def _det_bareiss(grid, variables):
    n = len(grid)
    a = [list(row) for row in grid]
    one = MultiPoly.constant(variables, 1)
    sign = 1
    prev = one
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(variables)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = div_exact(num, prev)
            a[i][k] = MultiPoly.zero(variables)
        prev = a[k][k]
    result = a[n - 1][n - 1]
    return result if sign == 1 else -result


def div_exact(dividend, divisor):
    """Exact quotient in the polynomial ring; raises if division leaves a remainder."""
    if divisor.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if dividend.is_zero():
        return MultiPoly.zero(dividend.vars)
    if divisor.is_constant():
        inv = 1 / divisor.constant_value()
        return dividend * inv
    quot = {}
    rem = dividend
    d_expo, d_coeff = divisor.leading_term()
    while not rem.is_zero():
        r_expo, r_coeff = rem.leading_term()
        q_expo = tuple(a - b for a, b in zip(r_expo, d_expo))
        if any(e < 0 for e in q_expo):
            raise ArithmeticError("inexact polynomial division")
        q_coeff = r_coeff / d_coeff
        quot[q_expo] = quot.get(q_expo, Q(0)) + q_coeff
        rem = rem - divisor * MultiPoly(dividend.vars, {q_expo: q_coeff})
    return MultiPoly(dividend.vars, quot)


def partial_derivative(p: MultiPoly, i: int) -> MultiPoly:
    """Partial derivative with respect to the 1-based variable index i."""
    if not 1 <= i <= len(p.vars):
        raise ValueError("variable index out of range")
    return p.deriv(i - 1)


def gradient(p: MultiPoly):
    return [p.deriv(i) for i in range(len(p.vars))]


def jacobian(fs) -> PolyMatrix:
    fs = list(fs)
    if not fs:
        raise ValueError("jacobian of an empty system")
    return PolyMatrix([gradient(f) for f in fs])


def hessian(p: MultiPoly) -> PolyMatrix:
    n = len(p.vars)
    grads = gradient(p)
    return PolyMatrix([[grads[i].deriv(j) for j in range(n)] for i in range(n)])


def adjugate(m: PolyMatrix) -> PolyMatrix:
    """Adjugate (transposed cofactor matrix): m * adj(m) = det(m) * I."""
    if m.rows != m.cols:
        raise ValueError("adjugate of a non-square matrix")
    n = m.rows
    if n == 1:
        return PolyMatrix([[MultiPoly.constant(m.vars, 1)]])
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            rows = [r for r in range(n) if r != j]
            cols = [c for c in range(n) if c != i]
            cof = m.minor(rows, cols)
            if (i + j) % 2 == 1:
                cof = -cof
            row.append(cof)
        out.append(row)
    return PolyMatrix(out)


# -- expression DAG and parser ------------------------------------------------


@dataclass(frozen=True)
class ExprNode:
    kind: str  # "const" | "var" | "add" | "sub" | "mul" | "pow" | "neg"
    value: object = None
    children: tuple = ()


class ExprDag:
    """Expression forest for the parsed outputs; size is the circuit size L.

    L is recorded metadata only: the library expands everything to MultiPoly
    and never computes with the tree again.
    """

    def __init__(self, variables):
        self.vars = tuple(variables)
        self.outputs = []  # (role, name, node)

    def add_output(self, role, node):
        self.outputs.append((role, node))

    @property
    def size(self):
        seen = set()

        def walk(node):
            if id(node) in seen:
                return 0
            seen.add(id(node))
            return 1 + sum(walk(c) for c in node.children)

        return sum(walk(node) for _, node in self.outputs)

    def expand(self, node) -> MultiPoly:
        memo = {}

        def go(nd):
            key = id(nd)
            if key in memo:
                return memo[key]
            if nd.kind == "const":
                res = MultiPoly.constant(self.vars, nd.value)
            elif nd.kind == "var":
                res = MultiPoly.variable(self.vars, nd.value)
            elif nd.kind == "add":
                res = go(nd.children[0]) + go(nd.children[1])
            elif nd.kind == "sub":
                res = go(nd.children[0]) - go(nd.children[1])
            elif nd.kind == "mul":
                res = go(nd.children[0]) * go(nd.children[1])
            elif nd.kind == "neg":
                res = -go(nd.children[0])
            elif nd.kind == "pow":
                res = go(nd.children[0]) ** nd.value
            else:
                raise AssertionError(f"unknown node kind {nd.kind}")
            memo[key] = res
            return res

        return go(node)


@dataclass
class ParsedSystem:
    variables: tuple
    objective: Optional[MultiPoly]
    constraints: list  # "eq:" lines, in file order
    sign_polys: list  # "poly:" lines, in file order
    circuit_size: int
    dag: ExprDag

    @property
    def mode(self):
        return "poly" if self.sign_polys else "optimize"


class _Tokenizer:
    def __init__(self, text, line_no):
        self.text = text
        self.line = line_no
        self.pos = 0
        self.tokens = []
        self._scan()
        self.idx = 0

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                if j < len(text) and text[j] == ".":
                    raise ParseError("non-rational constant (decimal literals not allowed)",
                                     self.line, i + 1)
                self.tokens.append(("int", int(text[i:j]), i + 1))
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("ident", text[i:j], i + 1))
                i = j
                continue
            if ch in "+-*^()/":
                self.tokens.append((ch, ch, i + 1))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", self.line, i + 1)
        self.tokens.append(("end", None, len(text) + 1))

    def peek(self):
        return self.tokens[self.idx]

    def next(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok


class _ExprParser:
    """Recursive descent for: expr := term ((+|-) term)*; term := factor (* factor)*;
    factor := (+|-)* atom (^ INT)?; atom := NUMBER | IDENT | ( expr ).

    Division appears only inside rational literals p/q.
    """

    def __init__(self, tokenizer, variables, line_no):
        self.tz = tokenizer
        self.vars = variables
        self.line = line_no

    def parse(self):
        node = self.expr()
        kind, _, col = self.tz.peek()
        if kind != "end":
            raise ParseError("trailing input after expression", self.line, col)
        return node

    def expr(self):
        node = self.term()
        while self.tz.peek()[0] in ("+", "-"):
            op, _, _ = self.tz.next()
            rhs = self.term()
            node = ExprNode("add" if op == "+" else "sub", children=(node, rhs))
        return node

    def term(self):
        node = self.factor()
        while self.tz.peek()[0] == "*":
            self.tz.next()
            rhs = self.factor()
            node = ExprNode("mul", children=(node, rhs))
        return node

    def factor(self):
        negate = False
        while self.tz.peek()[0] in ("+", "-"):
            op, _, _ = self.tz.next()
            if op == "-":
                negate = not negate
        node = self.atom()
        if self.tz.peek()[0] == "^":
            _, _, col = self.tz.next()
            kind, value, col2 = self.tz.next()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", self.line, col2)
            node = ExprNode("pow", value=value, children=(node,))
        if negate:
            node = ExprNode("neg", children=(node,))
        return node

    def atom(self):
        kind, value, col = self.tz.next()
        if kind == "int":
            num = value
            if self.tz.peek()[0] == "/":
                self.tz.next()
                kind2, den, col2 = self.tz.next()
                if kind2 != "int" or den == 0:
                    raise ParseError("malformed rational literal", self.line, col2)
                return ExprNode("const", value=Q(num, den))
            return ExprNode("const", value=Q(num))
        if kind == "ident":
            if value not in self.vars:
                raise ParseError(f"unknown variable {value!r}", self.line, col)
            return ExprNode("var", value=value)
        if kind == "(":
            node = self.expr()
            kind2, _, col2 = self.tz.next()
            if kind2 != ")":
                raise ParseError("expected ')'", self.line, col2)
            return node
        raise ParseError("expected a number, variable, or '('", self.line, col)


def parse_expression(text, variables, line_no=1) -> ExprNode:
    return _ExprParser(_Tokenizer(text, line_no), tuple(variables), line_no).parse()


def parse_system(text) -> ParsedSystem:
    """Parse a full input file into expanded canonical polynomials."""
    variables = None
    pending = []  # (role, line_no, payload text)
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, rest = line.partition(":")
        head = head.strip()
        if not sep:
            raise ParseError("expected a 'directive: content' line", line_no, 1)
        if head == "vars":
            if variables is not None:
                raise ParseError("duplicate vars: line", line_no, 1)
            names = rest.split()
            if not names:
                raise ParseError("vars: line lists no variables", line_no, 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", line_no, 1)
            for name in names:
                if not (name[0].isalpha() or name[0] == "_") or not all(
                    c.isalnum() or c == "_" for c in name
                ):
                    raise ParseError(f"invalid variable name {name!r}", line_no, 1)
            variables = tuple(names)
        elif head in ("minimize", "eq", "poly"):
            if variables is None:
                raise ParseError("vars: line must precede expressions", line_no, 1)
            pending.append((head, line_no, rest))
        else:
            raise ParseError(f"unknown directive {head!r}", line_no, 1)
    if variables is None:
        raise ParseError("input contains no vars: line", 1, 1)

    dag = ExprDag(variables)
    objective = None
    constraints = []
    sign_polys = []
    for role, line_no, payload in pending:
        node = parse_expression(payload, variables, line_no)
        dag.add_output(role, node)
        poly = dag.expand(node)
        if role == "minimize":
            if objective is not None:
                raise ParseError("duplicate minimize: line", line_no, 1)
            objective = poly
        elif role == "eq":
            constraints.append(poly)
        else:
            sign_polys.append(poly)

    if sign_polys and (objective is not None or constraints):
        raise ParseError("a file is either poly-mode or optimize-mode, not both", 1, 1)
    if not sign_polys and objective is None and not constraints:
        raise ParseError("input defines no polynomials", 1, 1)

    return ParsedSystem(
        variables=variables,
        objective=objective,
        constraints=constraints,
        sign_polys=sign_polys,
        circuit_size=dag.size,
        dag=dag,
    )
