"""Exact scalars in Q(q) and linear algebra over that field.

Scalars are stored as ``q**shift * num / den`` where ``num`` and ``den`` are
integer polynomials (python-flint ``fmpz_poly``) with nonzero constant terms.
Laurent polynomials therefore always have ``den == 1``, which is the common
case for the structures in this package.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from flint import fmpz_poly

__all__ = [
    "MalformedScalar",
    "SingularMatrixError",
    "NoSolutionError",
    "NonUniqueSolutionError",
    "RationalFunction",
    "Q",
    "q",
    "normalize",
    "Matrix",
    "solve",
    "SparseEchelon",
    "nullspace",
    "span_basis",
    "intersect_spaces",
]


class MalformedScalar(ValueError):
    """Raised for unparsable scalars or a zero denominator."""


class SingularMatrixError(ArithmeticError):
    pass


class NoSolutionError(SingularMatrixError):
    pass


class NonUniqueSolutionError(SingularMatrixError):
    def __init__(self, message, particular=None, kernel=None):
        super().__init__(message)
        self.particular = particular
        self.kernel = kernel or []


_ZERO_POLY = fmpz_poly([])
_ONE_POLY = fmpz_poly([1])


def _low_order(p: fmpz_poly) -> int:
    coeffs = p.coeffs()
    for k, c in enumerate(coeffs):
        if c != 0:
            return k
    return 0


def _poly_from(obj) -> fmpz_poly:
    if isinstance(obj, fmpz_poly):
        return obj
    if isinstance(obj, dict):
        if not obj:
            return _ZERO_POLY
        lo = min(obj)
        if lo < 0:
            raise ValueError("negative exponent in polynomial; use a Laurent constructor")
        coeffs = [0] * (max(obj) + 1)
        for e, c in obj.items():
            coeffs[e] += int(c)
        return fmpz_poly(coeffs)
    return fmpz_poly(list(obj))


class RationalFunction:
    """An element of Q(q), kept in a unique reduced form.

    The reduced form has ``gcd(num, den) = 1``, a positive leading
    coefficient on ``den`` and joint integer content 1.  For every value
    whose denominator can be made monic with integer coefficients (all
    Laurent polynomials, for example) the stored denominator is monic.
    """

    __slots__ = ("_num", "_den", "_shift", "_hash")

    def __init__(self, value=0):
        if isinstance(value, RationalFunction):
            self._num, self._den, self._shift = value._num, value._den, value._shift
        elif isinstance(value, int):
            self._num, self._den, self._shift = (fmpz_poly([value]) if value else _ZERO_POLY), _ONE_POLY, 0
        elif isinstance(value, Fraction):
            other = RationalFunction._build(fmpz_poly([value.numerator]), fmpz_poly([value.denominator]), 0)
            self._num, self._den, self._shift = other._num, other._den, other._shift
        elif isinstance(value, str):
            other = parse_scalar(value)
            self._num, self._den, self._shift = other._num, other._den, other._shift
        else:
            raise TypeError(f"cannot build a scalar from {type(value).__name__}")
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, num, den, shift):
        obj = object.__new__(cls)
        obj._num, obj._den, obj._shift, obj._hash = num, den, shift, None
        return obj

    @classmethod
    def _build(cls, num: fmpz_poly, den: fmpz_poly, shift: int) -> "RationalFunction":
        if den.is_zero():
            raise MalformedScalar("zero denominator")
        if num.is_zero():
            return ZERO
        k = _low_order(num)
        if k:
            num = num.right_shift(k)
            shift += k
        k = _low_order(den)
        if k:
            den = den.right_shift(k)
            shift -= k
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        if not den.is_one():
            c = gcd(int(num.content()), int(den.content()))
            if c > 1:
                num = fmpz_poly([int(x) // c for x in num.coeffs()])
                den = fmpz_poly([int(x) // c for x in den.coeffs()])
        return cls._raw(num, den, shift)

    @classmethod
    def from_polys(cls, num, den=None) -> "RationalFunction":
        """Build ``num/den`` from coefficient lists or exponent dicts."""
        n = _poly_from(num)
        d = _ONE_POLY if den is None else _poly_from(den)
        return cls._build(n, d, 0)

    @classmethod
    def laurent(cls, terms: dict) -> "RationalFunction":
        """Build a Laurent polynomial from ``{exponent: integer coefficient}``."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo = min(terms)
        return cls._build(_poly_from({e - lo: c for e, c in terms.items()}), _ONE_POLY, lo)

    @classmethod
    def monomial(cls, coeff: int, exponent: int) -> "RationalFunction":
        if coeff == 0:
            return ZERO
        return cls._raw(fmpz_poly([coeff]), _ONE_POLY, exponent)

    # inspection ---------------------------------------------------------
    @property
    def numerator(self) -> dict:
        """Numerator as ``{exponent: coefficient}``, Laurent exponents allowed."""
        return {k + self._shift: int(c) for k, c in enumerate(self._num.coeffs()) if c != 0}

    @property
    def denominator(self) -> dict:
        return {k: int(c) for k, c in enumerate(self._den.coeffs()) if c != 0}

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_one(self) -> bool:
        return self._shift == 0 and self._num.is_one() and self._den.is_one()

    def is_laurent(self) -> bool:
        return self._den.is_one()

    def laurent_terms(self) -> dict:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.numerator

    def evaluate(self, at) -> Fraction:
        """Exact value at a rational point (reporting convenience only)."""
        x = Fraction(at)
        num = sum((Fraction(int(c)) * x**k for k, c in enumerate(self._num.coeffs())), Fraction(0))
        den = sum((Fraction(int(c)) * x**k for k, c in enumerate(self._den.coeffs())), Fraction(0))
        if den == 0 or (x == 0 and self._shift < 0):
            raise ZeroDivisionError(f"{self} has a pole at {at}")
        return num / den * x**self._shift

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other._num.is_zero():
            return self
        if self._num.is_zero():
            return other
        s = min(self._shift, other._shift)
        a = self._num.left_shift(self._shift - s) if self._shift != s else self._num
        b = other._num.left_shift(other._shift - s) if other._shift != s else other._num
        if self._den == other._den:
            num = a + b
            if num.is_zero():
                return ZERO
            if self._den.is_one():
                k = _low_order(num)
                if k:
                    num = num.right_shift(k)
                return RationalFunction._raw(num, _ONE_POLY, s + k)
            return RationalFunction._build(num, self._den, s)
        return RationalFunction._build(a * other._den + b * self._den, self._den * other._den, s)

    __radd__ = __add__

    def __neg__(self):
        if self._num.is_zero():
            return self
        return RationalFunction._raw(-self._num, self._den, self._shift)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self._num.is_zero() or other._num.is_zero():
            return ZERO
        if self._den.is_one() and other._den.is_one():
            return RationalFunction._raw(self._num * other._num, _ONE_POLY, self._shift + other._shift)
        return RationalFunction._build(self._num * other._num, self._den * other._den,
                                       self._shift + other._shift)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self._num.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return RationalFunction._build(self._den, self._num, -self._shift)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self._den.is_one() and self._num.length() == 1:
            return RationalFunction._raw(self._num ** k, _ONE_POLY, self._shift * k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return (self._shift == other._shift and self._num == other._num and self._den == other._den)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._shift, tuple(int(c) for c in self._num.coeffs()),
                               tuple(int(c) for c in self._den.coeffs())))
        return self._hash

    def __bool__(self):
        return not self._num.is_zero()

    # text ---------------------------------------------------------------
    def __str__(self):
        if self._num.is_zero():
            return "0"
        numtxt = _laurent_text(self.numerator)
        if self._den.is_one():
            return numtxt
        dentxt = _laurent_text(self.denominator)
        if len(self.numerator) > 1:
            numtxt = f"({numtxt})"
        if len(self.denominator) > 1:
            dentxt = f"({dentxt})"
        return f"{numtxt}/{dentxt}"

    def __repr__(self):
        return f"RationalFunction('{self}')"


def _laurent_text(terms: dict) -> str:
    parts = []
    for e in sorted(terms):
        c = terms[e]
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


ZERO = RationalFunction._raw(_ZERO_POLY, _ONE_POLY, 0)
ONE = RationalFunction._raw(_ONE_POLY, _ONE_POLY, 0)
Q = RationalFunction
q = RationalFunction.monomial(1, 1)


def normalize(num, den) -> RationalFunction:
    """Reduce ``num/den`` (coefficient lists or exponent dicts) to canonical form."""
    return RationalFunction.from_polys(num, den)


# parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(\^)|([-+*/()]))")


def _tokenize(text: str):
    pos, tokens = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise MalformedScalar(f"unexpected character {text[pos]!r} at column {pos + 1} in {text!r}")
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    return tokens


class _ScalarParser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok[0]

    def fail(self, what):
        col = self.tokens[self.i][1] + 1 if self.i < len(self.tokens) else len(self.text) + 1
        raise MalformedScalar(f"{what} at column {col} in {self.text!r}")

    def parse(self):
        if not self.tokens:
            raise MalformedScalar("empty scalar")
        value = self.expr()
        if self.peek() is not None:
            self.fail("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while True:
            tok = self.peek()
            if tok in ("*", "/"):
                self.take()
                rhs = self.factor()
                if tok == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        self.fail("division by zero")
                    value = value / rhs
            elif tok == "q" or tok == "(":
                value = value * self.factor()
            else:
                return value

    def factor(self):
        tok = self.peek()
        if tok == "-":
            self.take()
            return -self.factor()
        if tok == "+":
            self.take()
            return self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() in ("-", "+"):
                sign = -1 if self.take() == "-" else 1
            if self.peek() == "(":
                self.take()
                if self.peek() in ("-", "+"):
                    sign *= -1 if self.take() == "-" else 1
                exp = self.integer()
                if self.peek() != ")":
                    self.fail("expected ')'")
                self.take()
            else:
                exp = self.integer()
            if base.is_zero() and sign * exp < 0:
                self.fail("negative power of zero")
            base = base ** (sign * exp)
        return base

    def integer(self):
        tok = self.peek()
        if tok is None or not tok.isdigit():
            self.fail("expected integer exponent")
        return int(self.take())

    def atom(self):
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of input")
        if tok.isdigit():
            return RationalFunction(int(self.take()))
        if tok == "q":
            self.take()
            return q
        if tok == "(":
            self.take()
            value = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return value
        self.fail(f"unexpected token {tok!r}")


def parse_scalar(text: str) -> RationalFunction:
    return _ScalarParser(text).parse()


RationalFunction.parse = staticmethod(parse_scalar)


def as_scalar(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(x)


# dense matrices -----------------------------------------------------------

class Matrix:
    """Immutable dense matrix over Q(q)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(as_scalar(x) for x in row) for row in data)
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged matrix")
        self.data = rows

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        m = object.__new__(cls)
        m.rows, m.cols = rows, cols
        m.data = tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows))
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls([[as_scalar(entries[i]) if i == j else ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(n)])

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def row(self, i):
        return list(self.data[i])

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self):
        return self.rows == self.cols

    def transpose(self) -> "Matrix":
        return Matrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows)

    T = property(transpose)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], cols=self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], cols=self.cols)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.data], cols=self.cols)

    def scale(self, s) -> "Matrix":
        s = as_scalar(s)
        return Matrix([[s * a for a in r] for r in self.data], cols=self.cols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for col in cols:
                acc = ZERO
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, cols=other.cols)

    def apply(self, vector: Sequence) -> list:
        """Matrix times a column vector given as a list."""
        out = []
        for r in self.data:
            acc = ZERO
            for a, x in zip(r, vector):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Matrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def kron(self, other: "Matrix") -> "Matrix":
        out = []
        for r in self.data:
            for s in other.data:
                out.append([a * b for a in r for b in s])
        return Matrix(out, cols=self.cols * other.cols)

    def is_identity(self) -> bool:
        return self.is_square() and all(
            (self.data[i][j] == ONE) if i == j else self.data[i][j].is_zero()
            for i in range(self.rows) for j in range(self.cols))

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.data for a in r)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise SingularMatrixError("inverse of a non-square matrix")
        n = self.rows
        ech = SparseEchelon(2 * n)
        for i in range(n):
            row = {j: a for j, a in enumerate(self.data[i]) if a}
            row[n + i] = ONE
            ech.add(row)
        if any(p >= n for p in ech.pivots) or len(ech.pivots) < n:
            raise SingularMatrixError("matrix is singular")
        inv = [[ZERO] * n for _ in range(n)]
        for p, row in ech.pivots.items():
            for j, a in row.items():
                if j >= n:
                    inv[p][j - n] = a
        return Matrix(inv, cols=n)

    def rank(self) -> int:
        ech = SparseEchelon(self.cols)
        for r in self.data:
            ech.add({j: a for j, a in enumerate(r) if a})
        return len(ech.pivots)

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self.data)
        return f"Matrix([{body}])"

    def to_strings(self):
        return [[str(a) for a in r] for r in self.data]


# sparse elimination -------------------------------------------------------

class SparseEchelon:
    """Incremental reduced row echelon form over Q(q).

    Rows are dicts ``{column: scalar}``.  ``add`` reduces a row against the
    current pivots and returns the residue (empty when dependent).
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        row = {j: a for j, a in row.items() if a}
        changed = True
        while changed:
            changed = False
            for j in sorted(row):
                piv = self.pivots.get(j)
                if piv is not None and j in row:
                    f = row[j]
                    for k, a in piv.items():
                        v = row.get(k, ZERO) - f * a
                        if v:
                            row[k] = v
                        else:
                            row.pop(k, None)
                    changed = True
                    break
        return row

    def add(self, row: dict) -> dict:
        row = self.reduce(row)
        if not row:
            return row
        p = min(row)
        inv = row[p].inverse()
        row = {k: a * inv for k, a in row.items()}
        for other in self.pivots.values():
            f = other.get(p)
            if f:
                for k, a in row.items():
                    v = other.get(k, ZERO) - f * a
                    if v:
                        other[k] = v
                    else:
                        other.pop(k, None)
        self.pivots[p] = row
        return row

    def rank(self) -> int:
        return len(self.pivots)


def solve(A: Matrix, y: Sequence) -> list:
    """Solve ``A x = y`` exactly for square ``A``.

    Raises ``NoSolutionError`` if the system is inconsistent and
    ``NonUniqueSolutionError`` (carrying a particular solution and a kernel
    basis) if ``A`` is singular but the system is consistent.
    """
    if not A.is_square():
        raise ValueError("solve expects a square matrix")
    if len(y) != A.rows:
        raise ValueError("right-hand side has the wrong length")
    return solve_system([{j: a for j, a in enumerate(r) if a} for r in A.data], list(y), A.cols)


def solve_system(rows: list, rhs: list, ncols: int, allow_kernel: bool = False):
    """Solve a sparse linear system; rows are dicts over columns ``0..ncols-1``.

    With ``allow_kernel`` the return value is ``(particular, kernel_basis)``.
    """
    ech = SparseEchelon(ncols + 1)
    for row, b in zip(rows, rhs):
        r = dict(row)
        b = as_scalar(b)
        if b:
            r[ncols] = b
        ech.add(r)
    if ncols in ech.pivots:
        raise NoSolutionError("linear system has no solution")
    x = [ZERO] * ncols
    for p, row in ech.pivots.items():
        x[p] = row.get(ncols, ZERO)
    free = [j for j in range(ncols) if j not in ech.pivots]
    kernel = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for p, row in ech.pivots.items():
            a = row.get(f)
            if a:
                v[p] = -a
        kernel.append(v)
    if allow_kernel:
        return x, kernel
    if kernel:
        raise NonUniqueSolutionError("solution is not unique", particular=x, kernel=kernel)
    return x


def nullspace(rows: list, ncols: int) -> list:
    """Basis of ``{x : row . x = 0 for every row}``; rows are dense lists or dicts."""
    sparse = [r if isinstance(r, dict) else {j: as_scalar(a) for j, a in enumerate(r) if a} for r in rows]
    _, kernel = solve_system(sparse, [ZERO] * len(sparse), ncols, allow_kernel=True)
    return kernel


def span_basis(vectors: Iterable[Sequence], dim: int) -> list:
    """Reduced echelon basis (dense lists) of the span of ``vectors``."""
    ech = SparseEchelon(dim)
    for v in vectors:
        ech.add({j: as_scalar(a) for j, a in enumerate(v) if a})
    out = []
    for p in sorted(ech.pivots):
        row = ech.pivots[p]
        out.append([row.get(j, ZERO) for j in range(dim)])
    return out


def intersect_spaces(U: list, W: list, dim: int) -> list:
    """Basis of the intersection of two subspaces given by spanning lists."""
    if not U or not W:
        return []
    # x = sum a_i u_i = sum b_j w_j  ->  kernel of [U | -W]
    cols = len(U) + len(W)
    rows = []
    for k in range(dim):
        r = {}
        for i, u in enumerate(U):
            if u[k]:
                r[i] = as_scalar(u[k])
        for j, w in enumerate(W):
            if w[k]:
                r[len(U) + j] = -as_scalar(w[k])
        rows.append(r)
    kern = nullspace(rows, cols)
    vecs = []
    for coeffs in kern:
        v = [ZERO] * dim
        for i, u in enumerate(U):
            a = coeffs[i]
            if a:
                v = [x + a * as_scalar(y) for x, y in zip(v, u)]
        vecs.append(v)
    return span_basis(vecs, dim)
