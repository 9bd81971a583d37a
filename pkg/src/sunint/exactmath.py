"""Exact arithmetic kernel: polynomials and rational functions of the matrix
dimension N, plus exact linear solving over that field.

All scalar coefficients are ``fractions.Fraction`` (arbitrary precision, always
reduced).  ``PolyN`` is a dense univariate polynomial in the symbol N;
``RatFuncN`` is a quotient of two such polynomials kept in a canonical reduced
form, so equality of values is equality of representations and printed tables
are byte-stable across runs.

Everything here is immutable value semantics: operations return new objects
and never mutate their arguments, so the types are safe to share across
threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class LinearSystemError(ValueError):
    """Base class for failures of the exact linear solver."""


class RankDeficientError(LinearSystemError):
    """The coefficient matrix does not have full column rank."""


class InconsistentSystemError(LinearSystemError):
    """A redundant row of an overdetermined system is not satisfied."""


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class PolyN:
    """Dense polynomial in N with exact rational coefficients.

    ``coeffs[k]`` is the coefficient of N**k; trailing zeros are trimmed, so
    the zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyN):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == PolyN([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: PolyN | Scalar) -> PolyN:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return PolyN(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> PolyN:
        return PolyN(-c for c in self.coeffs)

    def __sub__(self, other: PolyN | Scalar) -> PolyN:
        return self + (-_as_poly(other))

    def __rsub__(self, other: PolyN | Scalar) -> PolyN:
        return _as_poly(other) + (-self)

    def __mul__(self, other: PolyN | Scalar) -> PolyN:
        if isinstance(other, (int, Fraction)):
            return PolyN(c * other for c in self.coeffs)
        if not isinstance(other, PolyN):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return PolyN()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyN(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> PolyN:
        if k < 0:
            raise ValueError("negative polynomial power")
        out = PolyN([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x: Scalar) -> Fraction:
        """Evaluate at N = x (Horner)."""
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shifted(self, delta: int = 1) -> PolyN:
        """The polynomial with N replaced by N + delta (Horner in N+delta)."""
        arg = PolyN([delta, 1])
        acc = PolyN()
        for c in reversed(self.coeffs):
            acc = acc * arg + PolyN([c])
        return acc

    # -- division / gcd ---------------------------------------------------

    def divmod(self, other: PolyN) -> tuple[PolyN, PolyN]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.degree
        lead = other.leading
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / lead
            quo[k - d] = q
            for j, b in enumerate(other.coeffs):
                rem[k - d + j] -= q * b
        return PolyN(quo), PolyN(rem)

    def exact_div(self, other: PolyN) -> PolyN:
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("polynomial division is not exact")
        return q

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        if self.is_zero:
            return Fraction(1)
        den = lcm(*(c.denominator for c in self.coeffs))
        num = gcd(*(abs(c.numerator) for c in self.coeffs))
        return Fraction(num, den)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"PolyN({list(self.coeffs)!r})"


#: The polynomial N itself; build others as e.g. ``N**2 - 1``.
N = PolyN((0, 1))

_POLY_ZERO = PolyN()
_POLY_ONE = PolyN([1])


def _as_poly(x: PolyN | Scalar) -> PolyN:
    if isinstance(x, PolyN):
        return x
    return PolyN([_as_fraction(x)])


def poly_gcd(a: PolyN, b: PolyN) -> PolyN:
    """Monic gcd over the rationals (1 if coprime, 0 only for gcd(0, 0))."""
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    if a.is_zero:
        return a
    return a * (1 / a.leading)


def format_poly(p: PolyN) -> str:
    """Canonical descending-power form, e.g. ``N^3 - 5*N + 1``."""
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = "N" if k == 1 else f"N^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


class RatFuncN:
    """Rational function of N in canonical reduced form.

    Canonical form: numerator and denominator have integer coefficients with
    coprime contents, no common polynomial factor, and a positive leading
    denominator coefficient.  Zero is 0/1.  With that convention two equal
    values always have identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: PolyN | Scalar, den: PolyN | Scalar = 1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        if num.is_zero:
            self.num, self.den = _POLY_ZERO, _POLY_ONE
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        scale = num.content() / den.content()
        num = num * (Fraction(scale.numerator) / num.content())
        den = den * (Fraction(scale.denominator) / den.content())
        if den.leading < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    # -- queries ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        """True when the value lies in Q[N] (constant denominator)."""
        return self.den.degree == 0

    def degree_gap(self) -> int:
        """deg(denominator) - deg(numerator); the decay rate as N grows."""
        if self.is_zero:
            raise ValueError("degree gap of the zero function is undefined")
        return self.den.degree - self.num.degree

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (RatFuncN, PolyN, int, Fraction)):
            other = _as_ratfunc(other)
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: RatFuncN | PolyN | Scalar) -> RatFuncN:
        other = _as_ratfunc(other)
        return RatFuncN(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFuncN:
        return RatFuncN(-self.num, self.den)

    def __sub__(self, other: RatFuncN | PolyN | Scalar) -> RatFuncN:
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other: RatFuncN | PolyN | Scalar) -> RatFuncN:
        return _as_ratfunc(other) + (-self)

    def __mul__(self, other: RatFuncN | PolyN | Scalar) -> RatFuncN:
        other = _as_ratfunc(other)
        return RatFuncN(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RatFuncN | PolyN | Scalar) -> RatFuncN:
        other = _as_ratfunc(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFuncN(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: RatFuncN | PolyN | Scalar) -> RatFuncN:
        return _as_ratfunc(other) / self

    def __pow__(self, k: int) -> RatFuncN:
        if k < 0:
            return RatFuncN(self.den ** (-k), self.num ** (-k))
        return RatFuncN(self.num ** k, self.den ** k)

    def evaluate(self, x: Scalar) -> Fraction:
        """Exact substitution N = x; raises ZeroDivisionError at a pole."""
        x = _as_fraction(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at N = {x}")
        return self.num(x) / d

    def shifted(self, delta: int = 1) -> RatFuncN:
        """The function with N replaced by N + delta, re-canonicalized."""
        return RatFuncN(self.num.shifted(delta), self.den.shifted(delta))

    def limit_at_infinity(self) -> Fraction:
        """Limit as N -> infinity; raises ValueError when divergent."""
        if self.is_zero:
            return Fraction(0)
        gap = self.degree_gap()
        if gap > 0:
            return Fraction(0)
        if gap == 0:
            return self.num.leading / self.den.leading
        raise ValueError(f"diverges at large N: ({self})")

    def __str__(self) -> str:
        num_s = format_poly(self.num)
        if self.den == _POLY_ONE:
            return num_s
        if len([c for c in self.num.coeffs if c != 0]) > 1:
            num_s = f"({num_s})"
        den_s = format_poly(self.den)
        # parenthesize unless the denominator prints as a bare power of N
        if not (self.den.degree >= 0 and self.den.leading == 1
                and all(c == 0 for c in self.den.coeffs[:-1])):
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"RatFuncN({self})"


RATFUNC_ZERO = RatFuncN(0)
RATFUNC_ONE = RatFuncN(1)


def _as_ratfunc(x: RatFuncN | PolyN | Scalar) -> RatFuncN:
    if isinstance(x, RatFuncN):
        return x
    return RatFuncN(_as_poly(x))


# -- parsing ---------------------------------------------------------------
#
# Grammar (whitespace-insensitive):
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := ('+'|'-')* atom ('^' uint)?
#   atom   := uint | 'N' | '(' expr ')'
#
# This accepts everything format_poly / str(RatFuncN) emit, plus factored
# input like "8*(2*N^2 - 3)/((N^2 - 9)*N^2)".

class _Parser:
    def __init__(self, text: str):
        self.toks = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[str]:
        toks: list[str] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(text[i:j])
                i = j
            elif ch in "+-*/^()N":
                toks.append(ch)
                i += 1
            else:
                raise ValueError(f"unexpected character {ch!r} in expression")
        return toks

    def _peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def _next(self) -> str:
        tok = self._peek()
        if tok is None:
            raise ValueError("unexpected end of expression")
        self.pos += 1
        return tok

    def parse(self) -> RatFuncN:
        value = self._expr()
        if self._peek() is not None:
            raise ValueError(f"trailing input at token {self._peek()!r}")
        return value

    def _expr(self) -> RatFuncN:
        value = self._term()
        while self._peek() in ("+", "-"):
            if self._next() == "+":
                value = value + self._term()
            else:
                value = value - self._term()
        return value

    def _term(self) -> RatFuncN:
        value = self._factor()
        while self._peek() in ("*", "/"):
            if self._next() == "*":
                value = value * self._factor()
            else:
                value = value / self._factor()
        return value

    def _factor(self) -> RatFuncN:
        sign = 1
        while self._peek() in ("+", "-"):
            if self._next() == "-":
                sign = -sign
        value = self._atom()
        if self._peek() == "^":
            self._next()
            tok = self._next()
            if not tok.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            value = value ** int(tok)
        return sign * value

    def _atom(self) -> RatFuncN:
        tok = self._next()
        if tok.isdigit():
            return RatFuncN(int(tok))
        if tok == "N":
            return RatFuncN(N)
        if tok == "(":
            value = self._expr()
            if self._next() != ")":
                raise ValueError("missing closing parenthesis")
            return value
        raise ValueError(f"unexpected token {tok!r}")


def parse_ratfunc(text: str) -> RatFuncN:
    """Parse an expression in N (integers, + - * / ^, parentheses)."""
    return _Parser(text).parse()


# -- linear solving ----------------------------------------------------------

def solve_linear_system(rows: Sequence[Sequence[RatFuncN | PolyN | Scalar]],
                        rhs: Sequence[RatFuncN | PolyN | Scalar],
                        ) -> list[RatFuncN]:
    """Solve A x = b exactly over the field of rational functions of N.

    The system may be overdetermined (rows >= columns); it must have full
    column rank and every redundant row must be satisfied identically, else
    RankDeficientError / InconsistentSystemError is raised.  Forward
    elimination is fraction-free (Bareiss) on a denominator-cleared
    polynomial matrix; the solution is verified against every original row.
    """
    a = [[_as_ratfunc(x) for x in row] for row in rows]
    b = [_as_ratfunc(x) for x in rhs]
    m = len(a)
    if m == 0 or len(b) != m:
        raise ValueError("matrix and right-hand side sizes do not match")
    k = len(a[0])
    if any(len(row) != k for row in a):
        raise ValueError("ragged coefficient matrix")
    if m < k:
        raise RankDeficientError(f"{m} rows cannot determine {k} unknowns")

    # Clear denominators row by row: each row becomes a PolyN row.
    mat: list[list[PolyN]] = []
    for row, rb in zip(a, b):
        scale = _POLY_ONE
        for entry in (*row, rb):
            scale = scale * entry.den.exact_div(poly_gcd(scale, entry.den))
        mat.append([entry.num * scale.exact_div(entry.den)
                    for entry in (*row, rb)])

    # Bareiss fraction-free forward elimination with row pivoting.
    prev = _POLY_ONE
    for col in range(k):
        pivot_row = next((r for r in range(col, m) if not mat[r][col].is_zero),
                         None)
        if pivot_row is None:
            raise RankDeficientError(f"no pivot for column {col}")
        if pivot_row != col:
            mat[col], mat[pivot_row] = mat[pivot_row], mat[col]
        pivot = mat[col][col]
        for r in range(col + 1, m):
            head = mat[r][col]
            for c in range(col + 1, k + 1):
                mat[r][c] = (pivot * mat[r][c] - head * mat[col][c]).exact_div(prev)
            mat[r][col] = _POLY_ZERO
        prev = pivot

    x: list[RatFuncN] = [RATFUNC_ZERO] * k
    for r in range(k - 1, -1, -1):
        acc = RatFuncN(mat[r][k])
        for c in range(r + 1, k):
            acc = acc - RatFuncN(mat[r][c]) * x[c]
        x[r] = acc / RatFuncN(mat[r][r])

    # Redundant rows must hold as identities of rational functions.
    for row, rb in zip(a, b):
        lhs = RATFUNC_ZERO
        for coeff, xi in zip(row, x):
            lhs = lhs + coeff * xi
        if lhs != rb:
            raise InconsistentSystemError(
                "overdetermined system is inconsistent")
    return x
