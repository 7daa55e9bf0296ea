"""Exact sparse polynomials in the matrix entries X(i, j), i, j in the alphabet.

Coefficients live in one of three exact domains: the rationals, the dyadic
rationals (denominator a power of two), or a prime field of odd order.
Determinants of submatrices of the generic matrix X, bideterminants, the
full determinant and the similitude form gamma are all built here, together
with exact evaluation at concrete matrices.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .tableaux import DomainError, Letter, Tableau, _letters

try:  # gmpy2 rationals are a large constant factor faster; Fraction works too
    from gmpy2 import mpq as _mpq

    def rational(num=0, den=None):
        if den is None:
            return _mpq(num)
        return _mpq(num, den)
except ImportError:  # pragma: no cover
    def rational(num=0, den=None):
        if den is None:
            return Fraction(num)
        return Fraction(num, den)


def is_dyadic(x) -> bool:
    """True if x is a rational with denominator a power of two."""
    den = int(x.denominator)
    return den & (den - 1) == 0


# ---------------------------------------------------------------------------
# prime fields
# ---------------------------------------------------------------------------

class GFElement:
    """An element of the prime field of odd order p."""

    __slots__ = ("p", "value")

    def __init__(self, p: int, value: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("GFElement is immutable")

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise DomainError("mixed prime fields")
            return other
        if isinstance(other, int):
            return GFElement(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElement(self.p, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElement(self.p, self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElement(self.p, other.value - self.value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElement(self.p, self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return GFElement(self.p, self.value * pow(other.value, self.p - 2, self.p))

    def __neg__(self):
        return GFElement(self.p, -self.value)

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GF({self.p})({self.value})"

    def __str__(self):
        return str(self.value)


class CoeffDomain:
    """One of the supported exact coefficient domains."""

    def __init__(self, name: str, p: int | None = None):
        if name not in ("q", "zhalf", "fp"):
            raise DomainError(f"unknown coefficient domain {name!r}")
        if name == "fp":
            if p is None or p < 3 or p % 2 == 0 or not _is_prime(p):
                raise DomainError(f"prime field needs an odd prime, got {p}")
        self.name = name
        self.p = p

    def __repr__(self):
        return f"CoeffDomain({self.name!r}{'' if self.p is None else f', p={self.p}'})"

    def __eq__(self, other):
        return isinstance(other, CoeffDomain) and (self.name, self.p) == (other.name, other.p)

    def __hash__(self):
        return hash((self.name, self.p))

    @property
    def is_prime_field(self) -> bool:
        return self.name == "fp"

    def from_int(self, k: int):
        if self.is_prime_field:
            return GFElement(self.p, k)
        return rational(k)

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def half(self):
        if self.is_prime_field:
            return GFElement(self.p, 1) / GFElement(self.p, 2)
        return rational(1, 2)

    def reduce_rational(self, x):
        """Image of an exact rational in this domain, or None if undefined."""
        if not self.is_prime_field:
            return x
        num, den = int(x.numerator), int(x.denominator)
        if den % self.p == 0:
            return None
        return GFElement(self.p, num) / GFElement(self.p, den)

    def validate(self, x) -> bool:
        """Membership check, used for the dyadic mode."""
        if self.is_prime_field:
            return isinstance(x, GFElement) and x.p == self.p
        if self.name == "zhalf":
            return is_dyadic(x)
        return True

    @classmethod
    def parse(cls, text: str) -> "CoeffDomain":
        text = text.strip().lower()
        if text == "q":
            return cls("q")
        if text == "zhalf":
            return cls("zhalf")
        if text.startswith("f") and text[1:].isdigit():
            return cls("fp", int(text[1:]))
        raise DomainError(f"bad coefficient domain {text!r}")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


QQ = CoeffDomain("q")
ZHALF = CoeffDomain("zhalf")


def GF(p: int) -> CoeffDomain:
    return CoeffDomain("fp", p)


# ---------------------------------------------------------------------------
# exact square matrices indexed by the alphabet
# ---------------------------------------------------------------------------

class LetterMatrix:
    """A square matrix whose rows and columns are indexed by alphabet letters."""

    __slots__ = ("n", "letters", "rows", "_index")

    def __init__(self, n: int, rows):
        letters = tuple(_letters(n))
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DomainError(f"need an {n} x {n} matrix")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(letters)})

    def __setattr__(self, name, value):
        raise AttributeError("LetterMatrix is immutable")

    def entry(self, i: Letter, j: Letter):
        return self.rows[self._index[i]][self._index[j]]

    def transpose(self) -> "LetterMatrix":
        return LetterMatrix(self.n, tuple(zip(*self.rows)))

    def __matmul__(self, other: "LetterMatrix") -> "LetterMatrix":
        if self.n != other.n:
            raise DomainError("size mismatch")
        bt = tuple(zip(*other.rows))
        return LetterMatrix(
            self.n,
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.rows
            ),
        )

    def scale(self, c) -> "LetterMatrix":
        return LetterMatrix(self.n, tuple(tuple(c * x for x in r) for r in self.rows))

    def __eq__(self, other):
        return isinstance(other, LetterMatrix) and self.n == other.n and self.rows == other.rows

    def __repr__(self):
        return f"LetterMatrix({self.n}, {self.rows!r})"

    @classmethod
    def identity(cls, n: int, domain: CoeffDomain = QQ) -> "LetterMatrix":
        one, zero = domain.one(), domain.zero()
        return cls(n, tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)
        ))

    @classmethod
    def diagonal(cls, n: int, values) -> "LetterMatrix":
        values = list(values)
        zero = values[0] * 0
        return cls(n, tuple(
            tuple(values[i] if i == j else zero for j in range(n)) for i in range(n)
        ))


def det_rows(rows) -> object:
    """Exact determinant of a small dense matrix (list of rows) over a field."""
    rows = [list(r) for r in rows]
    k = len(rows)
    if k == 0:
        return 1
    sign = 1
    det = None
    for col in range(k):
        pivot = None
        for r in range(col, k):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            return rows[0][0] * 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign = -sign
        pv = rows[col][col]
        det = pv if det is None else det * pv
        for r in range(col + 1, k):
            if rows[r][col]:
                factor = rows[r][col] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det if sign == 1 else -det


def matrix_inverse(rows):
    """Exact inverse via Gauss-Jordan; returns None if singular."""
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if aug[r][col]:
                pivot = r
                break
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# sparse polynomials
# ---------------------------------------------------------------------------

Var = tuple[Letter, Letter]
Monomial = tuple[tuple[Var, int], ...]


def _var_key(v: Var):
    return (v[0].key, v[1].key)


def _mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def _mono_key(mono: Monomial):
    # graded lexicographic on the fixed variable order
    return (_mono_degree(mono), tuple((_var_key(v), e) for v, e in mono))


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    exps: dict[Var, int] = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda item: _var_key(item[0])))


class Polynomial:
    """A sparse polynomial in the variables X(i, j); structural equality."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        object.__setattr__(self, "terms", {m: c for m, c in terms.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls({})

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls({(): c})

    @classmethod
    def variable(cls, i: Letter, j: Letter, coeff=1) -> "Polynomial":
        return cls({(((i, j), 1),): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(out)

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(out)

    def scale(self, c) -> "Polynomial":
        if not c:
            return Polynomial.zero()
        return Polynomial({m: c * v for m, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {_mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    def evaluate(self, point):
        """Ring homomorphism X(i, j) -> point entry; point has .entry(i, j)."""
        total = None
        for mono, coeff in self.terms.items():
            val = coeff
            for (i, j), e in mono:
                entry = point.entry(i, j)
                for _ in range(e):
                    val = val * entry
            total = val if total is None else total + val
        if total is None:
            return 0
        return total

    def serialize(self) -> str:
        """One term per line, graded-lex order, letters in text encoding."""
        if not self.terms:
            return "0"
        lines = []
        for mono in sorted(self.terms, key=_mono_key):
            coeff = self.terms[mono]
            factors = [str(coeff)]
            for (i, j), e in mono:
                var = f"X({i},{j})"
                factors.append(var if e == 1 else f"{var}^{e}")
            lines.append(" * ".join(factors))
        return "\n".join(lines)

    def __repr__(self):
        return f"Polynomial<{len(self.terms)} terms>"


# ---------------------------------------------------------------------------
# minors and bideterminants
# ---------------------------------------------------------------------------

def minor(rows, cols) -> Polynomial:
    """Determinant of the submatrix of X with the given row/column letters.

    Rows and columns are ordered lists; swapping two of them flips the sign,
    and a repeated letter gives the zero polynomial.
    """
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise DomainError("minor needs equally many row and column letters")
    if len(set(rows)) < len(rows) or len(set(cols)) < len(cols):
        return Polynomial.zero()
    if not rows:
        return Polynomial.constant(1)

    memo: dict[tuple, Polynomial] = {}

    def expand(row_sub: tuple, col_pos: int) -> Polynomial:
        if not row_sub:
            return Polynomial.constant(1)
        key = (row_sub, col_pos)
        got = memo.get(key)
        if got is not None:
            return got
        col = cols[col_pos]
        total = Polynomial.zero()
        for idx, r in enumerate(row_sub):
            sub = expand(row_sub[:idx] + row_sub[idx + 1:], col_pos + 1)
            term = Polynomial.variable(r, col).__mul__(sub)
            total = total + (term if idx % 2 == 0 else -term)
        memo[key] = total
        return total

    return expand(tuple(rows), 0)


def bideterminant(s: Tableau, t: Tableau) -> Polynomial:
    """Product over columns of the minors [S_i : T_i]; degree = |shape|."""
    if s.shape != t.shape:
        raise DomainError("bideterminant needs equal shapes")
    result = Polynomial.constant(1)
    for cs, ct in zip(s.columns(), t.columns()):
        result = result * minor(cs, ct)
    return result


def det_poly(n: int) -> Polynomial:
    """The full n x n determinant of X."""
    letters = _letters(n)
    return minor(letters, letters)


def gamma_poly(n: int) -> Polynomial:
    """The similitude factor: sum over i of X(i, 1) X(bar i, 1b)."""
    letters = _letters(n)
    one = Letter(1)
    total = Polynomial.zero()
    for i in letters:
        total = total + Polynomial.variable(i, one) * Polynomial.variable(i.bar(), one.bar())
    return total


def evaluate(p: Polynomial, point) -> object:
    return p.evaluate(point)


# -- numeric (non-symbolic) evaluation of minors and bideterminants ---------

def eval_minor(rows, cols, point):
    """Exact value of the minor at a concrete matrix, without expanding it."""
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise DomainError("minor needs equally many row and column letters")
    if len(set(rows)) < len(rows) or len(set(cols)) < len(cols):
        return 0
    if not rows:
        return 1
    return det_rows([[point.entry(r, c) for c in cols] for r in rows])


def eval_bideterminant(s: Tableau, t: Tableau, point):
    if s.shape != t.shape:
        raise DomainError("bideterminant needs equal shapes")
    value = None
    for cs, ct in zip(s.columns(), t.columns()):
        v = eval_minor(cs, ct, point)
        if not v:
            return v * 1 if value is None else value * 0
        value = v if value is None else value * v
    return 1 if value is None else value


def eval_columns_product(left_cols, right_cols, point):
    """Value of a product of column minors given as raw column lists."""
    value = 1
    for cs, ct in zip(left_cols, right_cols):
        v = eval_minor(cs, ct, point)
        if not v:
            return v
        value = value * v
    return value
