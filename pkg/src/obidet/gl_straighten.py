"""Two-column straightening of bideterminants and the full GL(n) rewrite.

Everything here is an identity in the polynomial ring itself (no group
relation is used): a bideterminant with a row violation is rewritten via
a double Laplace expansion of an auxiliary matrix into higher terms of the
same shape plus terms whose columns are strictly more unbalanced.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .tableaux import (
    DomainError,
    Letter,
    Tableau,
    _letters,
    shape_key,
    tableau_prec_cmp,
)
from . import polyring
from .polyring import CoeffDomain, Polynomial, QQ


class CapExceeded(RuntimeError):
    """Raised when a straightening run outgrows its term budget."""


# ---------------------------------------------------------------------------
# terms and combinations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BidetTerm:
    """coef * gamma^gamma_pow * [left : right]."""

    coef: object
    gamma_pow: int
    left: Tableau
    right: Tableau

    def __post_init__(self):
        if self.left.shape != self.right.shape:
            raise DomainError("term tableaux must share a shape")
        if self.gamma_pow < 0:
            raise DomainError("gamma power must be nonnegative")

    def key(self):
        return (self.gamma_pow, self.left, self.right)

    def sort_key(self):
        return (
            shape_key(self.left.shape),
            self.left.prec_key(),
            self.right.prec_key(),
            self.gamma_pow,
        )

    def evaluate(self, point, gamma_value=1):
        v = polyring.eval_bideterminant(self.left, self.right, point)
        for _ in range(self.gamma_pow):
            v = v * gamma_value
        return self.coef * v


class Combination:
    """A canonically merged linear combination of bideterminant terms."""

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        merged: dict = {}
        for term in terms:
            if not term.coef:
                continue
            k = term.key()
            if k in merged:
                s = merged[k].coef + term.coef
                if s:
                    merged[k] = BidetTerm(s, *k)
                else:
                    del merged[k]
            else:
                merged[k] = term
        object.__setattr__(self, "_terms", merged)

    def __setattr__(self, name, value):
        raise AttributeError("Combination is immutable")

    def terms(self) -> list[BidetTerm]:
        return sorted(self._terms.values(), key=BidetTerm.sort_key)

    def __iter__(self):
        return iter(self.terms())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "Combination") -> "Combination":
        return Combination(list(self._terms.values()) + list(other._terms.values()))

    def __sub__(self, other: "Combination") -> "Combination":
        return self + other.scale(-1)

    def scale(self, c) -> "Combination":
        return Combination(
            BidetTerm(t.coef * c, t.gamma_pow, t.left, t.right)
            for t in self._terms.values()
        )

    def __eq__(self, other):
        if not isinstance(other, Combination):
            return NotImplemented
        return {k: t.coef for k, t in self._terms.items()} == {
            k: t.coef for k, t in other._terms.items()
        }

    def __repr__(self):
        return f"Combination<{len(self._terms)} terms>"

    def coefficient(self, left: Tableau, right: Tableau, gamma_pow: int = 0):
        t = self._terms.get((gamma_pow, left, right))
        return t.coef if t else 0

    def symbolic_poly(self, n: int) -> Polynomial:
        """The combination expanded in the polynomial ring (gamma included)."""
        gamma = polyring.gamma_poly(n)
        total = Polynomial.zero()
        for t in self.terms():
            p = polyring.bideterminant(t.left, t.right).scale(t.coef)
            for _ in range(t.gamma_pow):
                p = p * gamma
            total = total + p
        return total

    def evaluate(self, point, gamma_value=1):
        total = 0
        for t in self._terms.values():
            total = t.evaluate(point, gamma_value) + total
        return total

    # -- line-oriented certificate format -----------------------------------

    def certificate(self) -> str:
        lines = []
        for t in self.terms():
            lines.append(f"{t.coef}\t{t.gamma_pow}\t{t.left.format()}\t{t.right.format()}")
        return "\n".join(lines)

    @classmethod
    def parse_certificate(cls, text: str, domain: CoeffDomain = QQ) -> "Combination":
        terms = []
        for line in text.strip().splitlines():
            if not line.strip():
                continue
            coef_text, gpow_text, left_text, right_text = line.split("\t")
            if domain.is_prime_field:
                coef = domain.from_int(int(coef_text))
            else:
                coef = polyring.rational(coef_text)
            terms.append(BidetTerm(
                coef, int(gpow_text), Tableau.parse(left_text), Tableau.parse(right_text)
            ))
        return cls(terms)


def single_term(left: Tableau, right: Tableau, coef=1, gamma_pow: int = 0) -> Combination:
    return Combination([BidetTerm(coef, gamma_pow, left, right)])


# ---------------------------------------------------------------------------
# column sorting with signs
# ---------------------------------------------------------------------------

def sort_letters(entries) -> tuple[int, tuple[Letter, ...]]:
    """Sort a column, returning (sign, sorted); sign 0 on a repeated letter."""
    entries = list(entries)
    if len(set(entries)) < len(entries):
        return 0, ()
    sign = 1
    order = sorted(range(len(entries)), key=lambda i: entries[i].key)
    # count inversions of the permutation
    for a, b in itertools.combinations(order, 2):
        if a > b:
            sign = -sign
    return sign, tuple(entries[i] for i in order)


def sort_columns(s: Tableau, t: Tableau) -> tuple[int, Tableau | None, Tableau | None]:
    """Sort every column of both tableaux, tracking the determinant signs."""
    if s.shape != t.shape:
        raise DomainError("shape mismatch")
    sign = 1
    new_s, new_t = [], []
    for col_s, col_t in zip(s.columns(), t.columns()):
        sg, sorted_s = sort_letters(col_s)
        if sg == 0:
            return 0, None, None
        sign *= sg
        sg, sorted_t = sort_letters(col_t)
        if sg == 0:
            return 0, None, None
        sign *= sg
        new_s.append(sorted_s)
        new_t.append(sorted_t)
    return sign, Tableau.from_columns(new_s), Tableau.from_columns(new_t)


def normalize_pair(left_cols, right_cols) -> tuple[int, Tableau | None, Tableau | None]:
    """Sort entries (with signs) and arrange columns into a partition shape.

    Column pairs move together; reordering whole columns is sign free since
    a bideterminant is a product of per-column minors.  Empty columns are
    dropped.  Returns sign 0 when some column has a repeated letter.
    """
    pairs = [(list(a), list(b)) for a, b in zip(left_cols, right_cols)]
    for a, b in pairs:
        if len(a) != len(b):
            raise DomainError("left and right columns must pair up in length")
    pairs = [p for p in pairs if p[0]]
    sign = 1
    sorted_pairs = []
    for a, b in pairs:
        sg, sa = sort_letters(a)
        if sg == 0:
            return 0, None, None
        sign *= sg
        sg, sb = sort_letters(b)
        if sg == 0:
            return 0, None, None
        sign *= sg
        sorted_pairs.append((sa, sb))
    sorted_pairs.sort(key=lambda p: -len(p[0]))
    return (
        sign,
        Tableau.from_columns([p[0] for p in sorted_pairs]),
        Tableau.from_columns([p[1] for p in sorted_pairs]),
    )


# ---------------------------------------------------------------------------
# the two-column rewrite
# ---------------------------------------------------------------------------

def first_row_violation(s: Tableau) -> int | None:
    """1-based first row where column 1 exceeds column 2, or None."""
    cols = s.columns()
    if len(cols) < 2:
        return None
    for r, (a, b) in enumerate(zip(cols[0], cols[1]), start=1):
        if a > b:
            return r
    return None


def _laplace_col_sign(row_set, k: int) -> int:
    total = sum(row_set) + k * (k + 1) // 2
    return -1 if total % 2 else 1


def two_column_straighten(s: Tableau, t: Tableau):
    """Rewrite [S:T], S two-column with a row violation, as head + drop.

    head holds the same-shape terms (all strictly above S in the tableau
    order, with signs only); drop holds the column-rebalanced remainder.
    The identity [S:T] = head + drop is exact in the polynomial ring.
    """
    if s.shape != t.shape:
        raise DomainError("shape mismatch")
    cols_s, cols_t = s.columns(), t.columns()
    if len(cols_s) != 2:
        raise DomainError("two-column tableaux required")
    for col in (*cols_s, *cols_t):
        if any(a >= b for a, b in zip(col, col[1:])):
            raise DomainError("columns must be strictly increasing")
    viol = first_row_violation(s)
    if viol is None:
        raise DomainError("left tableau has no row violation")

    s1, s2 = cols_s
    t1, t2 = cols_t
    k, ell = len(s1), len(s2)
    tv = viol

    # auxiliary-matrix row labels: 1..k carry the first column of S,
    # k+1..k+ell the second; columns 1..k carry T's first column, the rest
    # its second.  Rows above the violation are zeroed on the right block,
    # rows below it (in the second group) on the left block.
    def row_label(h: int) -> Letter:
        return s1[h - 1] if h <= k else s2[h - k - 1]

    def col_label(h: int) -> Letter:
        return t1[h - 1] if h <= k else t2[h - k - 1]

    forced = list(range(1, tv))                      # must sit in the left minor
    free = list(range(tv, k + 1)) + list(range(k + 1, k + tv + 1))
    # (free rows: first-column rows tv..k and second-column rows 1..tv)

    head_terms: list[BidetTerm] = []
    base_sign = None
    for chosen in itertools.combinations(free, k - tv + 1):
        rows_in = sorted(forced + list(chosen))
        rows_out = sorted(set(range(1, k + ell + 1)) - set(rows_in))
        eps = _laplace_col_sign(rows_in, k)
        u_col1 = [row_label(h) for h in rows_in]
        u_col2 = [row_label(h) for h in rows_out]
        if u_col1 == list(s1) and u_col2 == list(s2):
            base_sign = eps
            continue
        sign, left, right = normalize_pair([u_col1, u_col2], [t1, t2])
        if sign == 0:
            continue
        # solving for [S:T] negates the other column-expansion terms
        head_terms.append(BidetTerm(-eps * sign, 0, left, right))
    if base_sign != 1:
        raise AssertionError("expansion lost the original bideterminant")
    head = Combination(head_terms)

    exp_rows = list(range(1, tv)) + list(range(k + tv + 1, k + ell + 1))
    row_sum = sum(exp_rows)
    drop_terms: list[BidetTerm] = []
    for c1 in itertools.combinations(range(1, k + 1), tv - 1):
        for c2 in itertools.combinations(range(k + 1, k + ell + 1), ell - tv):
            cols_in = list(c1) + list(c2)
            cols_out = sorted(set(range(1, k + ell + 1)) - set(cols_in))
            delta = -1 if (row_sum + sum(cols_in)) % 2 else 1
            big_left = [row_label(h) for h in range(tv, k + 1)] + \
                       [row_label(h) for h in range(k + 1, k + tv + 1)]
            big_right = [col_label(h) for h in cols_out]
            small1_left = [row_label(h) for h in range(1, tv)]
            small1_right = [col_label(h) for h in c1]
            small2_left = [row_label(h) for h in range(k + tv + 1, k + ell + 1)]
            small2_right = [col_label(h) for h in c2]
            sign, left, right = normalize_pair(
                [big_left, small1_left, small2_left],
                [big_right, small1_right, small2_right],
            )
            if sign == 0:
                continue
            drop_terms.append(BidetTerm(delta * sign, 0, left, right))
    drop = Combination(drop_terms)
    return viol, head, drop


# ---------------------------------------------------------------------------
# full GL straightening
# ---------------------------------------------------------------------------

def _gl_violation_pair(t: Tableau) -> int | None:
    """Leftmost adjacent column pair (0-based index) with a row violation."""
    cols = t.columns()
    for c in range(len(cols) - 1):
        a, b = cols[c], cols[c + 1]
        if any(x > y for x, y in zip(a, b)):
            return c
    return None


def _splice(cols, c: int, replacement):
    return list(cols[:c]) + [list(x) for x in replacement] + list(cols[c + 2:])


def mead_step(left: Tableau, right: Tableau, c: int) -> Combination:
    """Apply the two-column rewrite to columns (c, c+1) and reassemble."""
    sub_left = Tableau.from_columns([left.column(c), left.column(c + 1)])
    sub_right = Tableau.from_columns([right.column(c), right.column(c + 1)])
    _, head, drop = two_column_straighten(sub_left, sub_right)
    out = []
    for term in head + drop:
        lc = _splice(left.columns(), c, term.left.columns())
        rc = _splice(right.columns(), c, term.right.columns())
        sign, new_left, new_right = normalize_pair(lc, rc)
        if sign == 0:
            continue
        out.append(BidetTerm(term.coef * sign, term.gamma_pow, new_left, new_right))
    return Combination(out)


def _column_profile(t: Tableau):
    return tuple(sorted((len(c) for c in t.columns()), reverse=True))


def gl_straighten(s: Tableau, t: Tableau, n: int, fuel: int = 200000,
                  max_terms: int | None = None) -> Combination:
    """Express [S:T] in the basis of GL(n)-standard bideterminants.

    The result is an exact identity in the polynomial ring; coefficients
    are sums of signs, hence integers valid over any coefficient ring.
    """
    if len(s.shape) > n or len(t.shape) > n:
        raise DomainError(f"more than {n} rows")
    letters = set(_letters(n))
    for col in (*s.columns(), *t.columns()):
        for x in col:
            if x not in letters:
                raise DomainError(f"letter {x} outside the alphabet of size {n}")
    sign, left, right = normalize_pair(s.columns(), t.columns())
    if sign == 0:
        return Combination()
    done: list[BidetTerm] = []
    work = [BidetTerm(sign, 0, left, right)]
    while work:
        if fuel <= 0:
            raise RuntimeError("straightening fuel exhausted")
        if max_terms is not None and len(work) + len(done) > max_terms:
            raise CapExceeded(f"more than {max_terms} working terms")
        fuel -= 1
        term = work.pop()
        if not term.coef:
            continue
        c = _gl_violation_pair(term.left)
        if c is not None:
            step = mead_step(term.left, term.right, c)
            for new in step.scale(term.coef):
                _check_gl_measure(term, new, left_side=True)
                work.append(new)
            continue
        c = _gl_violation_pair(term.right)
        if c is not None:
            step = mead_step(term.right, term.left, c)
            for new in step.scale(term.coef):
                _check_gl_measure(term, BidetTerm(new.coef, new.gamma_pow, new.right, new.left),
                                  left_side=False)
                work.append(BidetTerm(new.coef, new.gamma_pow, new.right, new.left))
            continue
        if len(term.left.shape) > n:
            # a strictly increasing column longer than the alphabet is zero,
            # so only row counts beyond n with short columns could survive;
            # those cannot appear since columns are sorted
            raise AssertionError("unreachable: standard tableau with too many rows")
        done.append(term)
    return Combination(done)


def _check_gl_measure(old: BidetTerm, new: BidetTerm, left_side: bool):
    """Each rewrite must unbalance columns or raise the worked side."""
    po, pn = _column_profile(old.left), _column_profile(new.left)
    if pn != po:
        if pn <= po:
            raise AssertionError("rewrite did not increase the column profile")
        return
    side_old = old.left if left_side else old.right
    side_new = new.left if left_side else new.right
    if tableau_prec_cmp(side_old, side_new) != -1:
        raise AssertionError("same-shape rewrite did not move up in tableau order")


# ---------------------------------------------------------------------------
# the one-switch expansion
# ---------------------------------------------------------------------------

def one_switch_expand(s: Tableau, t: Tableau, row: int) -> Combination:
    """Expansion of [S*:T] - [S:T] where S* swaps the pair (bar i, i) in a row.

    S must be GL-standard with bar(i) in column 1 and i in column 2 of the
    given 1-based row.  The result is the same-shape tail (all terms above
    S* in the tableau order) plus the column-rebalanced remainder.
    """
    cols = s.columns()
    if len(cols) != 2:
        raise DomainError("two-column tableau required")
    if not (len(cols[0]) >= row and len(cols[1]) >= row):
        raise DomainError("row out of range")
    a, b = cols[0][row - 1], cols[1][row - 1]
    if a.index == 0 or a.bar() != b or not a.barred:
        raise DomainError("row must contain the pair (bar i, i)")
    c1 = list(cols[0])
    c2 = list(cols[1])
    c1[row - 1], c2[row - 1] = b, a
    star = Tableau.from_columns([c1, c2])
    if not all(x < y for x, y in zip(c1, c1[1:])) or not all(x < y for x, y in zip(c2, c2[1:])):
        raise DomainError("switched tableau is not column increasing")
    _, head, drop = two_column_straighten(star, t)
    base = head.coefficient(s, t)
    if base != 1:
        raise AssertionError("lowest term of the switch expansion is not [S:T]")
    return (head + drop) - single_term(s, t)
