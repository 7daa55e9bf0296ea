"""Exact rational points of the orthogonal group and evaluation certificates.

Points come from the Cayley transform of J-skew matrices with small random
rational entries, optionally composed with a fixed reflection to reach the
negative-determinant component, and scaled or dilated for the similitude
group.  Identities are checked by exact evaluation; linear independence by
the rank of an evaluation matrix computed with fraction-free elimination.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .tableaux import (
    DomainError,
    Letter,
    Tableau,
    ZERO,
    _letters,
    conjugate,
    enumerate_on_standard,
    partitions_of,
)
from .polyring import (
    CoeffDomain,
    GFElement,
    LetterMatrix,
    QQ,
    det_rows,
    matrix_inverse,
    rational,
)
from .gl_straighten import BidetTerm, Combination
from .on_straighten import GO, ON, on_straighten
from . import polyring


def form_matrix(n: int, domain: CoeffDomain = QQ) -> LetterMatrix:
    """The Gram matrix of the pairing: 1 where the column is the row's bar."""
    letters = _letters(n)
    one, zero = domain.one(), domain.zero()
    return LetterMatrix(n, tuple(
        tuple(one if j == i.bar() else zero for j in letters) for i in letters
    ))


class GroupPoint:
    """An exact matrix g with g^t J g = gamma J; det^2 = gamma^n."""

    __slots__ = ("matrix", "n", "gamma_value", "det_value")

    def __init__(self, matrix: LetterMatrix, gamma_value=None, domain: CoeffDomain = QQ):
        n = matrix.n
        if gamma_value is None:
            gamma_value = domain.one()
        j = form_matrix(n, domain)
        product = matrix.transpose() @ j @ matrix
        if product != j.scale(gamma_value):
            raise DomainError("matrix does not satisfy the similitude relation")
        det = det_rows(matrix.rows)
        gamma_power = gamma_value
        for _ in range(n - 1):
            gamma_power = gamma_power * gamma_value
        if det * det != gamma_power:
            raise DomainError("determinant inconsistent with the similitude factor")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "gamma_value", gamma_value)
        object.__setattr__(self, "det_value", det)

    def __setattr__(self, name, value):
        raise AttributeError("GroupPoint is immutable")

    def entry(self, i: Letter, j: Letter):
        return self.matrix.entry(i, j)

    def reduce_mod(self, domain: CoeffDomain) -> "GroupPoint | None":
        """The image over a prime field, or None when a denominator vanishes."""
        if not domain.is_prime_field:
            raise DomainError("reduction targets a prime field")
        rows = []
        for row in self.matrix.rows:
            new_row = []
            for x in row:
                y = domain.reduce_rational(x)
                if y is None:
                    return None
                new_row.append(y)
            rows.append(tuple(new_row))
        gamma = domain.reduce_rational(self.gamma_value)
        if gamma is None or not gamma:
            return None
        return GroupPoint(LetterMatrix(self.n, rows), gamma, domain)


def _random_fraction(rng: random.Random, spread: int):
    num = rng.randint(-spread, spread)
    den = rng.randint(1, spread)
    return rational(num, den)


def _skew_symmetric(n: int, rng: random.Random, spread: int):
    a = [[rational(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = _random_fraction(rng, spread)
            a[i][j] = x
            a[j][i] = -x
    return a


def random_so_point(n: int, seed: int, spread: int = 2, max_tries: int = 64) -> GroupPoint:
    """Cayley transform of a random J-skew matrix: an exact point with det 1."""
    if n < 3:
        raise DomainError("need n >= 3")
    rng = random.Random(seed)
    j_rows = [[rational(1) if _letters(n)[c] == _letters(n)[r].bar() else rational(0)
               for c in range(n)] for r in range(n)]
    for _ in range(max_tries):
        b = _skew_symmetric(n, rng, spread)
        # J * skew is J-skew: (JB)^t J + J (JB) = -B J J + B = 0
        a = [[sum(j_rows[r][k] * b[k][c] for k in range(n)) for c in range(n)]
             for r in range(n)]
        i_minus = [[(1 if r == c else 0) - a[r][c] for c in range(n)] for r in range(n)]
        i_plus = [[(1 if r == c else 0) + a[r][c] for c in range(n)] for r in range(n)]
        inv = matrix_inverse(i_plus)
        if inv is None:
            continue
        g = [[sum(i_minus[r][k] * inv[k][c] for k in range(n)) for c in range(n)]
             for r in range(n)]
        point = GroupPoint(LetterMatrix(n, g))
        if point.det_value != 1:
            raise AssertionError("Cayley point with determinant != 1")
        return point
    raise DomainError(f"could not draw an invertible Cayley point after {max_tries} tries")


def _reflection(n: int) -> LetterMatrix:
    """A fixed form-preserving element of determinant -1."""
    letters = _letters(n)
    if n % 2 == 1:
        values = [rational(-1) if x == ZERO else rational(1) for x in letters]
        return LetterMatrix.diagonal(n, values)
    one_bar, one = Letter(1, barred=True), Letter(1)
    rows = []
    for r in letters:
        target = one if r == one_bar else (one_bar if r == one else r)
        rows.append(tuple(rational(1) if c == target else rational(0) for c in letters))
    return LetterMatrix(n, rows)


def random_on_point(n: int, seed: int, component: str = "PLUS", spread: int = 2) -> GroupPoint:
    """A point of the chosen determinant component of the orthogonal group."""
    g = random_so_point(n, seed, spread)
    if component == "PLUS":
        return g
    if component != "MINUS":
        raise DomainError(f"component must be PLUS or MINUS, got {component!r}")
    flipped = g.matrix @ _reflection(n)
    point = GroupPoint(flipped)
    if point.det_value != -1:
        raise AssertionError("reflection did not flip the determinant")
    return point


def random_go_point(n: int, seed: int, c, spread: int = 2) -> GroupPoint:
    """A similitude point; gamma is c for even n and c^2 for odd n."""
    c = rational(c)
    if not c:
        raise DomainError("the similitude scale must be nonzero")
    rng = random.Random(seed)
    component = "PLUS" if rng.random() < 0.5 else "MINUS"
    g = random_on_point(n, seed + 1, component, spread)
    if n % 2 == 1:
        return GroupPoint(g.matrix.scale(c), c * c)
    letters = _letters(n)
    xi = LetterMatrix.diagonal(n, [c if x.barred else rational(1) for x in letters])
    return GroupPoint(g.matrix @ xi, c)


def standard_points(n: int, count: int, seed: int = 0, spread: int = 2,
                    min_minus: int = 2) -> list[GroupPoint]:
    """A deterministic batch of distinct orthogonal points, both components.

    The skew parameter space is small for small n and spread, so the spread
    grows with the requested count and duplicate matrices are redrawn.
    """
    while (spread * spread) ** (n * (n - 1) // 2) < 64 * count * count:
        spread += 1
    points: list[GroupPoint] = []
    seen = set()
    i = 0
    while len(points) < count:
        k = len(points)
        component = "MINUS" if k < min_minus else ("PLUS" if k % 2 == 0 else "MINUS")
        candidate = random_on_point(n, seed * 7919 + i, component, spread)
        i += 1
        if candidate.matrix.rows in seen:
            continue
        seen.add(candidate.matrix.rows)
        points.append(candidate)
    return points


def verify_on_group(p, points) -> bool:
    """True when the polynomial (or combination) vanishes at every point."""
    for point in points:
        gamma = getattr(point, "gamma_value", 1)
        if isinstance(p, Combination):
            value = p.evaluate(point, gamma)
        else:
            value = p.evaluate(point)
        if value:
            return False
    return True


# ---------------------------------------------------------------------------
# rank of evaluation matrices
# ---------------------------------------------------------------------------

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    def _mpz(x):
        return int(x)


def bareiss_rank(rows) -> int:
    """Fraction-free Bareiss elimination rank over the integers.

    Pivots are chosen smallest in absolute value to slow entry growth;
    all divisions are exact by the Bareiss identity.
    """
    m = [[_mpz(x) for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = _mpz(1)
    row = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row, n_rows):
            if m[r][col] and (pivot is None or abs(m[r][col]) < abs(m[pivot][col])):
                pivot = r
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        lead = m[row][col]
        for r in range(row + 1, n_rows):
            head = m[r][col]
            if head:
                m[r] = [(lead * a - head * b) // prev
                        for a, b in zip(m[r], m[row])]
                m[r][col] = _mpz(0)
            else:
                m[r] = [(lead * a) // prev for a in m[r]]
        prev = lead
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def _gf_rank(rows, p: int) -> int:
    m = [[x.value if isinstance(x, GFElement) else int(x) % p for x in r]
         for r in rows]
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank, row = 0, 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, n_rows) if m[r][col] % p), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = pow(m[row][col], p - 2, p)
        m[row] = [(x * inv) % p for x in m[row]]
        for r in range(n_rows):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[row])]
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def matrix_rank(rows, domain: CoeffDomain = QQ) -> int:
    """Exact rank; rationals are cleared to integers first, then Bareiss.

    Clearing runs per column: evaluations at one point share denominator
    structure, so column multipliers stay small where row multipliers blow
    up.  Column scaling by nonzero rationals preserves the rank.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    if domain.is_prime_field:
        return _gf_rank(rows, domain.p)
    n_cols = len(rows[0])
    multipliers = []
    for j in range(n_cols):
        den = 1
        for r in rows:
            d = int(r[j].denominator)
            den = den * d // _gcd(den, d)
        multipliers.append(den)
    cleared = [[int(x * m) for x, m in zip(r, multipliers)] for r in rows]
    return bareiss_rank(cleared)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def evaluation_rank(functions, points, domain: CoeffDomain = QQ) -> int:
    """Rank of the functions-by-points evaluation matrix over the exact field."""
    rows = []
    for f in functions:
        row = []
        for point in points:
            gamma = getattr(point, "gamma_value", domain.one())
            if isinstance(f, (Combination, BidetTerm)):
                row.append(f.evaluate(point, gamma))
            else:
                row.append(f.evaluate(point))
        rows.append(row)
    return matrix_rank(rows, domain)


# ---------------------------------------------------------------------------
# the desk-scale basis suite
# ---------------------------------------------------------------------------

def standard_basis_elements(n: int, r_max: int, mode: str = ON,
                            degree_exact: bool = False) -> list[BidetTerm]:
    """Standard bideterminant basis terms up to (or exactly at) degree r_max.

    In GO mode the elements of exact degree r are gamma^k [S:T] with
    2k + |shape| = r; the orthogonal mode lists plain [S:T] of all degrees
    up to the cap, including the empty-shape constant.
    """
    out = []
    degrees = [r_max] if degree_exact else list(range(r_max + 1))
    for r in degrees:
        if mode == GO:
            for k in range(r // 2 + 1):
                size = r - 2 * k
                out.extend(_standard_pairs_of_size(n, size, gamma_pow=k))
        else:
            out.extend(_standard_pairs_of_size(n, r, gamma_pow=0))
    return out


def _standard_pairs_of_size(n: int, size: int, gamma_pow: int) -> list[BidetTerm]:
    if size == 0:
        empty = Tableau(())
        return [BidetTerm(1, gamma_pow, empty, empty)]
    out = []
    for shape in partitions_of(size, max_rows=n):
        conj = conjugate(shape)
        if (conj[0] if conj else 0) + (conj[1] if len(conj) > 1 else 0) > n:
            continue
        standard = list(enumerate_on_standard(shape, n))
        for s in standard:
            for t in standard:
                out.append(BidetTerm(1, gamma_pow, s, t))
    return out


def _random_nonstandard_pair(n: int, max_size: int, rng: random.Random):
    """A random same-shape pair of column-increasing tableaux."""
    letters = _letters(n)
    shapes = [sh for r in range(1, max_size + 1) for sh in partitions_of(r, max_rows=n)]
    shape = rng.choice(shapes)
    conj = conjugate(shape)

    def random_tableau():
        cols = []
        for length in conj:
            cols.append(sorted(rng.sample(letters, length), key=lambda x: x.key))
        return Tableau.from_columns(cols)

    return random_tableau(), random_tableau()


@dataclass
class SuiteReport:
    lines: list
    passed: bool

    def text(self) -> str:
        return "\n".join(self.lines + ["PASS" if self.passed else "FAIL"])


def basis_suite(n: int, r_max: int, mode: str = ON, num_points: int | None = None,
                domain: CoeffDomain = QQ, seed: int = 1, cap: int = 800,
                spanning_samples: int = 5) -> SuiteReport:
    """Independence (rank = count, two agreeing batches) and spanning checks."""
    if mode == GO and domain.is_prime_field:
        raise DomainError("similitude mode runs over the rationals only")
    elements = standard_basis_elements(n, r_max, mode)
    lines = []
    ok = True
    if len(elements) > cap:
        return SuiteReport(
            [f"refused: {len(elements)} standard elements exceed the cap {cap}"], False)
    count = len(elements)
    want_points = num_points or (count + 6)

    ranks = []
    for batch in (0, 1):
        points = _suite_points(n, want_points, seed + 31 * batch, mode, domain)
        if domain.is_prime_field and len(points) < count:
            lines.append(f"batch {batch}: only {len(points)} usable points after reduction")
            ok = False
            continue
        rank = evaluation_rank(elements, points, domain)
        retries = 0
        while rank < count and retries < 3:
            retries += 1
            points = _suite_points(n, want_points + 8 * retries,
                                   seed + 31 * batch + 101 * retries, mode, domain,
                                   spread=2 + retries)
            rank = evaluation_rank(elements, points, domain)
        ranks.append(rank)
        lines.append(f"independence rank={rank} expected={count}")
        if rank != count:
            ok = False
    if len(ranks) == 2 and ranks[0] != ranks[1]:
        lines.append("batches disagree")
        ok = False

    rng = random.Random(seed + 999)
    points = _suite_points(n, 10, seed + 500, mode, domain)
    zero_count = 0
    for _ in range(spanning_samples):
        s, t = _random_nonstandard_pair(n, max(1, min(r_max, 4)), rng)
        result = on_straighten(s, t, mode, n, domain if domain.is_prime_field else QQ)
        residual_zero = True
        for point in points:
            gamma = getattr(point, "gamma_value", domain.one())
            lhs = polyring.eval_bideterminant(s, t, point)
            if lhs != result.evaluate(point, gamma):
                residual_zero = False
        zero_count += 1 if residual_zero else 0
    lines.append(f"spanning residuals_zero={zero_count}/{spanning_samples}")
    if zero_count != spanning_samples:
        ok = False
    return SuiteReport(lines, ok)


def _suite_points(n: int, count: int, seed: int, mode: str,
                  domain: CoeffDomain, spread: int = 2) -> list[GroupPoint]:
    if mode == GO:
        points, i = [], 0
        rng = random.Random(seed)
        while len(points) < count:
            c = rational(rng.randint(2, 5 + spread), rng.randint(1, 3))
            if c == 1:
                i += 1
                continue
            points.append(random_go_point(n, seed + 13 * i, c, spread))
            i += 1
        return points
    if not domain.is_prime_field:
        return standard_points(n, count, seed, spread)
    # reduced points repeat: many rational points collapse to one residue,
    # so draw widely and keep only distinct images
    reduced, seen = [], set()
    for attempt in range(8):
        raw = standard_points(n, (2 + 2 * attempt) * count,
                              seed + 1009 * attempt, spread + attempt)
        for p in raw:
            q = p.reduce_mod(domain)
            if q is None or q.matrix.rows in seen:
                continue
            seen.add(q.matrix.rows)
            reduced.append(q)
            if len(reduced) == count:
                return reduced
    return reduced
