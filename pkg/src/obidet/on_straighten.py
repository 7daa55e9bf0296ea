"""Straightening as functions on the orthogonal group and its similitudes.

The key tool is a family of relation sums: summing a bideterminant over
stacked rows (i, bar i) with the index running over the alphabet minus a
small excluded set collapses, on the group, to signed lower-degree terms
obtained by deleting paired letters from the right tableau.  The three
replacement identities repair the orthogonal standardness conditions with
it, the complementary-minor identity repairs the column condition, and the
driver recurses to a combination of standard terms.

In similitude (GO) mode each degree-d collapse carries a factor gamma^d
and the column reduction trades det^2 for gamma^n, so every output term
satisfies 2 * gamma_pow + |shape| = input degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .tableaux import (
    DomainError,
    Letter,
    Tableau,
    _letters,
    conjugate,
    on_standard_report,
    occurring_pairs,
)
from .gl_straighten import (
    BidetTerm,
    CapExceeded,
    Combination,
    _gl_violation_pair,
    mead_step,
    normalize_pair,
    one_switch_expand,
    single_term,
    sort_letters,
)
from .polyring import CoeffDomain, QQ, eval_columns_product


ON = "ON"
GO = "GO"


# ---------------------------------------------------------------------------
# relation sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationSpec:
    """A stacked-row sum: a pairs (i, bar i) atop s0, against the fixed t."""

    s0_col1: tuple[Letter, ...]
    s0_col2: tuple[Letter, ...]
    t: Tableau
    a: int
    excluded: frozenset[Letter]
    n: int

    def __post_init__(self):
        if self.a <= 0:
            raise DomainError("need a positive number of stacked rows")
        if len(self.excluded) >= self.a:
            raise DomainError("the excluded set must be smaller than the stack")
        cols = self.t.columns()
        if len(cols) > 2:
            raise DomainError("relation sums use two-column right tableaux")
        t2 = len(cols[1]) if len(cols) == 2 else 0
        if self.a > t2:
            raise DomainError("stack exceeds the second column of the right tableau")
        shape_left = (self.a + len(self.s0_col1), self.a + len(self.s0_col2))
        t1 = len(cols[0]) if cols else 0
        if shape_left != (t1, t2):
            raise DomainError("stacked shape must match the right tableau")

    def stacked_columns(self, letters):
        """Raw column lists for the stack of the given letters atop s0."""
        col1 = tuple(letters) + self.s0_col1
        col2 = tuple(x.bar() for x in letters) + self.s0_col2
        return col1, col2


@dataclass(frozen=True)
class SdTerm:
    sign: int
    gamma_pow: int
    left_cols: tuple[tuple[Letter, ...], tuple[Letter, ...]]
    right: Tableau


@dataclass(frozen=True)
class SdExpansion:
    per_degree: tuple[tuple[int, tuple[SdTerm, ...]], ...]

    def all_terms(self):
        for _, terms in self.per_degree:
            yield from terms

    def to_combination(self, domain: CoeffDomain = QQ, mode: str = ON) -> Combination:
        out = []
        for term in self.all_terms():
            sign, left, right = normalize_pair(term.left_cols, term.right.columns())
            if sign == 0:
                continue
            gpow = term.gamma_pow if mode == GO else 0
            out.append(BidetTerm(domain.from_int(term.sign * sign), gpow, left, right))
        return Combination(out)


def _delete_pairs(t: Tableau, pair_set) -> Tableau:
    cols = t.columns()
    c1 = [x for x in cols[0] if x not in pair_set]
    bars = {x.bar() for x in pair_set}
    c2 = [x for x in (cols[1] if len(cols) > 1 else ()) if x not in bars]
    return Tableau.from_columns([c1, c2])


def _pair_deletion_sign(t: Tableau, pair_set) -> int:
    """Cofactor sign of deleting the pairs from the two columns.

    Fixing each deleted letter at its column position contributes the usual
    cofactor parity; the first-column positions are taken in increasing
    order, so the partner positions additionally contribute their inversion
    count.  (The sign is +1 exactly when the pairs sit at aligned positions,
    which is the only case exercised by the usual textbook displays.)
    """
    cols = t.columns()
    c1, c2 = list(cols[0]), list(cols[1])
    ordered = sorted(pair_set, key=lambda x: c1.index(x))
    p_positions = [c1.index(x) + 1 for x in ordered]
    q_positions = [c2.index(x.bar()) + 1 for x in ordered]
    total = sum(p_positions) + sum(q_positions)
    inversions = sum(
        1 for i in range(len(q_positions)) for j in range(i + 1, len(q_positions))
        if q_positions[i] > q_positions[j]
    )
    return -1 if (total + inversions) % 2 else 1


def relation_rhs(spec: RelationSpec) -> SdExpansion:
    """The collapsed form of the relation sum, by deleted-pair degree d."""
    pairs = occurring_pairs(spec.t)
    allowed = sorted(spec.excluded, key=lambda x: x.key)
    per_degree = []
    for d in range(1, spec.a + 1):
        if spec.a - d > len(allowed):
            per_degree.append((d, ()))
            continue
        base_sign = -1 if (spec.a - d) % 2 else 1
        terms = []
        for combo in itertools.combinations(pairs, d):
            right = _delete_pairs(spec.t, set(combo))
            sign = base_sign * _pair_deletion_sign(spec.t, combo)
            for stack in itertools.combinations(allowed, spec.a - d):
                left_cols = spec.stacked_columns(stack)
                terms.append(SdTerm(sign, d, left_cols, right))
        per_degree.append((d, tuple(terms)))
    return SdExpansion(tuple(per_degree))


def relation_lhs_terms(spec: RelationSpec):
    """The raw sum side: one stacked column pair per increasing tuple."""
    letters = [x for x in _letters(spec.n) if x not in spec.excluded]
    for tup in itertools.combinations(letters, spec.a):
        yield spec.stacked_columns(tup)


def verify_relation(spec: RelationSpec, points) -> bool:
    """Exact check that the sum collapses as claimed at each group point."""
    rhs = relation_rhs(spec)
    t_cols = spec.t.columns()
    for point in points:
        gamma = getattr(point, "gamma_value", 1)
        lhs_value = 0
        for left_cols in relation_lhs_terms(spec):
            lhs_value = lhs_value + eval_columns_product(left_cols, t_cols, point)
        rhs_value = 0
        for term in rhs.all_terms():
            v = eval_columns_product(term.left_cols, term.right.columns(), point)
            for _ in range(term.gamma_pow):
                v = v * gamma
            rhs_value = rhs_value + term.sign * v
        if lhs_value != rhs_value:
            return False
    return True


# ---------------------------------------------------------------------------
# one-column complements and the column condition
# ---------------------------------------------------------------------------

def _selection_sign(total: int, front: list[int]) -> int:
    """Sign of the permutation moving the listed positions to the front."""
    rest = [i for i in range(total) if i not in set(front)]
    order = list(front) + rest
    sign = 1
    for a, b in itertools.combinations(order, 2):
        if a > b:
            sign = -sign
    return sign


def one_column_complement(s_col, t_col, n: int):
    """Rewrite a single-column bideterminant through its complement.

    Returns (sign, s_bar, t_bar) with [S:T] = sign * det * [s_bar : t_bar]
    as functions on the orthogonal group; on similitudes the right side
    additionally carries gamma^(k - n).  The sign comes from the
    complementary-minor identity for the inverse g^{-1} = J g^t J.
    """
    s_col, t_col = list(s_col), list(t_col)
    if len(s_col) != len(t_col):
        raise DomainError("columns must have equal length")
    if len(set(s_col)) < len(s_col) or len(set(t_col)) < len(t_col):
        raise DomainError("columns must not repeat letters")
    letters = _letters(n)
    for x in s_col + t_col:
        if x not in letters:
            raise DomainError(f"letter {x} is not in the alphabet of size {n}")
    sign_s, s_sorted = sort_letters(s_col)
    sign_t, t_sorted = sort_letters(t_col)
    position = {x: i + 1 for i, x in enumerate(letters)}

    def complement(sorted_col):
        inside = set(sorted_col)
        comp = [x for x in letters if x not in inside]
        pos_sum = sum(position[x] for x in comp)
        bars = [x.bar() for x in comp]
        bar_sign, bars_sorted = sort_letters(bars)
        return comp, pos_sum, bar_sign, bars_sorted

    _, pos_s, bar_sign_s, s_bar = complement(s_sorted)
    _, pos_t, bar_sign_t, t_bar = complement(t_sorted)
    eps = sign_s * sign_t * bar_sign_s * bar_sign_t
    if (pos_s + pos_t) % 2:
        eps = -eps
    return eps, s_bar, t_bar


def reduce_tall_shape(s: Tableau, t: Tableau, mode: str, n: int) -> BidetTerm:
    """Trade a two-column pair with overlong columns for its complements.

    Requires conj[0] + conj[1] > n.  The det^2 factor disappears on the
    orthogonal group and becomes gamma^n on similitudes, so in GO mode the
    output carries gamma_pow = conj[0] + conj[1] - n.
    """
    if s.shape != t.shape:
        raise DomainError("shape mismatch")
    cols_s, cols_t = s.columns(), t.columns()
    if len(cols_s) != 2:
        raise DomainError("two-column tableaux required")
    conj = conjugate(s.shape)
    if conj[0] + conj[1] <= n:
        raise DomainError("column condition already holds")
    e1, s1_bar, t1_bar = one_column_complement(cols_s[0], cols_t[0], n)
    e2, s2_bar, t2_bar = one_column_complement(cols_s[1], cols_t[1], n)
    left = Tableau.from_columns([s2_bar, s1_bar])
    right = Tableau.from_columns([t2_bar, t1_bar])
    gamma_pow = conj[0] + conj[1] - n if mode == GO else 0
    return BidetTerm(e1 * e2, gamma_pow, left, right)


# ---------------------------------------------------------------------------
# the replacement machinery behind the three standardness repairs
# ---------------------------------------------------------------------------

@dataclass
class _PairContext:
    pair_values: list[Letter]          # letters i with i in col 1, bar i in col 2
    col1_positions: list[int]          # 0-based, increasing
    col2_positions: list[int]          # partner positions in pair order
    excluded: set[Letter]              # the set C of the chosen variant
    repos_sign: int                    # relates the raw sum to the stacked form
    s0_col1: tuple[Letter, ...]
    s0_col2: tuple[Letter, ...]


def _classify(s: Tableau, n: int, j: int):
    """Split the letters up to j into pair, unpaired and absent sets."""
    cols = s.columns()
    c1 = list(cols[0]) if cols else []
    c2 = list(cols[1]) if len(cols) > 1 else []
    bound = Letter(j)
    small = [x for x in _letters(n) if x <= bound]
    in1, in2 = set(c1), set(c2)
    pairs = [x for x in small if x in in1 and x.bar() in in2]
    absent = [x for x in small if x not in in1 and x.bar() not in in2]
    return pairs, absent, c1, c2


def _pair_context(s: Tableau, n: int, j: int, drop_from_excluded: Letter | None) -> _PairContext:
    pairs, absent, c1, c2 = _classify(s, n, j)
    if not pairs:
        raise DomainError("no replaceable pairs below the witness index")
    excluded = set(absent)
    if drop_from_excluded is not None:
        if drop_from_excluded not in excluded:
            raise DomainError(f"{drop_from_excluded} is not among the absent letters")
        excluded.discard(drop_from_excluded)
    if len(excluded) >= len(pairs):
        raise DomainError("replacement sum needs more pairs than exclusions")
    col1_positions = sorted(c1.index(x) for x in pairs)
    # pair values increase down the strictly increasing first column
    ordered_values = [c1[p] for p in col1_positions]
    col2_positions = [c2.index(x.bar()) for x in ordered_values]
    sign1 = _selection_sign(len(c1), col1_positions)
    sign2 = _selection_sign(len(c2), col2_positions)
    s0_col1 = tuple(x for i, x in enumerate(c1) if i not in set(col1_positions))
    s0_col2 = tuple(x for i, x in enumerate(c2) if i not in set(col2_positions))
    return _PairContext(
        ordered_values, col1_positions, col2_positions,
        excluded, sign1 * sign2, s0_col1, s0_col2,
    )


def _replacement_sum_terms(s: Tableau, ctx: _PairContext, n: int):
    """All raw tableaux of the replacement sum, as (columns, is_identity)."""
    cols = s.columns()
    c1 = list(cols[0])
    c2 = list(cols[1]) if len(cols) > 1 else []
    a = len(ctx.pair_values)
    candidates = [x for x in _letters(n) if x not in ctx.excluded]
    for values in itertools.combinations(candidates, a):
        new1, new2 = list(c1), list(c2)
        for p, q, v in zip(ctx.col1_positions, ctx.col2_positions, values):
            new1[p] = v
            new2[q] = v.bar()
        yield (new1, new2), list(values) == ctx.pair_values


def _relation_for_context(s: Tableau, t: Tableau, ctx: _PairContext, n: int) -> RelationSpec:
    return RelationSpec(
        ctx.s0_col1, ctx.s0_col2, t,
        a=len(ctx.pair_values),
        excluded=frozenset(ctx.excluded),
        n=n,
    )


def _replacement_fix(s: Tableau, t: Tableau, ctx: _PairContext, n: int,
                     mode: str, domain: CoeffDomain):
    """Solve the replacement sum for [S:T].

    Returns (lambda_part, s_part): the same-shape terms to subtract and the
    collapsed lower-degree terms, so that
    [S:T] = -lambda_part + repos_sign * s_part on the group.
    """
    lam_terms = []
    identity_seen = False
    for (new1, new2), is_identity in _replacement_sum_terms(s, ctx, n):
        if is_identity:
            identity_seen = True
            continue
        sign, left, right = normalize_pair([new1, new2], t.columns())
        if sign == 0:
            continue
        lam_terms.append(BidetTerm(domain.from_int(sign), 0, left, right))
    if not identity_seen:
        raise AssertionError("replacement sum lost the identity term")
    spec = _relation_for_context(s, t, ctx, n)
    s_part = relation_rhs(spec).to_combination(domain, mode)
    return Combination(lam_terms), s_part


def fix_os1(s: Tableau, t: Tableau, j: int, mode: str = ON,
            n: int | None = None, domain: CoeffDomain = QQ) -> Combination:
    """Repair a count violation (more than 2j small entries in the columns)."""
    n = _require_n(n)
    rep = on_standard_report(s, n)
    if not any(v.kind == "OS1" and v.witness == j for v in rep.violations):
        raise DomainError(f"no count violation at index {j}")
    ctx = _pair_context(s, n, j, drop_from_excluded=None)
    lam, s_part = _replacement_fix(s, t, ctx, n, mode, domain)
    return s_part.scale(domain.from_int(ctx.repos_sign)) - lam


def fix_os2(s: Tableau, t: Tableau, j: int, mode: str = ON,
            n: int | None = None, domain: CoeffDomain = QQ) -> Combination:
    """Repair an unprotected entry in the first column (strict count case)."""
    n = _require_n(n)
    rep = on_standard_report(s, n)
    if not any(v.kind == "OS2" and v.witness == j for v in rep.violations):
        raise DomainError(f"no protection violation at index {j}")
    ctx = _pair_context(s, n, j, drop_from_excluded=Letter(j).bar())
    lam, s_part = _replacement_fix(s, t, ctx, n, mode, domain)
    return s_part.scale(domain.from_int(ctx.repos_sign)) - lam


def fix_os3(s: Tableau, t: Tableau, j: int, mode: str = ON,
            n: int | None = None, domain: CoeffDomain = QQ) -> Combination:
    """Repair an unprotected pair row (equal count case); needs 1/2."""
    n = _require_n(n)
    rep = on_standard_report(s, n)
    if not any(v.kind == "OS3" and v.witness == j and v.column == 2
               for v in rep.violations):
        raise DomainError(f"no pair-row violation at index {j}")
    ctx = _pair_context(s, n, j, drop_from_excluded=Letter(j))
    lam, s_part = _replacement_fix(s, t, ctx, n, mode, domain)

    # the switched tableau: the row of (bar j, j) with the pair reversed
    cols = s.columns()
    row = cols[0].index(Letter(j).bar()) + 1
    if cols[1][row - 1] != Letter(j):
        raise AssertionError("pair row lost")
    switch = one_switch_expand(s, t, row)

    c1 = list(cols[0])
    c2 = list(cols[1])
    c1[row - 1], c2[row - 1] = Letter(j), Letter(j).bar()
    star = Tableau.from_columns([c1, c2])
    star_coef = lam.coefficient(star, t)
    if star_coef != domain.one():
        raise AssertionError("replacement sum lost the switched term")

    # [S:T] + [S*:T] + s3 = repos * s1  and  [S*:T] - [S:T] = switch
    # combine to 2 [S:T] = repos * s1 - s3 - switch
    s3 = lam - single_term(star, t, domain.one())
    doubled = s_part.scale(domain.from_int(ctx.repos_sign)) - s3 - switch.scale(domain.one())
    return doubled.scale(domain.half())


def _require_n(n):
    if n is None:
        raise DomainError("the alphabet size n is required")
    if n < 3:
        raise DomainError("orthogonal work needs n >= 3")
    return n


# ---------------------------------------------------------------------------
# the full driver
# ---------------------------------------------------------------------------

def fix_two_column(s: Tableau, t: Tableau, mode: str, n: int,
                   domain: CoeffDomain = QQ) -> tuple[str, int, Combination]:
    """Apply the first applicable repair to a GL-standard two-column pair."""
    rep = on_standard_report(s, n)
    if rep.standard:
        raise DomainError("already standard")
    v = rep.violations[0]
    if v.kind == "COLSUM":
        term = reduce_tall_shape(s, t, mode, n)
        return "COLSUM", 0, Combination([BidetTerm(
            domain.from_int(term.coef), term.gamma_pow, term.left, term.right)])
    if v.kind == "OS1":
        return "OS1", v.witness, fix_os1(s, t, v.witness, mode, n, domain)
    if v.kind == "OS2":
        return "OS2", v.witness, fix_os2(s, t, v.witness, mode, n, domain)
    if v.kind == "OS3":
        return "OS3", v.witness, fix_os3(s, t, v.witness, mode, n, domain)
    raise AssertionError(f"unexpected violation {v}")


def _extract_block(t: Tableau, b: int):
    """Columns (1, b) as a two-column tableau plus the untouched columns."""
    cols = list(t.columns())
    block = [cols[0], cols[b - 1]]
    rest = [c for i, c in enumerate(cols) if i not in (0, b - 1)]
    return block, rest


def _reassemble(block_cols, rest, b: int, original_lengths):
    """Put a replaced block back among the untouched columns.

    When the block kept its column lengths the original positions are
    restored exactly (keeping the tableau order comparison local to the
    block); otherwise column order is immaterial for a product of column
    minors and the caller resorts by length.
    """
    block_cols = [list(c) for c in block_cols]
    rest = [list(c) for c in rest]
    if tuple(len(c) for c in block_cols) == original_lengths:
        merged = list(rest)
        merged.insert(0, block_cols[0])
        merged.insert(b - 1, block_cols[1])
        return merged
    return block_cols + rest


def on_straighten(s: Tableau, t: Tableau, mode: str = ON, n: int | None = None,
                  domain: CoeffDomain = QQ, fuel: int = 500000,
                  max_terms: int | None = None,
                  trace: list | None = None) -> Combination:
    """Express [S:T] on the group in the standard-bideterminant basis.

    The output is a combination with every left and right tableau standard;
    in GO mode the terms carry gamma powers with 2 * gamma_pow + |shape|
    equal to the input degree.  Identity holds as functions on the group.
    """
    n = _require_n(n)
    if mode not in (ON, GO):
        raise DomainError(f"unknown mode {mode!r}")
    if len(s.shape) > n or len(t.shape) > n:
        raise DomainError(f"more than {n} rows")
    if s.shape != t.shape:
        raise DomainError("shape mismatch")
    for col in (*s.columns(), *t.columns()):
        for x in col:
            if not _in_alphabet(x, n):
                raise DomainError(f"letter {x} outside the alphabet of size {n}")

    sign, left, right = normalize_pair(s.columns(), t.columns())
    if sign == 0:
        return Combination()
    work = [BidetTerm(domain.from_int(sign), 0, left, right)]
    done: list[BidetTerm] = []
    while work:
        if fuel <= 0:
            raise RuntimeError("straightening fuel exhausted")
        if max_terms is not None and len(work) + len(done) > max_terms:
            raise CapExceeded(f"more than {max_terms} working terms")
        fuel -= 1
        term = work.pop()
        if not term.coef:
            continue
        step = _one_step(term, mode, n, domain)
        if step is None:
            done.append(term)
            continue
        kind, witness, produced = step
        if trace is not None:
            trace.append((kind, witness, 1, len(produced)))
        work.extend(produced)
    out = Combination(done)
    for term in out:
        if not on_standard_report(term.left, n).standard:
            raise AssertionError("non-standard left tableau in output")
        if not on_standard_report(term.right, n).standard:
            raise AssertionError("non-standard right tableau in output")
        if mode == GO and 2 * term.gamma_pow + term.left.size != s.size:
            raise AssertionError("gamma grading violated")
        if not domain.validate(term.coef):
            raise AssertionError(f"coefficient {term.coef} left the domain")
    return out


def _in_alphabet(x: Letter, n: int) -> bool:
    return x in _letters(n)


def _one_step(term: BidetTerm, mode: str, n: int, domain: CoeffDomain):
    """One rewrite of the first offending side; None when both are standard."""
    c = _gl_violation_pair(term.left)
    if c is not None:
        produced = _scaled(mead_step(term.left, term.right, c), term)
        return "GL", c + 1, produced
    c = _gl_violation_pair(term.right)
    if c is not None:
        step = mead_step(term.right, term.left, c)
        produced = [BidetTerm(term.coef * x.coef, term.gamma_pow + x.gamma_pow,
                              x.right, x.left) for x in step]
        return "GL", c + 1, produced
    rep = on_standard_report(term.left, n)
    if not rep.standard:
        return _fix_side(term, rep, mode, n, domain, left_side=True)
    rep = on_standard_report(term.right, n)
    if not rep.standard:
        return _fix_side(term, rep, mode, n, domain, left_side=False)
    return None


def _scaled(comb: Combination, term: BidetTerm) -> list[BidetTerm]:
    return [BidetTerm(term.coef * x.coef, term.gamma_pow + x.gamma_pow,
                      x.left, x.right) for x in comb]


def _fix_side(term: BidetTerm, rep, mode: str, n: int, domain: CoeffDomain,
              left_side: bool):
    work_left = term.left if left_side else term.right
    work_right = term.right if left_side else term.left
    v = rep.violations[0]
    b = v.column if v.kind == "OS3" and v.column >= 2 else 2
    block_left, rest_left = _extract_block(work_left, b)
    block_right, rest_right = _extract_block(work_right, b)
    original_lengths = tuple(len(c) for c in block_left)
    sub_left = Tableau.from_columns(block_left)
    sub_right = Tableau.from_columns(block_right)
    kind, witness, fixed = fix_two_column(sub_left, sub_right, mode, n, domain)
    produced = []
    for x in fixed:
        lc = _reassemble(x.left.columns(), rest_left, b, original_lengths)
        rc = _reassemble(x.right.columns(), rest_right, b, original_lengths)
        sign, new_left, new_right = normalize_pair(lc, rc)
        if sign == 0:
            continue
        _check_repair_measure(work_left, new_left)
        coef = term.coef * x.coef * sign
        gpow = term.gamma_pow + x.gamma_pow
        if left_side:
            produced.append(BidetTerm(coef, gpow, new_left, new_right))
        else:
            produced.append(BidetTerm(coef, gpow, new_right, new_left))
    return kind, witness, produced


def _check_repair_measure(old: Tableau, new: Tableau):
    """Each repair term must fall in the rewrite measure.

    Either the worked side moves strictly up at fixed shape, or the size
    shrinks (deleted pairs, column reduction), or on the size-preserving
    rebalanced terms of the pair-row repair the column profile grows.
    """
    if new.shape == old.shape:
        from .tableaux import tableau_prec_cmp
        if tableau_prec_cmp(old, new) != -1:
            raise AssertionError("same-shape repair did not move up in tableau order")
    elif new.size < old.size:
        return
    else:
        from .gl_straighten import _column_profile
        if not (new.size == old.size and _column_profile(new) > _column_profile(old)):
            raise AssertionError("repair changed the shape without falling in measure")
