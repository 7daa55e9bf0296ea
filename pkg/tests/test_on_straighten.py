import random

import pytest

from obidet.tableaux import (
    DomainError,
    Letter,
    Tableau,
    _letters,
    basic_tableau,
    conjugate,
    on_standard_report,
    partitions_of,
)
from obidet.polyring import (
    GF,
    QQ,
    ZHALF,
    eval_bideterminant,
    eval_columns_product,
    is_dyadic,
    rational,
)
from obidet.gl_straighten import single_term
from obidet.on_straighten import (
    GO,
    ON,
    RelationSpec,
    fix_os1,
    fix_os2,
    fix_os3,
    on_straighten,
    one_column_complement,
    reduce_tall_shape,
    relation_lhs_terms,
    relation_rhs,
    verify_relation,
)
from obidet.group_oracle import random_go_point, random_on_point, standard_points
from obidet.golden import GOLDEN_CASES


def L(token):
    return Letter.parse(token)


def cols(*lists):
    return [[L(tok) for tok in chunk.split()] for chunk in lists]


# ---------------------------------------------------------------------------
# relation sums
# ---------------------------------------------------------------------------

def worked_relation_spec():
    t = Tableau.from_columns(cols("1b 2b 3b 4 6", "1 2 3 5"))
    return RelationSpec(
        (L("7"), L("9")), (L("8"),), t,
        a=3, excluded=frozenset({L("4b"), L("5")}), n=18)


def test_relation_spec_validation():
    t = Tableau.from_columns(cols("1b 2b", "1 2"))
    with pytest.raises(DomainError):
        RelationSpec((), (), t, a=0, excluded=frozenset(), n=4)
    with pytest.raises(DomainError):
        RelationSpec((), (), t, a=1, excluded=frozenset({L("1")}), n=4)
    with pytest.raises(DomainError):  # stack exceeds the second column
        RelationSpec((), (), t, a=3, excluded=frozenset(), n=8)
    with pytest.raises(DomainError):  # stacked shape must match t
        RelationSpec((L("3"),), (), t, a=2, excluded=frozenset({L("1")}), n=8)


def test_worked_relation_structure():
    rhs = relation_rhs(worked_relation_spec())
    per = dict(rhs.per_degree)
    assert len(per[1]) == 3 and all(t.sign == 1 for t in per[1])
    assert len(per[2]) == 6 and all(t.sign == -1 for t in per[2])
    assert len(per[3]) == 1 and per[3][0].sign == 1
    # the single full-deletion term strips the stack entirely
    t3 = per[3][0]
    assert t3.left_cols == ((L("7"), L("9")), (L("8"),))
    assert t3.right.columns() == ((L("4"), L("6")), (L("5"),))
    # depth-1 terms stack both excluded letters
    t1 = per[1][0]
    assert t1.left_cols[0] == (L("4b"), L("5"), L("7"), L("9"))
    assert t1.left_cols[1] == (L("4"), L("5b"), L("8"))


def test_worked_relation_verifies():
    pts = standard_points(18, 4, seed=9)
    assert verify_relation(worked_relation_spec(), pts)


def test_relation_no_pairs_vanishes():
    # no letter of the right tableau occurs with its bar: the sum collapses to 0
    t = Tableau.from_columns(cols("1b 2b", "1b 2b"))
    spec = RelationSpec((L("3"),), (L("4"),), t, a=1, excluded=frozenset(), n=8)
    rhs = relation_rhs(spec)
    assert all(not terms for _, terms in rhs.per_degree)
    pts = standard_points(8, 3, seed=4)
    for pt in pts:
        total = sum(eval_columns_product(c, t.columns(), pt)
                    for c in relation_lhs_terms(spec))
        assert total == 0


def test_relation_empty_excluded_keeps_only_full_depth():
    t = Tableau.from_columns(cols("1b 2b", "1 2"))
    spec = RelationSpec((), (), t, a=2, excluded=frozenset(), n=6)
    per = dict(relation_rhs(spec).per_degree)
    assert per[1] == ()
    assert len(per[2]) == 1


def test_relation_negative_control():
    spec = worked_relation_spec()
    pts = standard_points(18, 2, seed=9)
    rhs = relation_rhs(spec)
    t_cols = spec.t.columns()
    for pt in pts[:1]:
        lhs = sum(eval_columns_product(c, t_cols, pt) for c in relation_lhs_terms(spec))
        flipped = 0
        terms = list(rhs.all_terms())
        for i, term in enumerate(terms):
            sign = -term.sign if i == 0 else term.sign
            flipped += sign * eval_columns_product(term.left_cols, term.right.columns(), pt)
        assert lhs != flipped


def test_randomized_relation_suite():
    rng = random.Random(77)
    trials = 0
    while trials < 12:
        n = rng.choice([4, 5, 6, 7])
        letters = _letters(n)
        a = rng.choice([1, 2, 3])
        e = min(n, a + rng.randrange(0, 3))
        f = min(e, a + rng.randrange(0, max(1, e - a + 1)))
        if f < a:
            continue
        t = Tableau.from_columns([
            sorted(rng.sample(letters, e), key=lambda x: x.key),
            sorted(rng.sample(letters, f), key=lambda x: x.key)])
        spec = RelationSpec(
            tuple(rng.sample(letters, e - a)), tuple(rng.sample(letters, f - a)),
            t, a, frozenset(rng.sample(letters, rng.randrange(0, a))), n)
        trials += 1
        assert verify_relation(spec, standard_points(n, 3, seed=trials)), spec


def test_relation_gamma_weights_on_similitudes():
    t = Tableau.from_columns(cols("1b 2b 3", "1 2"))
    spec = RelationSpec((L("3"),), (), t, a=2, excluded=frozenset({L("2")}), n=6)
    pts = [random_go_point(6, 40 + i, rational(i + 2)) for i in range(3)]
    assert verify_relation(spec, pts)


# ---------------------------------------------------------------------------
# complements and the column condition
# ---------------------------------------------------------------------------

def test_one_column_complement_full_column():
    for n in (3, 4):
        letters = _letters(n)
        eps, sbar, tbar = one_column_complement(letters, letters, n)
        assert sbar == () and tbar == ()
        pt = random_on_point(n, 21, "MINUS")
        # [full column : full column] is det itself
        assert eval_columns_product([letters], [letters], pt) == eps * pt.det_value


def test_one_column_complement_small_cases():
    for n, s_col, t_col in [
        (3, ["1b"], ["1b"]),
        (4, ["1b", "1"], ["1b", "2b"]),
    ]:
        s_col = [L(x) for x in s_col] if isinstance(s_col[0], str) else s_col
        t_col = [L(x) for x in t_col] if isinstance(t_col[0], str) else t_col
        eps, sbar, tbar = one_column_complement(s_col, t_col, n)
        for seed in range(5):
            pt = random_on_point(n, 60 + seed, "MINUS" if seed % 2 else "PLUS")
            lhs = eval_columns_product([s_col], [t_col], pt)
            rhs = eps * pt.det_value * eval_columns_product([sbar], [tbar], pt)
            assert lhs == rhs


def test_one_column_complement_transpose_consistent():
    # the sign must be symmetric under swapping the two columns
    n = 5
    letters = _letters(n)
    rng = random.Random(5)
    for _ in range(10):
        s_col = rng.sample(letters, 2)
        t_col = rng.sample(letters, 2)
        eps1, _, _ = one_column_complement(s_col, t_col, n)
        eps2, _, _ = one_column_complement(t_col, s_col, n)
        assert eps1 == eps2


def test_one_column_complement_rejects_repeats():
    with pytest.raises(DomainError):
        one_column_complement([L("1"), L("1")], [L("1"), L("2")], 4)


def test_reduce_tall_shape_on_mode():
    s = Tableau.parse("1b 1b; 1 1")
    t = Tableau.parse("1b 1b; 1 0")
    term = reduce_tall_shape(s, t, ON, 3)
    assert term.gamma_pow == 0
    assert conjugate(term.left.shape) == (1, 1)
    for seed in range(5):
        pt = random_on_point(3, seed, "MINUS" if seed % 2 else "PLUS")
        assert eval_bideterminant(s, t, pt) == \
            term.coef * eval_bideterminant(term.left, term.right, pt)


def test_reduce_tall_shape_go_grading():
    s = Tableau.parse("1b 1b; 1 1; 2b 2")
    t = Tableau.parse("1b 1; 2b 2b; 2 2")
    term = reduce_tall_shape(s, t, GO, 4)
    assert 2 * term.gamma_pow + term.left.size == s.size
    for seed in range(3):
        pt = random_go_point(4, 70 + seed, rational(seed + 2, 1))
        scale = term.coef
        for _ in range(term.gamma_pow):
            scale = scale * pt.gamma_value
        assert eval_bideterminant(s, t, pt) == \
            scale * eval_bideterminant(term.left, term.right, pt)


def test_reduce_tall_shape_guard():
    s = Tableau.parse("1b 1; 2b 2")
    with pytest.raises(DomainError):
        reduce_tall_shape(s, s, ON, 5)


# ---------------------------------------------------------------------------
# the three repairs
# ---------------------------------------------------------------------------

OS1, OS2, OS3 = GOLDEN_CASES[1], GOLDEN_CASES[2], GOLDEN_CASES[3]


def _identity_holds(case, result, points):
    s, t = case.inputs()
    return all(eval_bideterminant(s, t, pt) == result.evaluate(pt) for pt in points)


def test_fix_os1_golden():
    s, t = OS1.inputs()
    result = fix_os1(s, t, 2, ON, 6)
    assert result == OS1.expected()
    assert _identity_holds(OS1, result, standard_points(6, 10, seed=1))


def test_fix_os2_golden():
    s, t = OS2.inputs()
    result = fix_os2(s, t, 2, ON, 7)
    assert result == OS2.expected()
    assert _identity_holds(OS2, result, standard_points(7, 10, seed=1))


def test_fix_os3_golden():
    s, t = OS3.inputs()
    result = fix_os3(s, t, 2, ON, 6)
    assert result == OS3.expected()
    assert _identity_holds(OS3, result, standard_points(6, 10, seed=1))


def test_fixes_for_basic_right_tableau():
    """Repairs against the basic right tableau stay exact.

    The collapsed lower-degree terms do NOT vanish here: a two-column basic
    tableau always contains the pair (1, 1b) across its columns, so the
    deletion sums survive.  (Only the polynomial-level rebalancing terms of
    the two-column rewrite die for a basic right tableau; that vanishing is
    covered in the two-column tests.)  The identity itself must still hold,
    and the lower terms carry genuinely nonzero functions: dropping them
    breaks the identity.
    """
    from obidet.gl_straighten import Combination

    for case, fixer in [(OS1, fix_os1), (OS2, fix_os2), (OS3, fix_os3)]:
        s, _ = case.inputs()
        t = basic_tableau(s.shape, case.n)
        result = fixer(s, t, 2, ON, case.n)
        pts = standard_points(case.n, 8, seed=6)
        assert all(eval_bideterminant(s, t, pt) == result.evaluate(pt)
                   for pt in pts), case.kind
        lam_only = Combination([x for x in result if x.left.shape == s.shape])
        small = [x for x in result if x.left.shape != s.shape]
        assert small, case.kind  # the deletion terms survive for basic T
        assert any(eval_bideterminant(s, t, pt) != lam_only.evaluate(pt)
                   for pt in pts), case.kind


def test_fix_heads_independent_of_right():
    for case, fixer in [(OS1, fix_os1), (OS2, fix_os2), (OS3, fix_os3)]:
        s, t = case.inputs()
        t2 = basic_tableau(s.shape, case.n)
        one = sorted((x.left.format(), x.coef) for x in fixer(s, t, 2, ON, case.n)
                     if x.left.shape == s.shape)
        two = sorted((x.left.format(), x.coef) for x in fixer(s, t2, 2, ON, case.n)
                     if x.left.shape == s.shape)
        assert one == two, case.kind


def test_fixes_raise_without_violation():
    # the protected tableau with columns (1, 2b, 2 | 2, 3) is standard on O(7)
    good = Tableau.from_columns(cols("1 2b 2", "2 3"))
    assert on_standard_report(good, 7).standard
    for j in (1, 2, 3):
        with pytest.raises(DomainError):
            fix_os1(good, good, j, ON, 7)
        with pytest.raises(DomainError):
            fix_os2(good, good, j, ON, 7)
        with pytest.raises(DomainError):
            fix_os3(good, good, j, ON, 7)


def test_fix_os3_prime_field():
    s, t = OS3.inputs()
    result = fix_os3(s, t, 2, ON, 6, GF(7))
    pts = [p.reduce_mod(GF(7)) for p in standard_points(6, 6, seed=2)]
    pts = [p for p in pts if p is not None]
    assert pts
    for pt in pts:
        assert eval_bideterminant(s, t, pt) == result.evaluate(pt)


def test_fix_gamma_weights_in_go_mode():
    s, t = OS1.inputs()
    result = fix_os1(s, t, 2, GO, 6)
    degrees = {2 * x.gamma_pow + x.left.size for x in result}
    assert degrees == {s.size}
    for seed in range(3):
        pt = random_go_point(6, 80 + seed, rational(seed + 2, 1))
        assert eval_bideterminant(s, t, pt) == result.evaluate(pt, pt.gamma_value)


# ---------------------------------------------------------------------------
# the full driver
# ---------------------------------------------------------------------------

def test_on_straighten_idempotent_on_standard():
    from obidet.tableaux import enumerate_on_standard
    tabs = list(enumerate_on_standard((2, 1), 4))
    s, t = tabs[0], tabs[-1]
    for mode in (ON, GO):
        out = on_straighten(s, t, mode, 4)
        assert len(out) == 1
        term = out.terms()[0]
        assert (term.coef, term.gamma_pow, term.left, term.right) == (1, 0, s, t)


def test_on_straighten_golden_cases_recurse_to_standard():
    for case in GOLDEN_CASES[1:]:
        s, t = case.inputs()
        out = on_straighten(s, t, ON, case.n)
        pts = standard_points(case.n, 10, seed=3)
        for pt in pts:
            assert eval_bideterminant(s, t, pt) == out.evaluate(pt)
        for term in out:
            assert on_standard_report(term.left, case.n).standard
            assert on_standard_report(term.right, case.n).standard


def test_on_straighten_column_condition_route():
    s = Tableau.parse("1b 1b; 1 1")
    t = Tableau.parse("1b 1b; 1 0")
    out = on_straighten(s, t, ON, 3)
    pts = standard_points(3, 10, seed=4)
    for pt in pts:
        assert eval_bideterminant(s, t, pt) == out.evaluate(pt)


def test_on_straighten_dyadic_coefficients():
    rng = random.Random(13)
    for _ in range(20):
        n = rng.choice([3, 4, 5, 6])
        letters = _letters(n)
        shapes = [sh for r in range(1, 5) for sh in partitions_of(r, max_rows=n)]
        shape = rng.choice(shapes)
        cc = conjugate(shape)
        s = Tableau.from_columns(
            [sorted(rng.sample(letters, k), key=lambda x: x.key) for k in cc])
        t = Tableau.from_columns(
            [sorted(rng.sample(letters, k), key=lambda x: x.key) for k in cc])
        out = on_straighten(s, t, ON, n)
        for term in out:
            assert is_dyadic(term.coef), (s.format(), t.format(), term.coef)


def test_on_straighten_dyadic_domain_mode():
    s, t = OS3.inputs()
    out = on_straighten(s, t, ON, 6, ZHALF)
    assert not out.is_zero()
    for term in out:
        assert is_dyadic(term.coef)
    pts = standard_points(6, 5, seed=7)
    for pt in pts:
        assert eval_bideterminant(s, t, pt) == out.evaluate(pt)


def test_on_straighten_trace():
    s, t = OS1.inputs()
    trace = []
    on_straighten(s, t, ON, 6, trace=trace)
    kinds = {entry[0] for entry in trace}
    assert kinds <= {"GL", "COLSUM", "OS1", "OS2", "OS3"}
    assert "OS1" in kinds


def test_on_straighten_rejects_bad_input():
    s = Tableau.parse("1b; 1; 2b; 2")
    with pytest.raises(DomainError):
        on_straighten(s, s, ON, 3)
    with pytest.raises(DomainError):
        on_straighten(Tableau.parse("3"), Tableau.parse("3"), ON, 4)
    with pytest.raises(DomainError):
        on_straighten(Tableau.parse("1"), Tableau.parse("1"), "XX", 4)


def test_on_straighten_size_five_terminates_and_verifies():
    rng = random.Random(59)
    for _ in range(5):
        n = rng.choice([5, 6])
        letters = _letters(n)
        shapes = [sh for sh in partitions_of(5, max_rows=n)]
        shape = rng.choice(shapes)
        cc = conjugate(shape)
        s = Tableau.from_columns(
            [sorted(rng.sample(letters, k), key=lambda x: x.key) for k in cc])
        t = Tableau.from_columns(
            [sorted(rng.sample(letters, k), key=lambda x: x.key) for k in cc])
        out = on_straighten(s, t, ON, n)
        pts = standard_points(n, 4, seed=61)
        for pt in pts:
            assert eval_bideterminant(s, t, pt) == out.evaluate(pt)


def test_on_straighten_deep_case_with_os3_wide_column():
    # three columns, pair row in columns (1, 3): exercises the (1, b) block
    s = Tableau.from_columns(cols("1 2b", "1 2b", "1 2"))
    t = Tableau.from_columns(cols("1b 1", "1b 2b", "1b 2"))
    rep = on_standard_report(s, 6)
    assert any(v.kind == "OS3" and v.column == 3 for v in rep.violations)
    out = on_straighten(s, t, ON, 6)
    pts = standard_points(6, 8, seed=5)
    for pt in pts:
        assert eval_bideterminant(s, t, pt) == out.evaluate(pt)
