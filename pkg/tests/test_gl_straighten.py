import itertools
import random

import pytest

from obidet.tableaux import (
    DomainError,
    Letter,
    Tableau,
    _letters,
    basic_tableau,
    conjugate,
    enumerate_gl_standard,
    is_gl_standard,
    partitions_of,
    tableau_prec_cmp,
)
from obidet.polyring import bideterminant, rational
from obidet.gl_straighten import (
    BidetTerm,
    CapExceeded,
    Combination,
    gl_straighten,
    normalize_pair,
    one_switch_expand,
    single_term,
    sort_columns,
    two_column_straighten,
)
from obidet.golden import GOLDEN_CASES


def L(token):
    return Letter.parse(token)


def random_pair(n, max_size, rng):
    letters = _letters(n)
    shapes = [sh for r in range(1, max_size + 1) for sh in partitions_of(r, max_rows=n)]
    shape = rng.choice(shapes)
    cols = conjugate(shape)

    def make():
        return Tableau.from_columns(
            [sorted(rng.sample(letters, k), key=lambda x: x.key) for k in cols])

    return make(), make()


# ---------------------------------------------------------------------------
# combinations
# ---------------------------------------------------------------------------

def test_combination_merges_and_drops_zero():
    s, t = Tableau.parse("1b"), Tableau.parse("1")
    c = Combination([BidetTerm(1, 0, s, t), BidetTerm(2, 0, s, t)])
    assert c.coefficient(s, t) == 3
    assert (c - c.scale(1)).is_zero()


def test_certificate_roundtrip():
    s, t = Tableau.parse("1b 1; 2b"), Tableau.parse("1b 1; 2")
    c = Combination([
        BidetTerm(rational(-3, 2), 1, s, t),
        BidetTerm(rational(2), 0, t, s),
    ])
    again = Combination.parse_certificate(c.certificate())
    assert again == c


def test_certificate_sorted_by_shape_then_order():
    small = single_term(Tableau.parse("1b"), Tableau.parse("1"))
    big = single_term(Tableau.parse("1b 1"), Tableau.parse("1b 1"))
    lines = (big + small).certificate().splitlines()
    assert lines[0].endswith("1b\t1")


# ---------------------------------------------------------------------------
# column sorting
# ---------------------------------------------------------------------------

def test_sort_columns_already_sorted():
    s, t = Tableau.parse("1b; 1"), Tableau.parse("1; 2b")
    sign, s2, t2 = sort_columns(s, t)
    assert (sign, s2, t2) == (1, s, t)


def test_sort_columns_single_swap():
    s = Tableau.from_columns([[L("2"), L("1b")]])
    t = Tableau.from_columns([[L("1"), L("2")]])
    sign, s2, t2 = sort_columns(s, t)
    assert sign == -1
    assert s2.columns() == ((L("1b"), L("2")),)


def test_sort_columns_repeat_vanishes():
    s = Tableau.from_columns([[L("1"), L("1")]])
    t = Tableau.from_columns([[L("1"), L("2")]])
    assert sort_columns(s, t)[0] == 0


def test_normalize_pair_reorders_columns_by_length():
    sign, left, right = normalize_pair(
        [[L("1")], [L("1b"), L("2b")]],
        [[L("2")], [L("1"), L("2")]],
    )
    assert sign == 1
    assert left.shape == (2, 1)
    assert left.columns()[0] == (L("1b"), L("2b"))


# ---------------------------------------------------------------------------
# the two-column rewrite
# ---------------------------------------------------------------------------

GL_CASE = GOLDEN_CASES[0]


def test_two_column_golden_case():
    s, t = GL_CASE.inputs()
    row, head, drop = two_column_straighten(s, t)
    assert row == 2
    assert head + drop == GL_CASE.expected()


def test_two_column_symbolic_identity():
    s, t = GL_CASE.inputs()
    _, head, drop = two_column_straighten(s, t)
    assert (head + drop).symbolic_poly(6) == bideterminant(s, t)


def test_two_column_heads_rise_in_order():
    s, t = GL_CASE.inputs()
    _, head, _ = two_column_straighten(s, t)
    for term in head:
        assert term.left.shape == s.shape
        assert tableau_prec_cmp(s, term.left) == -1


def test_two_column_drop_vanishes_for_basic_right():
    s, _ = GL_CASE.inputs()
    t = basic_tableau(s.shape, 6)
    _, head, drop = two_column_straighten(s, t)
    assert drop.is_zero()
    assert not head.is_zero()


def test_two_column_head_independent_of_right():
    s, t = GL_CASE.inputs()
    t2 = basic_tableau(s.shape, 6)
    _, head1, _ = two_column_straighten(s, t)
    _, head2, _ = two_column_straighten(s, t2)
    profile1 = sorted((x.left.format(), x.coef) for x in head1)
    profile2 = sorted((x.left.format(), x.coef) for x in head2)
    assert profile1 == profile2


def test_two_column_requires_violation():
    s = Tableau.parse("1b 1; 1 2")
    with pytest.raises(DomainError):
        two_column_straighten(s, s)


def test_two_column_requires_sorted_columns():
    s = Tableau.from_columns([[L("2"), L("1")], [L("1b")]])
    t = Tableau.from_columns([[L("1b"), L("1")], [L("2")]])
    with pytest.raises(DomainError):
        two_column_straighten(s, t)


def test_two_column_random_symbolic():
    rng = random.Random(10)
    count = 0
    while count < 20:
        n = rng.choice([3, 4])
        letters = _letters(n)
        k = rng.randint(2, min(4, n))
        ell = rng.randint(1, k)
        s = Tableau.from_columns([
            sorted(rng.sample(letters, k), key=lambda x: x.key),
            sorted(rng.sample(letters, ell), key=lambda x: x.key)])
        t = Tableau.from_columns([
            sorted(rng.sample(letters, k), key=lambda x: x.key),
            sorted(rng.sample(letters, ell), key=lambda x: x.key)])
        if is_gl_standard(s, n):
            continue
        count += 1
        _, head, drop = two_column_straighten(s, t)
        assert (head + drop).symbolic_poly(n) == bideterminant(s, t), (s, t)


# ---------------------------------------------------------------------------
# full straightening
# ---------------------------------------------------------------------------

def test_gl_straighten_standard_input_is_fixed_point():
    s = Tableau.parse("1b 1; 1")
    out = gl_straighten(s, s, 4)
    assert out == single_term(s, s)


def test_gl_straighten_golden_case_recursed():
    s, t = GL_CASE.inputs()
    out = gl_straighten(s, t, 6)
    assert out.symbolic_poly(6) == bideterminant(s, t)
    for term in out:
        assert is_gl_standard(term.left, 6)
        assert is_gl_standard(term.right, 6)


def test_gl_straighten_random_symbolic_identity():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.choice([3, 4])
        s, t = random_pair(n, 5, rng)
        out = gl_straighten(s, t, n)
        assert out.symbolic_poly(n) == bideterminant(s, t), (s.format(), t.format())
        for term in out:
            assert is_gl_standard(term.left, n)
            assert is_gl_standard(term.right, n)
            assert int(term.coef) == term.coef  # integral after merging


def test_gl_straighten_rejects_too_many_rows():
    col = Tableau.from_columns([[L("1b"), L("1"), L("2b"), L("2")]])
    with pytest.raises(DomainError):
        gl_straighten(col, col, 3)


def test_gl_straighten_rejects_foreign_letters():
    s = Tableau.parse("2")
    with pytest.raises(DomainError):
        gl_straighten(s, s, 3)


def test_gl_straighten_cap():
    s, t = GL_CASE.inputs()
    with pytest.raises(CapExceeded):
        gl_straighten(s, t, 6, max_terms=1)


def test_gl_straighten_fuel_is_ample_for_desk_sizes():
    rng = random.Random(12)
    for _ in range(10):
        n = rng.choice([5, 6])
        s, t = random_pair(n, 6, rng)
        gl_straighten(s, t, n)  # must not raise


# ---------------------------------------------------------------------------
# the one-switch expansion
# ---------------------------------------------------------------------------

def test_one_switch_matches_direct_difference():
    s = Tableau.parse("1 1; 2b 2; 3")  # GL-standard, pair (2b, 2) in row 2
    t = Tableau.parse("1b 1; 2b 2; 3")
    out = one_switch_expand(s, t, 2)
    star = Tableau.parse("1 1; 2 2b; 3")
    expected = gl_straighten(star, t, 6) - gl_straighten(s, t, 6)
    # both sides straighten to the same polynomial
    assert out.symbolic_poly(6) == expected.symbolic_poly(6)
    for term in out:
        if term.left.shape == s.shape:
            assert tableau_prec_cmp(star, term.left) == -1


def test_one_switch_drop_vanishes_for_basic_right():
    s = Tableau.parse("1 1; 2b 2; 3")
    t = basic_tableau(s.shape, 6)
    out = one_switch_expand(s, t, 2)
    for term in out:
        assert term.left.shape == s.shape


def test_one_switch_independent_of_right():
    s = Tableau.parse("1 1; 2b 2; 3")
    t1 = Tableau.parse("1b 1; 2b 2; 3")
    t2 = basic_tableau(s.shape, 6)
    heads1 = sorted((x.left.format(), x.coef) for x in one_switch_expand(s, t1, 2)
                    if x.left.shape == s.shape)
    heads2 = sorted((x.left.format(), x.coef) for x in one_switch_expand(s, t2, 2)
                    if x.left.shape == s.shape)
    assert heads1 == heads2


def test_one_switch_requires_pair_row():
    s = Tableau.parse("1b 1; 2b 0")
    with pytest.raises(DomainError):
        one_switch_expand(s, s, 2)  # row (2b, 0) is not a bar pair
    with pytest.raises(DomainError):
        one_switch_expand(Tableau.parse("1 1b"), Tableau.parse("1 1b"), 1)


# ---------------------------------------------------------------------------
# the basis count for a two-letter alphabet
# ---------------------------------------------------------------------------

def test_gl_standard_pair_count_degree_two():
    pairs = 0
    by_shape = {}
    for shape in partitions_of(2):
        tabs = list(enumerate_gl_standard(shape, 2))
        by_shape[shape] = len(tabs)
        pairs += len(tabs) ** 2
    assert by_shape[(2,)] == 3 and by_shape[(1, 1)] == 1
    assert pairs == 10  # the dimension of degree-2 polynomials in 4 variables
