import itertools
import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from t2hilbert.weights import (
    ColumnFlip,
    Kind,
    RankDeficient,
    RowAdd,
    RowNegate,
    RowSwap,
    WeightError,
    WeightMatrix,
    classify,
    describe_log,
    faithfulness,
    genericity_obstruction,
    minor_table,
    moves_for_functional,
    parse_matrix,
    pluecker_defect,
    replay,
    shell_support,
    to_standard_form,
    try_genericize,
)

M = parse_matrix

entries = st.integers(min_value=-6, max_value=6)


@st.composite
def matrices(draw, min_n=2, max_n=6):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    top = draw(st.lists(entries, min_size=n, max_size=n))
    bottom = draw(st.lists(entries, min_size=n, max_size=n))
    return WeightMatrix.from_rows([top, bottom])


def gcd_of_minors(A):
    g = 0
    for v in minor_table(A).values():
        g = gcd(g, v)
    return g


# ------------------------------------------------------------------ parsing

def test_parse_forms_agree():
    assert M("1 2 3; 0 1 1") == WeightMatrix.from_rows([[1, 2, 3], [0, 1, 1]])
    assert M("[[1,2,3],[0,1,1]]") == M("1 2 3; 0 1 1")
    assert WeightMatrix.from_columns([(1, 0), (2, 1)]) == M("1 2; 0 1")


def test_parse_rejects_ragged_rows():
    with pytest.raises(WeightError):
        M("1 2 3; 0 1")


def test_text_round_trip():
    A = M("2 1 4; 1 -1 1")
    assert M(A.to_text()) == A
    assert str(A) == "[[2, 1, 4], [1, -1, 1]]"


# ------------------------------------------------------------------ minors

def test_minor_table_degenerate_example():
    d = minor_table(M("2 1 4; 1 -1 1"))
    assert (d[0, 1], d[0, 2], d[1, 2]) == (-3, -2, 5)
    assert sum(d.values()) == 0


def test_minor_table_generic_partner():
    d = minor_table(M("4 1 6; 1 1 1"))
    assert (d[0, 1], d[0, 2], d[1, 2]) == (3, -2, -5)


def test_repeated_column_has_zero_minor():
    A = M("3 5 3; 2 -1 2")
    assert A.minor(0, 2) == 0


def test_minor_antisymmetry():
    A = M("1 2 3 4; 0 1 -2 5")
    for i, j in itertools.permutations(range(4), 2):
        assert A.minor(i, j) == -A.minor(j, i)


@given(matrices(min_n=4))
def test_pluecker_identity_on_all_quadruples(A):
    for quad in itertools.permutations(range(A.n), 4):
        assert pluecker_defect(A, *quad) == 0


# ------------------------------------------------------------------ faithfulness

@pytest.mark.parametrize("text, rank, g, ok", [
    ("4 1 6; 1 1 1", 2, 1, True),
    ("1 2; 2 4", 1, 0, False),
    ("2 0 2; 0 2 2", 2, 4, False),
])
def test_faithfulness_examples(text, rank, g, ok):
    f = faithfulness(M(text))
    assert (f.rank, f.gcd, f.faithful) == (rank, g, ok)


# ------------------------------------------------------------------ classification

@pytest.mark.parametrize("text, kind", [
    ("4 1 6; 1 1 1", Kind.GENERIC),
    ("2 1 4; 1 -1 1", Kind.DEGENERATE),
    ("-1 0 1; 0 -1 1", Kind.NOT_STANDARD_FORM),
    ("1 2 3; 0 1 1", Kind.COMPLETELY_GENERIC),
])
def test_classify_examples(text, kind):
    assert classify(M(text)).kind is kind


@given(matrices(min_n=3, max_n=5))
def test_classification_hierarchy(A):
    kind = classify(A).kind
    if kind is not Kind.NOT_STANDARD_FORM:
        assert all(a > 0 for a in A.top)
    if kind is Kind.COMPLETELY_GENERIC:
        assert kind.is_generic
    if kind is Kind.DEGENERATE:
        assert not kind.is_generic


# ------------------------------------------------------------------ standard form

def test_standard_form_example():
    B, log = to_standard_form(M("-1 0 1; 0 -1 1"))
    assert B == M("1 1 2; 0 1 1")
    assert log == (RowAdd(1), ColumnFlip(frozenset({0, 1})))
    assert describe_log(log)


@pytest.mark.parametrize("text", ["2 1 4; 1 -1 1", "1 2 3; 0 1 1"])
def test_standard_form_leaves_standard_input_alone(text):
    B, log = to_standard_form(M(text))
    assert B == M(text) and log == ()


def test_standard_form_rejects_bad_input():
    with pytest.raises(RankDeficient):
        to_standard_form(M("1 2; 2 4"))
    with pytest.raises(WeightError):
        to_standard_form(M("1 0 2; 1 0 3"))


@given(matrices(min_n=2, max_n=6))
def test_standard_form_replays_and_preserves_invariants(A):
    f = faithfulness(A)
    if f.rank < 2 or A.has_zero_column():
        return
    B, log = to_standard_form(A)
    assert replay(A, log) == B
    assert classify(B).kind is not Kind.NOT_STANDARD_FORM
    assert faithfulness(B).rank == 2
    assert abs(gcd_of_minors(B)) == abs(gcd_of_minors(A))


# ------------------------------------------------------------------ genericize

def test_genericize_degenerate_example():
    r = try_genericize(M("2 1 4; 1 -1 1"))
    assert r.status == "found"
    assert r.matrix == M("4 1 6; 1 1 1")
    assert replay(M("2 1 4; 1 -1 1"), r.log) == r.matrix


def test_genericize_impossible_example():
    r = try_genericize(M("1 1 1; 0 1 1"))
    assert r.status == "impossible" and r.matrix is None and not r.ok
    assert genericity_obstruction(M("1 1 1; 0 1 1"))


def test_genericize_generic_input_is_identity():
    A = M("1 2 3; 0 1 1")
    r = try_genericize(A)
    assert (r.matrix, r.log, r.status) == (A, (), "generic")


def test_genericize_needs_general_functional():
    A = M("1 3 5; 0 1 3")
    r = try_genericize(A)
    assert r.status == "found"
    assert classify(r.matrix).is_generic
    assert replay(A, r.log) == r.matrix


def test_genericize_small_bound_reports_not_found():
    assert try_genericize(M("1 3 5; 0 1 3"), bound=1).status == "not_found"


def test_moves_for_functional_first_row():
    rng = random.Random(7)
    for _ in range(500):
        a, b = rng.randint(-30, 30), rng.randint(-30, 30)
        if gcd(a, b) != 1:
            continue
        log = moves_for_functional(a, b)
        assert all(isinstance(m, (RowAdd, RowSwap, RowNegate)) for m in log)
        A = M("1 0 5; 0 1 -2")
        B = replay(A, log)
        assert B.top == (a, b, 5 * a - 2 * b)
        assert abs(B.minor(0, 1)) == 1


def test_moves_for_functional_rejects_imprimitive():
    with pytest.raises(WeightError):
        moves_for_functional(2, 4)


@settings(max_examples=60)
@given(matrices(min_n=3, max_n=4))
def test_genericize_results_replay(A):
    if faithfulness(A).rank < 2 or A.has_zero_column():
        return
    B, _ = to_standard_form(A)
    r = try_genericize(B, bound=4)
    if r.ok:
        assert replay(B, r.log) == r.matrix
        assert classify(r.matrix).is_generic
        assert faithfulness(r.matrix).gcd == faithfulness(B).gcd
    if r.status == "impossible":
        assert genericity_obstruction(B) is not None


def test_obstruction_is_sound_on_small_matrices():
    # every 3-column standard matrix with a proved obstruction has no generic
    # equivalent among a wide range of first-row functionals
    rng = random.Random(3)
    tried = 0
    while tried < 40:
        A = WeightMatrix.from_rows([[rng.randint(1, 4) for _ in range(3)],
                                    [rng.randint(-3, 3) for _ in range(3)]])
        if faithfulness(A).rank < 2 or genericity_obstruction(A) is None:
            continue
        tried += 1
        for a, b in itertools.product(range(-8, 9), repeat=2):
            if gcd(a, b) != 1:
                continue
            B = replay(A, moves_for_functional(a, b))
            if any(x == 0 for x in B.top):
                continue
            flip = frozenset(i for i, x in enumerate(B.top) if x < 0)
            assert not classify(ColumnFlip(flip).apply(B)).is_generic


# ------------------------------------------------------------------ shell support

def test_shell_support_examples():
    assert shell_support(M("-1 0 -1; 0 -1 -1")).indices == frozenset()
    s = shell_support(M("-1 0 1; 0 -1 1"))
    assert s.indices == frozenset({0, 1, 2}) and s.full
    assert shell_support(M("1 -1; 1 -1")).indices == frozenset({0, 1})


@given(matrices(min_n=2, max_n=6), st.randoms(use_true_random=False))
def test_shell_support_commutes_with_permutation(A, rnd):
    perm = list(range(A.n))
    rnd.shuffle(perm)
    moved = shell_support(A.permute(perm)).indices
    original = shell_support(A).indices
    assert moved == frozenset(k for k, p in enumerate(perm) if p in original)
