import itertools
from fractions import Fraction

import pytest

from t2hilbert.gammas import (
    DEFAULT_KAPPA,
    FractionSum,
    NotStandardForm,
    TooFewColumns,
    gamma0,
    gamma2,
    gamma_off,
    kappa,
)
from t2hilbert.hilbert import NotFaithful, hilbert_off, hilbert_on
from t2hilbert.mpoly import MPoly
from t2hilbert.series import laurent_at_one
from t2hilbert.weights import ColumnFlip, RowAdd, WeightMatrix, classify, parse_matrix

M = parse_matrix


def test_gamma0_small_example():
    value, report = gamma0(M("1 2 3; 0 1 1"))
    assert value == Fraction(1, 3)
    by_pair = {t.pair: t.value for t in report.terms}
    assert by_pair == {(0, 1): 1, (0, 2): Fraction(-1, 3), (2, 1): Fraction(-1, 3)}


def test_gamma0_degenerate_matches_generic_partner():
    value, report = gamma0(M("2 1 4; 1 -1 1"))
    expected = laurent_at_one(hilbert_on(M("4 1 6; 1 1 1")), 0).coefficients[0]
    assert value == expected == Fraction(1, 10)
    assert any(t.singular for t in report.terms)
    assert report.cancelled_factors > 0


def test_gamma0_degenerate_wide_search_matrix():
    value, _ = gamma0(M("1 3 5; 0 1 3"))
    assert value == Fraction(1, 8)
    assert laurent_at_one(hilbert_on(M("1 3 5; 0 1 3")), 0).coefficients[0] == value


def test_gamma0_never_generic_class():
    assert gamma0(M("1 1 1; 0 1 1"))[0] == Fraction(1, 2)


def test_gamma2_small_example():
    value, report = gamma2(M("1 2 3; 0 1 1"))
    assert value == Fraction(2, 9)
    assert sorted(t.value for t in report.gamma2_terms) == [0, Fraction(1, 9), Fraction(1, 9)]
    assert report.second_sum == 0
    assert report.gamma3 == value


def test_kappa_values():
    assert kappa(1, "theorem") == kappa(1, "proof") == 0
    assert kappa(2, "theorem") == Fraction(1, 12)
    assert kappa(2, "proof") == Fraction(1, 4)
    with pytest.raises(ValueError):
        kappa(2, "other")


def test_kappa_default_is_pinned_to_proof_variant():
    A = M("1 3 4; 0 1 2")
    exact = laurent_at_one(hilbert_on(A), 2).coefficients[2]
    proof, rp = gamma2(A, variant="proof")
    theorem, rt = gamma2(A, variant="theorem")
    assert rp.first_sum == Fraction(3, 20)
    assert [v for _, g, v in rp.removed_columns if g == 2] == [Fraction(1, 2)] * 2
    assert (rp.second_sum, rt.second_sum) == (Fraction(1, 4), Fraction(1, 12))
    assert proof == exact == Fraction(2, 5)
    assert theorem != exact
    assert DEFAULT_KAPPA == "proof"


def test_all_unit_gcds_give_zero_second_sum():
    for text in ("1 2 3; 0 1 1", "4 1 6; 1 1 1", "1 2 3 4 5; 0 1 2 2 1"):
        _, r = gamma2(M(text))
        if all(g == 1 for _, g, _ in r.removed_columns):
            assert r.second_sum == 0


def test_gamma_off_example():
    assert gamma_off(M("1 2 3; 0 1 1")) == (
        Fraction(1, 12), Fraction(1, 12), Fraction(17, 144), Fraction(11, 72))


@pytest.mark.parametrize("text", ["1 2 3; 0 1 1", "2 1 4; 1 -1 1", "1 2 3 4; 0 1 -1 2"])
def test_gamma_off_matches_off_shell_expansion(text):
    A = M(text)
    e = laurent_at_one(hilbert_off(A), 3)
    assert e.pole_order == 2 * A.n - 2
    assert tuple(e.coefficients) == gamma_off(A)


def test_input_checks():
    with pytest.raises(TooFewColumns):
        gamma0(M("1 2; 0 1"))
    with pytest.raises(NotStandardForm):
        gamma0(M("-1 0 1; 0 -1 1"))
    with pytest.raises(NotFaithful):
        gamma0(M("2 2 4; 0 2 2"))


def test_flagship_values():
    A = M("1 2 3 4 5; 0 1 2 2 1")
    assert gamma0(A)[0] == Fraction(1471, 29700)
    assert gamma2(A)[0] == Fraction(7709, 356400)


def test_symbolic_path_agrees_on_generic_battery(battery):
    for A in battery[:12]:
        assert gamma0(A, symbolic_all=True)[0] == gamma0(A)[0]
        assert gamma2(A, symbolic_all=True)[0] == gamma2(A)[0]


def test_formulas_equal_expansion_on_battery(battery):
    for A in battery:
        e = laurent_at_one(hilbert_on(A), 2).coefficients
        assert gamma0(A)[0] == e[0]
        assert gamma2(A)[0] == e[2]


def test_invariance_under_permutation_and_basis_change(battery):
    for A in battery[:10]:
        g0, g2 = gamma0(A)[0], gamma2(A)[0]
        for perm in itertools.islice(itertools.permutations(range(A.n)), 1, 4):
            B = A.permute(perm)
            assert (gamma0(B)[0], gamma2(B)[0]) == (g0, g2)
        # adding a multiple of the first row to the second keeps standard form
        B = WeightMatrix.from_rows([A.top, [b + 3 * a for a, b in zip(A.top, A.bottom)]])
        assert (gamma0(B)[0], gamma2(B)[0]) == (g0, g2)
        # row1 += k * row2 followed by sign flips, when the result is standard
        for k in (1, -1, 2):
            C = RowAdd(k).apply(A)
            if all(x != 0 for x in C.top):
                C = ColumnFlip(frozenset(i for i, x in enumerate(C.top) if x < 0)).apply(C)
                assert (gamma0(C)[0], gamma2(C)[0]) == (g0, g2)


def _c(idx, i, j):
    return MPoly.monomial(3, {idx[(i, j)]: 1}) if i < j else MPoly.monomial(3, {idx[(j, i)]: 1}, -1)


@pytest.mark.parametrize("text", ["1 2 3; 0 1 1", "4 1 6; 1 1 1", "1 3 4; 0 1 2", "2 3 1; -1 2 5"])
def test_three_column_combined_numerator_is_constant(text):
    # independent variables c_12, c_13, c_23, no relation imposed
    A = M(text)
    assert classify(A).is_generic
    idx = {(0, 1): 0, (0, 2): 1, (1, 2): 2}
    acc = FractionSum(3)
    for i, j in itertools.permutations(range(3), 2):
        if A.minor(i, j) > 0:
            k = 3 - i - j
            cij, cik, cjk = _c(idx, i, j), _c(idx, i, k), _c(idx, j, k)
            acc.add(cij, [cij - cik - cjk, cij + cik + cjk])
    numerator, monomial, keys = acc.cancel()
    assert numerator.terms == {(0, 0, 0): 1}
    assert monomial == (0, 0, 0)
    remaining = [(acc.key_poly(k), v) for k, v in keys.items()]
    assert len(remaining) == 1 and remaining[0][1] == 1


def test_fraction_sum_refuses_nondividing_factor():
    acc = FractionSum(2)
    u, v = MPoly.monomial(2, {0: 1}), MPoly.monomial(2, {1: 1})
    acc.add(MPoly.const(2, 1), [u - v])
    with pytest.raises(ArithmeticError):
        acc.limit_at_ones()


def test_report_json_shape():
    doc = gamma2(M("2 1 4; 1 -1 1"))[1].to_json()
    assert set(doc) >= {"gamma0", "gamma2", "kappa_variant", "terms"}
    assert doc["gamma0"] == "1/10" and doc["gamma2"] == "33/40"
