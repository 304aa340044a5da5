import random
from fractions import Fraction

import pytest

from t2hilbert import _upoly as up
from t2hilbert.catalog import FIVE_COLUMN_SERIES
from t2hilbert.hilbert import (
    NotFaithful,
    NotGenericizable,
    StructureViolation,
    analyze,
    hilbert_off,
    hilbert_on,
    pair_term,
    positive_pairs,
)
from t2hilbert.series import laurent_at_one, sum_to_series
from t2hilbert.weights import (
    ColumnFlip,
    RowAdd,
    RowNegate,
    RowSwap,
    WeightError,
    parse_matrix,
    replay,
)

M = parse_matrix


def test_flagship_series():
    H = hilbert_on(M("1 2 3 4 5; 0 1 2 2 1"))
    assert H == FIVE_COLUMN_SERIES
    assert H.numerator[:5] == (1, 0, 3, 3, 7) and H.numerator[23] == 496
    assert H.denominator == ((3, 1), (4, 1), (9, 1), (10, 1), (11, 1), (15, 1))


def test_degenerate_and_partner_agree():
    assert hilbert_on(M("2 1 4; 1 -1 1")) == hilbert_on(M("4 1 6; 1 1 1"))


def test_small_example():
    H = hilbert_on(M("1 2 3; 0 1 1"))
    assert H.numerator == (1, -1, 1)
    assert H.denominator == ((1, 1), (3, 1))


def test_off_shell_relation():
    for text in ("1 2 3; 0 1 1", "1 2 3 4 5; 0 1 2 2 1", "2 1 4; 1 -1 1"):
        on, off = hilbert_on(M(text)), hilbert_off(M(text))
        assert off.times(up.mul([1, 0, -1], [1, 0, -1])).coefficients(40) == on.coefficients(40)
        assert laurent_at_one(off, 0).pole_order == 2 * M(text).n - 2


def test_series_method_gives_same_series():
    for text in ("1 2 3; 0 1 1", "4 1 6; 1 1 1", "1 2 3 4; 0 1 -1 2"):
        A = M(text)
        assert hilbert_on(A, method="series") == hilbert_on(A)
        assert hilbert_on(A, reduced=False) == hilbert_on(A)


def test_pair_terms_sum_to_series():
    A = M("1 2 3; 0 1 1")
    pairs = positive_pairs(A)
    assert pairs == [(0, 1), (0, 2), (2, 1)]
    assert sum_to_series([pair_term(A, i, j) for i, j in pairs]) == hilbert_on(A)


def test_not_faithful():
    with pytest.raises(NotFaithful):
        hilbert_on(M("1 2; 2 4"))
    with pytest.raises(NotFaithful):
        hilbert_on(M("2 0 2; 0 2 2"))


def test_too_few_columns():
    with pytest.raises(WeightError):
        hilbert_on(M("1 0; 0 1"))


def test_not_genericizable():
    with pytest.raises(NotGenericizable) as info:
        hilbert_on(M("1 1 1; 0 1 1"))
    assert info.value.status == "impossible"
    with pytest.raises(NotGenericizable) as info:
        hilbert_on(M("1 3 5; 0 1 3"), genericize_bound=1)
    assert info.value.status == "not_found"


def test_battery_structure(battery):
    for A in battery:
        H = hilbert_on(A)
        e = laurent_at_one(H, 3)
        assert e.pole_order == 2 * A.n - 4
        assert e.coefficients[1] == 0
        assert e.coefficients[2] == e.coefficients[3]
        assert H.is_palindromic()
        assert sum(m for _, m in H.denominator) == e.pole_order
        assert _gorenstein_degree(H, e.pole_order) is not None
        coeffs = H.coefficients(60)
        assert coeffs[0] == 1
        assert all(isinstance(c, int) and c >= 0 for c in coeffs)


def _gorenstein_degree(H, dim):
    """a with H(1/t) = (-1)^dim t^a H(t), checked at two points, else None."""
    ratios = []
    for t in (Fraction(2), Fraction(3)):
        ratios.append((-1) ** dim * H.evaluate(1 / t) / H.evaluate(t))
    for a in range(-400, 401):
        if all(r == t ** a for r, t in zip(ratios, (2, 3))):
            return a
    return None


def _random_log(rng, n):
    log = []
    for _ in range(rng.randint(1, 5)):
        kind = rng.randint(0, 3)
        if kind == 0:
            log.append(RowAdd(rng.choice([-2, -1, 1, 2, 3])))
        elif kind == 1:
            log.append(RowSwap())
        elif kind == 2:
            log.append(RowNegate(rng.randint(0, 1)))
        else:
            log.append(ColumnFlip(frozenset(i for i in range(n) if rng.random() < 0.5)))
    return tuple(log)


def test_invariance_under_logged_basis_changes(battery):
    rng = random.Random(17)
    for A in battery[:12]:
        H = hilbert_on(A)
        for _ in range(3):
            B = replay(A, _random_log(rng, A.n))
            if B.has_zero_column():
                continue
            perm = list(range(A.n))
            rng.shuffle(perm)
            try:
                other = hilbert_on(B.permute(perm))
            except NotGenericizable:
                continue
            assert other == H


def test_analyze_small_example():
    r = analyze(M("1 2 3; 0 1 1"), M=3)
    assert r.pole_order == 2
    assert r.gammas.coefficients == (Fraction(1, 3), 0, Fraction(2, 9), Fraction(2, 9))
    assert all(ok for _, ok in r.checks)
    assert r.genericized_from is None


def test_analyze_flagship():
    r = analyze(M("1 2 3 4 5; 0 1 2 2 1"))
    assert r.pole_order == 6 and r.on_shell.is_palindromic()
    assert r.to_json()["pole_order"] == 6


def test_analyze_records_genericization():
    r = analyze(M("2 1 4; 1 -1 1"))
    assert r.genericized_from
    assert r.describes_M0 in (True, False)


def test_structure_violation_is_an_arithmetic_error():
    assert issubclass(StructureViolation, ArithmeticError)
