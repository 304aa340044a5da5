"""Closed formulas for the Laurent coefficients gamma_0 and gamma_2 at t = 1.

Terms whose denominator vanishes on A itself are evaluated through the column
scaling X = (u_1 a_1, ..., u_n a_n), under which c_pq = d_pq u_p u_q.  Such
terms are combined into a single fraction in u, the vanishing factors are
divided out exactly, and the result is evaluated at u = (1, ..., 1).
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .hilbert import NotFaithful
from .mpoly import MPoly
from .weights import WeightError, WeightMatrix, faithfulness, pluecker_defect

__all__ = [
    "NotStandardForm",
    "TooFewColumns",
    "KAPPA_VARIANTS",
    "DEFAULT_KAPPA",
    "FractionSum",
    "TermRecord",
    "GammaReport",
    "gamma0",
    "gamma2",
    "gamma_off",
    "gamma0_formula",
    "gamma2_first_sum",
    "kappa",
]


class NotStandardForm(WeightError):
    pass


class TooFewColumns(WeightError):
    pass


KAPPA_VARIANTS = ("theorem", "proof")
# Decided by comparing against the exact expansion on a matrix with g_p = 2.
DEFAULT_KAPPA = "proof"


def kappa(g: int, variant: str = DEFAULT_KAPPA) -> Fraction:
    if variant == "theorem":
        return Fraction(g - 1, 12)
    if variant == "proof":
        return Fraction(g * g - 1, 12)
    raise ValueError(f"unknown kappa variant {variant!r}")


# ---------------------------------------------------------------------------
# sums of fractions with keyed polynomial denominators
# ---------------------------------------------------------------------------

class FractionSum:
    """Accumulates terms ``num / prod(factors)`` over a common denominator.

    Every denominator factor is split as ``c * monomial * P`` with P primitive;
    P is the key used to form the least common denominator.
    """

    def __init__(self, nvars: int):
        self.nvars = nvars
        self._terms: list[tuple[MPoly, Fraction, tuple[int, ...], Counter]] = []
        self._keys: dict = {}

    def add(self, num: MPoly, factors: Sequence[MPoly]) -> None:
        scalar = Fraction(1)
        mono = [0] * self.nvars
        keys: Counter = Counter()
        for f in factors:
            c, m, P = f.split_content()
            scalar *= c
            mono = [a + b for a, b in zip(mono, m)]
            if len(P.terms) == 1:
                continue  # constant after removing content
            key = frozenset(P.terms.items())
            self._keys.setdefault(key, P)
            keys[key] += 1
        self._terms.append((num, scalar, tuple(mono), keys))

    def combine(self) -> tuple[MPoly, tuple[int, ...], Counter]:
        """Common numerator N, denominator monomial and key multiplicities."""
        lcm_keys: Counter = Counter()
        lcm_mono = [0] * self.nvars
        for _, _, mono, keys in self._terms:
            lcm_mono = [max(a, b) for a, b in zip(lcm_mono, mono)]
            for k, v in keys.items():
                lcm_keys[k] = max(lcm_keys[k], v)
        total = MPoly(self.nvars)
        for num, scalar, mono, keys in self._terms:
            piece = num * (Fraction(1) / scalar)
            piece = piece * MPoly.monomial(self.nvars, [a - b for a, b in zip(lcm_mono, mono)])
            for k in lcm_keys:
                extra = lcm_keys[k] - keys.get(k, 0)
                if extra:
                    piece = piece * self._keys[k] ** extra
            total = total + piece
        return total, tuple(lcm_mono), lcm_keys

    def key_poly(self, key) -> MPoly:
        return self._keys[key]

    def cancel(self) -> tuple[MPoly, tuple[int, ...], Counter]:
        """Combine, then divide out every denominator key that divides N."""
        N, mono, keys = self.combine()
        for k in sorted(keys, key=lambda k: sorted(k)):
            while keys[k]:
                q, r = N.divmod(self._keys[k])
                if not r.is_zero():
                    break
                N = q
                keys[k] -= 1
        return N, mono, +keys

    def limit_at_ones(self) -> tuple[Fraction, MPoly, int]:
        """Value at u = 1 after exact removal of the factors vanishing there.

        Returns (value, reduced numerator, number of vanishing factors removed).
        Raises ArithmeticError if a vanishing factor does not divide.
        """
        N, mono, keys = self.combine()
        removed = 0
        for k in sorted(keys, key=lambda k: sorted(k)):
            P = self._keys[k]
            if P.value_at_ones() != 0:
                continue
            for _ in range(keys[k]):
                N = N.exact_div(P)
                removed += 1
            keys[k] = 0
        den = Fraction(1)
        for k, v in keys.items():
            if v:
                den *= self._keys[k].value_at_ones() ** v
        if den == 0:
            raise ArithmeticError("denominator still vanishes at u = 1")
        return N.value_at_ones() / den, N, removed


# ---------------------------------------------------------------------------
# per-pair terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TermRecord:
    pair: tuple[int, int]
    singular: bool
    value: Fraction | None
    expression: str | None = None

    def to_json(self) -> dict:
        out = {"pair": [self.pair[0] + 1, self.pair[1] + 1], "singular": self.singular}
        if self.value is not None:
            out["value"] = str(self.value)
        if self.expression is not None:
            out["u_fraction"] = self.expression
        return out


@dataclass
class _Sum:
    value: Fraction
    terms: list[TermRecord]
    removed_factors: int


def _positive_pairs(A: WeightMatrix):
    return [(i, j) for i in range(A.n) for j in range(A.n) if i != j and A.minor(i, j) > 0]


def _c(A: WeightMatrix, p: int, q: int) -> MPoly:
    """c_pq = d_pq u_p u_q."""
    return MPoly.monomial(A.n, {p: 1, q: 1}, A.minor(p, q))


def _pair_sum(A: WeightMatrix, exponent: int,
              extra_int: Callable[[int, int], Fraction] | None,
              extra_poly: Callable[[int, int], MPoly] | None,
              scale: Fraction, symbolic_all: bool) -> _Sum:
    """sum over d_ij > 0 of scale * extra * d_ij^exponent / prod_k (d_ij - d_ik - d_jk)(d_ij + d_ik + d_jk)."""
    d = A.minor
    n = A.n
    regular = Fraction(0)
    records: list[TermRecord] = []
    pending: list[tuple[tuple[int, int], MPoly, list[MPoly]]] = []
    for i, j in _positive_pairs(A):
        ks = [k for k in range(n) if k not in (i, j)]
        vals = [(d(i, j) - d(i, k) - d(j, k), d(i, j) + d(i, k) + d(j, k)) for k in ks]
        singular = any(a == 0 or b == 0 for a, b in vals)
        if not singular and not symbolic_all:
            den = Fraction(1)
            for a, b in vals:
                den *= a * b
            v = scale * Fraction(d(i, j)) ** exponent / den
            if extra_int is not None:
                v *= extra_int(i, j)
            regular += v
            records.append(TermRecord((i, j), False, v))
            continue
        cij = _c(A, i, j)
        num = MPoly.const(n, scale)
        factors = []
        if exponent >= 0:
            num = num * cij ** exponent
        else:
            factors += [cij] * (-exponent)
        if extra_poly is not None:
            num = num * extra_poly(i, j)
        for k in ks:
            side = _c(A, i, k) + _c(A, j, k)
            factors += [cij - side, cij + side]
        pending.append(((i, j), num, factors))
        records.append(TermRecord((i, j), singular, None,
                                  f"({num}) / " + "".join(f"({f})" for f in factors)))
    removed = 0
    if pending:
        _assert_pluecker(A)
        acc = FractionSum(n)
        for _, num, factors in pending:
            acc.add(num, factors)
        value, _, removed = acc.limit_at_ones()
        regular += value
    return _Sum(regular, records, removed)


def _assert_pluecker(A: WeightMatrix) -> None:
    for i0, i1, i2, j in itertools.product(range(A.n), repeat=4):
        if pluecker_defect(A, i0, i1, i2, j) != 0:
            raise ArithmeticError("Pluecker relation failed")


def gamma0_formula(A: WeightMatrix, *, symbolic_all: bool = False) -> tuple[Fraction, _Sum]:
    """Leading-coefficient sum applied to any 2-row matrix (exponent 2n - 5).

    No faithfulness or standard-form checks; matrices of rank < 2 give 0.
    """
    s = _pair_sum(A, 2 * A.n - 5, None, None, Fraction(1), symbolic_all)
    return s.value, s


def gamma2_first_sum(A: WeightMatrix, *, symbolic_all: bool = False) -> tuple[Fraction, _Sum]:
    n = A.n
    d = A.minor

    def extra_int(i, j):
        return Fraction(sum((d(i, p) + d(j, p)) ** 2 for p in range(n) if p not in (i, j)))

    def extra_poly(i, j):
        out = MPoly(n)
        for p in range(n):
            if p not in (i, j):
                out = out + (_c(A, i, p) + _c(A, j, p)) ** 2
        return out

    s = _pair_sum(A, 2 * n - 7, extra_int, extra_poly, Fraction(-1, 12), symbolic_all)
    return s.value, s


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

@dataclass
class GammaReport:
    gamma0: Fraction | None = None
    gamma2: Fraction | None = None
    kappa_variant: str | None = None
    terms: list[TermRecord] = field(default_factory=list)
    gamma2_terms: list[TermRecord] = field(default_factory=list)
    removed_columns: list[tuple[int, int, Fraction]] = field(default_factory=list)
    first_sum: Fraction | None = None
    second_sum: Fraction | None = None
    cancelled_factors: int = 0

    @property
    def gamma3(self) -> Fraction | None:
        return self.gamma2

    def to_json(self) -> dict:
        out = {
            "gamma0": str(self.gamma0) if self.gamma0 is not None else None,
            "gamma2": str(self.gamma2) if self.gamma2 is not None else None,
            "gamma3": str(self.gamma3) if self.gamma3 is not None else None,
            "kappa_variant": self.kappa_variant,
            "terms": [t.to_json() for t in self.terms],
        }
        if self.gamma2 is not None:
            out["gamma2_terms"] = [t.to_json() for t in self.gamma2_terms]
            out["first_sum"] = str(self.first_sum)
            out["second_sum"] = str(self.second_sum)
            out["removed_columns"] = [
                {"column": p + 1, "gcd": g, "gamma0": str(v)} for p, g, v in self.removed_columns]
        return out


def _check_input(A: WeightMatrix) -> None:
    if A.n <= 2:
        raise TooFewColumns("Laurent coefficients need n > 2 columns")
    if any(a <= 0 for a in A.top):
        raise NotStandardForm(f"{A} is not in standard form")
    f = faithfulness(A)
    if not f.faithful:
        raise NotFaithful(f"{A} is not faithful (rank {f.rank}, gcd of minors {f.gcd})")


def gamma0(A: WeightMatrix, *, symbolic_all: bool = False) -> tuple[Fraction, GammaReport]:
    _check_input(A)
    value, s = gamma0_formula(A, symbolic_all=symbolic_all)
    return value, GammaReport(gamma0=value, terms=s.terms, cancelled_factors=s.removed_factors)


def gamma2(A: WeightMatrix, *, variant: str = DEFAULT_KAPPA,
           symbolic_all: bool = False) -> tuple[Fraction, GammaReport]:
    """gamma_2 (= gamma_3): a pair sum plus kappa(g_p) * gamma0_formula(A_p)."""
    _check_input(A)
    g0, s0 = gamma0_formula(A, symbolic_all=symbolic_all)
    first, s2 = gamma2_first_sum(A, symbolic_all=symbolic_all)
    removed = []
    second = Fraction(0)
    for p in range(A.n):
        Ap = A.drop_column(p)
        gp = faithfulness(Ap).gcd
        val = gamma0_formula(Ap)[0] if gp else Fraction(0)
        removed.append((p, gp, val))
        if gp:
            second += kappa(gp, variant) * val
    value = first + second
    report = GammaReport(gamma0=g0, gamma2=value, kappa_variant=variant, terms=s0.terms,
                         gamma2_terms=s2.terms, removed_columns=removed,
                         first_sum=first, second_sum=second,
                         cancelled_factors=s0.removed_factors + s2.removed_factors)
    return value, report


def gamma_off(A: WeightMatrix, *, variant: str = DEFAULT_KAPPA) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Off-shell coefficients from the on-shell ones."""
    g2, report = gamma2(A, variant=variant)
    g0 = report.gamma0
    return g0 / 4, g0 / 4, (3 * g0 + 4 * g2) / 16, (g0 + 4 * g2) / 8
