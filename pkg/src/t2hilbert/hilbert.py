"""On-shell and off-shell Hilbert series of 2-torus symplectic quotients."""
from __future__ import annotations

from dataclasses import dataclass

from .series import (
    FactoredRational,
    HilbertSeries,
    LaurentExpansion,
    UnivariateRational,
    factor_out_axis_free,
    laurent_at_one,
    normalize,
    phi_term,
    substitute_diagonal,
    sum_to_series,
    u_op,
)
from .weights import (
    BasisChangeLog,
    WeightMatrix,
    WeightError,
    classify,
    faithfulness,
    shell_support,
    to_standard_form,
    try_genericize,
)

__all__ = [
    "NotFaithful",
    "NotGenericizable",
    "StructureViolation",
    "HilbertReport",
    "positive_pairs",
    "pair_term",
    "hilbert_on",
    "hilbert_off",
    "analyze",
]


class NotFaithful(WeightError):
    pass


class NotGenericizable(WeightError):
    """Degenerate input for which no generic equivalent was found."""

    def __init__(self, message: str, status: str):
        super().__init__(message)
        self.status = status


class StructureViolation(ArithmeticError):
    """A structural identity of the Laurent expansion failed."""


def positive_pairs(A: WeightMatrix) -> list[tuple[int, int]]:
    """Ordered pairs (i, j) with d_ij > 0, sorted."""
    return [(i, j) for i in range(A.n) for j in range(A.n) if i != j and A.minor(i, j) > 0]


def _flip_for_diagonal(F: FactoredRational) -> FactoredRational:
    """Invert factors whose exponents sum to a negative number."""
    flips = tuple((p, q, m) for p, q, m in F.factors if p + q < 0)
    if not flips:
        return F
    num = F.numerator
    sign = 1
    for p, q, m in flips:
        num = num.shift(-p * m, -q * m)
        sign *= (-1) ** m
    factors = tuple((-p, -q, m) if p + q < 0 else (p, q, m) for p, q, m in F.factors)
    return FactoredRational(F.scalar * sign, num, factors)


def pair_term(A: WeightMatrix, i: int, j: int, *, method: str = "multisection",
              reduced: bool = True) -> UnivariateRational:
    """Contribution of the pair (i, j) to the on-shell series, after s = t.

    The seed term from :func:`phi_term` carries 1/d^2, and each U_d already
    averages over d roots of unity, so the seed is rescaled by d^2 here.
    """
    d = A.minor(i, j)
    seed = phi_term(A, i, j)
    F = FactoredRational(seed.scalar * d * d, seed.numerator, seed.factors)
    for axis in ("t", "s"):
        F = normalize(F, axis)
        free, rest = factor_out_axis_free(F, axis)
        F = free * u_op(rest, d, axis, method=method, reduced=reduced)
    return substitute_diagonal(_flip_for_diagonal(F))


def _generic_representative(A: WeightMatrix, bound: int) -> tuple[WeightMatrix, BasisChangeLog | None]:
    f = faithfulness(A)
    if not f.faithful:
        raise NotFaithful(f"{A} is not faithful (rank {f.rank}, gcd of minors {f.gcd})")
    if A.n <= 2:
        raise WeightError("the on-shell series needs at least 3 columns")
    B, log = to_standard_form(A)
    if classify(B).is_generic:
        return B, (log or None)
    found = try_genericize(B, bound)
    if not found.ok:
        raise NotGenericizable(f"{A} has no generic equivalent ({found.status})", found.status)
    return found.matrix, log + found.log


def hilbert_on(A: WeightMatrix, *, genericize_bound: int = 10, method: str = "multisection",
               reduced: bool = True) -> HilbertSeries:
    B, _ = _generic_representative(A, genericize_bound)
    terms = [pair_term(B, i, j, method=method, reduced=reduced) for i, j in positive_pairs(B)]
    return sum_to_series(terms)


def on_to_off(H: HilbertSeries) -> HilbertSeries:
    return H.divided_by_one_minus(2, 2)


def hilbert_off(A: WeightMatrix, **kwargs) -> HilbertSeries:
    return on_to_off(hilbert_on(A, **kwargs))


@dataclass(frozen=True)
class HilbertReport:
    on_shell: HilbertSeries
    off_shell: HilbertSeries
    pole_order: int
    gammas: LaurentExpansion
    genericized_from: BasisChangeLog | None
    describes_M0: bool
    checks: tuple[tuple[str, bool], ...] = ()

    def to_json(self) -> dict:
        return {
            "on_shell": self.on_shell.to_json(),
            "off_shell": self.off_shell.to_json(),
            "pole_order": self.pole_order,
            "gammas": [str(g) for g in self.gammas.coefficients],
            "describes_M0": self.describes_M0,
            "checks": {name: ok for name, ok in self.checks},
        }


def structural_checks(A: WeightMatrix, on: HilbertSeries, gammas: LaurentExpansion) -> list[tuple[str, bool]]:
    g = gammas.coefficients
    checks = [
        ("pole order 2n-4", gammas.pole_order == 2 * A.n - 4),
        ("constant term 1", on.coefficients(0)[0] == 1),
        ("numerator palindromic", on.is_palindromic()),
    ]
    if len(g) > 1:
        checks.append(("gamma1 = 0", g[1] == 0))
    if len(g) > 3:
        checks.append(("gamma2 = gamma3", g[2] == g[3]))
    return checks


def analyze(A: WeightMatrix, M: int = 3, *, genericize_bound: int = 10,
            strict: bool = True) -> HilbertReport:
    """Series, Laurent data at t = 1, and structural checks for A.

    With ``strict`` a failed check raises :class:`StructureViolation`.
    """
    B, log = _generic_representative(A, genericize_bound)
    terms = [pair_term(B, i, j) for i, j in positive_pairs(B)]
    on = sum_to_series(terms)
    off = on_to_off(on)
    gammas = laurent_at_one(on, max(M, 3))
    checks = structural_checks(A, on, gammas)
    if strict:
        bad = [name for name, ok in checks if not ok]
        if bad:
            raise StructureViolation(f"{A}: failed {', '.join(bad)}")
    trimmed = LaurentExpansion(gammas.pole_order, gammas.coefficients[:M + 1])
    return HilbertReport(on, off, gammas.pole_order, trimmed, log,
                         shell_support(A).full, tuple(checks))
