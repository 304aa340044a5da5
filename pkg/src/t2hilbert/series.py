"""Exact bivariate Laurent polynomials, factored rationals over binomials
(1 - s^p t^q), the sectioning operator U_d, and univariate Hilbert series.

Axis convention: exponent pairs are ``(e_s, e_t)``; ``axis`` is ``"s"`` or ``"t"``.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _upoly as up
from .weights import WeightMatrix

__all__ = [
    "BivariateLaurent",
    "FactoredRational",
    "UnivariateRational",
    "HilbertSeries",
    "LaurentExpansion",
    "BadPair",
    "NotNormalized",
    "NeedsReassembly",
    "phi_term",
    "normalize",
    "factor_out_axis_free",
    "u_op",
    "substitute_diagonal",
    "canonicalize",
    "sum_to_series",
    "laurent_at_one",
    "section_series",
]

_INT_LIMIT = 1 << 62


class BadPair(ValueError):
    pass


class NotNormalized(ValueError):
    pass


class NeedsReassembly(ValueError):
    pass


def _axis_index(axis: str) -> int:
    if axis not in ("s", "t"):
        raise ValueError(f"axis must be 's' or 't', got {axis!r}")
    return 0 if axis == "s" else 1


def _as_exact(c):
    if isinstance(c, (int, np.integer)):
        return int(c)
    f = Fraction(c)
    return f.numerator if f.denominator == 1 else f


# ---------------------------------------------------------------------------
# Bivariate Laurent polynomials
# ---------------------------------------------------------------------------

class BivariateLaurent:
    """Immutable Laurent polynomial in s, t with exact coefficients.

    Stored as a dense grid ``arr[i, j]`` = coefficient of ``s^(s0+i) t^(t0+j)``
    with zero border rows and columns trimmed away. Integer grids use int64
    while values stay far from overflow and switch to Python objects otherwise.
    """

    __slots__ = ("_s0", "_t0", "_arr", "_dict")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        terms = {k: _as_exact(v) for k, v in (terms or {}).items() if v != 0}
        if not terms:
            self._set(0, 0, np.zeros((0, 0), dtype=np.int64))
            return
        smin = min(k[0] for k in terms)
        tmin = min(k[1] for k in terms)
        smax = max(k[0] for k in terms)
        tmax = max(k[1] for k in terms)
        exact_ints = all(isinstance(v, int) for v in terms.values())
        small = exact_ints and max(abs(v) for v in terms.values()) < _INT_LIMIT
        arr = np.zeros((smax - smin + 1, tmax - tmin + 1), dtype=np.int64 if small else object)
        if not small:
            arr[...] = 0
        for (es, et), c in terms.items():
            arr[es - smin, et - tmin] = c
        self._set(smin, tmin, arr)

    def _set(self, s0, t0, arr):
        self._s0, self._t0, self._arr = s0, t0, arr
        self._dict = None

    @classmethod
    def _from_grid(cls, s0: int, t0: int, arr: np.ndarray) -> "BivariateLaurent":
        obj = cls.__new__(cls)
        nz = np.nonzero(arr)
        if len(nz[0]) == 0:
            obj._set(0, 0, np.zeros((0, 0), dtype=np.int64))
            return obj
        i0, i1 = nz[0].min(), nz[0].max() + 1
        j0, j1 = nz[1].min(), nz[1].max() + 1
        obj._set(s0 + int(i0), t0 + int(j0), arr[i0:i1, j0:j1])
        return obj

    @classmethod
    def one(cls) -> "BivariateLaurent":
        return cls.monomial(0, 0, 1)

    @classmethod
    def monomial(cls, es: int, et: int, c=1) -> "BivariateLaurent":
        return cls({(es, et): c})

    # -- views -------------------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, int], object]:
        if self._dict is None:
            d = {}
            for i, j in zip(*np.nonzero(self._arr)):
                d[(self._s0 + int(i), self._t0 + int(j))] = _as_exact(self._arr[i, j])
            self._dict = d
        return dict(self._dict)

    def grid(self) -> tuple[int, int, np.ndarray]:
        return self._s0, self._t0, self._arr

    def is_zero(self) -> bool:
        return self._arr.size == 0

    def __len__(self) -> int:
        return int(np.count_nonzero(self._arr))

    def min_degree(self, axis: str) -> int:
        self._require_nonzero()
        return self._s0 if _axis_index(axis) == 0 else self._t0

    def degree(self, axis: str) -> int:
        self._require_nonzero()
        k = _axis_index(axis)
        return (self._s0 if k == 0 else self._t0) + self._arr.shape[k] - 1

    def _require_nonzero(self):
        if self.is_zero():
            raise ValueError("degree of the zero polynomial")

    def is_integral(self) -> bool:
        return self._arr.dtype != object or all(
            isinstance(_as_exact(v), int) for v in self._arr.flat)

    def max_abs(self) -> int:
        if self.is_zero():
            return 0
        if self._arr.dtype != object:
            return int(np.abs(self._arr).max())
        return max(abs(v) for v in self._arr.flat)

    # -- arithmetic ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateLaurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "BivariateLaurent":
        return BivariateLaurent._from_grid(self._s0, self._t0, -self._arr)

    def __add__(self, other: "BivariateLaurent") -> "BivariateLaurent":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        s0 = min(self._s0, other._s0)
        t0 = min(self._t0, other._t0)
        s1 = max(self._s0 + self._arr.shape[0], other._s0 + other._arr.shape[0])
        t1 = max(self._t0 + self._arr.shape[1], other._t0 + other._arr.shape[1])
        dtype = _result_dtype(self.max_abs() + other.max_abs(), self._arr, other._arr)
        out = _zeros((s1 - s0, t1 - t0), dtype)
        for x in (self, other):
            i, j = x._s0 - s0, x._t0 - t0
            out[i:i + x._arr.shape[0], j:j + x._arr.shape[1]] += x._arr
        return BivariateLaurent._from_grid(s0, t0, out)

    def __sub__(self, other: "BivariateLaurent") -> "BivariateLaurent":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BivariateLaurent):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return BivariateLaurent()
        a, b = (self, other) if len(self) <= len(other) else (other, self)
        bound = a.max_abs() * b.max_abs() * min(len(a), len(b))
        dtype = _result_dtype(bound, a._arr, b._arr)
        out = _zeros((a._arr.shape[0] + b._arr.shape[0] - 1,
                      a._arr.shape[1] + b._arr.shape[1] - 1), dtype)
        barr = b._arr.astype(dtype) if dtype == object else b._arr
        for i, j in zip(*np.nonzero(a._arr)):
            c = a._arr[i, j]
            out[i:i + barr.shape[0], j:j + barr.shape[1]] += barr * (c if dtype == object else int(c))
        return BivariateLaurent._from_grid(a._s0 + b._s0, a._t0 + b._t0, out)

    __rmul__ = __mul__

    def scale(self, c) -> "BivariateLaurent":
        c = _as_exact(c)
        if c == 0:
            return BivariateLaurent()
        if isinstance(c, int) and self._arr.dtype != object and abs(c) * self.max_abs() < _INT_LIMIT:
            return BivariateLaurent._from_grid(self._s0, self._t0, self._arr * c)
        return BivariateLaurent._from_grid(self._s0, self._t0, self._arr.astype(object) * c)

    def shift(self, es: int, et: int) -> "BivariateLaurent":
        """Multiply by the monomial s^es t^et."""
        return BivariateLaurent._from_grid(self._s0 + es, self._t0 + et, self._arr)

    def swap(self) -> "BivariateLaurent":
        """Exchange the roles of s and t."""
        return BivariateLaurent._from_grid(self._t0, self._s0, self._arr.T.copy())

    def times_geometric_block(self, p: int, q: int, e: int) -> "BivariateLaurent":
        """Multiply by 1 + x + ... + x^(e-1) with x = s^p t^q."""
        if e == 1 or self.is_zero():
            return self
        dtype = _result_dtype(self.max_abs() * e, self._arr)
        rows, cols = self._arr.shape
        ps, qs = min(0, (e - 1) * p), min(0, (e - 1) * q)
        out = _zeros((rows + (e - 1) * abs(p), cols + (e - 1) * abs(q)), dtype)
        src = self._arr.astype(dtype) if dtype != self._arr.dtype else self._arr
        for k in range(e):
            i, j = k * p - ps, k * q - qs
            out[i:i + rows, j:j + cols] += src
        return BivariateLaurent._from_grid(self._s0 + ps, self._t0 + qs, out)

    def times_one_minus(self, p: int, q: int, power: int = 1) -> "BivariateLaurent":
        """Multiply by (1 - s^p t^q)^power."""
        out = self
        for _ in range(power):
            out = out - out.shift(p, q)
        return out

    def section(self, d: int, axis: str) -> "BivariateLaurent":
        """Keep exponents divisible by d on ``axis`` and divide them by d."""
        if d == 1 or self.is_zero():
            return self
        k = _axis_index(axis)
        origin = self._s0 if k == 0 else self._t0
        first = (-origin) % d
        if k == 0:
            arr = self._arr[first::d, :]
            return BivariateLaurent._from_grid((origin + first) // d, self._t0, arr)
        arr = self._arr[:, first::d]
        return BivariateLaurent._from_grid(self._s0, (origin + first) // d, arr)

    def truncate(self, axis: str, top: int) -> "BivariateLaurent":
        """Drop all terms of degree > top on ``axis``."""
        if self.is_zero():
            return self
        k = _axis_index(axis)
        origin = self._s0 if k == 0 else self._t0
        keep = top - origin + 1
        if keep <= 0:
            return BivariateLaurent()
        arr = self._arr[:keep, :] if k == 0 else self._arr[:, :keep]
        return BivariateLaurent._from_grid(self._s0, self._t0, arr)

    def diagonal(self) -> tuple[int, list]:
        """Coefficients after s = t, as (lowest exponent, dense list)."""
        if self.is_zero():
            return 0, []
        rows, cols = self._arr.shape
        dtype = _result_dtype(self.max_abs() * min(rows, cols), self._arr)
        out = _zeros(rows + cols - 1, dtype)
        src = self._arr.astype(dtype) if dtype != self._arr.dtype else self._arr
        for i in range(rows):
            out[i:i + cols] += src[i]
        return self._s0 + self._t0, [_as_exact(c) for c in out]

    def evaluate(self, s, t):
        s, t = Fraction(s), Fraction(t)
        return sum((c * s ** es * t ** et for (es, et), c in self.terms.items()), Fraction(0))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for (es, et), c in sorted(self.terms.items()):
            parts.append(f"{c}*s^{es}*t^{et}")
        return " + ".join(parts)


def _zeros(shape, dtype):
    out = np.zeros(shape, dtype=dtype)
    if dtype == object:
        out[...] = 0
    return out


def _result_dtype(bound: int, *arrays) -> type:
    if any(a.dtype == object for a in arrays) or bound >= _INT_LIMIT:
        return object
    return np.int64


# ---------------------------------------------------------------------------
# Factored rationals
# ---------------------------------------------------------------------------

Factor = tuple[int, int, int]


def _merge_factors(factors: Iterable[Factor]) -> tuple[Factor, ...]:
    acc: Counter = Counter()
    for p, q, m in factors:
        if p == 0 and q == 0:
            raise ValueError("factor (1 - s^0 t^0) vanishes identically")
        if m < 0:
            raise ValueError("factor multiplicity must be positive")
        acc[(p, q)] += m
    return tuple(sorted((p, q, m) for (p, q), m in acc.items() if m))


@dataclass(frozen=True)
class FactoredRational:
    """``scalar * numerator / prod (1 - s^p t^q)^mult`` (not necessarily reduced)."""
    scalar: Fraction
    numerator: BivariateLaurent
    factors: tuple[Factor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        object.__setattr__(self, "factors", _merge_factors(self.factors))

    @classmethod
    def build(cls, scalar=1, numerator=None, factors=()) -> "FactoredRational":
        return cls(Fraction(scalar), numerator if numerator is not None else BivariateLaurent.one(),
                   tuple(factors))

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        return FactoredRational(self.scalar * other.scalar, self.numerator * other.numerator,
                                self.factors + other.factors)

    def swap(self) -> "FactoredRational":
        return FactoredRational(self.scalar, self.numerator.swap(),
                                tuple((q, p, m) for p, q, m in self.factors))

    def denominator_degree(self, axis: str) -> int:
        k = _axis_index(axis)
        return sum(m * (p, q)[k] for p, q, m in self.factors)

    def evaluate(self, s, t) -> Fraction:
        s, t = Fraction(s), Fraction(t)
        den = Fraction(1)
        for p, q, m in self.factors:
            den *= (1 - s ** p * t ** q) ** m
        return self.scalar * self.numerator.evaluate(s, t) / den

    def expand(self, axis: str, top: int) -> BivariateLaurent:
        """Power-series expansion on ``axis`` truncated above degree ``top``.

        Every factor needs a strictly positive exponent on ``axis``.
        """
        k = _axis_index(axis)
        if any((p, q)[k] <= 0 for p, q, _ in self.factors):
            raise NotNormalized("expansion needs positive exponents on the axis")
        acc = self.numerator.truncate(axis, top)
        for p, q, m in self.factors:
            step = (p, q)[k]
            for _ in range(m):
                if acc.is_zero():
                    return acc
                low = acc.min_degree(axis)
                reps = max(0, (top - low) // step)
                acc = acc.times_geometric_block(p, q, reps + 1).truncate(axis, top)
        return acc.scale(self.scalar)

    def __repr__(self):
        den = "".join(f"(1 - s^{p} t^{q})" + (f"^{m}" if m > 1 else "") for p, q, m in self.factors)
        return f"{self.scalar} * [{self.numerator}] / [{den or '1'}]"


def phi_term(A: WeightMatrix, i: int, j: int) -> FactoredRational:
    """Per-pair seed rational for the on-shell series."""
    dij = A.minor(i, j)
    if dij <= 0:
        raise BadPair(f"d_{i + 1}{j + 1} = {dij} is not positive")
    factors = []
    for k in range(A.n):
        if k in (i, j):
            continue
        dik, djk = A.minor(i, k), A.minor(j, k)
        for p, q in ((dik, dij + djk), (-dik, dij - djk)):
            if p == 0 and q == 0:
                raise BadPair(f"pair ({i + 1},{j + 1}) meets a degenerate triple through column {k + 1}")
            factors.append((p, q, 1))
    return FactoredRational(Fraction(1, dij * dij), BivariateLaurent.one(), tuple(factors))


def normalize(F: FactoredRational, axis: str) -> FactoredRational:
    """Rewrite factors with a negative exponent on ``axis`` via
    1/(1 - x) = -x^-1 / (1 - x^-1)."""
    k = _axis_index(axis)
    num = F.numerator
    sign = 1
    factors = []
    for p, q, m in F.factors:
        if (p, q)[k] < 0:
            num = num.shift(-p * m, -q * m)
            sign *= (-1) ** m
            factors.append((-p, -q, m))
        else:
            factors.append((p, q, m))
    return FactoredRational(F.scalar * sign, num, tuple(factors))


def factor_out_axis_free(F: FactoredRational, axis: str) -> tuple[FactoredRational, FactoredRational]:
    k = _axis_index(axis)
    free = tuple(f for f in F.factors if (f[0], f[1])[k] == 0)
    rest = tuple(f for f in F.factors if (f[0], f[1])[k] != 0)
    return (FactoredRational(Fraction(1), BivariateLaurent.one(), free),
            FactoredRational(F.scalar, F.numerator, rest))


def _u_op_t(F: FactoredRational, d: int, method: str, reduced: bool) -> FactoredRational:
    """U_d on the t axis; factor exponents on t must be >= 0."""
    if any(q < 0 for _, q, _ in F.factors):
        raise NotNormalized("a denominator factor has a negative t exponent")
    if d == 1:
        return F
    full, red = [], []
    for p, q, m in F.factors:
        g = gcd(d, q)
        e = d // g
        full.append((p * e, q // g, m * g))
        red.append((p * e, q // g, m))
    out_factors = red if reduced else full

    if method == "multisection":
        # 1/(1 - x) = W_e(x) / (1 - x^e), and x^e is a series in t^d
        num = F.numerator
        for p, q, m in F.factors:
            e = d // gcd(d, q)
            for _ in range(m):
                num = num.times_geometric_block(p, q, e)
        num = num.section(d, "t")
        if not reduced:
            for (p, q, m), (_, _, mg) in zip(red, full):
                num = num.times_one_minus(p, q, mg - m)
        result = FactoredRational(F.scalar, num, tuple(out_factors))
        if not num.is_zero() and not F.numerator.is_zero():
            delta = F.numerator.degree("t") - F.denominator_degree("t")
            bound = delta // d
            got = num.degree("t") - result.denominator_degree("t")
            if got > bound:
                raise ArithmeticError(f"degree bound violated: {got} > {bound}")
        return result

    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    if any(q == 0 for _, q, _ in F.factors):
        raise NotNormalized("truncated expansion needs t-free factors split off first")
    if F.numerator.is_zero():
        return FactoredRational(F.scalar, F.numerator, tuple(out_factors))
    # the scalar stays outside the expansion
    plain = FactoredRational(Fraction(1), F.numerator, F.factors)
    delta = F.numerator.degree("t") - F.denominator_degree("t")
    q1 = FactoredRational(Fraction(1), BivariateLaurent.one(), tuple(out_factors))
    top = delta // d + q1.denominator_degree("t")
    expansion = plain.expand("t", d * top).section(d, "t")
    q1_poly = BivariateLaurent.one()
    for p, q, m in out_factors:
        q1_poly = q1_poly.times_one_minus(p, q, m)
    num = (expansion * q1_poly).truncate("t", top)
    return FactoredRational(F.scalar, num, tuple(out_factors))


def u_op(F: FactoredRational, d: int, axis: str, *, method: str = "multisection",
         reduced: bool = False) -> FactoredRational:
    """Apply U_d (keep every d-th coefficient) along ``axis``.

    The denominator follows (1 - s^p t^q) -> (1 - s^(pd/g) t^(q/g))^g with
    g = gcd(d, q) (axis t).  With ``reduced=True`` the power g is dropped and
    the numerator shrinks accordingly; the value is the same.  ``method``
    selects the exact multisection identity or the truncated-expansion route.
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    if _axis_index(axis) == 1:
        return _u_op_t(F, d, method, reduced)
    return _u_op_t(F.swap(), d, method, reduced).swap()


def section_series(expansion: BivariateLaurent, d: int, axis: str) -> BivariateLaurent:
    """U_d applied to an explicit (truncated) series."""
    return expansion.section(d, axis)


# ---------------------------------------------------------------------------
# Univariate rationals and Hilbert series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnivariateRational:
    """``scalar * t^offset * sum c_k t^k / prod (1 - t^e)^m``."""
    scalar: Fraction
    offset: int
    coeffs: tuple
    factors: tuple[tuple[int, int], ...]

    def evaluate(self, t) -> Fraction:
        t = Fraction(t)
        num = sum((c * t ** (self.offset + k) for k, c in enumerate(self.coeffs)), Fraction(0))
        den = Fraction(1)
        for e, m in self.factors:
            den *= (1 - t ** e) ** m
        return self.scalar * num / den


def substitute_diagonal(F: FactoredRational) -> UnivariateRational:
    for p, q, _ in F.factors:
        if p + q <= 0:
            raise NeedsReassembly(f"factor (1 - s^{p} t^{q}) has p + q = {p + q} <= 0")
    offset, coeffs = F.numerator.diagonal()
    acc: Counter = Counter()
    for p, q, m in F.factors:
        acc[p + q] += m
    return UnivariateRational(F.scalar, offset, tuple(coeffs), tuple(sorted(acc.items())))


@dataclass(frozen=True)
class HilbertSeries:
    """``N(t) / prod (1 - t^e)^m`` with integer N (denominator sorted by e)."""
    numerator: tuple
    denominator: tuple[tuple[int, int], ...]
    truncated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(_as_exact(c) for c in self.numerator))
        den = Counter()
        for e, m in self.denominator:
            if e < 1 or m < 0:
                raise ValueError("denominator factors need e >= 1, m >= 0")
            den[int(e)] += int(m)
        object.__setattr__(self, "denominator", tuple(sorted((e, m) for e, m in den.items() if m)))

    @property
    def denominator_degree(self) -> int:
        return sum(e * m for e, m in self.denominator)

    def coefficients(self, D: int) -> list:
        """Power-series coefficients of degrees 0..D."""
        out = list(self.numerator[:D + 1]) + [0] * max(0, D + 1 - len(self.numerator))
        for e, m in self.denominator:
            for _ in range(m):
                for k in range(e, D + 1):
                    out[k] += out[k - e]
        return out

    def evaluate(self, t) -> Fraction:
        t = Fraction(t)
        den = Fraction(1)
        for e, m in self.denominator:
            den *= (1 - t ** e) ** m
        return up.evaluate(list(self.numerator), t) / den

    def is_palindromic(self) -> bool:
        n = list(self.numerator)
        return n == n[::-1]

    def same_value(self, other: "HilbertSeries") -> bool:
        """Equality as rational functions, by cross-multiplication."""
        left = list(self.numerator)
        right = list(other.numerator)
        for e, m in other.denominator:
            left = up.mul(left, up.power(up.one_minus_t_pow(e), m))
        for e, m in self.denominator:
            right = up.mul(right, up.power(up.one_minus_t_pow(e), m))
        return up.trim(left) == up.trim(right)

    def times(self, poly: Sequence[int]) -> "HilbertSeries":
        return canonicalize(UnivariateRational(Fraction(1), 0, tuple(up.mul(list(self.numerator), list(poly))),
                                               self.denominator))

    def divided_by_one_minus(self, e: int, m: int) -> "HilbertSeries":
        den = dict(self.denominator)
        den[e] = den.get(e, 0) + m
        return canonicalize(UnivariateRational(Fraction(1), 0, self.numerator, tuple(den.items())))

    def to_json(self) -> dict:
        num = [c if isinstance(c, int) else str(c) for c in self.numerator]
        return {"numerator": num, "denominator": [[e, m] for e, m in self.denominator]}

    @classmethod
    def from_json(cls, doc) -> "HilbertSeries":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(tuple(_as_exact(Fraction(c)) for c in doc["numerator"]),
                   tuple((int(e), int(m)) for e, m in doc["denominator"]))

    def numerator_text(self, var: str = "t", latex: bool = False) -> str:
        parts = []
        for k, c in enumerate(self.numerator):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                mono = str(mag)
            else:
                power = var if k == 1 else (f"{var}^{{{k}}}" if latex else f"{var}^{k}")
                mono = power if mag == 1 else f"{mag}{'' if latex else '*'}{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mono in parts[1:]:
            text += f" {sign} {mono}"
        return text

    def denominator_text(self, latex: bool = False) -> str:
        out = []
        for e, m in self.denominator:
            base = f"(1 - t^{{{e}}})" if latex and e > 1 else (f"(1 - t^{e})" if e > 1 else "(1 - t)")
            if latex:
                base = base.replace("(", r"\left(").replace(")", r"\right)")
            if m > 1:
                base += f"^{{{m}}}" if latex else f"^{m}"
            out.append(base)
        return "".join(out) if latex else "*".join(out) or "1"

    def to_text(self) -> str:
        return f"({self.numerator_text()}) / ({self.denominator_text()})"

    def to_latex(self) -> str:
        return r"\frac{" + self.numerator_text(latex=True) + "}{" + (self.denominator_text(latex=True) or "1") + "}"


def _psi_multiplicities(factors: Iterable[tuple[int, int]]) -> Counter:
    out: Counter = Counter()
    for e, m in factors:
        for k in up.divisors(e):
            out[k] += m
    return out


def _canonical_from_psi(num: list, psi_mult: Counter, scale_den: int = 1) -> HilbertSeries:
    """Reduce ``num / (scale_den * prod psi_k^m)`` and rewrite the denominator
    as a product of (1 - t^e) by greedy trial division, e descending."""
    num = up.trim(list(num))
    psi_mult = Counter({k: m for k, m in psi_mult.items() if m})
    if num:
        for k in sorted(psi_mult):
            while psi_mult[k] and up.divisible_by_psi(num, k):
                num = up.exact_div(num, up.psi(k))
                psi_mult[k] -= 1
    den: Counter = Counter()
    remaining = +psi_mult
    for e in range(max(remaining, default=0), 0, -1):
        while remaining and all(remaining[k] > 0 for k in up.divisors(e)):
            for k in up.divisors(e):
                remaining[k] -= 1
            remaining = +remaining
            den[e] += 1
    # leftovers: cover by (1 - t^k), multiplying the numerator by missing pieces
    while remaining:
        k = max(remaining)
        for j in up.divisors(k):
            if remaining[j] > 0:
                remaining[j] -= 1
            else:
                num = up.mul(num, up.psi(j))
        remaining = +remaining
        den[k] += 1
    num = _merge_surplus_factors(num, den, psi_mult[1])
    if scale_den != 1:
        if any(c % scale_den for c in num):
            coeffs = tuple(Fraction(c, scale_den) for c in num)
        else:
            coeffs = tuple(c // scale_den for c in num)
    else:
        coeffs = tuple(num)
    return HilbertSeries(coeffs, tuple(den.items()))


def _divisible_by_one_minus(num: list, g: int) -> bool:
    """(1 - t^g) | num iff num vanishes modulo t^g - 1."""
    folded = [0] * g
    for i, c in enumerate(num):
        folded[i % g] += c
    return not any(folded)


def _merge_surplus_factors(num: list, den: Counter, pole_order: int) -> list:
    """Bring the factor count down to the pole order at t = 1 where possible.

    Every factor (1 - t^e) beyond the pole order puts a spare (1 - t) into the
    numerator.  Replacing (1 - t^a)(1 - t^b) by (1 - t^lcm(a, b)) frees one
    copy of (1 - t^gcd(a, b)), so the merge is allowed when the numerator is
    divisible by it; the admissible pair with the smallest lcm goes first.
    Modifies ``den`` in place and returns the new numerator.
    """
    while num and sum(den.values()) > pole_order:
        exps = sorted(den.elements())
        best = None
        for x in range(len(exps)):
            for y in range(x + 1, len(exps)):
                a, b = exps[x], exps[y]
                L = a * b // gcd(a, b)
                if best is not None and L >= best[2]:
                    continue
                if _divisible_by_one_minus(num, gcd(a, b)):
                    best = (a, b, L)
        if best is None:
            break
        a, b, L = best
        for j in up.divisors(L):
            if a % j and b % j:
                num = up.mul(num, up.psi(j))
        num = up.exact_div(num, up.one_minus_t_pow(gcd(a, b)))
        for e in (a, b):
            den[e] -= 1
            if not den[e]:
                del den[e]
        den[L] += 1
    return num


def _integer_parts(R: UnivariateRational) -> tuple[int, int, list]:
    """(scale numerator, scale denominator, integer coefficients) of R's numerator."""
    coeffs = [Fraction(c) for c in R.coeffs]
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    scalar = Fraction(R.scalar) / lcm
    return scalar.numerator, scalar.denominator, ints


def _shift_nonnegative(offset: int, coeffs: list) -> list:
    coeffs = list(coeffs)
    lead = next((k for k, c in enumerate(coeffs) if c), None)
    if lead is None:
        return []
    if offset + lead < 0:
        raise ValueError("rational function has a pole at t = 0; not a Hilbert series")
    if offset >= 0:
        return [0] * offset + coeffs
    return coeffs[-offset:]


def canonicalize(R: UnivariateRational) -> HilbertSeries:
    return sum_to_series([R])


def sum_to_series(terms: Sequence[UnivariateRational]) -> HilbertSeries:
    """Sum univariate rationals over the cyclotomic lcm of their denominators,
    in the given order, and return the canonical Hilbert series."""
    terms = list(terms)
    if not terms:
        return HilbertSeries((), ())
    mults = [_psi_multiplicities(R.factors) for R in terms]
    lcm: Counter = Counter()
    for m in mults:
        for k, v in m.items():
            lcm[k] = max(lcm[k], v)
    parts = [_integer_parts(R) for R in terms]
    scale_den = 1
    for _, sd, _ in parts:
        scale_den = scale_den * sd // gcd(scale_den, sd)
    lowest = min(R.offset for R in terms)
    total: list = []
    for R, m, (sn, sd, ints) in zip(terms, mults, parts):
        num = [c * sn * (scale_den // sd) for c in ints]
        num = [0] * (R.offset - lowest) + num
        for k in sorted(lcm):
            extra = lcm[k] - m[k]
            if extra:
                num = up.mul(num, up.power(up.psi(k), extra))
        total = up.add(total, num)
    total = _shift_nonnegative(lowest, total)
    return _canonical_from_psi(total, lcm, scale_den)


# ---------------------------------------------------------------------------
# Laurent expansion at t = 1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentExpansion:
    """Coefficients of sum_m gamma_m (1 - t)^(m - pole_order)."""
    pole_order: int
    coefficients: tuple

    def __getitem__(self, m: int) -> Fraction:
        return self.coefficients[m]

    def to_json(self) -> dict:
        return {"pole_order": self.pole_order, "gammas": [str(g) for g in self.coefficients]}


def _shifted_coeffs(poly: Sequence, count: int) -> list[Fraction]:
    """First ``count`` coefficients of poly(1 - w) in powers of w."""
    out = []
    for j in range(count):
        acc = 0
        for k in range(j, len(poly)):
            if poly[k]:
                acc += poly[k] * comb(k, j)
        out.append(Fraction((-1) ** j * acc))
    return out


def laurent_at_one(R: HilbertSeries, M: int) -> LaurentExpansion:
    """Expansion of R at t = 1 via t = 1 - w and exact power-series division."""
    poly = list(R.numerator)
    if not any(poly):
        return LaurentExpansion(0, tuple(Fraction(0) for _ in range(M + 1)))
    # order of vanishing of the numerator at t = 1
    v = 0
    probe = _shifted_coeffs(poly, len(poly))
    while probe[v] == 0:
        v += 1
    total_m = sum(m for _, m in R.denominator)
    need = M + 1
    num = _shifted_coeffs(poly, v + need)[v:]
    # 1 - (1 - w)^e = w * h_e(w)
    den = [Fraction(1)] + [Fraction(0)] * (need - 1)
    for e, m in R.denominator:
        h = [Fraction((-1) ** j * comb(e, j + 1)) for j in range(min(e, need))]
        h += [Fraction(0)] * (need - len(h))
        for _ in range(m):
            den = [sum(den[i] * h[k - i] for i in range(k + 1)) for k in range(need)]
    q = []
    for k in range(need):
        acc = num[k] - sum(q[i] * den[k - i] for i in range(k))
        q.append(acc / den[0])
    return LaurentExpansion(total_m - v, tuple(q))
