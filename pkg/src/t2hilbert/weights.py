"""Weight matrices of 2-torus representations.

A weight matrix is a 2 x n integer matrix whose i-th column is the character
of the i-th coordinate. Columns are indexed from 0 throughout the library; the
command line front end prints them 1-based.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "WeightMatrix",
    "Kind",
    "Classification",
    "Faithfulness",
    "RowAdd",
    "RowSwap",
    "RowNegate",
    "ColumnFlip",
    "BasisChangeLog",
    "GenericizeResult",
    "ShellSupport",
    "WeightError",
    "RankDeficient",
    "parse_matrix",
    "minor_table",
    "faithfulness",
    "classify",
    "to_standard_form",
    "try_genericize",
    "shell_support",
    "replay",
    "pluecker_defect",
    "describe_log",
    "genericity_obstruction",
    "moves_for_functional",
]


class WeightError(ValueError):
    """Base class for malformed or unsuitable weight matrices."""


class RankDeficient(WeightError):
    pass


@dataclass(frozen=True)
class WeightMatrix:
    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self):
        top = tuple(int(x) for x in self.top)
        bottom = tuple(int(x) for x in self.bottom)
        if len(top) != len(bottom):
            raise WeightError("rows of a weight matrix must have equal length")
        if not top:
            raise WeightError("a weight matrix needs at least one column")
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "WeightMatrix":
        if len(rows) != 2:
            raise WeightError(f"expected 2 rows, got {len(rows)}")
        return cls(tuple(rows[0]), tuple(rows[1]))

    @classmethod
    def from_columns(cls, cols: Iterable[Sequence[int]]) -> "WeightMatrix":
        cols = list(cols)
        return cls(tuple(c[0] for c in cols), tuple(c[1] for c in cols))

    @property
    def n(self) -> int:
        return len(self.top)

    @property
    def rows(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.top, self.bottom)

    def column(self, i: int) -> tuple[int, int]:
        return (self.top[i], self.bottom[i])

    def columns(self) -> list[tuple[int, int]]:
        return list(zip(self.top, self.bottom))

    def minor(self, i: int, j: int) -> int:
        return self.top[i] * self.bottom[j] - self.bottom[i] * self.top[j]

    def minors(self) -> list[list[int]]:
        """Full antisymmetric n x n table of 2 x 2 minors."""
        n = self.n
        return [[self.minor(i, j) for j in range(n)] for i in range(n)]

    def drop_column(self, p: int) -> "WeightMatrix":
        keep = [i for i in range(self.n) if i != p]
        return WeightMatrix(tuple(self.top[i] for i in keep),
                            tuple(self.bottom[i] for i in keep))

    def permute(self, perm: Sequence[int]) -> "WeightMatrix":
        return WeightMatrix(tuple(self.top[i] for i in perm),
                            tuple(self.bottom[i] for i in perm))

    def has_zero_column(self) -> bool:
        return any(a == 0 and b == 0 for a, b in self.columns())

    def to_text(self) -> str:
        return "; ".join(" ".join(str(x) for x in row) for row in self.rows)

    def __str__(self) -> str:
        return f"[{list(self.top)}, {list(self.bottom)}]"


def parse_matrix(text: str) -> WeightMatrix:
    """Parse ``"1 2 3; 0 1 1"`` or ``"[[1,2,3],[0,1,1]]"``."""
    rows = re.sub(r"\]\s*,\s*\[", ";", text.strip()).strip("[]").split(";")
    parsed = []
    for r in rows:
        tokens = [tok for tok in re.split(r"[\s,\[\]]+", r) if tok]
        try:
            parsed.append([int(tok) for tok in tokens])
        except ValueError as exc:
            raise WeightError(f"cannot parse matrix row {r!r}") from exc
    parsed = [row for row in parsed if row]
    return WeightMatrix.from_rows(parsed)


def minor_table(A: WeightMatrix) -> dict[tuple[int, int], int]:
    """Minors d_ij for i < j.  Use ``A.minor(j, i)`` for the antisymmetric extension."""
    return {(i, j): A.minor(i, j) for i, j in itertools.combinations(range(A.n), 2)}


def pluecker_defect(A: WeightMatrix, i0: int, i1: int, i2: int, j: int) -> int:
    """Left-hand side of the quadratic Pluecker relation; always 0."""
    d = A.minor
    return d(i1, i2) * d(i0, j) - d(i0, i2) * d(i1, j) + d(i0, i1) * d(i2, j)


# ---------------------------------------------------------------- faithfulness

@dataclass(frozen=True)
class Faithfulness:
    rank: int
    gcd: int
    faithful: bool


def faithfulness(A: WeightMatrix) -> Faithfulness:
    g = 0
    for d in minor_table(A).values():
        g = gcd(g, d)
    if g:
        rank = 2
    elif any(A.top) or any(A.bottom):
        rank = 1
    else:
        rank = 0
    return Faithfulness(rank=rank, gcd=g, faithful=(rank == 2 and g == 1))


# -------------------------------------------------------------- classification

class Kind(enum.Enum):
    NOT_STANDARD_FORM = "NotStandardForm"
    DEGENERATE = "Degenerate"
    GENERIC = "Generic"
    COMPLETELY_GENERIC = "CompletelyGeneric"

    @property
    def is_generic(self) -> bool:
        return self in (Kind.GENERIC, Kind.COMPLETELY_GENERIC)


@dataclass(frozen=True)
class Classification:
    kind: Kind
    faithful: bool
    rank: int

    @property
    def is_generic(self) -> bool:
        return self.kind.is_generic


def _first_degenerate_triple(A: WeightMatrix):
    """Ordered triple (i, j, k) with d_ij + d_ik + d_jk == 0, or None."""
    d = A.minor
    for i, j, k in itertools.permutations(range(A.n), 3):
        if d(i, j) + d(i, k) + d(j, k) == 0:
            return (i, j, k)
    return None


def _is_completely_generic_tail(A: WeightMatrix) -> bool:
    d = A.minor
    return all(d(i, j) + d(j, k) + d(k, i) != 0
               for i, j, k in itertools.permutations(range(A.n), 3))


def classify(A: WeightMatrix) -> Classification:
    f = faithfulness(A)
    if any(a <= 0 for a in A.top):
        kind = Kind.NOT_STANDARD_FORM
    elif len(set(A.top)) < A.n or _first_degenerate_triple(A) is not None:
        kind = Kind.DEGENERATE
    elif _is_completely_generic_tail(A):
        kind = Kind.COMPLETELY_GENERIC
    else:
        kind = Kind.GENERIC
    return Classification(kind=kind, faithful=f.faithful, rank=f.rank)


# ------------------------------------------------------------- basis changes

@dataclass(frozen=True)
class RowAdd:
    """row 1 <- row 1 + k * row 2"""
    k: int

    def apply(self, A: WeightMatrix) -> WeightMatrix:
        return WeightMatrix(tuple(a + self.k * b for a, b in zip(A.top, A.bottom)), A.bottom)


@dataclass(frozen=True)
class RowSwap:
    def apply(self, A: WeightMatrix) -> WeightMatrix:
        return WeightMatrix(A.bottom, A.top)


@dataclass(frozen=True)
class RowNegate:
    row: int  # 0 or 1

    def apply(self, A: WeightMatrix) -> WeightMatrix:
        if self.row == 0:
            return WeightMatrix(tuple(-a for a in A.top), A.bottom)
        return WeightMatrix(A.top, tuple(-b for b in A.bottom))


@dataclass(frozen=True)
class ColumnFlip:
    columns: frozenset

    def apply(self, A: WeightMatrix) -> WeightMatrix:
        s = [(-1 if i in self.columns else 1) for i in range(A.n)]
        return WeightMatrix(tuple(x * a for x, a in zip(s, A.top)),
                            tuple(x * b for x, b in zip(s, A.bottom)))


BasisChangeLog = tuple  # of RowAdd | RowSwap | RowNegate | ColumnFlip


def replay(A: WeightMatrix, log: BasisChangeLog) -> WeightMatrix:
    for move in log:
        A = move.apply(A)
    return A


def _describe_move(move) -> str:
    if isinstance(move, RowAdd):
        return f"row1 += {move.k}*row2"
    if isinstance(move, RowSwap):
        return "swap rows"
    if isinstance(move, RowNegate):
        return f"negate row{move.row + 1}"
    return "flip columns " + ",".join(str(i + 1) for i in sorted(move.columns))


def describe_log(log: BasisChangeLog) -> list[str]:
    return [_describe_move(m) for m in log]


def _k_sequence(bound: int | None = None):
    yield 0
    k = 1
    while bound is None or k <= bound:
        yield k
        yield -k
        k += 1


def _flip_to_positive(A: WeightMatrix, log: list) -> WeightMatrix:
    neg = frozenset(i for i, a in enumerate(A.top) if a < 0)
    if neg:
        move = ColumnFlip(neg)
        log.append(move)
        A = move.apply(A)
    return A


def to_standard_form(A: WeightMatrix) -> tuple[WeightMatrix, BasisChangeLog]:
    """Bring A to standard form (first row strictly positive).

    Adds the first multiple k in 0, 1, -1, 2, -2, ... of row 2 to row 1 that
    clears every zero of the first row, then flips the negative columns.
    """
    if faithfulness(A).rank < 2:
        raise RankDeficient(f"{A} has rank < 2")
    if A.has_zero_column():
        raise WeightError(f"{A} has a zero column")
    log: list = []
    for k in _k_sequence():
        if all(a + k * b != 0 for a, b in zip(A.top, A.bottom)):
            break
    if k:
        log.append(RowAdd(k))
        A = RowAdd(k).apply(A)
    A = _flip_to_positive(A, log)
    return A, tuple(log)


# ---------------------------------------------------------------- genericize

@dataclass(frozen=True)
class GenericizeResult:
    """Outcome of :func:`try_genericize`.

    ``status`` is one of ``"generic"`` (input already generic), ``"found"``,
    ``"impossible"`` (obstruction proves no generic equivalent exists) or
    ``"not_found"`` (nothing within the search bound).
    """
    matrix: WeightMatrix | None
    log: BasisChangeLog
    status: str

    @property
    def ok(self) -> bool:
        return self.matrix is not None


def genericity_obstruction(A: WeightMatrix) -> str | None:
    """Reason why no column sign flips + row operations can make A generic.

    Both tests are invariant under invertible row maps and column sign flips:
    two columns equal up to sign always give equal first-row entries, and a
    column triple with two or more of the four signed sums
    +-d_ij +- d_ik +- d_jk vanishing has, whatever the signs, a collinear
    configuration forbidden by genericity.
    """
    cols = A.columns()
    for i, j in itertools.combinations(range(A.n), 2):
        if cols[i] == cols[j] or cols[i] == (-cols[j][0], -cols[j][1]):
            return f"columns {i + 1} and {j + 1} agree up to sign"
    d = A.minor
    for i, j, k in itertools.combinations(range(A.n), 3):
        a, b, c = d(i, j), d(i, k), d(j, k)
        zeros = sum(1 for s in (a + b + c, a + b - c, -a + b + c, a - b + c) if s == 0)
        if zeros >= 2:
            return f"columns {i + 1},{j + 1},{k + 1} are collinear under every sign choice"
    return None


def moves_for_functional(alpha: int, beta: int) -> BasisChangeLog:
    """Elementary row moves whose product has first row (alpha, beta).

    Reduces a unimodular completion U of (alpha, beta) to the identity with
    Euclid's algorithm and returns the inverse moves in reverse order.
    """
    if gcd(alpha, beta) != 1:
        raise WeightError(f"({alpha}, {beta}) is not primitive")
    # completion: alpha*y - beta*x = 1
    x, y = _bezout_completion(alpha, beta)
    U = [[alpha, beta], [x, y]]
    steps: list = []

    def do(move):
        steps.append(move)
        if isinstance(move, RowAdd):
            U[0] = [a + move.k * b for a, b in zip(U[0], U[1])]
        elif isinstance(move, RowSwap):
            U[0], U[1] = U[1], U[0]
        else:
            U[move.row] = [-a for a in U[move.row]]

    while U[1][0] != 0:
        q = U[0][0] // U[1][0]
        if q:
            do(RowAdd(-q))
        do(RowSwap())
    if U[0][0] < 0:
        do(RowNegate(0))
    if U[1][1] < 0:
        do(RowNegate(1))
    if U[0][1]:
        do(RowAdd(-U[0][1]))
    assert U == [[1, 0], [0, 1]]
    inverse = {RowAdd: lambda m: RowAdd(-m.k)}
    return tuple(inverse.get(type(m), lambda m: m)(m) for m in reversed(steps))


def _bezout_completion(alpha: int, beta: int) -> tuple[int, int]:
    old_r, r = alpha, beta
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    # alpha*old_s + beta*old_t = old_r = +-1
    sign = old_r
    return -old_t * sign, old_s * sign


def _functional_candidates(bound: int):
    """Primitive first-row functionals: the k-search ones first, then the rest
    ordered by size."""
    seen = set()
    for k in _k_sequence(bound):
        for f in ((1, k), (k, 1)):
            if f not in seen:
                seen.add(f)
                yield f
    rest = [(a, b) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)
            if gcd(a, b) == 1 and (a, b) not in seen and (-a, -b) not in seen]
    rest.sort(key=lambda f: (max(abs(f[0]), abs(f[1])), abs(f[0]) + abs(f[1]), -f[0], -f[1]))
    for f in rest:
        if (-f[0], -f[1]) not in seen:
            seen.add(f)
            yield f


def try_genericize(A: WeightMatrix, bound: int = 10) -> GenericizeResult:
    """Search for a generic standard-form matrix with the same cotangent lift.

    New first rows alpha*row1 + beta*row2 are tried for primitive
    (alpha, beta) with |alpha|, |beta| <= bound, starting with row1 + k*row2
    and row2 + k*row1; negative columns are flipped afterwards.
    """
    if classify(A).is_generic:
        return GenericizeResult(A, (), "generic")
    if genericity_obstruction(A) is not None:
        return GenericizeResult(None, (), "impossible")
    for alpha, beta in _functional_candidates(bound):
        if any(alpha * a + beta * b == 0 for a, b in zip(A.top, A.bottom)):
            continue
        log = list(moves_for_functional(alpha, beta))
        B = _flip_to_positive(replay(A, log), log)
        if classify(B).is_generic:
            return GenericizeResult(B, tuple(log), "found")
    return GenericizeResult(None, (), "not_found")


# -------------------------------------------------------------- shell support

@dataclass(frozen=True)
class ShellSupport:
    """Coordinates not vanishing identically on the shell.

    ``full`` is True iff every column is in the support, i.e. the moment map
    components generate the vanishing ideal of the shell.
    """
    indices: frozenset
    full: bool


def shell_support(A: WeightMatrix) -> ShellSupport:
    """Union of supports of the extreme rays of {r >= 0 : A r = 0}.

    Extreme rays of this cone have support of size at most rank + 1 <= 3, so
    enumerating 1-, 2- and 3-element column sets is exact.
    """
    n = A.n
    cols = A.columns()
    support: set[int] = set()
    for i, (a, b) in enumerate(cols):
        if a == 0 and b == 0:
            support.add(i)
    for i, j in itertools.combinations(range(n), 2):
        (a, b), (c, e) = cols[i], cols[j]
        if A.minor(i, j) == 0 and (a * c + b * e) < 0:
            support.update((i, j))
    d = A.minor
    for i, j, k in itertools.combinations(range(n), 3):
        # a_i d_jk + a_j d_ki + a_k d_ij = 0
        r = (d(j, k), d(k, i), d(i, j))
        if all(x > 0 for x in r) or all(x < 0 for x in r):
            support.update((i, j, k))
    return ShellSupport(frozenset(support), len(support) == n)
