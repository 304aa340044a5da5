"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

__all__ = ["MPoly"]

Exp = tuple[int, ...]


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class MPoly:
    """Immutable polynomial in ``nvars`` variables: dict exponent-tuple -> coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exp, object] | None = None):
        self.nvars = nvars
        self.terms = {tuple(e): _clean(c) for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, nvars: int, exps: Mapping[int, int] | Sequence[int], c=1) -> "MPoly":
        if isinstance(exps, Mapping):
            e = [0] * nvars
            for k, v in exps.items():
                e[k] += v
            exps = e
        return cls(nvars, {tuple(exps): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.nvars, out)

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            return MPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        out = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = Fraction(c)
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def value_at_ones(self) -> Fraction:
        return Fraction(sum(self.terms.values(), 0))

    def leading(self) -> tuple[Exp, object]:
        e = max(self.terms)
        return e, self.terms[e]

    def monomial_content(self) -> Exp:
        return tuple(min(e[k] for e in self.terms) for k in range(self.nvars))

    def split_content(self) -> tuple[object, Exp, "MPoly"]:
        """self == c * u^m * P with P primitive over Z (for integer input) and
        P's lex-leading coefficient positive."""
        m = self.monomial_content()
        coeffs = list(self.terms.values())
        if all(isinstance(c, int) for c in coeffs):
            g = 0
            for c in coeffs:
                g = gcd(g, c)
        else:
            g = Fraction(self.leading()[1])
        _, lc = self.leading()
        if lc < 0:
            g = -abs(g)
        else:
            g = abs(g)
        P = MPoly(self.nvars, {tuple(a - b for a, b in zip(e, m)): Fraction(c) / g
                               for e, c in self.terms.items()})
        return _clean(Fraction(g)), m, P

    def divmod(self, divisor: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Division by a single polynomial in lex order."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        le, lc = divisor.leading()
        lc = Fraction(lc)
        rem = dict(self.terms)
        quot: dict = {}
        out_rem: dict = {}
        dterms = list(divisor.terms.items())
        while rem:
            e = max(rem)
            c = rem.pop(e)
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = Fraction(c) / lc
                quot[qe] = quot.get(qe, 0) + qc
                for de, dc in dterms:
                    if de == le:
                        continue
                    t = tuple(a + b for a, b in zip(qe, de))
                    v = rem.get(t, 0) - qc * dc
                    if v:
                        rem[t] = v
                    else:
                        rem.pop(t, None)
            else:
                out_rem[e] = c
        return MPoly(self.nvars, quot), MPoly(self.nvars, out_rem)

    def exact_div(self, divisor: "MPoly") -> "MPoly":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError("polynomial division left a remainder")
        return q

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"u{k + 1}" + (f"^{p}" if p > 1 else "") for k, p in enumerate(e) if p)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def to_text(self) -> str:
        return repr(self)


def product(polys: Iterable[MPoly], nvars: int) -> MPoly:
    out = MPoly.const(nvars, 1)
    for p in polys:
        out = out * p
    return out
