"""Dense univariate integer polynomials as lists of Python ints (index = exponent).

Multiplication packs coefficients into one big integer (Kronecker substitution)
so the heavy lifting happens inside CPython's long multiplication.
"""
from __future__ import annotations

from functools import lru_cache

Poly = list[int]


def trim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def scale(a: Poly, c: int) -> Poly:
    return trim([c * x for x in a])


def _digit_bits(a: Poly, b: Poly) -> int:
    ma = max((abs(x) for x in a), default=0)
    mb = max((abs(x) for x in b), default=0)
    bound = ma * mb * min(len(a), len(b))
    bits = bound.bit_length() + 2
    return (bits + 7) // 8


def _pack(a: Poly, nbytes: int) -> int:
    half = 1 << (8 * nbytes - 1)
    raw = b"".join((x + half).to_bytes(nbytes, "little") for x in a)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * len(a), "little")
    return int.from_bytes(raw, "little") - bias


def _unpack(v: int, length: int, nbytes: int) -> Poly:
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * length, "little")
    raw = (v + bias).to_bytes(nbytes * length, "little")
    return [int.from_bytes(raw[i:i + nbytes], "little") - half
            for i in range(0, nbytes * length, nbytes)]


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    if min(len(a), len(b)) <= 8:
        if len(a) < len(b):
            a, b = b, a
        out = [0] * (len(a) + len(b) - 1)
        for j, c in enumerate(b):
            if c:
                for i, x in enumerate(a):
                    out[i + j] += c * x
        return trim(out)
    nbytes = _digit_bits(a, b)
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    return trim(_unpack(prod, len(a) + len(b) - 1, nbytes))


def power(a: Poly, e: int) -> Poly:
    out: Poly = [1]
    base = a
    while e:
        if e & 1:
            out = mul(out, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return out


def divmod_monic(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Division by b with leading coefficient +-1; exact over the integers."""
    lead = b[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have unit leading coefficient")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], trim(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] * lead
        if c:
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] -= c * b[j]
    return trim(q), trim(r[:db])


@lru_cache(maxsize=None)
def _cyclotomic(k: int) -> tuple[int, ...]:
    num: Poly = [-1] + [0] * (k - 1) + [1]  # t^k - 1
    for d in range(1, k):
        if k % d == 0:
            num, r = divmod_monic(num, list(_cyclotomic(d)))
            assert not r
    return tuple(num)


def cyclotomic(k: int) -> Poly:
    return list(_cyclotomic(k))


def psi(k: int) -> Poly:
    """Cyclotomic factor normalised so that 1 - t^e = prod_{k | e} psi(k)."""
    return [1, -1] if k == 1 else cyclotomic(k)


def divisors(e: int) -> list[int]:
    return [k for k in range(1, e + 1) if e % k == 0]


def one_minus_t_pow(e: int) -> Poly:
    return [1] + [0] * (e - 1) + [-1]


def divisible_by_psi(a: Poly, k: int) -> bool:
    """Test psi(k) | a by reducing a modulo t^k - 1 first."""
    if not a:
        return True
    folded = [0] * k
    for i, c in enumerate(a):
        folded[i % k] += c
    _, r = divmod_monic(trim(folded), psi(k))
    return not r


def exact_div(a: Poly, b: Poly) -> Poly:
    q, r = divmod_monic(a, b)
    if r:
        raise ArithmeticError("polynomial division left a remainder")
    return q


def evaluate(a: Poly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc
