"""Exact rational helpers: parsing, formatting, small vector algebra and row reduction."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


def q(x) -> Fraction:
    """Coerce an int, Fraction, mpq or "p/q" string into a Fraction. Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"float {x!r} given where an exact rational is required")
    # gmpy2.mpq and other numbers.Rational implementations
    return Fraction(int(x.numerator), int(x.denominator))


def vec(xs: Iterable) -> Vector:
    return tuple(q(x) for x in xs)


def fmt(x) -> str:
    """Serialize a rational as "p/q" (always with a denominator)."""
    x = q(x)
    return f"{x.numerator}/{x.denominator}"


def fmt_vec(v: Sequence) -> list[str]:
    return [fmt(x) for x in v]


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Vector:
    c = q(c)
    return tuple(c * x for x in a)


def vsum(vs: Iterable[Sequence], dim: int) -> Vector:
    out = [Fraction(0)] * dim
    for v in vs:
        for i, x in enumerate(v):
            out[i] += x
    return tuple(out)


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def proportional(a: Sequence, b: Sequence) -> bool:
    """Exact test that two nonzero vectors are proportional (cross products vanish)."""
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (matrix, pivot columns)."""
    m = [[q(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """A unique or particular solution of a x = b, or None if inconsistent."""
    n = len(a[0])
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    m, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(m, piv):
        x[c] = row[n]
    return tuple(x)
