"""Exact rational simplex (two-phase, Bland's rule) with primal/dual and Farkas certificates.

Problem form::

    min|max  c.x   s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x_j >= 0 unless free[j]

Certificate conventions (checked by :func:`verify_certificate`):

* ``Optimal``: ``y_eq``, ``y_ub`` are Lagrange multipliers with
  ``b_eq.y_eq + b_ub.y_ub == value`` and reduced costs ``r = c - A_eq^T y_eq - A_ub^T y_ub``
  satisfying ``r_j == 0`` on free variables; for ``min``: ``y_ub <= 0`` and ``r >= 0``,
  for ``max``: ``y_ub >= 0`` and ``r <= 0``.
* ``Infeasible``: ``y_ub >= 0``, ``A_eq^T y_eq + A_ub^T y_ub`` is ``>= 0`` on nonnegative
  variables and ``== 0`` on free ones, and ``b_eq.y_eq + b_ub.y_ub < 0``.
* ``Unbounded``: ``x`` feasible; ``A_eq d = 0``, ``A_ub d <= 0``, ``d_j >= 0`` on
  nonnegative variables and ``c.d`` strictly improving.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

from .errors import MalformedProblem
from .rational import q

Vec = tuple


@dataclass(frozen=True)
class LpProblem:
    sense: str
    c: Vec
    a_eq: tuple = ()
    b_eq: Vec = ()
    a_ub: tuple = ()
    b_ub: Vec = ()
    free: tuple = ()

    @classmethod
    def build(cls, sense, c, a_eq=(), b_eq=(), a_ub=(), b_ub=(), free=None) -> "LpProblem":
        if sense not in ("min", "max"):
            raise MalformedProblem(f"unknown objective sense {sense!r}")
        c = tuple(q(x) for x in c)
        n = len(c)
        a_eq = tuple(tuple(q(x) for x in row) for row in a_eq)
        a_ub = tuple(tuple(q(x) for x in row) for row in a_ub)
        b_eq = tuple(q(x) for x in b_eq)
        b_ub = tuple(q(x) for x in b_ub)
        free = tuple(bool(f) for f in free) if free is not None else (False,) * n
        if len(a_eq) != len(b_eq) or len(a_ub) != len(b_ub):
            raise MalformedProblem("row count of constraint matrix and right-hand side differ")
        if any(len(r) != n for r in a_eq + a_ub) or len(free) != n:
            raise MalformedProblem("row length differs from the number of variables")
        return cls(sense, c, a_eq, b_eq, a_ub, b_ub, free)

    @property
    def n(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    x: Vec
    y_eq: Vec
    y_ub: Vec
    status = "optimal"


@dataclass(frozen=True)
class Infeasible:
    y_eq: Vec
    y_ub: Vec
    status = "infeasible"


@dataclass(frozen=True)
class Unbounded:
    x: Vec
    ray: Vec
    status = "unbounded"


LpOutcome = Optimal | Infeasible | Unbounded


def _frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


class _Tableau:
    """Dense tableau [A' | I | b'] with a reduced-cost row; columns >= n_real are artificials."""

    def __init__(self, rows, rhs, n_real):
        m = len(rows)
        self.m, self.n_real = m, n_real
        width = n_real + m + 1
        self.t = []
        for i, (row, b) in enumerate(zip(rows, rhs)):
            r = list(row) + [mpq(0)] * m + [b]
            r[n_real + i] = mpq(1)
            self.t.append(r)
        self.width = width
        self.basis = [n_real + i for i in range(m)]
        self.d: list = []

    def price(self, cost):
        """Reduced-cost row for ``cost`` (length n_real + m), last entry = -objective."""
        d = list(cost) + [mpq(0)]
        for i, bi in enumerate(self.basis):
            cb = cost[bi]
            if cb:
                row = self.t[i]
                for k in range(self.width):
                    if row[k]:
                        d[k] -= cb * row[k]
        self.d = d

    def pivot(self, r, j):
        t = self.t
        pr = t[r]
        piv = pr[j]
        if piv != 1:
            inv = 1 / piv
            pr = [x * inv if x else x for x in pr]
            t[r] = pr
        nz = [k for k, x in enumerate(pr) if x]
        for i in range(self.m):
            if i == r:
                continue
            row = t[i]
            f = row[j]
            if f:
                for k in nz:
                    row[k] -= f * pr[k]
        f = self.d[j]
        if f:
            d = self.d
            for k in nz:
                d[k] -= f * pr[k]
        self.basis[r] = j

    def run(self, allowed: int):
        """Bland's rule on columns < allowed. Returns None at optimum, else the unbounded column."""
        t, d, basis = self.t, None, self.basis
        while True:
            d = self.d
            j = next((k for k in range(allowed) if d[k] < 0), None)
            if j is None:
                return None
            best = None
            for i in range(self.m):
                a = t[i][j]
                if a > 0:
                    ratio = t[i][-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return j
            self.pivot(best[1], j)


def solve(p: LpProblem) -> LpOutcome:
    """Solve ``p`` exactly. Deterministic: identical input gives identical output."""
    if not isinstance(p, LpProblem):
        raise MalformedProblem("expected an LpProblem")
    n = p.n
    # standard-form columns: (original var, sign); then one slack per inequality row
    cols: list[tuple[int, int]] = []
    for j in range(n):
        cols.append((j, 1))
        if p.free[j]:
            cols.append((j, -1))
    n_struct = len(cols)
    n_ub = len(p.a_ub)
    n_real = n_struct + n_ub

    rows, rhs, origin = [], [], []  # origin: ("eq"|"ub", index, sign)
    for i, (a, b) in enumerate(zip(p.a_eq, p.b_eq)):
        if b == 0 and all(x == 0 for x in a):
            continue
        rows.append([mpq(a[j]) * s for j, s in cols] + [mpq(0)] * n_ub)
        rhs.append(mpq(b))
        origin.append(("eq", i))
    for i, (a, b) in enumerate(zip(p.a_ub, p.b_ub)):
        row = [mpq(a[j]) * s for j, s in cols] + [mpq(0)] * n_ub
        row[n_struct + i] = mpq(1)
        rows.append(row)
        rhs.append(mpq(b))
        origin.append(("ub", i))
    signs = []
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
            signs.append(-1)
        else:
            signs.append(1)
    m = len(rows)
    tab = _Tableau(rows, rhs, n_real)

    def duals_to_original(yprime, factor):
        y_eq = [Fraction(0)] * len(p.a_eq)
        y_ub = [Fraction(0)] * len(p.a_ub)
        for (kind, idx), s, y in zip(origin, signs, yprime):
            val = _frac(y) * s * factor
            (y_eq if kind == "eq" else y_ub)[idx] = val
        return tuple(y_eq), tuple(y_ub)

    def primal_point():
        xs = [mpq(0)] * n_real
        for i, bi in enumerate(tab.basis):
            if bi < n_real:
                xs[bi] = tab.t[i][-1]
        x = [Fraction(0)] * n
        for k, (j, s) in enumerate(cols):
            x[j] += _frac(xs[k]) * s
        return tuple(x)

    # phase I
    tab.price([mpq(0)] * n_real + [mpq(1)] * m)
    tab.run(n_real)
    if -tab.d[-1] > 0:
        yprime = [1 - tab.d[n_real + i] for i in range(m)]
        y_eq, y_ub = duals_to_original(yprime, -1)
        return Infeasible(y_eq, y_ub)
    # drive zero-level artificials out of the basis where possible
    for i in range(m):
        if tab.basis[i] >= n_real:
            j = next((k for k in range(n_real) if tab.t[i][k] != 0), None)
            if j is not None:
                tab.pivot(i, j)

    # phase II
    flip = 1 if p.sense == "min" else -1
    cost = [mpq(p.c[j]) * s * flip for j, s in cols] + [mpq(0)] * (n_ub + m)
    tab.price(cost)
    j = tab.run(n_real)
    if j is not None:
        x = primal_point()
        dstd = [mpq(0)] * n_real
        dstd[j] = mpq(1)
        for i, bi in enumerate(tab.basis):
            if bi < n_real:
                dstd[bi] = -tab.t[i][j]
        ray = [Fraction(0)] * n
        for k, (jj, s) in enumerate(cols):
            ray[jj] += _frac(dstd[k]) * s
        return Unbounded(x, tuple(ray))
    value = _frac(-tab.d[-1]) * flip
    yprime = [-tab.d[n_real + i] for i in range(m)]
    y_eq, y_ub = duals_to_original(yprime, flip)
    return Optimal(value, primal_point(), y_eq, y_ub)


def _matvec(rows, x):
    return [sum((a * b for a, b in zip(r, x)), Fraction(0)) for r in rows]


def _rmatvec(rows, y, n):
    out = [Fraction(0)] * n
    for r, yi in zip(rows, y):
        if yi:
            for j, a in enumerate(r):
                if a:
                    out[j] += a * yi
    return out


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def verify_certificate(p: LpProblem, o: LpOutcome) -> bool:
    """Re-check an outcome by plain rational arithmetic, independent of solver state."""
    try:
        n = p.n
        if isinstance(o, Optimal):
            x, y, z = o.x, o.y_eq, o.y_ub
            if len(x) != n or len(y) != len(p.a_eq) or len(z) != len(p.a_ub):
                return False
            if not _primal_feasible(p, x):
                return False
            if _dot(p.c, x) != o.value:
                return False
            if _dot(p.b_eq, y) + _dot(p.b_ub, z) != o.value:
                return False
            at = [a + b for a, b in zip(_rmatvec(p.a_eq, y, n), _rmatvec(p.a_ub, z, n))]
            red = [c - a for c, a in zip(p.c, at)]
            s = 1 if p.sense == "min" else -1
            if any(s * zi > 0 for zi in z):
                return False
            for j in range(n):
                if p.free[j]:
                    if red[j] != 0:
                        return False
                elif s * red[j] < 0:
                    return False
            return True
        if isinstance(o, Infeasible):
            y, z = o.y_eq, o.y_ub
            if len(y) != len(p.a_eq) or len(z) != len(p.a_ub):
                return False
            if any(zi < 0 for zi in z):
                return False
            at = [a + b for a, b in zip(_rmatvec(p.a_eq, y, n), _rmatvec(p.a_ub, z, n))]
            for j in range(n):
                if (p.free[j] and at[j] != 0) or (not p.free[j] and at[j] < 0):
                    return False
            return _dot(p.b_eq, y) + _dot(p.b_ub, z) < 0
        if isinstance(o, Unbounded):
            x, d = o.x, o.ray
            if not _primal_feasible(p, x):
                return False
            if any(v != 0 for v in _matvec(p.a_eq, d)) or any(v > 0 for v in _matvec(p.a_ub, d)):
                return False
            if any(d[j] < 0 for j in range(n) if not p.free[j]):
                return False
            cd = _dot(p.c, d)
            return cd < 0 if p.sense == "min" else cd > 0
    except (TypeError, ValueError):
        return False
    return False


def _primal_feasible(p: LpProblem, x: Sequence) -> bool:
    if any(x[j] < 0 for j in range(p.n) if not p.free[j]):
        return False
    if any(v != b for v, b in zip(_matvec(p.a_eq, x), p.b_eq)):
        return False
    return all(v <= b for v, b in zip(_matvec(p.a_ub, x), p.b_ub))


def solve_float(p: LpProblem) -> float | None:
    """Floating-point optimum via HiGHS, for timing comparisons only (no certificates)."""
    from scipy.optimize import linprog

    s = 1.0 if p.sense == "min" else -1.0
    bounds = [(None, None) if f else (0, None) for f in p.free]
    res = linprog(
        [s * float(c) for c in p.c],
        A_ub=[[float(a) for a in r] for r in p.a_ub] or None,
        b_ub=[float(b) for b in p.b_ub] or None,
        A_eq=[[float(a) for a in r] for r in p.a_eq] or None,
        b_eq=[float(b) for b in p.b_eq] or None,
        bounds=bounds,
        method="highs",
    )
    if res.status != 0:
        return None
    return s * float(res.fun)
