"""Independent reference computations. None of these reuse the solvers' LP encodings."""
from __future__ import annotations

import itertools
from fractions import Fraction

from gptmeasure import exact_lp
from gptmeasure.evm import Evm, mix_direct_sum, trivial_evm
from gptmeasure.exact_lp import LpProblem
from gptmeasure.simulability import is_simulable

# vertices of the state spaces (extreme normalized positive functionals)
GBIT_STATES = [(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)]


def classical_states(n):
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def runs_trivial(m: Evm, states) -> Fraction:
    """1 + R_uns(M; {trivial}): K(x) = k_x u must dominate M(x), so k_x = max_states <w, M(x)>."""
    return sum(max(sum(Fraction(a) * b for a, b in zip(w, e)) for w in states) for e in m.effects)


def qsucc_bisection(m: Evm, ls, bits: int = 10):
    """Largest q on a 2^-bits grid with q*M + (1-q)*fail simulable by ``ls``; returns (lo, hi)."""
    fail = trivial_evm(m.space, {"fail": 1})

    def ok(q):
        return is_simulable(mix_direct_sum(q, m, fail), ls).simulable

    lo, hi = Fraction(0), Fraction(1)
    if ok(hi):
        return hi, hi
    for _ in range(bits):
        mid = (lo + hi) / 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


def _rinc_feasible(fam, s: Fraction) -> bool:
    """Is there a joint G >= 0 with sum_z G(z) = s*u and every margin dominating M_x?

    Encoded with effect coordinates as free variables and explicit cone coefficients per
    joint effect and per margin slack.
    """
    space = fam[0].space
    gens = space.cone_generators
    d, ng = space.dim, len(gens)
    zs = list(itertools.product(*(range(len(m)) for m in fam)))
    slots = [(x, y) for x, m in enumerate(fam) for y in range(len(m))]
    # variables: G coords (free) | G cone coeffs | slack cone coeffs
    n_g = len(zs) * d
    n_c = len(zs) * ng
    n_s = len(slots) * ng
    n = n_g + n_c + n_s
    rows, rhs = [], []

    def row():
        return [Fraction(0)] * n

    for iz in range(len(zs)):
        for k in range(d):
            r = row()
            r[iz * d + k] = Fraction(1)
            for j, g in enumerate(gens):
                r[n_g + iz * ng + j] = -Fraction(g[k])
            rows.append(r)
            rhs.append(Fraction(0))
    for k in range(d):
        r = row()
        for iz in range(len(zs)):
            r[iz * d + k] = Fraction(1)
        rows.append(r)
        rhs.append(s * space.order_unit[k])
    for si, (x, y) in enumerate(slots):
        for k in range(d):
            r = row()
            for iz, z in enumerate(zs):
                if z[x] == y:
                    r[iz * d + k] = Fraction(1)
            for j, g in enumerate(gens):
                r[n_g + n_c + si * ng + j] = -Fraction(g[k])
            rows.append(r)
            rhs.append(fam[x].effects[y][k])
    free = [True] * n_g + [False] * (n_c + n_s)
    o = exact_lp.solve(LpProblem.build("min", [0] * n, a_eq=rows, b_eq=rhs, free=free))
    return isinstance(o, exact_lp.Optimal)


def rinc_bisection(fam, bits: int = 12, upper: Fraction | None = None):
    """Bracket of R_inc at resolution 2^-bits by bisection on feasibility in s = 1 + r."""
    lo, hi = Fraction(0), Fraction(upper if upper is not None else len(fam) - 1)
    if _rinc_feasible(fam, 1 + lo):
        return lo, lo
    assert _rinc_feasible(fam, 1 + hi)
    for _ in range(bits):
        mid = (lo + hi) / 2
        if _rinc_feasible(fam, 1 + mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def garbling_2x2(e1, e2):
    """Is binary experiment e1 a garbling of e2 (e1 = e2 . G, G row-stochastic 2x2)?

    Rows are parameters, columns samples. Direct linear algebra, no LP.
    """
    (a, b), (c, d) = e2
    det = a * d - b * c
    if det == 0:
        # e2 uninformative: its garblings are exactly the uninformative experiments
        return tuple(e1[0]) == tuple(e1[1])
    inv = ((d / det, -b / det), (-c / det, a / det))
    g = [[sum(inv[i][k] * e1[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    return all(0 <= v <= 1 for r in g for v in r)
