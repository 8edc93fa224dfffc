"""Simulability of an EVM by a finite list of EVMs, the maximal success probability of
simulation, and the robustness of unsimulability, each with LP duality certificates.

The cone generated by simulable EVMs is never enumerated. A simulation by the list
``L = (N_1, ..., N_k)`` is linearized as kernels ``q_i(x|y) >= 0`` with
``sum_x q_i(x|y) = w_i`` for every ``y``, so that ``sum_i sum_y q_i(x|y) N_i(y)`` is the
simulated effect and ``w_i`` the weight of simulator ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exact_lp
from .errors import EmptyList, SpaceMismatch
from .evm import Evm, mix_direct_sum, trivial_evm
from .exact_lp import LpProblem
from .gain import (
    Ensemble,
    PartitionedEnsemble,
    WStarFamily,
    decompose_family,
    gain,
    gain_partitioned,
    gain_set,
    is_ensemble,
)
from .gpt_core import cone_member
from .rational import dot, scale, sub

FAIL = "fail"


@dataclass(frozen=True)
class SimWitness:
    """Weights ``w_i`` and kernels ``kernels[i][ix][iy] = q_i(x|y)`` with column sums ``w_i``."""

    outcomes: tuple
    weights: tuple
    kernels: tuple

    def simulated(self, ls: Sequence[Evm]) -> tuple:
        d = ls[0].space.dim
        out = []
        for ix in range(len(self.outcomes)):
            acc = [Fraction(0)] * d
            for ker, n in zip(self.kernels, ls):
                for iy, e in enumerate(n.effects):
                    w = ker[ix][iy]
                    if w:
                        for k in range(d):
                            acc[k] += w * e[k]
            out.append(tuple(acc))
        return tuple(out)

    def is_consistent(self, ls: Sequence[Evm], total=1) -> bool:
        if sum(self.weights) != total or any(w < 0 for w in self.weights):
            return False
        for ker, w, n in zip(self.kernels, self.weights, ls):
            for iy in range(len(n)):
                col = [ker[ix][iy] for ix in range(len(self.outcomes))]
                if any(v < 0 for v in col) or sum(col) != w:
                    return False
        return True

    def verify(self, m: Evm, ls: Sequence[Evm]) -> bool:
        return (
            tuple(m.outcomes) == tuple(self.outcomes)
            and self.is_consistent(ls)
            and self.simulated(ls) == tuple(m.effects)
        )


@dataclass(frozen=True)
class SimResult:
    simulable: bool
    witness: SimWitness | None = None
    separator: Ensemble | None = None
    gain_target: Fraction | None = None
    gain_list: Fraction | None = None

    def __bool__(self) -> bool:
        return self.simulable


@dataclass(frozen=True)
class RobustnessReport:
    value: Fraction | float
    target: Evm
    simulators: tuple
    primal: SimWitness | None = None
    noise: Evm | None = None
    dual_ensemble: Ensemble | None = None
    verified: bool = False
    lp_verified: bool = False
    note: str = field(default="attained optimum of the finite dual LP")


def _check(m: Evm, ls: Sequence[Evm]) -> None:
    if not ls:
        raise EmptyList("simulator list is empty")
    if any(n.space != m.space for n in ls):
        raise SpaceMismatch("target and simulators live on different spaces")


class _Layout:
    """Index bookkeeping for kernel variables ``q_i(x|y)`` followed by weights ``w_i``."""

    def __init__(self, n_out: int, ls: Sequence[Evm]):
        self.n_out = n_out
        self.ls = ls
        self.offsets = []
        k = 0
        for n in ls:
            self.offsets.append(k)
            k += n_out * len(n)
        self.n_kernel = k
        self.w0 = k
        self.n = k + len(ls)

    def var(self, i: int, ix: int, iy: int) -> int:
        return self.offsets[i] + ix * len(self.ls[i]) + iy

    def effect_rows(self, width: int, d: int, start: int = 0) -> list:
        """Rows ``sum_{i,y} q_i(x|y) N_i(y)_k`` for each (x, k), padded to ``width``."""
        rows = []
        for ix in range(self.n_out):
            for k in range(d):
                row = [Fraction(0)] * width
                for i, n in enumerate(self.ls):
                    for iy, e in enumerate(n.effects):
                        row[start + self.var(i, ix, iy)] = e[k]
                rows.append(row)
        return rows

    def column_rows(self, width: int, start: int = 0) -> list:
        """``sum_x q_i(x|y) - w_i = 0`` for each (i, y)."""
        rows = []
        for i, n in enumerate(self.ls):
            for iy in range(len(n)):
                row = [Fraction(0)] * width
                for ix in range(self.n_out):
                    row[start + self.var(i, ix, iy)] = Fraction(1)
                row[start + self.w0 + i] = Fraction(-1)
                rows.append(row)
        return rows

    def witness(self, x: Sequence, outcomes: tuple, start: int = 0, scale_by=1) -> SimWitness:
        kernels = tuple(
            tuple(
                tuple(x[start + self.var(i, ix, iy)] * scale_by for iy in range(len(n)))
                for ix in range(self.n_out)
            )
            for i, n in enumerate(self.ls)
        )
        weights = tuple(x[start + self.w0 + i] * scale_by for i in range(len(self.ls)))
        return SimWitness(outcomes, weights, kernels)


def simulation_lp(m: Evm, ls: Sequence[Evm]) -> LpProblem:
    lay = _Layout(len(m), ls)
    d = m.space.dim
    rows = lay.effect_rows(lay.n, d) + lay.column_rows(lay.n)
    rhs = [e[k] for e in m.effects for k in range(d)] + [Fraction(0)] * (len(rows) - len(m) * d)
    total = [Fraction(0)] * lay.n
    for i in range(len(ls)):
        total[lay.w0 + i] = Fraction(1)
    return LpProblem.build("min", [0] * lay.n, a_eq=rows + [total], b_eq=rhs + [1])


def is_simulable(m: Evm, ls: Sequence[Evm]) -> SimResult:
    """Witness kernels, or an ensemble with ``gain(E, m) > gain_set(E, ls)``."""
    _check(m, ls)
    p = simulation_lp(m, ls)
    o = exact_lp.solve(p)
    lay = _Layout(len(m), ls)
    if isinstance(o, exact_lp.Optimal):
        return SimResult(True, witness=lay.witness(o.x, m.outcomes))
    d = m.space.dim
    phi = tuple(tuple(-o.y_eq[ix * d + k] for k in range(d)) for ix in range(len(m)))
    _, ens, _ = decompose_family(m.space, WStarFamily(m.outcomes, phi))
    gm, gl = gain(ens, m), gain_set(ens, ls)
    assert gm > gl, "Farkas certificate failed to separate"
    return SimResult(False, separator=ens, gain_target=gm, gain_list=gl)


def _fail_trivial(m: Evm) -> Evm:
    return trivial_evm(m.space, {FAIL: 1})


def q_succ_lp(m: Evm, ls: Sequence[Evm]) -> LpProblem:
    """max t  s.t.  t*M (+) (1-t)*trivial simulable by ``ls``, t <= 1.

    Variables: kernels over outcomes X + [fail], weights, then t. The fail-effect rows are
    implied by normalization and omitted.
    """
    lay = _Layout(len(m) + 1, ls)
    d = m.space.dim
    n = lay.n + 1
    t = lay.n
    rows = lay.effect_rows(n, d)[: len(m) * d]
    for ix, e in enumerate(m.effects):
        for k in range(d):
            rows[ix * d + k][t] = -e[k]
    rhs = [Fraction(0)] * len(rows)
    rows += lay.column_rows(n)
    rhs += [Fraction(0)] * (len(rows) - len(rhs))
    total = [Fraction(0)] * n
    for i in range(len(ls)):
        total[lay.w0 + i] = Fraction(1)
    rows.append(total)
    rhs.append(Fraction(1))
    c = [0] * n
    c[t] = 1
    cap = [0] * n
    cap[t] = 1
    return LpProblem.build("max", c, a_eq=rows, b_eq=rhs, a_ub=[cap], b_ub=[1])


def qsucc_ratio(ens: WStarFamily, m: Evm, ls: Sequence[Evm]) -> Fraction | None:
    """``(gain_set(E, ls) - gain(E, [u])) / (gain(E, m) - gain(E, [u]))``; None if undefined."""
    triv = _fail_trivial(m)
    base = gain(ens, triv)
    den = gain(ens, m) - base
    if den <= 0:
        return None
    return (gain_set(ens, ls) - base) / den


def q_succ(m: Evm, ls: Sequence[Evm], *, arithmetic: str = "exact") -> RobustnessReport:
    _check(m, ls)
    p = q_succ_lp(m, ls)
    if arithmetic == "float":
        return RobustnessReport(exact_lp.solve_float(p), m, tuple(ls))
    o = exact_lp.solve(p)
    assert isinstance(o, exact_lp.Optimal)
    value = o.value
    lay = _Layout(len(m) + 1, ls)
    target = mix_direct_sum(value, m, _fail_trivial(m))
    # target outcome order is "0:x"... then "1:fail", matching the kernel row order
    primal = lay.witness(o.x, target.outcomes)
    lp_ok = exact_lp.verify_certificate(p, o)
    ok = lp_ok and primal.verify(target, ls)
    ens = None
    if value < 1:
        d = m.space.dim
        phi = [tuple(-o.y_eq[ix * d + k] for k in range(d)) for ix in range(len(m))]
        phi.append(tuple(Fraction(0) for _ in range(d)))
        _, ens, _ = decompose_family(m.space, WStarFamily(target.outcomes, tuple(phi)))
        ok = ok and is_ensemble(m.space, ens) and qsucc_ratio(ens, m, ls) == value
    return RobustnessReport(value, m, tuple(ls), primal=primal, dual_ensemble=ens, verified=ok, lp_verified=lp_ok)


def r_uns_lp(m: Evm, ls: Sequence[Evm]) -> LpProblem:
    """min s  s.t.  K(x) - M(x) in E_+,  s*u - sum_x K(x) in E_+,  K simulable-cone element.

    Variable blocks: kernels and weights (the cone element K), generator coefficients
    ``c[x, j]`` for ``K(x) - M(x)``, generator coefficients ``d[j]`` for the slack in
    ``s*u - sum K``, then ``s``. Rows: effect rows (one per (x, k)), column rows, total rows.
    """
    sp = m.space
    d, gens = sp.dim, sp.cone_generators
    ng = len(gens)
    lay = _Layout(len(m), ls)
    c0 = lay.n
    d0 = c0 + len(m) * ng
    s = d0 + ng
    n = s + 1
    rows = lay.effect_rows(n, d)
    for ix in range(len(m)):
        for k in range(d):
            for j, g in enumerate(gens):
                rows[ix * d + k][c0 + ix * ng + j] = -g[k]
    rhs = [e[k] for e in m.effects for k in range(d)]
    rows += lay.column_rows(n)
    rhs += [Fraction(0)] * sum(len(x) for x in ls)
    for k in range(d):
        row = [Fraction(0)] * n
        for i, nm in enumerate(ls):
            for iy, e in enumerate(nm.effects):
                for ix in range(len(m)):
                    row[lay.var(i, ix, iy)] = -e[k]
        for j, g in enumerate(gens):
            row[d0 + j] = -g[k]
        row[s] = sp.order_unit[k]
        rows.append(row)
        rhs.append(Fraction(0))
    c = [0] * n
    c[s] = 1
    return LpProblem.build("min", c, a_eq=rows, b_eq=rhs)


def r_uns(m: Evm, ls: Sequence[Evm], *, arithmetic: str = "exact") -> RobustnessReport:
    """Robustness of unsimulability with the optimal noise and a tight dual ensemble."""
    _check(m, ls)
    p = r_uns_lp(m, ls)
    if arithmetic == "float":
        v = exact_lp.solve_float(p)
        return RobustnessReport(None if v is None else v - 1, m, tuple(ls))
    o = exact_lp.solve(p)
    assert isinstance(o, exact_lp.Optimal)
    sp = m.space
    d = sp.dim
    total = o.value
    value = total - 1
    lay = _Layout(len(m), ls)
    # K / s is a simulable EVM Psi with M <= (1 + R) Psi
    primal = lay.witness(o.x, m.outcomes, scale_by=1 / total)
    psi_effects = primal.simulated(ls)
    noise = None
    if value > 0:
        noise = Evm(sp, m.outcomes, tuple(scale(1 / value, sub(scale(total, k), e)) for k, e in zip(psi_effects, m.effects)))
    psi = [tuple(o.y_eq[ix * d + k] for k in range(d)) for ix in range(len(m))]
    norm = sum((dot(f, sp.order_unit) for f in psi), Fraction(0))
    ens = Ensemble(m.outcomes, tuple(scale(1 / norm, f) for f in psi))
    lp_ok = exact_lp.verify_certificate(p, o)
    ok = (
        lp_ok
        and primal.is_consistent(ls)
        and all(cone_member(sp, sub(scale(total, k), e)).member for k, e in zip(psi_effects, m.effects))
        and is_ensemble(sp, ens)
        and gain(ens, m) == total * gain_set(ens, ls)
    )
    return RobustnessReport(value, m, tuple(ls), primal=primal, noise=noise, dual_ensemble=ens, verified=ok, lp_verified=lp_ok)


def r_uns_ratio_check(report: RobustnessReport, pe: PartitionedEnsemble) -> bool:
    """``gain_partitioned(pe, [M]) <= (1 + R_uns) * gain_partitioned(pe, L)``."""
    lhs = gain_partitioned(pe, [report.target])
    rhs = (1 + report.value) * gain_partitioned(pe, list(report.simulators))
    return lhs <= rhs
