"""Joint measurability of finite EVM families, discrimination with post-measurement
information, and the robustness of incompatibility.

Compatibility is decided through joint EVMs ``G`` on ``Z = prod_x Y_x`` whose x-margins
equal ``M_x`` exactly. A mother measurement followed by per-index post-processings
``p_x`` can always be folded into such a joint: ``G(z) = sum_w prod_x p_x(z_x|w) Lambda(w)``
has x-margins ``sum_w p_x(y|w) Lambda(w) = M_x(y)``, so exact-margin feasibility is
equivalent to the mother-measurement definition for finite families.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from . import exact_lp
from .errors import EmptyList, ProductTooLarge, SpaceMismatch
from .evm import Evm
from .exact_lp import LpProblem
from .gain import PartitionedEnsemble, WStarFamily, decompose_partitioned, gain_partitioned
from .gpt_core import GptSpace
from .rational import dot, scale, vsum

DEFAULT_PRODUCT_LIMIT = 4096
JOINT_SEP = "|"


@dataclass(frozen=True)
class JointEvm:
    """A (possibly sub-normalized) joint with outcome tuples ``z``; ``evm`` uses "a|b" labels."""

    evm: Evm
    tuples: tuple

    def margin(self, x: int, labels: Sequence[str]) -> tuple:
        d = self.evm.space.dim
        out = []
        for y in labels:
            out.append(vsum((e for z, e in zip(self.tuples, self.evm.effects) if z[x] == y), d))
        return tuple(out)

    def margins_match(self, fam: Sequence[Evm]) -> bool:
        return all(self.margin(x, m.outcomes) == tuple(m.effects) for x, m in enumerate(fam))


@dataclass(frozen=True)
class CompatResult:
    compatible: bool
    joint: JointEvm | None = None
    separator: PartitionedEnsemble | None = None
    gain_family: Fraction | None = None
    gain_comp: Fraction | None = None

    def __bool__(self) -> bool:
        return self.compatible


@dataclass(frozen=True)
class IncompReport:
    value: Fraction | float
    family: tuple
    joint: JointEvm | None = None  # total mass (1 + R) * u, margins dominate each M_x
    dual: PartitionedEnsemble | None = None
    pg_comp: Fraction | None = None
    verified: bool = False
    lp_verified: bool = False
    note: str = "attained optimum of the finite dual LP"


def _check(fam: Sequence[Evm], limit: int) -> tuple:
    if not fam:
        raise EmptyList("empty measurement family")
    if any(m.space != fam[0].space for m in fam):
        raise SpaceMismatch("family members live on different spaces")
    size = prod(len(m) for m in fam)
    if size > limit:
        raise ProductTooLarge(f"joint outcome set has {size} > {limit} elements")
    return tuple(itertools.product(*(m.outcomes for m in fam)))


def _joint_layout(space: GptSpace, zs: tuple):
    return len(zs) * len(space.cone_generators)


def _joint_from_coeffs(space: GptSpace, zs: tuple, coeffs: Sequence, start: int = 0) -> JointEvm:
    gens = space.cone_generators
    ng = len(gens)
    effects = []
    for iz in range(len(zs)):
        acc = [Fraction(0)] * space.dim
        for j, g in enumerate(gens):
            c = coeffs[start + iz * ng + j]
            if c:
                for k in range(space.dim):
                    acc[k] += c * g[k]
        effects.append(tuple(acc))
    labels = tuple(JOINT_SEP.join(z) for z in zs)
    return JointEvm(Evm(space, labels, tuple(effects)), zs)


def _margin_rows(fam, zs, space, width, sign=1):
    """Rows ``sum_{z: z_x = y} G(z)_k`` over generator coefficients of ``G``, per (x, y, k)."""
    gens = space.cone_generators
    ng = len(gens)
    rows = []
    for x, m in enumerate(fam):
        for y in m.outcomes:
            for k in range(space.dim):
                row = [Fraction(0)] * width
                for iz, z in enumerate(zs):
                    if z[x] == y:
                        for j, g in enumerate(gens):
                            row[iz * ng + j] = sign * g[k]
                rows.append(row)
    return rows


def compatibility_lp(fam: Sequence[Evm], zs: tuple) -> LpProblem:
    space = fam[0].space
    n = _joint_layout(space, zs)
    rows = _margin_rows(fam, zs, space, n)
    rhs = [e[k] for m in fam for e in m.effects for k in range(space.dim)]
    return LpProblem.build("min", [0] * n, a_eq=rows, b_eq=rhs)


def _split_duals(y: Sequence, fam: Sequence[Evm], d: int, sign=1) -> list:
    parts, i = [], 0
    for m in fam:
        fs = []
        for _ in m.outcomes:
            fs.append(tuple(sign * y[i + k] for k in range(d)))
            i += d
        parts.append(WStarFamily(m.outcomes, tuple(fs)))
    return parts


def _part_labels(fam):
    return tuple(str(x) for x in range(len(fam)))


def is_compatible(fam: Sequence[Evm], *, limit: int = DEFAULT_PRODUCT_LIMIT) -> CompatResult:
    """Exact-margin joint EVM, or a partitioned ensemble on which the family wins strictly."""
    zs = _check(fam, limit)
    space = fam[0].space
    p = compatibility_lp(fam, zs)
    o = exact_lp.solve(p)
    if isinstance(o, exact_lp.Optimal):
        return CompatResult(True, joint=_joint_from_coeffs(space, zs, o.x))
    raw = PartitionedEnsemble(_part_labels(fam), tuple(_split_duals(o.y_eq, fam, space.dim, -1)))
    _, pe, _ = decompose_partitioned(space, raw)
    gf = gain_partitioned(pe, list(fam))
    gc = p_g_comp(pe, space, limit=limit)
    assert gf > gc, "Farkas certificate failed to separate"
    return CompatResult(False, separator=pe, gain_family=gf, gain_comp=gc)


def p_g_comp_lp(pe: PartitionedEnsemble, space: GptSpace, zs: tuple) -> LpProblem:
    gens = space.cone_generators
    ng = len(gens)
    n = len(zs) * ng
    c = [Fraction(0)] * n
    for iz, z in enumerate(zs):
        cz = vsum((part.functionals[y] for part, y in zip(pe.parts, z)), space.dim)
        for j, g in enumerate(gens):
            c[iz * ng + j] = dot(cz, g)
    rows = []
    for k in range(space.dim):
        rows.append([g[k] for _ in zs for g in gens])
    return LpProblem.build("max", c, a_eq=rows, b_eq=space.order_unit)


def p_g_comp(
    pe: PartitionedEnsemble, space: GptSpace, *, limit: int = DEFAULT_PRODUCT_LIMIT, with_joint: bool = False
):
    """Best partitioned-discrimination value of a single measurement (post-measurement information)."""
    size = prod(len(p) for p in pe.parts)
    if size > limit:
        raise ProductTooLarge(f"joint outcome set has {size} > {limit} elements")
    # joint outcomes index each part's functionals by position
    zs = tuple(itertools.product(*(range(len(p)) for p in pe.parts)))
    p = p_g_comp_lp(pe, space, zs)
    o = exact_lp.solve(p)
    assert isinstance(o, exact_lp.Optimal)
    if not with_joint:
        return o.value
    named = tuple(tuple(part.labels[i] for part, i in zip(pe.parts, z)) for z in zs)
    return o.value, _joint_from_coeffs(space, named, o.x)


def r_inc_lp(fam: Sequence[Evm], zs: tuple) -> LpProblem:
    """min s  s.t.  margin_x G(y) - M_x(y) in E_+,  sum_z G(z) = s*u,  G(z) in E_+.

    Variable blocks: joint generator coefficients, margin-slack generator coefficients
    per (x, y), then ``s``.
    """
    space = fam[0].space
    gens = space.cone_generators
    ng, d = len(gens), space.dim
    nj = len(zs) * ng
    n_slack = sum(len(m) for m in fam) * ng
    s = nj + n_slack
    n = s + 1
    rows = _margin_rows(fam, zs, space, n)
    r = 0
    for x, m in enumerate(fam):
        for iy in range(len(m)):
            base = nj + (sum(len(mm) for mm in fam[:x]) + iy) * ng
            for k in range(d):
                for j, g in enumerate(gens):
                    rows[r][base + j] = -g[k]
                r += 1
    rhs = [e[k] for m in fam for e in m.effects for k in range(d)]
    for k in range(d):
        row = [Fraction(0)] * n
        for iz in range(len(zs)):
            for j, g in enumerate(gens):
                row[iz * ng + j] = g[k]
        row[s] = -space.order_unit[k]
        rows.append(row)
        rhs.append(Fraction(0))
    c = [0] * n
    c[s] = 1
    return LpProblem.build("min", c, a_eq=rows, b_eq=rhs)


def r_inc(fam: Sequence[Evm], *, limit: int = DEFAULT_PRODUCT_LIMIT, arithmetic: str = "exact") -> IncompReport:
    """Robustness of incompatibility with the optimal joint and a tight partitioned ensemble."""
    zs = _check(fam, limit)
    space = fam[0].space
    p = r_inc_lp(fam, zs)
    if arithmetic == "float":
        v = exact_lp.solve_float(p)
        return IncompReport(None if v is None else v - 1, tuple(fam))
    o = exact_lp.solve(p)
    assert isinstance(o, exact_lp.Optimal)
    total = o.value
    joint = _joint_from_coeffs(space, zs, o.x)
    psi = _split_duals(o.y_eq, fam, space.dim)
    norm = sum((dot(f, space.order_unit) for part in psi for f in part.functionals), Fraction(0))
    parts = tuple(WStarFamily(part.labels, tuple(scale(1 / norm, f) for f in part.functionals)) for part in psi)
    pe = PartitionedEnsemble(_part_labels(fam), parts)
    lp_ok = exact_lp.verify_certificate(p, o)
    comp = p_g_comp(pe, space, limit=limit)
    ok = lp_ok and _dual_is_partitioned_ensemble(pe, space) and gain_partitioned(pe, list(fam)) == total * comp
    ok = ok and vsum(joint.evm.effects, space.dim) == scale(total, space.order_unit)
    return IncompReport(total - 1, tuple(fam), joint=joint, dual=pe, pg_comp=comp, verified=ok, lp_verified=lp_ok)


def _dual_is_partitioned_ensemble(pe: PartitionedEnsemble, space: GptSpace) -> bool:
    from .gpt_core import dual_cone_member

    if pe.total_weight(space) != 1:
        return False
    return all(dual_cone_member(space, f) for part in pe.parts for f in part.functionals)


@dataclass(frozen=True)
class SubfamilyScan:
    value: Fraction
    subset: tuple
    report: IncompReport


def finite_subfamily_scan(fam: Sequence[Evm], k: int, *, limit: int = DEFAULT_PRODUCT_LIMIT) -> SubfamilyScan:
    """Largest robustness of incompatibility over all size-k subfamilies (first maximizer wins)."""
    if not 1 <= k <= len(fam):
        raise EmptyList("subfamily size must lie in 1..len(family)")
    best = None
    for idx in itertools.combinations(range(len(fam)), k):
        rep = r_inc([fam[i] for i in idx], limit=limit)
        if best is None or rep.value > best.value:
            best = SubfamilyScan(rep.value, idx, rep)
    return best
