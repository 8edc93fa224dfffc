"""Finite-dimensional order unit spaces with polyhedral positive cones.

A cone is given by its generators (V-representation); all membership questions are
answered by exact LPs that return a certificate either way.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources
from typing import Mapping, Sequence

from . import exact_lp
from .errors import (
    DimensionMismatch,
    NotClassical,
    NotGenerating,
    NotOrderUnit,
    NotProper,
    UnsupportedKind,
)
from .exact_lp import LpProblem
from .rational import Vector, dot, is_zero, proportional, rank, solve, vec


@dataclass(frozen=True)
class Functional:
    coords: Vector

    def __call__(self, a: Sequence) -> Fraction:
        return dot(self.coords, a)


@dataclass(frozen=True)
class ConeCertificate:
    """Exactly one of ``coefficients`` (membership) or ``separator`` (Farkas) is set."""

    coefficients: Vector | None = None
    separator: Vector | None = None

    @property
    def member(self) -> bool:
        return self.coefficients is not None


@dataclass(frozen=True)
class DualCheck:
    positive: bool
    witness: Vector | None = None
    value: Fraction | None = None

    def __bool__(self) -> bool:
        return self.positive


@dataclass(frozen=True)
class GptSpace:
    dim: int
    order_unit: Vector
    cone_generators: tuple
    name: str | None = None

    def __eq__(self, other):
        if not isinstance(other, GptSpace):
            return NotImplemented
        return (self.dim, self.order_unit, self.cone_generators) == (
            other.dim,
            other.order_unit,
            other.cone_generators,
        )

    def __hash__(self):
        return hash((self.dim, self.order_unit, self.cone_generators))

    @cached_property
    def interior_state(self) -> Vector:
        """A deterministic state strictly positive on every nonzero cone element."""
        return _interior_state(self)

    @cached_property
    def extreme_rays(self) -> tuple:
        gens = self.cone_generators
        out = []
        for k, g in enumerate(gens):
            others = gens[:k] + gens[k + 1 :]
            if not others or not _in_cone(others, g):
                out.append(g)
        return tuple(out)

    @cached_property
    def unit_decomposition(self) -> Vector:
        cert = cone_member(self, self.order_unit)
        assert cert.coefficients is not None
        return cert.coefficients

    def to_dict(self) -> dict:
        from .rational import fmt_vec

        d = {
            "dim": self.dim,
            "order_unit": fmt_vec(self.order_unit),
            "cone_generators": [fmt_vec(g) for g in self.cone_generators],
        }
        if self.name is not None:
            d["name"] = self.name
        return d


def _in_cone(gens: Sequence[Sequence], v: Sequence) -> bool:
    dim = len(v)
    p = LpProblem.build(
        "min",
        [0] * len(gens),
        a_eq=[[g[i] for g in gens] for i in range(dim)],
        b_eq=v,
    )
    return isinstance(exact_lp.solve(p), exact_lp.Optimal)


def _dedupe(gens: Sequence[Vector]) -> tuple:
    out: list[Vector] = []
    for g in gens:
        dup = False
        for h in out:
            if proportional(g, h):
                i = next(k for k, x in enumerate(h) if x != 0)
                if (g[i] > 0) == (h[i] > 0):
                    dup = True
                    break
        if not dup:
            out.append(g)
    return tuple(out)


def validate_space(raw: Mapping | GptSpace) -> GptSpace:
    """Build a checked space from ``{"dim", "order_unit", "cone_generators", "name"}``."""
    if isinstance(raw, GptSpace):
        raw = {
            "dim": raw.dim,
            "order_unit": raw.order_unit,
            "cone_generators": raw.cone_generators,
            "name": raw.name,
        }
    dim = int(raw["dim"])
    if dim < 1:
        raise DimensionMismatch("dim must be at least 1")
    u = vec(raw["order_unit"])
    gens = [vec(g) for g in raw["cone_generators"]]
    if len(u) != dim or any(len(g) != dim for g in gens):
        raise DimensionMismatch(f"all vectors must have length dim={dim}")
    if not gens or any(is_zero(g) for g in gens):
        raise NotGenerating("cone generators must be a nonempty list of nonzero vectors")
    gens = list(_dedupe(gens))
    if rank(gens) < dim:
        raise NotGenerating(f"generators span a space of rank {rank(gens)} < dim={dim}")
    # properness: sum(c) > 0 with sum_j c_j g_j = 0 exposes a line in the cone
    n = len(gens)
    p = LpProblem.build(
        "max",
        [1] * n,
        a_eq=[[g[i] for g in gens] for i in range(dim)],
        b_eq=[0] * dim,
        a_ub=[[1] * n],
        b_ub=[1],
    )
    o = exact_lp.solve(p)
    if o.value != 0:
        raise NotProper("the cone contains a line (some v and -v are both in it)")
    # order unit: lambda*u +/- e_i in the cone for some lambda >= 0
    for i in range(dim):
        for s in (1, -1):
            target = [Fraction(0)] * dim
            target[i] = Fraction(-s)
            # sum_j c_j g_j - lambda u = -s e_i  <=>  lambda u + s e_i = sum c_j g_j
            p = LpProblem.build(
                "min",
                [0] * (n + 1),
                a_eq=[[g[k] for g in gens] + [-u[k]] for k in range(dim)],
                b_eq=target,
            )
            if not isinstance(exact_lp.solve(p), exact_lp.Optimal):
                sign = "+" if s > 0 else "-"
                raise NotOrderUnit(f"no lambda >= 0 with lambda*u {sign} e_{i} in the cone")
    return GptSpace(dim, u, tuple(gens), raw.get("name"))


def make_space(dim, order_unit, cone_generators, name=None) -> GptSpace:
    return validate_space(
        {"dim": dim, "order_unit": order_unit, "cone_generators": cone_generators, "name": name}
    )


def _check_len(space: GptSpace, v: Sequence) -> None:
    if len(v) != space.dim:
        raise DimensionMismatch(f"vector of length {len(v)} in a space of dim {space.dim}")


def cone_member(space: GptSpace, v: Sequence) -> ConeCertificate:
    """Decide ``v in E_+``; returns generator coefficients or a separating functional."""
    _check_len(space, v)
    v = vec(v)
    gens = space.cone_generators
    p = LpProblem.build(
        "min",
        [0] * len(gens),
        a_eq=[[g[i] for g in gens] for i in range(space.dim)],
        b_eq=v,
    )
    o = exact_lp.solve(p)
    if isinstance(o, exact_lp.Optimal):
        return ConeCertificate(coefficients=o.x)
    # Farkas: <y, g_j> >= 0 for all generators and <y, v> < 0
    return ConeCertificate(separator=o.y_eq)


def dual_cone_member(space: GptSpace, psi: Sequence | Functional) -> DualCheck:
    coords = psi.coords if isinstance(psi, Functional) else vec(psi)
    _check_len(space, coords)
    for g in space.cone_generators:
        val = dot(coords, g)
        if val < 0:
            return DualCheck(False, g, val)
    return DualCheck(True)


def is_state(space: GptSpace, psi: Sequence) -> bool:
    return bool(dual_cone_member(space, psi)) and dot(psi, space.order_unit) == 1


def is_classical(space: GptSpace) -> bool:
    rays = space.extreme_rays
    if len(rays) != space.dim or rank(rays) != space.dim:
        return False
    coeffs = solve([[r[i] for r in rays] for i in range(space.dim)], space.order_unit)
    return coeffs is not None and all(c > 0 for c in coeffs)


def _ray_basis(space: GptSpace) -> tuple[list, list]:
    """Extreme rays rescaled to sum to u, plus the coordinate-solving matrix."""
    rays = space.extreme_rays
    cols = [[r[i] for r in rays] for i in range(space.dim)]
    mu = solve(cols, space.order_unit)
    scaled = [tuple(m * x for x in r) for m, r in zip(mu, rays)]
    return scaled, [[r[i] for r in scaled] for i in range(space.dim)]


def classical_product(space: GptSpace, a: Sequence, b: Sequence) -> Vector:
    """The bilinear product with unit u, computed coordinatewise in the normalized ray basis."""
    if not is_classical(space):
        raise NotClassical(f"space {space.name or ''} has a non-simplicial cone")
    _check_len(space, a)
    _check_len(space, b)
    rays, cols = _ray_basis(space)
    alpha = solve(cols, vec(a))
    beta = solve(cols, vec(b))
    out = [Fraction(0)] * space.dim
    for x, y, r in zip(alpha, beta, rays):
        c = x * y
        if c:
            for i in range(space.dim):
                out[i] += c * r[i]
    return tuple(out)


def _interior_state(space: GptSpace) -> Vector:
    # max t  s.t. <sigma, g_j> >= t,  <sigma, u> = 1;  sigma and t free
    d = space.dim
    gens = space.cone_generators
    p = LpProblem.build(
        "max",
        [0] * d + [1],
        a_eq=[list(space.order_unit) + [0]],
        b_eq=[1],
        a_ub=[[-x for x in g] + [1] for g in gens],
        b_ub=[0] * len(gens),
        free=[True] * (d + 1),
    )
    o = exact_lp.solve(p)
    assert isinstance(o, exact_lp.Optimal) and o.value > 0
    return o.x[:d]


# ---------------------------------------------------------------- standard spaces


@lru_cache(maxsize=None)
def _polygon_table() -> dict:
    text = resources.files("gptmeasure").joinpath("data/polygons.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def classical(n: int) -> GptSpace:
    if n < 1:
        raise UnsupportedKind("classical(n) needs n >= 1")
    gens = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    return make_space(n, [1] * n, gens, f"classical({n})")


@lru_cache(maxsize=None)
def gbit() -> GptSpace:
    gens = [(1, 1, 0), (1, -1, 0), (1, 0, 1), (1, 0, -1)]
    return make_space(3, (1, 0, 0), gens, "gbit")


@lru_cache(maxsize=None)
def polygon(k: int) -> GptSpace:
    if k < 3:
        raise UnsupportedKind("polygon(k) needs k >= 3")
    if k == 4:
        s = gbit()
        return GptSpace(s.dim, s.order_unit, s.cone_generators, "polygon(4)")
    table = _polygon_table()
    if str(k) not in table:
        raise UnsupportedKind(f"no rational vertex data shipped for polygon({k})")
    gens = [["1"] + pt for pt in table[str(k)]]
    return make_space(3, (1, 0, 0), gens, f"polygon({k})")


_KIND = re.compile(r"^\s*(classical|polygon)\s*\(\s*(\d+)\s*\)\s*$")


def standard_space(kind: str) -> GptSpace:
    """``"classical(n)"``, ``"gbit"`` or ``"polygon(k)"``."""
    if kind.strip() == "gbit":
        return gbit()
    m = _KIND.match(kind)
    if not m:
        raise UnsupportedKind(f"unknown space kind {kind!r}")
    n = int(m.group(2))
    return classical(n) if m.group(1) == "classical" else polygon(n)
