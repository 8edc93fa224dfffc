"""Finite-outcome effect-valued measures (EVMs) and the algebra acting on them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadDistribution,
    DimensionMismatch,
    DuplicateLabel,
    EffectNotPositive,
    LabelMismatch,
    NotAPartition,
    NotNormalized,
    SpaceMismatch,
)
from .gpt_core import GptSpace, cone_member
from .rational import Vector, add, is_zero, proportional, q, rank, scale, sub, vec, vsum


@dataclass(frozen=True)
class Evm:
    """Labelled effects ``M(x)``; constructed unchecked, use :func:`validate_evm` for input."""

    space: GptSpace
    outcomes: tuple
    effects: tuple

    def __getitem__(self, label: str) -> Vector:
        return self.effects[self.outcomes.index(label)]

    def items(self):
        return zip(self.outcomes, self.effects)

    def __len__(self) -> int:
        return len(self.outcomes)


@dataclass(frozen=True)
class StochasticMatrix:
    """``p[i][j] = p(rows[i] | cols[j])``; every column sums to one."""

    rows: tuple
    cols: tuple
    p: tuple

    def entry(self, x: str, y: str) -> Fraction:
        return self.p[self.rows.index(x)][self.cols.index(y)]

    def is_valid(self) -> bool:
        if len(self.p) != len(self.rows) or any(len(r) != len(self.cols) for r in self.p):
            return False
        if any(v < 0 for r in self.p for v in r):
            return False
        return all(sum(r[j] for r in self.p) == 1 for j in range(len(self.cols)))

    def compose(self, other: "StochasticMatrix") -> "StochasticMatrix":
        """``self`` after ``other``: (self o other)(x|z) = sum_y self(x|y) other(y|z)."""
        if tuple(self.cols) != tuple(other.rows):
            raise LabelMismatch("inner label sets differ")
        p = tuple(
            tuple(
                sum((self.p[i][k] * other.p[k][j] for k in range(len(self.cols))), Fraction(0))
                for j in range(len(other.cols))
            )
            for i in range(len(self.rows))
        )
        return StochasticMatrix(self.rows, other.cols, p)


def stochastic_matrix(rows, cols, p) -> StochasticMatrix:
    m = StochasticMatrix(tuple(rows), tuple(cols), tuple(tuple(q(v) for v in r) for r in p))
    if len(set(m.rows)) != len(m.rows) or len(set(m.cols)) != len(m.cols):
        raise DuplicateLabel("stochastic matrix labels must be distinct")
    if not m.is_valid():
        raise BadDistribution("entries must be nonnegative with unit column sums")
    return m


def identity_matrix(labels: Sequence[str]) -> StochasticMatrix:
    labels = tuple(labels)
    n = len(labels)
    return StochasticMatrix(
        labels, labels, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    )


@dataclass(frozen=True)
class OutcomePartition:
    blocks: tuple


def validate_evm(space: GptSpace, effects: Mapping | Iterable) -> Evm:
    """Check positivity of each effect and exact normalization ``sum_x M(x) = u``."""
    pairs = list(effects.items()) if isinstance(effects, Mapping) else list(effects)
    if not pairs:
        raise BadDistribution("an EVM needs at least one outcome")
    labels = [str(k) for k, _ in pairs]
    seen = set()
    for lab in labels:
        if lab in seen:
            raise DuplicateLabel(f"outcome label {lab!r} repeated")
        seen.add(lab)
    vecs = [vec(v) for _, v in pairs]
    if any(len(v) != space.dim for v in vecs):
        raise DimensionMismatch(f"effects must have length {space.dim}")
    for lab, v in zip(labels, vecs):
        cert = cone_member(space, v)
        if not cert.member:
            raise EffectNotPositive(lab, cert.separator)
    residual = sub(vsum(vecs, space.dim), space.order_unit)
    if not is_zero(residual):
        raise NotNormalized(residual)
    return Evm(space, tuple(labels), tuple(vecs))


def trivial_evm(space: GptSpace, probs: Mapping) -> Evm:
    """``M(x) = probs[x] * u``."""
    ps = {str(k): q(v) for k, v in probs.items()}
    if not ps or any(v < 0 for v in ps.values()) or sum(ps.values()) != 1:
        raise BadDistribution("trivial EVM needs a probability distribution")
    return Evm(space, tuple(ps), tuple(scale(v, space.order_unit) for v in ps.values()))


def _same_space(a: Evm, b: Evm) -> None:
    if a.space != b.space:
        raise SpaceMismatch("EVMs live on different spaces")


def mix_direct_sum(lam, a: Evm, b: Evm) -> Evm:
    """Perform ``a`` with probability lam, else ``b``; labels ``"0:"+x`` and ``"1:"+y``."""
    _same_space(a, b)
    lam = q(lam)
    if not 0 <= lam <= 1:
        raise BadDistribution("mixing weight must lie in [0, 1]")
    outcomes = tuple("0:" + x for x in a.outcomes) + tuple("1:" + y for y in b.outcomes)
    effects = tuple(scale(lam, e) for e in a.effects) + tuple(scale(1 - lam, e) for e in b.effects)
    return Evm(a.space, outcomes, effects)


def mix_pointwise(lam, a: Evm, b: Evm) -> Evm:
    _same_space(a, b)
    if set(a.outcomes) != set(b.outcomes):
        raise LabelMismatch("pointwise mixing needs identical outcome sets")
    lam = q(lam)
    if not 0 <= lam <= 1:
        raise BadDistribution("mixing weight must lie in [0, 1]")
    effects = tuple(add(scale(lam, e), scale(1 - lam, b[x])) for x, e in a.items())
    return Evm(a.space, a.outcomes, effects)


def post_process(m: Evm, p: StochasticMatrix) -> Evm:
    """``A(x) = sum_y p(x|y) M(y)``."""
    if tuple(p.cols) != tuple(m.outcomes):
        if set(p.cols) != set(m.outcomes) or len(p.cols) != len(m.outcomes):
            raise LabelMismatch("matrix columns must be the EVM's outcomes")
    d = m.space.dim
    effects = []
    for row in p.p:
        acc = [Fraction(0)] * d
        for y, w in zip(p.cols, row):
            if w:
                e = m[y]
                for i in range(d):
                    acc[i] += w * e[i]
        effects.append(tuple(acc))
    return Evm(m.space, tuple(p.rows), tuple(effects))


def partition_matrix(m: Evm, partition: OutcomePartition, labels=None) -> StochasticMatrix:
    """Deterministic block matrix sending each outcome to its block."""
    blocks = [tuple(b) for b in partition.blocks]
    flat = [x for b in blocks for x in b]
    if (
        any(len(b) == 0 for b in blocks)
        or len(flat) != len(set(flat))
        or set(flat) != set(m.outcomes)
    ):
        raise NotAPartition("blocks must be disjoint, nonempty and cover the outcomes")
    if labels is None:
        labels = ["|".join(b) for b in blocks]
    p = tuple(tuple(Fraction(int(y in b)) for y in m.outcomes) for b in blocks)
    return StochasticMatrix(tuple(labels), m.outcomes, p)


def coarse_grain(m: Evm, partition: OutcomePartition) -> Evm:
    """One effect per block (block labels joined with "|")."""
    return post_process(m, partition_matrix(m, partition))


def minimal_sufficient(m: Evm) -> Evm:
    """Drop zero effects and merge proportional ones; merged label is the least member label."""
    groups: list[list[int]] = []
    for i, e in enumerate(m.effects):
        if is_zero(e):
            continue
        for g in groups:
            if proportional(m.effects[g[0]], e):
                g.append(i)
                break
        else:
            groups.append([i])
    d = m.space.dim
    labels = tuple(min(m.outcomes[i] for i in g) for g in groups)
    effects = tuple(vsum((m.effects[i] for i in g), d) for g in groups)
    return Evm(m.space, labels, effects)


def merge_matrix(m: Evm) -> StochasticMatrix:
    """Stochastic matrix witnessing ``minimal_sufficient(m) <=_post m``."""
    ms = minimal_sufficient(m)
    cols = []
    for x, e in m.items():
        if is_zero(e):
            # zero effects carry no weight; any column works
            cols.append([Fraction(int(k == 0)) for k in range(len(ms))])
        else:
            k = next(k for k, f in enumerate(ms.effects) if proportional(f, e))
            cols.append([Fraction(int(j == k)) for j in range(len(ms))])
    p = tuple(tuple(cols[j][i] for j in range(len(m))) for i in range(len(ms)))
    return StochasticMatrix(ms.outcomes, m.outcomes, p)


def is_extremal(m: Evm) -> bool:
    """Linear independence of the effects of the minimally sufficient representative."""
    ms = minimal_sufficient(m)
    return rank(list(ms.effects)) == len(ms)


def relabel(m: Evm, mapping: Mapping[str, str]) -> Evm:
    return Evm(m.space, tuple(mapping.get(x, x) for x in m.outcomes), m.effects)
