"""Ensembles, w*-families and the state-discrimination gain functionals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, EmptyList, GptError, SpaceMismatch
from .evm import Evm
from .gpt_core import GptSpace, dual_cone_member
from .rational import Vector, add, dot, scale, vec


@dataclass(frozen=True)
class WStarFamily:
    labels: tuple
    functionals: tuple

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return len(self.functionals[0])

    def negated(self) -> "WStarFamily":
        return WStarFamily(self.labels, tuple(tuple(-x for x in f) for f in self.functionals))

    def scaled(self, alpha) -> "WStarFamily":
        return WStarFamily(self.labels, tuple(scale(alpha, f) for f in self.functionals))


class Ensemble(WStarFamily):
    """A w*-family of dual-cone functionals with total weight one."""


@dataclass(frozen=True)
class PartitionedEnsemble:
    labels: tuple
    parts: tuple  # WStarFamily per label

    def total_weight(self, space: GptSpace) -> Fraction:
        u = space.order_unit
        return sum((dot(f, u) for p in self.parts for f in p.functionals), Fraction(0))


def family(labels: Sequence, functionals: Sequence) -> WStarFamily:
    labels = tuple(str(x) for x in labels)
    fs = tuple(vec(f) for f in functionals)
    if not labels or len(labels) != len(fs):
        raise GptError("a w*-family needs one functional per label and at least one label")
    if len(set(labels)) != len(labels):
        raise GptError("family labels must be distinct")
    if len({len(f) for f in fs}) != 1:
        raise DimensionMismatch("functionals of a family must share one dimension")
    return WStarFamily(labels, fs)


def is_ensemble(space: GptSpace, fam: WStarFamily) -> bool:
    if fam.dim != space.dim:
        return False
    if not all(dual_cone_member(space, f) for f in fam.functionals):
        return False
    return sum((dot(f, space.order_unit) for f in fam.functionals), Fraction(0)) == 1


def ensemble(space: GptSpace, labels: Sequence, functionals: Sequence) -> Ensemble:
    fam = family(labels, functionals)
    if not is_ensemble(space, fam):
        raise GptError("ensemble functionals must be positive with total weight one")
    return Ensemble(fam.labels, fam.functionals)


def partitioned_ensemble(space: GptSpace, labels: Sequence, parts: Sequence[WStarFamily]):
    pe = PartitionedEnsemble(tuple(str(x) for x in labels), tuple(parts))
    if len(pe.labels) != len(pe.parts) or not pe.parts:
        raise GptError("one sub-family per part label")
    for p in pe.parts:
        if p.dim != space.dim or not all(dual_cone_member(space, f) for f in p.functionals):
            raise GptError("partitioned ensemble functionals must be positive")
    if pe.total_weight(space) != 1:
        raise GptError("partitioned ensemble must have total weight one")
    return pe


def _check_dim(fam: WStarFamily, m: Evm) -> None:
    if fam.dim != m.space.dim:
        raise DimensionMismatch(f"family of dim {fam.dim} against a space of dim {m.space.dim}")


def gain(fam: WStarFamily, m: Evm, *, with_rule: bool = False):
    """``sum_x max_y <phi_y, M(x)>``; optionally with the argmax decision rule.

    Ties go to the lexicographically least family label.
    """
    _check_dim(fam, m)
    order = sorted(range(len(fam)), key=lambda k: fam.labels[k])
    total = Fraction(0)
    rule = {}
    for x, e in m.items():
        best_k, best = None, None
        for k in order:
            v = dot(fam.functionals[k], e)
            if best is None or v > best:
                best_k, best = k, v
        total += best
        rule[x] = fam.labels[best_k]
    return (total, rule) if with_rule else total


def loss(fam: WStarFamily, m: Evm) -> Fraction:
    return -gain(fam.negated(), m)


def gain_set(fam: WStarFamily, ms: Sequence[Evm]) -> Fraction:
    """Best gain over a finite list of measurements (equals the sup over its closed hull)."""
    if not ms:
        raise EmptyList("gain over an empty measurement list")
    if any(m.space != ms[0].space for m in ms):
        raise SpaceMismatch("measurements on different spaces")
    return max(gain(fam, m) for m in ms)


def gain_partitioned(pe: PartitionedEnsemble, ms: Sequence[Evm] | Evm) -> Fraction:
    """``sum_x gain_set(E_x, ms)``: each part chooses its own best measurement."""
    if isinstance(ms, Evm):
        ms = [ms]
    return sum((gain_set(p, ms) for p in pe.parts), Fraction(0))


def _shift_for(space: GptSpace, functionals) -> Fraction:
    """Least power of two beta with every phi + beta*sigma dual-positive (0 if none needed)."""
    sigma = space.interior_state
    need = Fraction(0)
    for f in functionals:
        for g in space.cone_generators:
            v = dot(f, g)
            if v < 0:
                need = max(need, -v / dot(sigma, g))
    if need == 0:
        return Fraction(0)
    beta = Fraction(1)
    while beta < need:
        beta *= 2
    while beta / 2 >= need:
        beta /= 2
    return beta


def decompose_family(space: GptSpace, fam: WStarFamily):
    """Return ``(alpha, E', psi)`` with ``phi_x = alpha*phi'_x + psi`` and ``E'`` an ensemble.

    ``psi = -beta*sigma`` for the space's interior state ``sigma``; then
    ``gain(fam, M) == alpha*gain(E', M) + <psi, u>`` for every EVM ``M``.
    """
    if fam.dim != space.dim:
        raise DimensionMismatch("family and space dimensions differ")
    sigma = space.interior_state
    u = space.order_unit
    beta = _shift_for(space, fam.functionals)
    shifted = [add(f, scale(beta, sigma)) for f in fam.functionals]
    alpha = sum((dot(f, u) for f in shifted), Fraction(0))
    if alpha == 0:
        # all functionals vanish; any positive shift gives a valid decomposition
        beta = Fraction(1)
        shifted = [add(f, sigma) for f in fam.functionals]
        alpha = sum((dot(f, u) for f in shifted), Fraction(0))
    ens = Ensemble(fam.labels, tuple(scale(1 / alpha, f) for f in shifted))
    psi = scale(-beta, sigma)
    return alpha, ens, psi


def decompose_partitioned(space: GptSpace, pe: PartitionedEnsemble):
    """Shift every functional by the same ``beta*sigma`` and rescale to total weight one.

    Returns ``(alpha, partitioned ensemble, beta)``. Both the partitioned gain and the
    post-measurement-information value transform as ``v -> (v + |parts|*beta)/alpha``.
    """
    sigma = space.interior_state
    u = space.order_unit
    beta = _shift_for(space, [f for p in pe.parts for f in p.functionals])
    shifted = [[add(f, scale(beta, sigma)) for f in p.functionals] for p in pe.parts]
    alpha = sum((dot(f, u) for p in shifted for f in p), Fraction(0))
    if alpha == 0:
        beta = Fraction(1)
        shifted = [[add(f, sigma) for f in p.functionals] for p in pe.parts]
        alpha = sum((dot(f, u) for p in shifted for f in p), Fraction(0))
    parts = tuple(
        WStarFamily(p.labels, tuple(scale(1 / alpha, f) for f in fs)) for p, fs in zip(pe.parts, shifted)
    )
    return alpha, PartitionedEnsemble(pe.labels, parts), beta


def conic_gain_eval(alpha, terms: Sequence[tuple], m: Evm) -> Fraction:
    """``alpha + sum_i beta_i * gain(E_i, M)`` with all ``beta_i >= 0``."""
    total = Fraction(alpha)
    for beta, ens in terms:
        beta = Fraction(beta)
        if beta < 0:
            raise GptError("conic coefficients must be nonnegative")
        total += beta * gain(ens, m)
    return total
