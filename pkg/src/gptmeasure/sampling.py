"""Seeded random models with small denominators, for property tests and demos."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from . import exact_lp
from .evm import Evm, OutcomePartition, StochasticMatrix
from .exact_lp import LpProblem
from .gain import Ensemble, PartitionedEnsemble, WStarFamily
from .gpt_core import GptSpace
from .rational import add, dot, scale


def _weights(rng: random.Random, n: int, hi: int = 4) -> list[Fraction]:
    w = [rng.randint(0, hi) for _ in range(n)]
    if sum(w) == 0:
        w[rng.randrange(n)] = 1
    t = sum(w)
    return [Fraction(x, t) for x in w]


def unit_decomposition(space: GptSpace, rng: random.Random) -> tuple:
    """Generator coefficients ``mu >= 0`` with ``sum_j mu_j g_j = u`` (random vertex mix)."""
    gens = space.cone_generators
    rows = [[g[i] for g in gens] for i in range(space.dim)]
    pts = []
    for _ in range(2):
        c = [rng.randint(-3, 3) for _ in gens]
        o = exact_lp.solve(LpProblem.build("min", c, a_eq=rows, b_eq=space.order_unit, a_ub=[[1] * len(gens)], b_ub=[len(gens) * 8]))
        pts.append(o.x)
    return tuple((a + b) / 2 for a, b in zip(*pts))


def random_evm(space: GptSpace, n_outcomes: int, rng: random.Random, prefix: str = "") -> Evm:
    """Split a random decomposition of ``u`` among the outcomes.

    Half of the draws assign each generator to a single outcome, which gives sharp
    (often mutually incompatible) measurements; the rest spread it with random weights.
    """
    mu = unit_decomposition(space, rng)
    d = space.dim
    sharp = rng.random() < 0.5
    effects = [[Fraction(0)] * d for _ in range(n_outcomes)]
    for j, g in enumerate(space.cone_generators):
        if mu[j] == 0:
            continue
        if sharp:
            split = [Fraction(0)] * n_outcomes
            split[rng.randrange(n_outcomes)] = Fraction(1)
        else:
            split = _weights(rng, n_outcomes)
        for x, w in enumerate(split):
            if w:
                for k in range(d):
                    effects[x][k] += w * mu[j] * g[k]
    labels = tuple(f"{prefix}{i}" for i in range(n_outcomes))
    return Evm(space, labels, tuple(tuple(e) for e in effects))


def random_positive_functional(space: GptSpace, rng: random.Random, den: int = 6) -> tuple:
    """``sigma + eps*v``, eps below the largest positivity-preserving step so the result stays interior."""
    sigma = space.interior_state
    v = tuple(Fraction(rng.randint(-den, den), den) for _ in range(space.dim))
    limit = None
    for g in space.cone_generators:
        vg = dot(v, g)
        if vg < 0:
            step = dot(sigma, g) / -vg
            limit = step if limit is None else min(limit, step)
    if limit is None:
        limit = Fraction(1)
    eps = limit * Fraction(rng.randint(0, 3), 4)
    return add(sigma, scale(eps, v))


def random_ensemble(space: GptSpace, labels: Sequence[str], rng: random.Random) -> Ensemble:
    fs = []
    for w in _weights(rng, len(labels)):
        psi = random_positive_functional(space, rng)
        fs.append(scale(w / dot(psi, space.order_unit), psi))
    return Ensemble(tuple(labels), tuple(fs))


def random_partitioned(space: GptSpace, part_labels: Sequence[Sequence[str]], rng: random.Random) -> PartitionedEnsemble:
    flat = [(i, y) for i, labs in enumerate(part_labels) for y in labs]
    ws = _weights(rng, len(flat))
    parts = [[] for _ in part_labels]
    for (i, _), w in zip(flat, ws):
        psi = random_positive_functional(space, rng)
        parts[i].append(scale(w / dot(psi, space.order_unit), psi))
    return PartitionedEnsemble(
        tuple(str(i) for i in range(len(part_labels))),
        tuple(WStarFamily(tuple(labs), tuple(fs)) for labs, fs in zip(part_labels, parts)),
    )


def random_stochastic(rows: Sequence[str], cols: Sequence[str], rng: random.Random) -> StochasticMatrix:
    columns = [_weights(rng, len(rows)) for _ in cols]
    p = tuple(tuple(columns[j][i] for j in range(len(cols))) for i in range(len(rows)))
    return StochasticMatrix(tuple(rows), tuple(cols), p)


def random_partition(labels: Sequence[str], rng: random.Random) -> OutcomePartition:
    k = rng.randint(1, len(labels))
    blocks = [[] for _ in range(k)]
    order = list(labels)
    rng.shuffle(order)
    for i, x in enumerate(order):
        blocks[i % k if i < k else rng.randrange(k)].append(x)
    return OutcomePartition(tuple(tuple(b) for b in blocks))
