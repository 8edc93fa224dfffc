"""Finite classical statistical experiments as measurements on classical(|params|)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BadDistribution, DuplicateLabel, NotAState, ParameterMismatch
from .evm import Evm
from .gpt_core import classical, is_state
from .order import OrderVerdict, test_post_processing
from .rational import dot, q


@dataclass(frozen=True)
class StatExperiment:
    """Row-stochastic kernel: ``kernel[i][s] = P(params[i], samples[s])``."""

    params: tuple
    samples: tuple
    kernel: tuple


def experiment(params: Sequence, samples: Sequence, kernel: Sequence[Sequence]) -> StatExperiment:
    params = tuple(str(t) for t in params)
    samples = tuple(str(s) for s in samples)
    if len(set(params)) != len(params) or len(set(samples)) != len(samples):
        raise DuplicateLabel("parameter and sample labels must be distinct")
    rows = tuple(tuple(q(v) for v in r) for r in kernel)
    if len(rows) != len(params) or any(len(r) != len(samples) for r in rows):
        raise BadDistribution("kernel shape must be |params| x |samples|")
    if any(v < 0 for r in rows for v in r) or any(sum(r) != 1 for r in rows):
        raise BadDistribution("every kernel row must be a probability distribution")
    return StatExperiment(params, samples, rows)


def experiment_to_evm(e: StatExperiment) -> Evm:
    space = classical(len(e.params))
    effects = tuple(tuple(row[s] for row in e.kernel) for s in range(len(e.samples)))
    return Evm(space, e.samples, effects)


def evm_to_experiment(m: Evm, states: Sequence[tuple]) -> StatExperiment:
    """``P(theta, x) = <psi_theta, M(x)>`` for a labelled list of states ``(theta, psi)``."""
    params, rows = [], []
    for label, psi in states:
        psi = tuple(q(v) for v in psi)
        if len(psi) != m.space.dim or not is_state(m.space, psi):
            raise NotAState(f"{label!r} is not a normalized positive functional")
        params.append(str(label))
        rows.append(tuple(dot(psi, e) for e in m.effects))
    return StatExperiment(tuple(params), tuple(m.outcomes), tuple(rows))


def point_states(n: int) -> list[tuple]:
    return [(str(i), tuple(Fraction(int(i == j)) for j in range(n))) for i in range(n)]


def blackwell_compare(e1: StatExperiment, e2: StatExperiment) -> OrderVerdict:
    """Is ``e1`` a garbling of ``e2``? The Below witness is the garbling matrix."""
    if e1.params != e2.params:
        raise ParameterMismatch("experiments must share one parameter set")
    return test_post_processing(experiment_to_evm(e1), experiment_to_evm(e2))
