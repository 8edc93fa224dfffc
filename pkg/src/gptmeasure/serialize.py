"""JSON encoding of models and certificates. Rationals are always "p/q" strings."""
from __future__ import annotations

from typing import Any

from .errors import GptError
from .evm import Evm, StochasticMatrix, stochastic_matrix, validate_evm
from .experiments import StatExperiment, experiment
from .gain import PartitionedEnsemble, WStarFamily, family
from .gpt_core import GptSpace, standard_space, validate_space
from .incompatibility import CompatResult, IncompReport, JointEvm
from .order import Below, Equivalence, NotBelow
from .rational import fmt, fmt_vec
from .simulability import RobustnessReport, SimResult, SimWitness


def space_from_json(obj) -> GptSpace:
    if isinstance(obj, str):
        return standard_space(obj)
    if isinstance(obj, dict):
        return validate_space(obj)
    raise GptError("space must be a standard name or an inline object")


def space_to_json(space: GptSpace):
    if space.name:
        try:
            if standard_space(space.name) == space:
                return space.name
        except GptError:
            pass
    return space.to_dict()


def evm_from_json(obj: dict, space: GptSpace | None = None) -> Evm:
    if "space" in obj:
        space = space_from_json(obj["space"])
    if space is None:
        raise GptError("EVM JSON needs a space")
    effects = obj["effects"]
    if isinstance(effects, dict):
        return validate_evm(space, effects)
    return validate_evm(space, [(e["label"], e["effect"]) for e in effects])


def evm_to_json(m: Evm) -> dict:
    return {"space": space_to_json(m.space), "effects": {x: fmt_vec(e) for x, e in m.items()}}


def matrix_from_json(obj: dict) -> StochasticMatrix:
    return stochastic_matrix(obj["rows"], obj["cols"], obj["p"])


def matrix_to_json(p: StochasticMatrix) -> dict:
    return {"rows": list(p.rows), "cols": list(p.cols), "p": [fmt_vec(r) for r in p.p]}


def family_from_json(obj: dict) -> WStarFamily:
    return family(obj["labels"], obj["functionals"])


def family_to_json(f: WStarFamily) -> dict:
    return {"labels": list(f.labels), "functionals": [fmt_vec(v) for v in f.functionals]}


def partitioned_from_json(obj: dict) -> PartitionedEnsemble:
    parts = tuple(family_from_json(p) for p in obj["parts"])
    labels = tuple(str(x) for x in obj.get("labels", range(len(parts))))
    return PartitionedEnsemble(labels, parts)


def partitioned_to_json(pe: PartitionedEnsemble) -> dict:
    return {"labels": list(pe.labels), "parts": [family_to_json(p) for p in pe.parts]}


def experiment_from_json(obj: dict) -> StatExperiment:
    return experiment(obj["params"], obj["samples"], obj["kernel"])


def experiment_to_json(e: StatExperiment) -> dict:
    return {"params": list(e.params), "samples": list(e.samples), "kernel": [fmt_vec(r) for r in e.kernel]}


def verdict_to_json(v) -> dict:
    if isinstance(v, Below):
        return {"verdict": "Below", "witness": matrix_to_json(v.witness)}
    assert isinstance(v, NotBelow)
    return {
        "verdict": "NotBelow",
        "separator": family_to_json(v.separator),
        "gainA": fmt(v.gain_a),
        "gainB_bound": fmt(v.gain_b),
    }


def equivalence_to_json(e: Equivalence) -> dict:
    return {
        "equivalent": e.equivalent,
        "forward": verdict_to_json(e.forward),
        "backward": verdict_to_json(e.backward),
    }


def witness_to_json(w: SimWitness) -> dict:
    return {
        "outcomes": list(w.outcomes),
        "weights": fmt_vec(w.weights),
        "kernels": [[fmt_vec(r) for r in k] for k in w.kernels],
    }


def sim_result_to_json(r: SimResult) -> dict:
    if r.simulable:
        return {"simulable": True, "witness": witness_to_json(r.witness)}
    return {
        "simulable": False,
        "separator": family_to_json(r.separator),
        "gain_target": fmt(r.gain_target),
        "gain_list": fmt(r.gain_list),
    }


def _value(v: Any):
    return v if isinstance(v, float) or v is None else fmt(v)


def report_to_json(r: RobustnessReport) -> dict:
    return {
        "value": _value(r.value),
        "primal": witness_to_json(r.primal) if r.primal else None,
        "noise": evm_to_json(r.noise) if r.noise else None,
        "dual_ensemble": family_to_json(r.dual_ensemble) if r.dual_ensemble else None,
        "verified": r.verified,
        "note": r.note,
    }


def joint_to_json(j: JointEvm) -> dict:
    return evm_to_json(j.evm)


def compat_to_json(r: CompatResult) -> dict:
    if r.compatible:
        return {"compatible": True, "joint": joint_to_json(r.joint)}
    return {
        "compatible": False,
        "separator": partitioned_to_json(r.separator),
        "gain_family": fmt(r.gain_family),
        "pg_comp": fmt(r.gain_comp),
    }


def incomp_to_json(r: IncompReport) -> dict:
    return {
        "value": _value(r.value),
        "primal": joint_to_json(r.joint) if r.joint else None,
        "dual_ensemble": partitioned_to_json(r.dual) if r.dual else None,
        "pg_comp": fmt(r.pg_comp) if r.pg_comp is not None else None,
        "verified": r.verified,
        "note": r.note,
    }
