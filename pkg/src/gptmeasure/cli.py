"""``gpt-measure``: batch front end over the library.

Exit codes: 0 success, 2 model validation failure, 3 a yes/no question answered "no"
(the payload carries the certificate), 64 usage, 65 unreadable or malformed JSON,
66 joint outcome set above ``--limit``, 70 a certificate failed to re-verify.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from typing import Sequence

from . import serialize as ser
from .config import RunConfig, resolve
from .errors import GptError, ProductTooLarge
from .evm import is_extremal, minimal_sufficient
from .gain import gain, gain_partitioned, gain_set, is_ensemble
from .gpt_core import cone_member, is_classical
from .incompatibility import is_compatible, p_g_comp, r_inc
from .order import Below, test_equivalence, test_post_processing
from .rational import fmt, vsum
from .simulability import is_simulable, q_succ, r_uns
from . import experiments, sampling, scenarios

EXIT_OK, EXIT_INVALID, EXIT_NO = 0, 2, 3
EXIT_USAGE, EXIT_BADJSON, EXIT_TOO_LARGE, EXIT_UNVERIFIED = 64, 65, 66, 70

DEMOS = ("pgep-grid", "gbit-incomparable", "gbit-rinc")


class UsageError(Exception):
    pass


class Unverified(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _check(ok: bool, what: str) -> None:
    if not ok:
        raise Unverified(what)


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _evms(paths: Sequence[str]):
    return [ser.evm_from_json(_load(p)) for p in paths]


def _exact_only(cfg: RunConfig, cmd: str) -> None:
    if cfg.arithmetic != "exact":
        raise UsageError(f"{cmd} emits certificates and runs in exact arithmetic only")


# commands return (payload, exit code)


def cmd_space_validate(cfg, a):
    _exact_only(cfg, "space validate")
    sp = ser.space_from_json(_load(a.space))
    return {
        "valid": True,
        "space": ser.space_to_json(sp),
        "classical": is_classical(sp),
        "extreme_rays": len(sp.extreme_rays),
    }, EXIT_OK


def cmd_evm_validate(cfg, a):
    _exact_only(cfg, "evm validate")
    m = ser.evm_from_json(_load(a.evm))
    return {
        "valid": True,
        "evm": ser.evm_to_json(m),
        "extremal": is_extremal(m),
        "minimal_sufficient": ser.evm_to_json(minimal_sufficient(m)),
    }, EXIT_OK


def cmd_gain_eval(cfg, a):
    _exact_only(cfg, "gain eval")
    fam = ser.family_from_json(_load(a.family))
    ms = _evms(a.evms)
    if len(ms) == 1:
        value, rule = gain(fam, ms[0], with_rule=True)
        return {"value": fmt(value), "rule": dict(rule), "ensemble": is_ensemble(ms[0].space, fam)}, EXIT_OK
    return {"value": fmt(gain_set(fam, ms)), "ensemble": is_ensemble(ms[0].space, fam)}, EXIT_OK


def _verified_verdict(v, m_a, m_b):
    _check(v.verify(m_a, m_b), "order certificate")
    out = ser.verdict_to_json(v)
    out["verified"] = True
    return out


def cmd_order_test(cfg, a):
    _exact_only(cfg, "order test")
    m_a, m_b = _evms([a.a, a.b])
    v = test_post_processing(m_a, m_b)
    return _verified_verdict(v, m_a, m_b), EXIT_OK if isinstance(v, Below) else EXIT_NO


def cmd_order_equiv(cfg, a):
    _exact_only(cfg, "order equiv")
    m_a, m_b = _evms([a.a, a.b])
    e = test_equivalence(m_a, m_b)
    out = {
        "equivalent": e.equivalent,
        "forward": _verified_verdict(e.forward, m_a, m_b),
        "backward": _verified_verdict(e.backward, m_b, m_a) if e.backward is not None else None,
    }
    return out, EXIT_OK if e.equivalent else EXIT_NO


def cmd_sim_test(cfg, a):
    _exact_only(cfg, "sim test")
    m, *ls = _evms([a.target, *a.simulators])
    r = is_simulable(m, ls)
    if r.simulable:
        _check(r.witness.verify(m, ls), "simulation witness")
    else:
        sep = r.separator
        _check(is_ensemble(m.space, sep), "separator is an ensemble")
        _check(gain(sep, m) == r.gain_target > gain_set(sep, ls) == r.gain_list, "strict separation")
    out = ser.sim_result_to_json(r)
    out["verified"] = True
    return out, EXIT_OK if r.simulable else EXIT_NO


def _float_payload(value):
    return {"value": value, "arithmetic": "float", "verified": False}


def cmd_sim_qsucc(cfg, a):
    m, *ls = _evms([a.target, *a.simulators])
    rep = q_succ(m, ls, arithmetic=cfg.arithmetic)
    if cfg.arithmetic == "float":
        return _float_payload(rep.value), EXIT_OK
    _check(rep.verified, "q_succ certificates")
    return ser.report_to_json(rep), EXIT_OK


def cmd_sim_runs(cfg, a):
    m, *ls = _evms([a.target, *a.simulators])
    rep = r_uns(m, ls, arithmetic=cfg.arithmetic)
    if cfg.arithmetic == "float":
        return _float_payload(rep.value), EXIT_OK
    _check(rep.verified, "R_uns certificates")
    return ser.report_to_json(rep), EXIT_OK


def _joint_ok(joint, fam) -> bool:
    sp = fam[0].space
    positive = all(cone_member(sp, e).member for e in joint.evm.effects)
    return positive and joint.margins_match(fam) and vsum(joint.evm.effects, sp.dim) == sp.order_unit


def cmd_incomp_test(cfg, a):
    _exact_only(cfg, "incomp test")
    fam = _evms(a.evms)
    r = is_compatible(fam, limit=cfg.limit)
    if r.compatible:
        _check(_joint_ok(r.joint, fam), "joint EVM margins")
    else:
        sp = fam[0].space
        _check(r.separator.total_weight(sp) == 1, "separator normalization")
        _check(gain_partitioned(r.separator, fam) == r.gain_family, "family gain")
        _check(r.gain_family > p_g_comp(r.separator, sp, limit=cfg.limit) == r.gain_comp, "strict separation")
    out = ser.compat_to_json(r)
    out["verified"] = True
    return out, EXIT_OK if r.compatible else EXIT_NO


def cmd_incomp_pgcomp(cfg, a):
    _exact_only(cfg, "incomp pgcomp")
    obj = _load(a.partitioned)
    if "space" not in obj:
        raise GptError("partitioned ensemble JSON for pgcomp needs a space")
    sp = ser.space_from_json(obj["space"])
    pe = ser.partitioned_from_json(obj)
    value, joint = p_g_comp(pe, sp, limit=cfg.limit, with_joint=True)
    return {"value": fmt(value), "primal": ser.joint_to_json(joint)}, EXIT_OK


def cmd_incomp_rinc(cfg, a):
    fam = _evms(a.evms)
    rep = r_inc(fam, limit=cfg.limit, arithmetic=cfg.arithmetic)
    if cfg.arithmetic == "float":
        return _float_payload(rep.value), EXIT_OK
    _check(rep.verified, "R_inc certificates")
    return ser.incomp_to_json(rep), EXIT_OK


def cmd_exper_compare(cfg, a):
    _exact_only(cfg, "exper compare")
    e1 = ser.experiment_from_json(_load(a.e1))
    e2 = ser.experiment_from_json(_load(a.e2))
    v = experiments.blackwell_compare(e1, e2)
    out = _verified_verdict(v, experiments.experiment_to_evm(e1), experiments.experiment_to_evm(e2))
    return out, EXIT_OK if isinstance(v, Below) else EXIT_NO


def demo_pgep_grid(cfg):
    rows = []
    for qq in scenarios.PGEP_Q:
        for p in scenarios.PGEP_P:
            v = scenarios.pgep_value(p, qq)
            _check(v == scenarios.pgep_formula(p, qq), "closed form")
            rows.append({"p": fmt(p), "q": fmt(qq), "P_g": fmt(v)})
    return rows


def demo_gbit_incomparable(cfg):
    mx, mz = scenarios.gbit_mx(), scenarios.gbit_mz()
    fwd, bwd = test_post_processing(mx, mz), test_post_processing(mz, mx)
    return {
        "MX_below_MZ": _verified_verdict(fwd, mx, mz),
        "MZ_below_MX": _verified_verdict(bwd, mz, mx),
        "incomparable": not isinstance(fwd, Below) and not isinstance(bwd, Below),
    }


def demo_gbit_rinc(cfg, samples: int = 100):
    fam = [scenarios.gbit_mx(), scenarios.gbit_mz()]
    rep = r_inc(fam, limit=cfg.limit)
    _check(rep.verified, "R_inc certificates")
    # seeded spot check of the inequality gain_partitioned <= (1 + R) * P_g^comp
    rng = random.Random(cfg.seed)
    sp = fam[0].space
    for _ in range(samples):
        pe = sampling.random_partitioned(sp, [m.outcomes for m in fam], rng)
        comp = p_g_comp(pe, sp, limit=cfg.limit)
        gap = gain_partitioned(pe, fam) - (1 + rep.value) * comp
        _check(gap <= 0, "random partitioned ensemble bound")
    out = ser.incomp_to_json(rep)
    out["random_check"] = {"seed": cfg.seed, "samples": samples, "all_within_bound": True}
    return out


def cmd_demo(cfg, a):
    _exact_only(cfg, "demo")
    if a.name == "pgep-grid":
        rows = demo_pgep_grid(cfg)
        if (cfg.fmt or "csv") == "csv":
            return rows, EXIT_OK
        return {"grid": rows}, EXIT_OK
    if cfg.fmt == "csv":
        raise UsageError("csv output is only available for demo pgep-grid")
    if a.name == "gbit-incomparable":
        return demo_gbit_incomparable(cfg), EXIT_OK
    return demo_gbit_rinc(cfg), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (overrides GPTM_SEED)")
    common.add_argument("--arith", choices=("exact", "float"), default=argparse.SUPPRESS)
    common.add_argument("--limit", type=int, default=argparse.SUPPRESS, help="joint outcome cap")
    common.add_argument("--format", choices=("json", "csv"), dest="fmt", default=argparse.SUPPRESS)

    top = _Parser(prog="gpt-measure", parents=[common], description=__doc__.splitlines()[0])
    groups = top.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(group, name, fn, *args):
        p = group.add_parser(name, parents=[common])
        for spec in args:
            if spec.endswith("+"):
                p.add_argument(spec[:-1], nargs="+")
            else:
                p.add_argument(spec)
        p.set_defaults(fn=fn)
        return p

    def group(name):
        return groups.add_parser(name).add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = group("space")
    leaf(g, "validate", cmd_space_validate, "space")
    g = group("evm")
    leaf(g, "validate", cmd_evm_validate, "evm")
    g = group("gain")
    leaf(g, "eval", cmd_gain_eval, "family", "evms+")
    g = group("order")
    leaf(g, "test", cmd_order_test, "a", "b")
    leaf(g, "equiv", cmd_order_equiv, "a", "b")
    g = group("sim")
    leaf(g, "test", cmd_sim_test, "target", "simulators+")
    leaf(g, "qsucc", cmd_sim_qsucc, "target", "simulators+")
    leaf(g, "runs", cmd_sim_runs, "target", "simulators+")
    g = group("incomp")
    leaf(g, "test", cmd_incomp_test, "evms+")
    leaf(g, "pgcomp", cmd_incomp_pgcomp, "partitioned")
    leaf(g, "rinc", cmd_incomp_rinc, "evms+")
    g = group("exper")
    leaf(g, "compare", cmd_exper_compare, "e1", "e2")
    g = group("demo")
    for name in DEMOS:
        p = leaf(g, name, cmd_demo)
        p.set_defaults(name=name)
    return top


def _config(a) -> RunConfig:
    given = vars(a)
    try:
        cfg = RunConfig(
            arithmetic=given.get("arith", "exact"),
            seed=given.get("seed", 0),
            limit=given.get("limit", RunConfig.limit),
            fmt=given.get("fmt"),
        )
        return resolve(cfg, seed_given="seed" in given)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _emit(payload, out, fmt_name: str | None) -> None:
    if isinstance(payload, list):
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(payload[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(payload)
        out.write(buf.getvalue())
    else:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _error(kind: str, exc: BaseException, out) -> None:
    out.write(json.dumps({"error": kind, "message": str(exc)}, indent=2, sort_keys=True) + "\n")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        a = build_parser().parse_args(argv)
        cfg = _config(a)
        if cfg.fmt == "csv" and a.group != "demo":
            raise UsageError("csv output is only available for demo pgep-grid")
        payload, code = a.fn(cfg, a)
    except UsageError as e:
        err.write(f"gpt-measure: {e}\n")
        return EXIT_USAGE
    except ValueError as e:
        if isinstance(e, ProductTooLarge):
            _error("ProductTooLarge", e, out)
            return EXIT_TOO_LARGE
        if isinstance(e, GptError):
            _error(type(e).__name__, e, out)
            return EXIT_INVALID
        # undecodable JSON or an unparsable rational
        _error("BadJson", e, out)
        return EXIT_BADJSON
    except (OSError, KeyError, TypeError, AttributeError) as e:
        _error("BadJson", e, out)
        return EXIT_BADJSON
    except Unverified as e:
        _error("Unverified", e, out)
        return EXIT_UNVERIFIED
    _emit(payload, out, cfg.fmt)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
