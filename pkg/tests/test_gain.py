import random
from fractions import Fraction

import pytest
from hypothesis import given

from gptmeasure import scenarios as sc
from gptmeasure.errors import DimensionMismatch, EmptyList, GptError
from gptmeasure.evm import mix_direct_sum, post_process, trivial_evm
from gptmeasure.gain import (
    PartitionedEnsemble,
    conic_gain_eval,
    decompose_family,
    decompose_partitioned,
    ensemble,
    family,
    gain,
    gain_partitioned,
    gain_set,
    is_ensemble,
    loss,
    partitioned_ensemble,
)
from gptmeasure.gpt_core import classical, gbit
from gptmeasure.rational import add, dot, scale
from gptmeasure.sampling import random_ensemble, random_evm, random_partitioned, random_stochastic
from strategies import evms, rationals, seeds, unit_interval

H, Q = Fraction(1, 2), Fraction(1, 4)


def x_ensemble():
    return ensemble(gbit(), ["0", "1"], [(H, H, H), (H, -H, -H)])


def test_pgep_value_at_quarter():
    assert gain(sc.pgep_family(Q), sc.pgep_evm(1)) == H == sc.pgep_formula(Q, 1)


def test_gbit_x_ensemble_on_mx():
    value, rule = gain(x_ensemble(), sc.gbit_mx(), with_rule=True)
    assert value == 1
    assert rule == {"+": "0", "-": "1"}


def test_gain_on_trivial_is_max_weight():
    e = x_ensemble()
    t = trivial_evm(gbit(), {"a": Fraction(1, 3), "b": Fraction(2, 3)})
    assert gain(e, t) == max(dot(f, gbit().order_unit) for f in e.functionals)


def test_ties_break_to_least_label():
    fam = family(["b", "a"], [(1, 1), (1, 1)])
    _, rule = gain(fam, sc.classical_identity(), with_rule=True)
    assert set(rule.values()) == {"a"}


def test_gain_set_examples():
    e = x_ensemble()
    assert gain_set(e, [sc.gbit_mx()]) == gain(e, sc.gbit_mx())
    # (1/2,1/2,1/2) is a corner of the square state space, so M_Z also discriminates perfectly
    assert gain(e, sc.gbit_mz()) == 1
    assert gain_set(e, [sc.gbit_mx(), sc.gbit_mz()]) == 1
    w = Fraction(2, 7)
    pts = ensemble(classical(2), ["0", "1"], [(w, 0), (0, 1 - w)])
    assert gain_set(pts, [sc.coin(), sc.classical_identity()]) == 1
    with pytest.raises(EmptyList):
        gain_set(e, [])


def xz_partitioned():
    px = family(["+", "-"], [(Q, Q, 0), (Q, -Q, 0)])
    pz = family(["+", "-"], [(Q, 0, Q), (Q, 0, -Q)])
    return partitioned_ensemble(gbit(), ["X", "Z"], [px, pz])


def test_gain_partitioned_examples():
    pe = xz_partitioned()
    assert gain_partitioned(pe, [sc.gbit_mx(), sc.gbit_mz()]) == 1
    assert gain_partitioned(pe, [trivial_evm(gbit(), {"h": H, "t": H})]) == H
    single = PartitionedEnsemble(("X",), (x_ensemble(),))
    assert gain_partitioned(single, [sc.gbit_mx(), sc.gbit_mz()]) == gain_set(x_ensemble(), [sc.gbit_mx(), sc.gbit_mz()])


def test_decompose_ensemble_is_identity():
    alpha, e, psi = decompose_family(gbit(), x_ensemble())
    assert alpha == 1 and e == x_ensemble() and psi == (0, 0, 0)


def test_decompose_classical_example():
    alpha, e, psi = decompose_family(classical(2), family(["0", "1"], [(-1, 0), (0, 0)]))
    assert alpha == 3
    assert e.functionals == ((0, Fraction(1, 3)), (Fraction(1, 3), Fraction(1, 3)))
    assert psi == (-1, -1)


@pytest.mark.parametrize("p", [Fraction(1, 8), H, Fraction(7, 8)])
def test_decompose_pgep_family(p):
    fam = sc.pgep_family(p)
    alpha, e, psi = decompose_family(classical(2), fam)
    assert is_ensemble(classical(2), e)
    assert all(add(scale(alpha, f2), psi) == f for f, f2 in zip(fam.functionals, e.functionals))
    for qq in sc.PGEP_Q:
        m = sc.pgep_evm(qq)
        assert gain(fam, m) == alpha * gain(e, m) + dot(psi, classical(2).order_unit)


def test_conic_gain_eval_examples():
    e = x_ensemble()
    assert conic_gain_eval(0, [(1, e)], sc.gbit_mx()) == gain(e, sc.gbit_mx())
    assert conic_gain_eval(5, [], sc.gbit_mz()) == 5
    pts = ensemble(classical(2), ["0", "1"], [(H, 0), (0, H)])
    terms = [(2, pts), (Fraction(1, 3), ensemble(classical(2), ["a"], [(H, H)]))]
    assert conic_gain_eval(1, terms, sc.classical_identity()) >= conic_gain_eval(1, terms, sc.coin())
    with pytest.raises(GptError):
        conic_gain_eval(0, [(-1, e)], sc.gbit_mx())


def test_loss_is_negated_gain():
    e = x_ensemble()
    assert loss(e, sc.gbit_mx()) == -gain(e.negated(), sc.gbit_mx())
    assert loss(e, sc.gbit_mx()) == 0


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        gain(family(["a"], [(1, 0)]), sc.gbit_mx())
    with pytest.raises(GptError):
        ensemble(gbit(), ["a", "b"], [(1, 2, 0), (0, 0, 0)])


@given(evms(), seeds, rationals)
def test_positive_homogeneity(m, seed, a):
    rng = random.Random(seed)
    e = random_ensemble(m.space, ["a", "b"], rng)
    a = abs(a)
    assert gain(e.scaled(a), m) == a * gain(e, m)


@given(evms(), seeds)
def test_bss_monotone_direction(m, seed):
    rng = random.Random(seed)
    p = random_stochastic(["r0", "r1", "r2"][: rng.randint(1, 3)], m.outcomes, rng)
    a = post_process(m, p)
    for _ in range(5):
        e = random_ensemble(m.space, ["a", "b", "c"], rng)
        assert gain(e, a) <= gain(e, m)


@given(evms(), seeds)
def test_gain_at_least_trivial_value(m, seed):
    rng = random.Random(seed)
    e = random_ensemble(m.space, ["a", "b", "c"], rng)
    assert gain(e, m) >= max(dot(f, m.space.order_unit) for f in e.functionals)


@given(evms(), seeds)
def test_conic_gain_monotone(m, seed):
    rng = random.Random(seed)
    a = post_process(m, random_stochastic(["r0", "r1"], m.outcomes, rng))
    terms = [(Fraction(rng.randint(0, 4), 3), random_ensemble(m.space, ["a", "b"], rng)) for _ in range(3)]
    alpha = Fraction(rng.randint(-3, 3))
    assert conic_gain_eval(alpha, terms, a) <= conic_gain_eval(alpha, terms, m)


@given(evms(), seeds)
def test_decompose_family_identity(m, seed):
    rng = random.Random(seed)
    fam = family(["a", "b", "c"], [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(m.space.dim)] for _ in range(3)])
    alpha, e, psi = decompose_family(m.space, fam)
    assert alpha > 0 and is_ensemble(m.space, e)
    assert all(add(scale(alpha, f2), psi) == f for f, f2 in zip(fam.functionals, e.functionals))
    assert gain(fam, m) == alpha * gain(e, m) + dot(psi, m.space.order_unit)


@given(evms(), seeds)
def test_decompose_partitioned_preserves_order_of_values(m, seed):
    rng = random.Random(seed)
    pe = random_partitioned(m.space, [["a", "b"], ["c"]], rng)
    raw = PartitionedEnsemble(pe.labels, tuple(p.scaled(3).negated() for p in pe.parts))
    alpha, pe2, beta = decompose_partitioned(m.space, raw)
    assert pe2.total_weight(m.space) == 1
    sigma_u = dot(m.space.interior_state, m.space.order_unit)
    assert gain_partitioned(raw, m) == alpha * gain_partitioned(pe2, m) - len(raw.parts) * beta * sigma_u


@given(evms(), unit_interval, seeds)
def test_mix_direct_sum_affinity(m, lam, seed):
    rng = random.Random(seed)
    b = random_evm(m.space, 2, rng)
    e = random_ensemble(m.space, ["a", "b"], rng)
    assert gain(e, mix_direct_sum(lam, m, b)) == lam * gain(e, m) + (1 - lam) * gain(e, b)
