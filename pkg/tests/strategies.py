"""Hypothesis strategies for small exact models."""
import random
from fractions import Fraction

from hypothesis import strategies as st

from gptmeasure import gpt_core, sampling

SPACES = ["classical(1)", "classical(2)", "classical(3)", "gbit", "polygon(3)", "polygon(5)", "polygon(6)"]
SMALL_SPACES = ["classical(2)", "classical(3)", "gbit", "polygon(3)"]

rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 8))
unit_interval = st.builds(lambda n, d: Fraction(min(n, d), d), st.integers(0, 8), st.integers(1, 8))
seeds = st.integers(0, 2**32 - 1)


def space_names(names=SPACES):
    return st.sampled_from(names)


@st.composite
def evms(draw, names=SMALL_SPACES, max_outcomes=3, space=None):
    sp = space or gpt_core.standard_space(draw(space_names(names)))
    rng = random.Random(draw(seeds))
    return sampling.random_evm(sp, rng.randint(1, max_outcomes), rng)


@st.composite
def evm_pairs(draw, names=SMALL_SPACES, max_outcomes=3):
    sp = gpt_core.standard_space(draw(space_names(names)))
    rng = random.Random(draw(seeds))
    a = sampling.random_evm(sp, rng.randint(1, max_outcomes), rng, "a")
    b = sampling.random_evm(sp, rng.randint(1, max_outcomes), rng, "b")
    return a, b


def vectors(dim):
    return st.lists(rationals, min_size=dim, max_size=dim).map(tuple)
