"""Exact measurement theory on finite-dimensional GPTs with polyhedral cones."""
from .errors import GptError
from .evm import Evm, StochasticMatrix, coarse_grain, minimal_sufficient, post_process, trivial_evm, validate_evm
from .gain import Ensemble, PartitionedEnsemble, WStarFamily, gain_partitioned, gain_set
from .gpt_core import GptSpace, classical, gbit, polygon, standard_space, validate_space
from .incompatibility import is_compatible, p_g_comp, r_inc
from .order import test_equivalence, test_post_processing
from .simulability import is_simulable, q_succ, r_uns

__version__ = "0.1.0"

__all__ = [
    "GptError", "Evm", "StochasticMatrix", "coarse_grain", "minimal_sufficient", "post_process",
    "trivial_evm", "validate_evm", "Ensemble", "PartitionedEnsemble", "WStarFamily",
    "gain_partitioned", "gain_set", "GptSpace", "classical", "gbit", "polygon", "standard_space",
    "validate_space", "is_compatible", "p_g_comp", "r_inc", "test_equivalence",
    "test_post_processing", "is_simulable", "q_succ", "r_uns",
]
