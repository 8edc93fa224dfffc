"""The post-processing preorder between finite-outcome EVMs, decided by LP.

Either direction of the answer carries a certificate: a stochastic matrix when
``A <=_post B``, otherwise an ensemble on which ``A`` discriminates strictly better.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exact_lp
from .errors import SpaceMismatch
from .evm import Evm, StochasticMatrix, post_process
from .exact_lp import LpProblem
from .gain import Ensemble, WStarFamily, decompose_family, gain


@dataclass(frozen=True)
class Below:
    witness: StochasticMatrix
    is_below = True

    def verify(self, a: Evm, b: Evm) -> bool:
        if not self.witness.is_valid():
            return False
        try:
            pa = post_process(b, self.witness)
        except Exception:
            return False
        return pa.outcomes == a.outcomes and pa.effects == a.effects


@dataclass(frozen=True)
class NotBelow:
    separator: Ensemble
    gain_a: Fraction
    gain_b: Fraction
    is_below = False

    def verify(self, a: Evm, b: Evm) -> bool:
        from .gain import is_ensemble

        return (
            is_ensemble(a.space, self.separator)
            and gain(self.separator, a) == self.gain_a
            and gain(self.separator, b) == self.gain_b
            and self.gain_a > self.gain_b
        )


OrderVerdict = Below | NotBelow


def post_processing_lp(a: Evm, b: Evm) -> LpProblem:
    """Feasibility of ``A(x) = sum_y p(x|y) B(y)`` over column-stochastic ``p``.

    Variable ``p(x|y)`` sits at index ``ix*|Y| + iy``; rows are the ``|X|*dim`` effect
    equations followed by the ``|Y|`` column sums.
    """
    nx, ny, d = len(a), len(b), a.space.dim
    nvar = nx * ny
    rows, rhs = [], []
    for ix in range(nx):
        for i in range(d):
            row = [Fraction(0)] * nvar
            for iy in range(ny):
                row[ix * ny + iy] = b.effects[iy][i]
            rows.append(row)
            rhs.append(a.effects[ix][i])
    for iy in range(ny):
        row = [Fraction(0)] * nvar
        for ix in range(nx):
            row[ix * ny + iy] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    return LpProblem.build("min", [0] * nvar, a_eq=rows, b_eq=rhs)


def test_post_processing(a: Evm, b: Evm) -> OrderVerdict:
    """Is ``a`` a post-processing of ``b``?"""
    if a.space != b.space:
        raise SpaceMismatch("EVMs live on different spaces")
    p = post_processing_lp(a, b)
    o = exact_lp.solve(p)
    nx, ny, d = len(a), len(b), a.space.dim
    if isinstance(o, exact_lp.Optimal):
        mat = tuple(tuple(o.x[ix * ny + iy] for iy in range(ny)) for ix in range(nx))
        return Below(StochasticMatrix(a.outcomes, b.outcomes, mat))
    # Farkas multipliers psi_x on the effect rows; phi = -psi separates
    phi = tuple(tuple(-o.y_eq[ix * d + i] for i in range(d)) for ix in range(nx))
    _, ens, _ = decompose_family(a.space, WStarFamily(a.outcomes, phi))
    ga, gb = gain(ens, a), gain(ens, b)
    assert ga > gb, "Farkas certificate failed to separate"
    return NotBelow(ens, ga, gb)


# keep pytest from collecting the library function when imported into test modules
test_post_processing.__test__ = False


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    forward: OrderVerdict  # a <= b
    backward: OrderVerdict  # b <= a

    def __bool__(self) -> bool:
        return self.equivalent


def test_equivalence(a: Evm, b: Evm) -> Equivalence:
    fwd = test_post_processing(a, b)
    bwd = test_post_processing(b, a)
    return Equivalence(fwd.is_below and bwd.is_below, fwd, bwd)


test_equivalence.__test__ = False
