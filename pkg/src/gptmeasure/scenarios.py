"""Named models used by the demos, the acceptance suite and the scripts."""
from __future__ import annotations

from fractions import Fraction

from .evm import Evm, trivial_evm
from .gain import WStarFamily, family, gain
from .gpt_core import classical, gbit
from .rational import q


def classical_identity(n: int = 2) -> Evm:
    sp = classical(n)
    return Evm(sp, tuple(str(i) for i in range(n)), tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))


def coin(n: int = 2) -> Evm:
    """Trivial two-outcome EVM with probabilities (1/2, 1/2) on classical(n)."""
    return trivial_evm(classical(n), {"h": Fraction(1, 2), "t": Fraction(1, 2)})


def gbit_mx() -> Evm:
    h = Fraction(1, 2)
    return Evm(gbit(), ("+", "-"), ((h, h, Fraction(0)), (h, -h, Fraction(0))))


def gbit_mz() -> Evm:
    h = Fraction(1, 2)
    return Evm(gbit(), ("+", "-"), ((h, Fraction(0), h), (h, Fraction(0), -h)))


def pgep_family(p) -> WStarFamily:
    """``E_p = (0, (-p, 1-p))`` on classical(2)."""
    p = q(p)
    return family(("0", "1"), ((0, 0), (-p, 1 - p)))


def pgep_evm(qq) -> Evm:
    """``M_q = {(1-q, 0), (q, 1)}`` on classical(2)."""
    qq = q(qq)
    return Evm(classical(2), ("0", "1"), ((1 - qq, Fraction(0)), (qq, Fraction(1))))


def pgep_value(p, qq) -> Fraction:
    return gain(pgep_family(p), pgep_evm(qq))


def pgep_formula(p, qq) -> Fraction:
    return max(Fraction(0), 1 - (q(qq) + 1) * q(p))


PGEP_P = tuple(Fraction(i, 8) for i in range(9))
PGEP_Q = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
