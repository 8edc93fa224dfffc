"""Print the discrimination grid P_g(E_p, M_q) and the rank of [f_q(p)] on two p-grids.

    python scripts/pgep_grid.py
"""
from fractions import Fraction

from gptmeasure import scenarios as sc
from gptmeasure.rational import fmt, rank

QS = [Fraction(i, 6) for i in range(1, 6)]
GRIDS = {
    "p = 1/10..1/2 (left of every kink)": [Fraction(i, 10) for i in range(1, 6)],
    "p spanning the kinks 1/(q+1)": [Fraction(1, 2), Fraction(4, 7), Fraction(5, 8), Fraction(7, 10), Fraction(4, 5)],
}


def main():
    print("p,q,P_g,formula")
    for p in sc.PGEP_P:
        for q in sc.PGEP_Q:
            print(f"{fmt(p)},{fmt(q)},{fmt(sc.pgep_value(p, q))},{fmt(sc.pgep_formula(p, q))}")
    print()
    for name, ps in GRIDS.items():
        mat = [[sc.pgep_value(p, q) for p in ps] for q in QS]
        print(f"rank on {name}: {rank(mat)}")


if __name__ == "__main__":
    main()
