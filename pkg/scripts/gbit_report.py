"""The square-bit measurements M_X and M_Z: incomparability, incompatibility, simulation scalars.

    python scripts/gbit_report.py
"""
from gptmeasure import scenarios as sc
from gptmeasure.incompatibility import is_compatible, r_inc
from gptmeasure.order import NotBelow, test_post_processing
from gptmeasure.rational import fmt
from gptmeasure.simulability import q_succ, r_uns


def main():
    mx, mz = sc.gbit_mx(), sc.gbit_mz()
    for a, b, name in ((mx, mz, "M_X <= M_Z"), (mz, mx, "M_Z <= M_X")):
        v = test_post_processing(a, b)
        if isinstance(v, NotBelow):
            print(f"{name}: no  (separator gain {fmt(v.gain_a)} > {fmt(v.gain_b)}, verified={v.verify(a, b)})")
        else:
            print(f"{name}: yes (verified={v.verify(a, b)})")
    c = is_compatible([mx, mz])
    print(f"compatible: {c.compatible}")
    rep = r_inc([mx, mz])
    print(f"R_inc = {fmt(rep.value)}  pg_comp(dual) = {fmt(rep.pg_comp)}  verified={rep.verified}")
    runs = r_uns(mx, [mz])
    print(f"R_uns(M_X; M_Z) = {fmt(runs.value)}  verified={runs.verified}")
    qs = q_succ(mx, [mz])
    print(f"q_succ(M_X; M_Z) = {fmt(qs.value)}  verified={qs.verified}")


if __name__ == "__main__":
    main()
