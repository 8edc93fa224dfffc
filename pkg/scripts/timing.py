"""Compare exact and floating-point solves of R_uns and R_inc on seeded random instances.

    python scripts/timing.py [--count 50] [--seed 0]

Float mode needs scipy (the ``float`` extra).
"""
import argparse
import random
import time

from gptmeasure.gpt_core import classical, gbit, polygon
from gptmeasure.incompatibility import r_inc
from gptmeasure.sampling import random_evm
from gptmeasure.simulability import r_uns


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    spaces = [classical(2), classical(3), gbit(), polygon(3)]
    rng = random.Random(args.seed)
    runs, incs = [], []
    for i in range(args.count):
        sp = spaces[i % len(spaces)]
        runs.append((random_evm(sp, rng.randint(1, 3), rng, "m"), [random_evm(sp, rng.randint(1, 3), rng, "l")]))
        incs.append([random_evm(sp, rng.randint(1, 3), rng, f"{j}") for j in range(2)])

    for name, fn, items in (("r_uns", lambda x, a: r_uns(*x, arithmetic=a), runs), ("r_inc", lambda x, a: r_inc(x, arithmetic=a), incs)):
        results = {}
        for arith in ("exact", "float"):
            t = time.perf_counter()
            results[arith] = [fn(x, arith).value for x in items]
            print(f"{name} {arith:5s}: {time.perf_counter() - t:.3f}s for {len(items)} instances")
        err = max(abs(float(e) - f) for e, f in zip(results["exact"], results["float"]))
        print(f"{name} max |exact - float| = {err:.2e}")


if __name__ == "__main__":
    main()
