"""Regenerate src/gptmeasure/data/polygons.json.

Vertex j of polygon(k) is the rational point on the unit circle obtained from the
half-angle parametrization with tan(pi*j/k) rounded to denominator <= 8, so every
vertex lies exactly on the circle and the polygon stays convex.
"""
import json
import math
from fractions import Fraction
from pathlib import Path


def circle_point(j, k):
    if 2 * j == k:
        return Fraction(-1), Fraction(0)
    t = Fraction(math.tan(math.pi * j / k)).limit_denominator(8)
    d = 1 + t * t
    return (1 - t * t) / d, 2 * t / d


def main():
    out = {}
    for k in [3] + list(range(5, 13)):
        out[str(k)] = [[f"{x.numerator}/{x.denominator}" for x in circle_point(j, k)] for j in range(k)]
    path = Path(__file__).resolve().parents[1] / "src" / "gptmeasure" / "data" / "polygons.json"
    path.write_text(json.dumps(out, indent=1) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
