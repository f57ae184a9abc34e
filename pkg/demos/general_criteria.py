"""Where each identifiability criterion stops working, by rank.

For plane octics: Kruskal-style reshaping certifies up to rank 12, the
rank/Hilbert criterion reaches 13, minimality (without uniqueness) holds
through 15, and rank 14 needs the syzygy pipeline.  The table below runs
every criterion on generic decompositions of increasing length.

Run from the repository root:

    python3 demos/general_criteria.py
"""

import numpy as np

from waringcert import (
    Instance,
    PointSet,
    PrimeContext,
    certify_octic14,
    mo_certify,
    range_certify,
    ranger_certify,
    reshaped_kruskal_certify,
)

PRIME = 31991


def random_instance(rng, ctx, count, degree, n=2):
    while True:
        try:
            ps = PointSet(ctx, rng.integers(0, ctx.p, size=(count, n + 1)))
            break
        except Exception:
            continue
    return Instance(ps, degree, rng.integers(1, ctx.p, size=count))


def main():
    ctx = PrimeContext(PRIME)
    rng = np.random.default_rng(2718)

    print("generic plane octics (degree 8), increasing rank:")
    print("rank  reshaped-kruskal        range                   ranger")
    for r in (10, 11, 12, 13, 14, 15):
        inst = random_instance(rng, ctx, r, 8)
        k = reshaped_kruskal_certify(inst).display()
        ra = range_certify(inst).display()
        rr = ranger_certify(inst).display()
        print(f"{r:4d}  {k:22.22}  {ra:22.22}  {rr:22.22}")

    print("\nrank 14 is settled by the syzygy pipeline instead:")
    inst14 = random_instance(rng, ctx, 14, 8)
    print(f"  certify_octic14 -> {certify_octic14(inst14).display()}")

    print("\nother degrees (plane):")
    for count, degree in ((7, 5), (10, 6), (12, 7)):
        inst = random_instance(rng, ctx, count, degree)
        print(f"  d={degree}, r={count}: range={range_certify(inst).display()}, "
              f"ranger={ranger_certify(inst).display()}")

    print("\nmore variables (near-maximal Hilbert value criterion):")
    inst = random_instance(rng, ctx, 9, 6, n=3)
    print(f"  P^3, d=6, r=9: {mo_certify(inst).display()}")


if __name__ == "__main__":
    main()
