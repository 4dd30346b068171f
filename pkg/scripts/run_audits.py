#!/usr/bin/env python3
"""Run the span and basis audits and print a small summary.

The span audit reports the rank of the degree-one p-span in each parity
class (expected: codimension one, the coefficient-sum obstruction).  The
basis audit checks linear independence and leading-term triangularity
of the enumerated monomials at the given truncation.
"""

import argparse

from onsager.verify import audit_span, audit_theorem


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mdegree", type=int, default=3)
    ap.add_argument("--index", type=int, default=3)
    ap.add_argument("--cutoffs", type=int, nargs="+", default=[6, 7])
    args = ap.parse_args()

    for parity in ("even", "odd"):
        for cutoff in args.cutoffs:
            rep = audit_span(parity, cutoff)
            print(f"span {parity:4s} cutoff {cutoff}: rank {rep.rank} of "
                  f"dimension {rep.dimension}, quotient {rep.quotient}")

    rep = audit_theorem(args.mdegree, args.index)
    print(f"basis (mdegree {args.mdegree}, index {args.index}): "
          f"{rep.count} monomials, rank {rep.rank}, "
          f"codimension {rep.codimension}, "
          f"{len(rep.collisions)} leading-word collisions, "
          f"integrality sample {rep.sample_size} "
          f"({'all integral' if rep.integral else 'NON-INTEGRAL'})")
    return 0 if (rep.independent and rep.triangular and rep.integral) else 1


if __name__ == "__main__":
    raise SystemExit(main())
