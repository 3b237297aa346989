"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are run on the same inputs and their outputs compared before
any timing is reported.
"""

import argparse
import sys
import timeit

from quandlelab import _fallback
from quandlelab.assoc import as_presentation
from quandlelab.catalog import load_quandle
from quandlelab.cosets import _col
from quandlelab.rack import RackComplex

try:
    from quandlelab import _kernels
except ImportError:
    _kernels = None


def coset_case(name):
    Q = load_quandle(name)
    P = as_presentation(Q)
    rels = [[_col(a) for a in r] for r in P.relators]
    subs = [[_col(1)]]
    return f"hlt_enumerate {name}", (2 * P.num_generators, rels, subs, 10**6), "hlt_enumerate"


def boundary_case(name, n):
    Q = load_quandle(name)
    C = RackComplex(Q, "quandle", "pt")
    cols = C.basis(n)
    return (f"rack_boundary_triplets {name} n={n} ({len(cols)} cols)",
            (Q.op, C.index(n - 1), cols, n, 0), "rack_boundary_triplets")


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; nothing to compare")
        return 1
    cases = [
        coset_case("S6"),
        coset_case("Z2T3_a"),
        coset_case("Sp_5_1"),
        boundary_case("S6", 3),
        boundary_case("Z2T3_a", 3),
        boundary_case("Sp_5_1", 3),
    ]
    print(f"{'case':<52} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for label, inputs, fn in cases:
        py, cy = getattr(_fallback, fn), getattr(_kernels, fn)
        if py(*inputs) != cy(*inputs):
            print(f"{label}: backends disagree")
            return 2
        tp = min(timeit.repeat(lambda: py(*inputs), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: cy(*inputs), number=1, repeat=args.repeat))
        print(f"{label:<52} {tp:>10.4f} {tc:>11.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
