"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 7] [--repeat 3]

Times the Betti sweep and canonical labelling over every connected graph on
n vertices with each backend, and checks that both return the same results.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from cwinv import _pykernels
from cwinv.generate import enumerate_connected_graphs


def _time(fn, graphs, repeat):
    runs = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = [fn(g) for g in graphs]
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs), out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    try:
        from cwinv import _kernels
    except ImportError:
        print("compiled extension not built; run pip install -e . --no-build-isolation", file=sys.stderr)
        return 2
    graphs = enumerate_connected_graphs(args.n)
    print(f"{len(graphs)} connected graphs on {args.n} vertices, median of {args.repeat} runs")
    print(f"{'kernel':<22}{'cython s':>10}{'python s':>10}{'speedup':>9}")
    cases = [
        ("betti_sweep gf2", lambda k: (lambda g: k.betti_sweep(g.n, g.adj, 2))),
        ("betti_sweep gf32003", lambda k: (lambda g: k.betti_sweep(g.n, g.adj, 32003))),
        ("canonical_labeling", lambda k: (lambda g: k.canonical_labeling(g.n, g.adj))),
    ]
    for name, make in cases:
        tc, rc = _time(make(_kernels), graphs, args.repeat)
        tp, rp = _time(make(_pykernels), graphs, args.repeat)
        if rc != rp:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        print(f"{name:<22}{tc:>10.3f}{tp:>10.3f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
