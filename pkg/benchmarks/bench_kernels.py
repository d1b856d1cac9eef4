"""Compare the compiled and pure-Python flow kernels.

Runs the same max-flow queries through every available backend on a seeded
out-regular digraph and reports the median time per query.  Results must
agree across backends; the script exits non-zero if they do not.

    python3 benchmarks/bench_kernels.py --n 1200 --d 487 --queries 50
"""

import argparse
import statistics
import sys
import time

from immersion._core import BACKENDS
from immersion.gen import gen_out_regular
from immersion.menger import FlowNetwork


def run(net, queries):
    times, results = [], []
    for s, t, l in queries:
        start = time.perf_counter()
        results.append(net.query(s, t, l))
        times.append(time.perf_counter() - start)
    return times, results


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=1200)
    parser.add_argument("--d", type=int, default=487)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--queries", type=int, default=50)
    parser.add_argument("--demand", type=int, nargs="+", default=[3, 64],
                        help="path demands l to benchmark")
    args = parser.parse_args(argv)

    g = gen_out_regular(args.n, args.d, args.seed)
    print(f"graph n={g.n} m={g.m}; backends: {', '.join(sorted(BACKENDS))}")
    ok = True
    for l in args.demand:
        queries = [(0, t, l) for t in range(1, min(args.n, args.queries + 1))]
        baseline = None
        rows = []
        for name in sorted(BACKENDS):
            start = time.perf_counter()
            net = FlowNetwork(g, backend=name)
            build = time.perf_counter() - start
            times, results = run(net, queries)
            rows.append((name, build, statistics.median(times), sum(times)))
            if baseline is None:
                baseline = results
            elif results != baseline:
                print(f"  l={l}: backend {name} disagrees", file=sys.stderr)
                ok = False
        print(f"l={l}, {len(queries)} queries")
        slowest = max(r[2] for r in rows)
        for name, build, median, total in rows:
            print(f"  {name:8s} build {build * 1e3:8.1f} ms  median {median * 1e3:8.3f} ms"
                  f"  total {total:7.3f} s  speedup {slowest / median:5.1f}x")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
