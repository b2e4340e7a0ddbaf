"""Compare the compiled and pure-Python traversal kernels.

    python3 benchmarks/bench_kernels.py [--side 300] [--repeat 5]

Times the three kernels directly on a large grid and a sparse random graph,
then whole calls of weighted_prs and low_tw_deletion, checking that both
backends return identical results.
"""

import argparse
import random
import statistics
import time

import numpy as np

from sepcert import _kernels
from sepcert.decomposer import low_tw_deletion
from sepcert.generators import grid
from sepcert.graph import CostAssignment, Graph
from sepcert.separator import PrsParams, weighted_prs


def _time(fn, repeat):
    out, times = None, []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return out, statistics.median(times)


def _as_plain(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, tuple):
        return tuple(_as_plain(y) for y in x)
    return x


def _sparse_random(n, seed):
    rng = random.Random(seed)
    edges = set()
    while len(edges) < 2 * n:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph(n, sorted(edges))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--side", type=int, default=300, help="grid side for the kernel runs")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = sorted(_kernels.BACKENDS)
    if "compiled" not in backends:
        print("compiled extension not built; only the python backend is available")

    cases = []
    for name, G in ((f"grid {args.side}x{args.side}", grid(args.side, args.side)),
                    ("random n=50000 m=100000", _sparse_random(50000, 1))):
        indptr, indices = G.csr
        mask = np.ones(G.n, dtype=np.uint8)
        half = np.zeros(G.n, dtype=np.uint8)
        half[: G.n // 2] = 1
        rest = (1 - half).astype(np.uint8)
        cases += [
            (f"bfs_distances      {name}", lambda i=indptr, j=indices, m=mask: _kernels.bfs_distances(i, j, 0, m)),
            (f"component_labels   {name}", lambda i=indptr, j=indices, m=mask: _kernels.component_labels(i, j, m)),
            (f"boundary           {name}", lambda i=indptr, j=indices, h=half, r=rest: _kernels.boundary(i, j, h, r)),
        ]
    G = grid(30, 30)
    q = CostAssignment.uniform(G.n)
    cases += [
        ("weighted_prs       grid 30x30, ell=10", lambda: weighted_prs(G, q, PrsParams(10, 5))),
        ("low_tw_deletion    grid 30x30, ell=2", lambda: low_tw_deletion(G, q, 2, 5)),
    ]

    print(f"{'case':44s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for label, fn in cases:
        results, times = {}, {}
        for b in backends:
            _kernels.set_backend(b)
            out, t = _time(fn, args.repeat)
            results[b], times[b] = _as_plain(out), t
        same = all(results[b] == results[backends[0]] for b in backends)
        row = f"{label:44s}" + "".join(f"{times[b] * 1000:10.1f}ms" for b in backends)
        if len(backends) > 1:
            row += f"{times['python'] / times['compiled']:11.1f}x"
        print(row + ("" if same else "   MISMATCH"))
        if not same:
            raise SystemExit(f"backends disagree on {label}")


if __name__ == "__main__":
    main()
