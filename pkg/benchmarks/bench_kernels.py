"""Time the numba kernels against their numpy reference versions.

    python3 benchmarks/bench_kernels.py --repeat 5

Inputs are real workloads: the GPaley(81, 20) adjacency for refinement and
BFS, and Cyc(q, k) class matrices for the scheme recount. The first numba
call (compilation or cache load) is excluded from the timings.
"""

import argparse
import statistics
import time

import numpy as np

from gpaley.cyclotomic import build_scheme, intersection_numbers
from gpaley.finite_field import build_field
from gpaley.kernels import backend
from gpaley.paley import GPaleyParams, build


def _time(fn, repeat):
    fn()  # warm-up
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def workloads():
    g81 = build(GPaleyParams.create(3, 4, 4)).adjacency
    M = g81.astype(np.int64)
    n = M.shape[0]
    start = np.ones(n, dtype=np.int64)
    start[0] = 0  # vertex 0 individualised
    yield "refine GPaley(81,20)", lambda k: k.refine(M, start, 2 * (n + 1))

    g729 = build(GPaleyParams.create(3, 6, 28)).adjacency
    yield "bfs GPaley(729,26)", lambda k: k.component_labels(g729)

    for p, R, kk in [(3, 4, 4), (2, 8, 5)]:
        s = build_scheme(build_field(p, R), kk)
        C = s.classes.astype(np.int64)
        table = intersection_numbers(s).p
        yield f"scheme recount Cyc({p**R},{kk})", lambda k, C=C, t=table: k.scheme_mismatch(C, t)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    nb, npy = backend("numba"), backend("numpy")
    print(f"{'kernel':34s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, job in workloads():
        a = _time(lambda: job(npy), args.repeat)
        b = _time(lambda: job(nb), args.repeat)
        print(f"{name:34s} {a * 1e3:10.2f} {b * 1e3:10.2f} {a / b:8.1f}x")


if __name__ == "__main__":
    main()
