#!/usr/bin/env python3
"""Benchmark the numba-compiled kernels against the plain numpy path.

Times the two hot spots on realistic workloads: the facet-distance table
(dominates efficiency sweeps) and the directional simplex (dominates the
sampling oracle). The first jitted call compiles, so both backends are
warmed before timing.

Usage:
    python benchmarks/bench_backends.py [--geometries N] [--directions N]
"""

import argparse
import time

import numpy as np

from acaikit._backend import get_backend
from acaikit.model import build_effectiveness, build_state_pair, preset
from acaikit.numerics import enumerate_combinations


def _facet_workload(n):
    g = preset("pnpnpn-table1")
    tables = enumerate_combinations(6)
    K = g.max_lifts
    rng = np.random.default_rng(0)
    jobs = []
    for _ in range(n):
        eta = rng.uniform(0.0, 1.0, size=6)
        Bf = build_effectiveness(g.with_efficiencies(eta))
        offset = Bf @ (K / 2.0) - build_state_pair(g).G
        jobs.append((Bf, offset))
    return tables, K, jobs


def bench_facets(backend, tables, K, jobs):
    start = time.perf_counter()
    for Bf, offset in jobs:
        backend.facet_distance_table(Bf, K, offset, tables.s1, tables.s2, 0.0)
    return time.perf_counter() - start


def _lp_workload(n):
    g = preset("pnpnpn-table1")
    Bf = build_effectiveness(g)
    K = g.max_lifts
    G = build_state_pair(g).G
    rng = np.random.default_rng(1)
    directions = rng.standard_normal((n, 4))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    A = np.empty((4, 7))
    A[:, :6] = Bf
    c = np.zeros(7)
    c[6] = -1.0
    lo = np.zeros(7)
    hi = np.append(K, np.inf)
    return A, G, c, lo, hi, directions


def bench_lps(backend, A, G, c, lo, hi, directions):
    A = A.copy()
    start = time.perf_counter()
    for v in directions:
        A[:, 6] = -v
        backend.solve_box_lp(A, G, c, lo, hi, 2000)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--geometries", type=int, default=2000)
    parser.add_argument("--directions", type=int, default=5000)
    args = parser.parse_args()

    backends = [get_backend("numpy"), get_backend("numba")]

    tables, K, jobs = _facet_workload(args.geometries)
    lp = _lp_workload(args.directions)

    # warm both (compiles the jitted flavour)
    for backend in backends:
        bench_facets(backend, tables, K, jobs[:2])
        bench_lps(backend, *lp[:-1], lp[-1][:2])

    print(f"facet-distance tables ({args.geometries} geometries, 20 facets each)")
    times = {}
    for backend in backends:
        elapsed = bench_facets(backend, tables, K, jobs)
        times[backend.name] = elapsed
        per = elapsed / args.geometries * 1e6
        print(f"  {backend.name:>6}: {elapsed:8.3f} s  ({per:8.1f} us/geometry)")
    print(f"  speedup: {times['numpy'] / times['numba']:.1f}x")

    print(f"directional simplex ({args.directions} LPs, 7 vars, 4 constraints)")
    times = {}
    for backend in backends:
        elapsed = bench_lps(backend, *lp)
        times[backend.name] = elapsed
        per = elapsed / args.directions * 1e6
        print(f"  {backend.name:>6}: {elapsed:8.3f} s  ({per:8.1f} us/LP)")
    print(f"  speedup: {times['numpy'] / times['numba']:.1f}x")


if __name__ == "__main__":
    main()
