"""Benchmark the two counting kernels against each other.

Runs the compiled and the vectorized kernel on identical uniform blocks,
checks that the tallies are bit-identical, and reports throughput. Also
times the full simulation path end to end under each kernel.

Usage: python3 benchmarks/bench_kernels.py [--samples N] [--repeats K]
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction

import numpy as np

from newcomb import core, montecarlo
from newcomb.kernels import select_kernel


def build_scenario() -> core.NewcombScenario:
    half = Fraction(1, 2)
    model = core.PredictionModel(
        ((Fraction(1, 10), half), (Fraction(9, 10), half))
    )
    return core.NewcombScenario(
        prediction=model,
        small_reward=Fraction(1000),
        large_reward=Fraction(1000000),
    )


def bench_kernels(samples: int, repeats: int) -> None:
    scenario = build_scenario()
    support = scenario.prediction.support
    weights = [float(q) for _, q in support]
    cum = np.cumsum(np.asarray(weights, dtype=np.float64))
    cum[-1] = 1.0
    omega = np.asarray([float(w) for w, _ in support], dtype=np.float64)

    rng = np.random.Generator(np.random.Philox(key=12345))
    u = rng.random((3, samples), dtype=np.float64)

    results = {}
    for name in ("numba", "numpy"):
        resolved, kernel = select_kernel(name)
        counts = np.zeros((len(support), 2, 2), dtype=np.int64)
        kernel(u, cum, omega, counts)  # warm up / compile
        best = float("inf")
        for _ in range(repeats):
            scratch = np.zeros_like(counts)
            start = time.perf_counter()
            kernel(u, cum, omega, scratch)
            best = min(best, time.perf_counter() - start)
        results[resolved] = (best, scratch)

    (t_nb, c_nb), (t_np, c_np) = results["numba"], results["numpy"]
    assert np.array_equal(c_nb, c_np), "kernels disagree on identical input"

    print(f"kernel-only, {samples:,} samples, best of {repeats}:")
    for name, (t, _) in sorted(results.items()):
        print(f"  {name:<6} {t * 1e3:8.2f} ms   {samples / t / 1e6:8.1f} M samples/s")
    print(f"  speedup numba/numpy: {t_np / t_nb:.2f}x")


def bench_end_to_end(samples: int, repeats: int) -> None:
    scenario = build_scenario()
    reports = {}
    times = {}
    for name in ("numba", "numpy"):
        montecarlo.simulate(scenario, samples=1000, seed=0, kernel=name)
        best = float("inf")
        for _ in range(repeats):
            start = time.perf_counter()
            report = montecarlo.simulate(
                scenario, samples=samples, seed=7, kernel=name
            )
            best = min(best, time.perf_counter() - start)
        reports[name] = report
        times[name] = best

    assert reports["numba"] == reports["numpy"], "reports differ across kernels"

    print(f"\nfull simulation, {samples:,} samples, best of {repeats}:")
    for name in ("numba", "numpy"):
        t = times[name]
        print(f"  {name:<6} {t * 1e3:8.2f} ms   {samples / t / 1e6:8.1f} M samples/s")
    print(f"  speedup numba/numpy: {times['numpy'] / times['numba']:.2f}x")
    print("  identical reports: yes")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=4_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    bench_kernels(args.samples, args.repeats)
    bench_end_to_end(args.samples, args.repeats)


if __name__ == "__main__":
    main()
