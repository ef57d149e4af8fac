"""Benchmark the compiled sweep kernel against the pure-Python fallback.

Generates random prediction arrays of increasing size, runs the
confusion threshold sweep on both backends, checks they agree, and
prints per-size timings with the speedup.

Usage: python benchmarks/bench_sweep.py [--sizes 1000,10000,100000]
                                        [--classes 4] [--repeat 3]
"""

import argparse
import time

import numpy as np

from rejectviz import _sweep_py

try:
    from rejectviz import _sweep_cy
except ImportError:
    _sweep_cy = None


def make_arrays(rng, n, num_classes, tie_fraction=0.3):
    true = rng.integers(0, num_classes, size=n).astype(np.int64)
    pred = rng.integers(0, num_classes, size=n).astype(np.int64)
    cert = rng.random(size=n)
    ties = rng.random(size=n) < tie_fraction
    cert[ties] = np.round(cert[ties], 2)
    return true, pred, cert


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,10000,100000", help="comma-separated sample counts")
    ap.add_argument("--classes", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _sweep_cy is None:
        print("compiled kernel not available; timing only the pure-Python loop")

    rng = np.random.default_rng(0)
    print(f"{'n':>9} {'distinct':>9} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for n in (int(s) for s in args.sizes.split(",")):
        t, p, r = make_arrays(rng, n, args.classes)
        t_py, (th_py, ct_py) = best_of(lambda: _sweep_py.sweep_counts(t, p, r, args.classes), args.repeat)
        if _sweep_cy is None:
            print(f"{n:>9} {len(th_py):>9} {t_py:>9.4f}s {'-':>10} {'-':>8}")
            continue
        t_cy, (th_cy, ct_cy) = best_of(lambda: _sweep_cy.sweep_counts(t, p, r, args.classes), args.repeat)
        assert np.array_equal(th_py, th_cy) and np.array_equal(ct_py, ct_cy), "backend mismatch"
        print(f"{n:>9} {len(th_py):>9} {t_py:>9.4f}s {t_cy:>9.4f}s {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
