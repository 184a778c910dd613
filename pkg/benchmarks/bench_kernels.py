"""Benchmark the compiled batch kernels against the numpy fallback.

Runs each kernel on identical inputs through both backends, checks the
results agree to machine precision, and reports best-of-N wall times
with the speedup factor.

Usage:
    python3 benchmarks/bench_kernels.py [--rows 200000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from wulffkit import _kernels_py

try:
    from wulffkit import _kernels as compiled
except ImportError:
    compiled = None

KERNELS = ("min_slack", "max_dot", "angles_to_point")


def make_inputs(rows, dim, directions, seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(rows, dim))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    M = rng.normal(size=(directions, dim))
    M /= np.linalg.norm(M, axis=1, keepdims=True)
    p = rng.normal(size=dim)
    p /= np.linalg.norm(p)
    return X, M, p


def best_of(fn, args, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def run(rows, repeats):
    print(f"{'case':<34}{'numpy':>12}{'compiled':>12}{'speedup':>10}{'max|diff|':>12}")
    for dim, directions in ((3, 8), (3, 64), (4, 16), (5, 32)):
        X, M, p = make_inputs(rows, dim, directions, seed=rows + dim)
        for name in KERNELS:
            args = (X, p) if name == "angles_to_point" else (X, M)
            py_fn = getattr(_kernels_py, name)
            t_py = best_of(py_fn, args, repeats)
            case = f"{name} rows={rows} d={dim} m={directions}"
            if compiled is None:
                print(f"{case:<34}{t_py * 1e3:>10.2f}ms{'n/a':>12}{'n/a':>10}{'n/a':>12}")
                continue
            c_fn = getattr(compiled, name)
            t_c = best_of(c_fn, args, repeats)
            diff = float(np.abs(py_fn(*args) - c_fn(*args)).max())
            print(
                f"{case:<34}{t_py * 1e3:>10.2f}ms{t_c * 1e3:>10.2f}ms"
                f"{t_py / t_c:>9.2f}x{diff:>12.2e}"
            )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=200_000, help="sample rows per case")
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats (best-of)")
    args = parser.parse_args()
    if compiled is None:
        print("compiled extension not importable; timing the numpy backend only\n")
    run(args.rows, args.repeats)


if __name__ == "__main__":
    main()
