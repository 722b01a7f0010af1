#!/usr/bin/env python3
"""Benchmark the axiom-battery kernels: compiled extension vs pure Python.

Builds group extensions of increasing rank (the associativity scan is the
O(n^3) hot loop of the axiom battery) and times both backends on identical
inputs.  Run from a checkout:

    python benchmarks/bench_kernels.py [--max-rank 5]
"""

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from hflab import _kernels_py, group_extension, krasner, q_2adic, kernels  # noqa: E402

try:
    from hflab import _kernels as compiled
except ImportError:
    compiled = None


def time_call(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench(h, label):
    n, masks, mul = h.n, list(h._masks), list(h._mul)
    t_pure, r_pure = time_call(_kernels_py.first_assoc_violation, n, masks)
    row = f"{label:<18} n={n:<4} pure {t_pure * 1e3:9.2f} ms"
    if compiled is not None:
        w, words = kernels._to_words(n, masks)
        t_c, r_c = time_call(compiled.first_assoc_violation, n, w, words)
        assert r_c == r_pure
        row += f"   cython {t_c * 1e3:8.2f} ms   speedup {t_pure / t_c:6.1f}x"
    print(row)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-rank", type=int, default=5,
                    help="largest extension rank over the dyadic base")
    args = ap.parse_args()

    if compiled is None:
        print("compiled kernels not built; showing pure-Python timings only")
        print("(build with: python setup.py build_ext --inplace)")

    bench(q_2adic(), "dyadic model")
    base = q_2adic()
    for r in range(1, args.max_rank + 1):
        ext, _ = group_extension(base, r)
        bench(ext, f"extension rank {r}")
        if ext.n > 600:
            break
    k = krasner()
    for r in (6, 8):
        ext, _ = group_extension(k, r)
        bench(ext, f"krasner rank {r}")


if __name__ == "__main__":
    main()
