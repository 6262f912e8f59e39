#!/usr/bin/env python3
"""Benchmark the pure-Python kernel against the compiled one.

Times the three hot paths: weak-order enumeration, operator steps, and
DR-constraint filtering of successor candidates.  Run from the repo root:

    python benchmarks/bench_kernel.py           # quick set
    python benchmarks/bench_kernel.py --full    # adds the 8-world probes
"""

import argparse
import time

from decrement._kernel import _pykernel

try:
    from decrement._kernel import _ckernel
except ImportError:
    _ckernel = None

BACKENDS = [("python", _pykernel)] + ([("c", _ckernel)] if _ckernel else [])


def timeit(fn, repeat=3):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench_enumeration(kernel, n):
    def body():
        count = 0
        for _ in kernel.weak_order_ranks(n):
            count += 1
        return count

    return timeit(body)


def bench_steps(kernel, repeats):
    orders = list(_pykernel.weak_order_ranks(4))

    def body():
        for _ in range(repeats):
            for ranks in orders:
                for amask in range(16):
                    kernel.step_ranks(ranks, amask, 0)
                    kernel.step_ranks(ranks, amask, 1)
                    kernel.step_ranks(ranks, amask, 2)

    return timeit(body)


def bench_dr_filter(kernel, n, amask, cmask):
    before = tuple(range(n))  # strict chain

    def body():
        count = 0
        for cand in kernel.weak_order_ranks(n):
            if kernel.dr_satisfied(before, cand, amask, cmask):
                count += 1
        return count

    return timeit(body, repeat=1 if n >= 7 else 3)


def report(name, rows):
    print(f"\n{name}")
    base = rows[0][1]
    for backend, seconds in rows:
        speedup = "" if seconds == base else f"  ({base / seconds:.1f}x vs python)"
        print(f"  {backend:<7} {seconds * 1000:10.2f} ms{speedup}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true", help="include 8-world probes")
    args = parser.parse_args()

    if _ckernel is None:
        print("compiled kernel not available; timing the python backend only")

    sizes = [6, 7] + ([8] if args.full else [])
    for n in sizes:
        rows = [(name, bench_enumeration(k, n)) for name, k in BACKENDS]
        report(f"weak_order_ranks(n={n})", rows)

    rows = [(name, bench_steps(k, repeats=20)) for name, k in BACKENDS]
    report("step_ranks, 20 x 75 states x 16 masks x 3 kinds", rows)

    # filtering all successor candidates against the full DR8..DR13 set
    rows = [(name, bench_dr_filter(k, 5, 0b10101, 63)) for name, k in BACKENDS]
    report("dr_satisfied filter over all 5-world candidates", rows)

    if args.full:
        rows = [(name, bench_dr_filter(k, 8, 0b10101010, 63)) for name, k in BACKENDS]
        report("dr_satisfied filter over all 8-world candidates", rows)


if __name__ == "__main__":
    main()
