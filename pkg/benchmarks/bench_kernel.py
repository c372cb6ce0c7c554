#!/usr/bin/env python3
"""Benchmark: compiled enumeration kernel vs the pure-Python twin.

Runs the same constraint-walk workloads through both backends and prints
a timing table.  Workloads mirror the package's hot paths: point counting
in a dilated box, point collection for minima extraction, and a skewed
lattice system with several facet constraints.
"""

import time

from latmin import _kernel_py, kernel


def workloads():
    yield (
        "count cube n=2, ~360k visits",
        "count",
        ([[1, 0], [0, 1]], [300, 300], [-300, -300], [300, 300]),
    )
    yield (
        "count cube n=3, ~1.0M visits",
        "count",
        (
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [50, 50, 50],
            [-50, -50, -50],
            [50, 50, 50],
        ),
    )
    yield (
        "count skewed n=3 + extra facet",
        "count",
        (
            [[1, 2, 0], [0, 1, 3], [1, 0, 1], [3, -2, 5]],
            [80, 90, 70, 400],
            [-40, -40, -40],
            [40, 40, 40],
        ),
    )
    yield (
        "collect thin slab n=3",
        "collect",
        (
            [[1, 0, 0], [0, 40, 0], [0, 0, 40]],
            [60, 60, 60],
            [-60, -60, -60],
            [60, 60, 60],
        ),
    )


def run(backend, mode, args):
    fn = backend.count_passing if mode == "count" else backend.collect_passing
    t0 = time.perf_counter()
    result = fn(*args)
    elapsed = time.perf_counter() - t0
    size = result if mode == "count" else len(result)
    return size, elapsed


def main():
    compiled = None
    if kernel.compiled_available():
        from latmin import _kernel as compiled
    print(f"compiled extension available: {compiled is not None}")
    header = f"{'workload':40s} {'result':>9s} {'pure (s)':>10s} {'compiled (s)':>13s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, mode, args in workloads():
        size_py, t_py = run(_kernel_py, mode, args)
        if compiled is not None:
            size_c, t_c = run(compiled, mode, args)
            assert size_c == size_py, "backends disagree"
            print(
                f"{name:40s} {size_py:>9d} {t_py:>10.3f} {t_c:>13.4f} {t_py / t_c:>7.0f}x"
            )
        else:
            print(f"{name:40s} {size_py:>9d} {t_py:>10.3f} {'n/a':>13s} {'n/a':>8s}")


if __name__ == "__main__":
    main()
