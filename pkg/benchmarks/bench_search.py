"""Benchmark the compiled backtracking kernel against the pure-Python twin.

Runs the solution-free-colouring search on a few Schur-type instances with
both kernels and prints per-instance timings plus the speedup.
"""

import time

from radolab import DiagonalEquation, backend, search_solution_free

INSTANCES = [
    ("schur r=2 N=4 (sat)", DiagonalEquation(1, (1, 1, -1)), 4, 2, False),
    ("schur r=2 N=5 (unsat)", DiagonalEquation(1, (1, 1, -1)), 5, 2, False),
    ("schur r=3 N=13 (sat)", DiagonalEquation(1, (1, 1, -1)), 13, 3, True),
    ("schur r=3 N=14 (unsat)", DiagonalEquation(1, (1, 1, -1)), 14, 3, True),
    ("x+2y=4z r=3 N=40 (sat)", DiagonalEquation(1, (1, 2, -4)), 40, 3, True),
]


def run(force_python: bool, repeats: int = 3) -> list[float]:
    times = []
    for _, eq, n, r, distinct in INSTANCES:
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            search_solution_free(eq, n, r, distinct=distinct,
                                 force_python=force_python)
            best = min(best, time.perf_counter() - t0)
        times.append(best)
    return times


def main() -> None:
    print(f"active backend: {backend.BACKEND}")
    fast = run(force_python=False)
    slow = run(force_python=True)
    width = max(len(name) for name, *_ in INSTANCES)
    print(f"{'instance':<{width}}  {'compiled':>10}  {'python':>10}  speedup")
    for (name, *_), tf, ts in zip(INSTANCES, fast, slow):
        print(f"{name:<{width}}  {tf * 1e3:>8.2f}ms  {ts * 1e3:>8.2f}ms  "
              f"{ts / tf:>6.1f}x")


if __name__ == "__main__":
    main()
