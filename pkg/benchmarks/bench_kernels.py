"""Compare the compiled and pure-Python simplex kernels.

Two measurements on the same workloads:

* kernel: the integer tableaux that ``solve`` hands to the kernel are
  recorded once and replayed on each kernel, timing the pivot loop alone;
* solve: end-to-end ``solve`` calls, including tableau construction and
  certificate extraction, which are shared Python code.

Usage: ``python3 benchmarks/bench_kernels.py [--repeat N]``.
"""

from __future__ import annotations

import argparse
import copy
import random
import time
from fractions import Fraction
from types import SimpleNamespace

from convexprev import PossibilityAssignment, Space
from convexprev.core import as_lower
from convexprev.extension import envelope_program, gain_program
from convexprev.lp import KERNELS, LE, GE, EQ, LinearProgram, solve
from convexprev.models import all_events, possibility_measure


def possibility_programs(m: int = 6) -> list[LinearProgram]:
    space = Space([f"w{j}" for j in range(m)])
    pi = [Fraction(j + 1, m) for j in range(m)]
    a = as_lower(possibility_measure(PossibilityAssignment(space, pi), all_events(space)))
    programs = []
    for _, g, _ in a.entries:
        programs.append(gain_program(a, g, convex=True))
        programs.append(envelope_program(a, g, convex=True))
    return programs


def dense_programs(count: int = 40, n: int = 25, m: int = 20, seed: int = 1) -> list[LinearProgram]:
    rng = random.Random(seed)
    programs = []
    for _ in range(count):
        rows = [([Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)],
                 rng.choice((LE, LE, GE, EQ)), rng.randint(0, 20)) for _ in range(m)]
        rows.append(([1] * n, LE, 100))
        programs.append(LinearProgram([rng.randint(-9, 9) for _ in range(n)], rows))
    return programs


def record_tableaux(programs) -> list[tuple]:
    """Inputs of every ``simplex`` call made while solving *programs*."""
    calls = []
    python = KERNELS["python"]

    def simplex(T, basis, D, price, n_enter, m):
        calls.append(copy.deepcopy((T, basis, D, price, n_enter, m)))
        return python.simplex(T, basis, D, price, n_enter, m)

    KERNELS["recording"] = SimpleNamespace(pivot=python.pivot, simplex=simplex)
    try:
        for lp in programs:
            solve(lp, kernel="recording")
    finally:
        del KERNELS["recording"]
    return calls


def best_of(repeat: int, fn, setup=lambda: None) -> float:
    times = []
    for _ in range(repeat):
        state = setup()
        start = time.perf_counter()
        fn(state)
        times.append(time.perf_counter() - start)
    return min(times)


def bench(name: str, programs, repeat: int) -> None:
    calls = record_tableaux(programs)
    print(f"\n{name}: {len(programs)} programs, {len(calls)} simplex calls")
    print(f"  {'kernel':<10} {'kernel s':>10} {'solve s':>10} {'speed-up':>18}")
    reference = None
    for kernel in ("python", "compiled"):
        if kernel not in KERNELS:
            continue
        impl = KERNELS[kernel]

        def replay(inputs):
            for T, basis, D, price, n_enter, m in inputs:
                impl.simplex(T, basis, D, price, n_enter, m)

        def solve_all(_):
            for lp in programs:
                solve(lp, kernel=kernel)

        k = best_of(repeat, replay, lambda: copy.deepcopy(calls))
        s = best_of(repeat, solve_all)
        reference = reference or (k, s)
        print(f"  {kernel:<10} {k:>10.4f} {s:>10.4f}   "
              f"kernel x{reference[0] / k:.2f}, solve x{reference[1] / s:.2f}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if "compiled" not in KERNELS:
        print("compiled kernel not built; only the Python kernel is timed")
    bench("possibility coherence, 6 atoms", possibility_programs(), args.repeat)
    bench("dense random programs", dense_programs(), args.repeat)


if __name__ == "__main__":
    main()
