"""Compare the compiled move kernel against the pure-Python fallback.

Two workloads: raw expand throughput on random valid mosaics, and a full
breadth-first orbit closure (the 4x4 simple-circle orbit, 1348 members).

Run from the repository root:

    python benchmarks/bench_moves.py
"""

import random
import time

from knotfield import kernels
from knotfield.mosaic import Mosaic, random_mosaic
from knotfield.moves import default_table
from knotfield.orbits import compile_instances, orbit

CIRCLE4 = Mosaic(4, (2, 1, 0, 0, 3, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0))


def bench_expand(expand, states, packed, repeats=5):
    _, pos, pat_a, pat_b, lens = packed
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for s in states:
            expand(s, pos, pat_a, pat_b, lens)
        best = min(best, time.perf_counter() - t0)
    return len(states) / best


def bench_orbit(repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        orb = orbit(CIRCLE4, default_table())
        best = min(best, time.perf_counter() - t0)
    assert orb.size == 1348
    return best


def main():
    table = default_table()
    rng = random.Random(7)
    states = [bytes(random_mosaic(6, rng).cells) for _ in range(200)]
    packed = compile_instances(table, 6)

    fast = kernels.expand
    slow = kernels.pure_python_expand()
    print(f"selected backend: {kernels.BACKEND}")

    r_fast = bench_expand(fast, states, packed)
    r_slow = bench_expand(slow, states, packed)
    print(f"expand throughput, 6x6 lattice ({len(packed[0])} instances/state):")
    print(f"  {kernels.BACKEND:>8}: {r_fast:10.1f} states/s")
    print(f"  {'python':>8}: {r_slow:10.1f} states/s")
    print(f"  speedup: {r_fast / r_slow:.1f}x")

    t = bench_orbit()
    print(f"orbit closure, 4x4 circle (1348 members): {t * 1e3:.1f} ms "
          f"[{kernels.BACKEND}]")


if __name__ == "__main__":
    main()
