"""Time the compiled recursion core against the pure-Python engine.

    python3 benchmarks/bench_recursion.py [--targets 2,1 3,1 4,1 2,4] [--repeat 3]

Each run starts from a fresh engine so nothing is memoised across repeats.
The two engines must agree coefficient for coefficient; a mismatch aborts.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from wpmoduli.volumes import COMPILED_AVAILABLE, make_engine
from wpmoduli.volumes.core import solve


def _time(backend: str, g: int, n: int, repeat: int):
    times, poly = [], None
    for _ in range(repeat):
        engine = make_engine(3 * g - 3 + n, backend)
        t0 = time.perf_counter()
        poly = solve(engine, g, n)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), poly


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--targets", nargs="*", default=["2,1", "3,1", "2,4", "4,1", "0,10", "3,5", "5,1"])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not COMPILED_AVAILABLE:
        print("compiled core not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'(g,n)':>8} {'degree':>6} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for t in args.targets:
        g, n = (int(v) for v in t.split(","))
        tp, pp = _time("python", g, n, args.repeat)
        tc, pc = _time("compiled", g, n, args.repeat)
        if pp != pc:
            print(f"engines disagree at ({g},{n})", file=sys.stderr)
            return 2
        print(f"{f'({g},{n})':>8} {3 * g - 3 + n:>6} {tp:>10.4f} {tc:>11.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
