"""Compare the compiled kernels against the numpy fallback.

Run from a built checkout:

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends implement the same two hot loops (zeta partial sums and
brute-force box marking); this prints wall times and the speedup of the
compiled core when it is available.
"""

from __future__ import annotations

import argparse
import time

from bvis._kernels import _fallback
from bvis.arith import iroot, sieve_primes

try:
    from bvis._kernels import _core
except ImportError:
    _core = None


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def prime_rows(edges, exps):
    bound = min(iroot(m, e) for m, e in zip(edges, exps))
    return [tuple(p**e for e in exps) for p in sieve_primes(bound)]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="timing repeats (best-of)")
    args = parser.parse_args()

    box_edges = (2000, 2000)
    box_rows = prime_rows(box_edges, (1, 2))
    workloads = [
        ("zeta_partial_sum(2, 10**7)", lambda impl: impl.zeta_partial_sum(2, 10**7)),
        ("zeta_partial_sum(2, 10**8)", lambda impl: impl.zeta_partial_sum(2, 10**8)),
        (
            f"count_visible_box{box_edges}, {len(box_rows)} prime rows",
            lambda impl: impl.count_visible_box(box_edges, box_rows),
        ),
    ]

    print(f"{'workload':<44} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for label, call in workloads:
        python_time = best_of(lambda: call(_fallback), args.repeat)
        if _core is None:
            print(f"{label:<44} {python_time:>9.3f}s {'n/a':>10} {'n/a':>8}")
            continue
        compiled_time = best_of(lambda: call(_core), args.repeat)
        ratio = python_time / compiled_time if compiled_time > 0 else float("inf")
        print(f"{label:<44} {python_time:>9.3f}s {compiled_time:>9.3f}s {ratio:>7.1f}x")
    if _core is None:
        print("\ncompiled core not built; showing the numpy fallback only")

    # the two backends must agree before any timing matters
    if _core is not None:
        gap = abs(
            _core.zeta_partial_sum(2, 10**6) - _fallback.zeta_partial_sum(2, 10**6)
        )
        counts = (
            _core.count_visible_box(box_edges, box_rows),
            _fallback.count_visible_box(box_edges, box_rows),
        )
        assert gap < 1e-12 and counts[0] == counts[1], (gap, counts)
        print(f"\nagreement: zeta gap {gap:.1e}, box count {counts[0]} on both backends")


if __name__ == "__main__":
    main()
