"""Benchmark the exact convolution kernel: numba vs pure numpy vs bigint.

The group-algebra product is the hot loop behind every idempotency and
orthogonality check, so this is the number that matters.  Run:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --repeats 9 --groups "2:[1]*10,2:[10]"

The bigint path is the arbitrary-precision safety net; it is expected to be
slow and is included for scale.
"""

import argparse
import random
import time

from pcikit import parse_group_spec
from pcikit.kernels import _convolve_bigint, convolve_ints


def expand_group_text(text):
    # "2:[1]*6" is shorthand for "2:[1,1,1,1,1,1]"
    if "*" in text:
        head, mult = text.split("*")
        prime, exps = head.split(":[")
        exps = exps.rstrip("]")
        return f"{prime}:[{','.join([exps] * int(mult))}]"
    return text


def bench(orders, repeats, rng):
    n = 1
    for d in orders:
        n *= d
    a = [rng.randrange(-50, 51) for _ in range(n)]
    b = [rng.randrange(-50, 51) for _ in range(n)]

    results = {}
    # warm-up compiles the numba kernel and fills the table cache
    convolve_ints(a, b, orders, backend="numba")
    convolve_ints(a, b, orders, backend="numpy")
    for backend in ("numba", "numpy"):
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            out = convolve_ints(a, b, orders, backend=backend)
            best = min(best, time.perf_counter() - t0)
        results[backend] = (best, out)
    t0 = time.perf_counter()
    big = _convolve_bigint(a, b, orders)
    results["bigint"] = (time.perf_counter() - t0, big)

    assert results["numba"][1] == results["numpy"][1] == results["bigint"][1]
    return n, {k: v[0] for k, v in results.items()}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--groups",
        default="2:[1]*6,2:[6],2:[1]*8,2:[2]*4,3:[1]*5,2:[10]",
        help="comma-separated group descriptions; '2:[1]*6' repeats the exponent",
    )
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=20240601)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    print(f"{'group':>12} {'|G|':>6} {'numba':>12} {'numpy':>12} {'bigint':>12} {'numpy/numba':>12}")
    for text in args.groups.split(","):
        spec = parse_group_spec(expand_group_text(text.strip()))
        n, times = bench(spec.factor_orders, args.repeats, rng)
        ratio = times["numpy"] / times["numba"] if times["numba"] else float("inf")
        print(
            f"{text.strip():>12} {n:>6} "
            f"{times['numba'] * 1e3:>10.3f}ms {times['numpy'] * 1e3:>10.3f}ms "
            f"{times['bigint'] * 1e3:>10.3f}ms {ratio:>11.1f}x"
        )


if __name__ == "__main__":
    main()
