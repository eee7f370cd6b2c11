"""Compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Times the two hot loops on random inputs of growing size, checks that both
backends return identical results, then runs one end-to-end node
computation under each backend in a subprocess.
"""
from __future__ import annotations

import argparse
import os
import statistics
import subprocess
import sys
import time

import numpy as np

from adeg import _fallback

try:
    from adeg import _kernels
except ImportError:  # extension not built
    _kernels = None

P = 7919


def random_poly(rng, N, density=0.4, low=0):
    a = rng.integers(0, P, (N, N), dtype=np.int64)
    ii, jj = np.indices((N, N))
    a[(ii + jj >= N) | (ii + jj < low) | (rng.random((N, N)) > density)] = 0
    return a


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), out


def row(name, size, fast, slow):
    ratio = slow / fast if fast > 0 else float("inf")
    print(f"{name:<14}{size:>6}  {fast * 1e3:>10.2f} ms  {slow * 1e3:>10.2f} ms  {ratio:>7.1f}x")


def bench_mul(rng, sizes, repeat):
    for N in sizes:
        a, b = random_poly(rng, N), random_poly(rng, N)
        fast, _, x = best_of(lambda: _kernels.mul_trunc(a, b, N, P), repeat)
        slow, _, y = best_of(lambda: _fallback.mul_trunc(a, b, N, P), repeat)
        assert (x == y).all(), "mul_trunc backends disagree"
        row("mul_trunc", N, fast, slow)


def bench_span(rng, sizes, repeat):
    for N in sizes:
        gens = [random_poly(rng, N, 0.15, low=2) for _ in range(3)]
        fast, _, x = best_of(lambda: _kernels.span_profile(gens, N, P), repeat)
        slow, _, y = best_of(lambda: _fallback.span_profile(gens, N, P), repeat)
        assert x == y, f"span_profile backends disagree: {x} vs {y}"
        row("span_profile", N, fast, slow)


SNIPPET = ("import time; from adeg.invariants import node_ad; from adeg import _kernel; "
           "t=time.perf_counter(); v=node_ad({m}, 'w2b', trials=1, seed=1).value; "
           "print(_kernel.BACKEND, v, time.perf_counter()-t)")


def bench_end_to_end(m):
    results = {}
    for pure in ("0", "1"):
        env = dict(os.environ, ADEG_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", SNIPPET.format(m=m)], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        results[out[0]] = (int(out[1]), float(out[2]))
    values = {v for v, _ in results.values()}
    assert len(values) == 1, f"end-to-end values differ: {results}"
    if "compiled" in results:
        row(f"node m={m}", m, results["compiled"][1], results["python"][1])
    else:
        print(f"node m={m}: only the fallback is available ({results['python'][1]:.2f} s)")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small sizes only")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`")
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<14}{'N':>6}  {'compiled':>13}  {'fallback':>13}  {'speedup':>8}")
    bench_mul(rng, (8, 16, 32) if args.quick else (8, 16, 32, 48, 64), args.repeat)
    bench_span(rng, (8, 16) if args.quick else (8, 16, 24, 32), args.repeat)
    bench_end_to_end(4 if args.quick else 7)
    return 0


if __name__ == "__main__":
    sys.exit(main())
