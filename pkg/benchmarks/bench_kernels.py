"""Compare the compiled and pure-Python kernel backends.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--suite-budget N]
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from gmpy2 import mpq

from cartdiff.kernels import backend_module

NVARS = 4


def random_poly(k, rng, terms=12, max_deg=3):
    p = {}
    for _ in range(terms):
        exps = [0] * NVARS
        for _ in range(rng.randint(0, max_deg)):
            exps[rng.randrange(NVARS)] += 1
        key = k.pack(exps)
        p = k.padd(p, {key: mpq(rng.randint(-5, 5), rng.randint(1, 3))})
    return p


def workloads(k):
    rng = random.Random(1)
    a, b = random_poly(k, rng), random_poly(k, rng)
    images = [random_poly(k, rng, terms=4, max_deg=2) for _ in range(NVARS)]
    point = [mpq(rng.randint(-3, 3), 2) for _ in range(NVARS)]
    one = mpq(1)
    doubled = k.pshift(a, 0)

    def dual_chain():
        x = k.Dual(1, 0.3, 1.0)
        y = k.Dual(2, x, 1.0)
        for _ in range(20):
            y = k.dadd(k.dmul(k.dsin(y), k.dexp(x)), k.dcos(y))
        return k.dtangent(y, 2)

    return {
        "pmul": lambda: k.pmul(a, b),
        "padd": lambda: k.padd(a, b),
        "pdiff": lambda: k.pdiff(doubled, NVARS),
        "psubst": lambda: k.psubst([a, b], NVARS, images, one),
        "peval": lambda: k.peval(a, point),
        "dual chain": dual_chain,
    }


def time_kernels(repeat):
    rows = {}
    for name in ("python", "compiled"):
        try:
            k = backend_module(name)
        except ImportError:
            print(f"{name} backend unavailable; build the extension first")
            continue
        for label, fn in workloads(k).items():
            n, _ = timeit.Timer(fn).autorange()
            best = min(timeit.repeat(fn, number=n, repeat=repeat)) / n
            rows.setdefault(label, {})[name] = best
    return rows


def time_suite(budget):
    """Wall time of one law suite run in a subprocess per backend."""
    out = {}
    cmd = [sys.executable, "-m", "cartdiff", "laws", "--model", "poly", "--suite", "cd",
           "--seed", "1", "--budget", str(budget), "--format", "structured"]
    for name, flag in (("python", "1"), ("compiled", "0")):
        env = dict(os.environ, CARTDIFF_PURE_PYTHON=flag)
        t = timeit.default_timer()
        subprocess.run(cmd, env=env, check=True, capture_output=True)
        out[name] = timeit.default_timer() - t
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--suite-budget", type=int, default=200)
    args = ap.parse_args()

    print(f"{'kernel':<12}{'python us':>12}{'compiled us':>14}{'speedup':>10}")
    for label, t in time_kernels(args.repeat).items():
        py, c = t.get("python"), t.get("compiled")
        ratio = f"{py / c:.1f}x" if py and c else "-"
        print(f"{label:<12}{py * 1e6:>12.1f}{(c or 0) * 1e6:>14.1f}{ratio:>10}")
    suite = time_suite(args.suite_budget)
    print(f"\npoly cd suite, budget {args.suite_budget}: "
          f"python {suite['python']:.2f}s, compiled {suite['compiled']:.2f}s, "
          f"speedup {suite['python'] / suite['compiled']:.2f}x")


if __name__ == "__main__":
    main()
