"""Benchmark the compiled multiply-reduce kernel against the pure-Python
fallback, both on the raw kernel call and on a whole-algebra workload.

Run:  python benchmarks/bench_mulmod.py
"""

import os
import random
import subprocess
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from divherm import _mulmod_py  # noqa: E402

try:
    from divherm import _mulmod
except ImportError:
    _mulmod = None


def _workload(rng, n, count):
    pairs = []
    red = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n - 1)]
    for _ in range(count):
        a = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(n)]
        b = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(n)]
        pairs.append((a, b))
    return pairs, red


def bench_kernel(impl, pairs, red, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for a, b in pairs:
            impl.mulmod(a, b, red)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_algebra(env_value):
    """Time 200 products in the degree-18 test algebra in a subprocess so
    the kernel choice (made at import) can differ between runs."""
    code = (
        "import random, time;"
        "from divherm import catalog, kernel;"
        "alg = catalog.example_algebra();"
        "rng = random.Random(1);"
        "xs = [alg.random_element(rng, 3) for _ in range(40)];"
        "t0 = time.perf_counter();"
        "[x * y for x in xs for y in xs[:5]];"
        "print(kernel.BACKEND, time.perf_counter() - t0)"
    )
    env = dict(os.environ)
    if env_value:
        env["DIVHERM_PURE"] = env_value
    else:
        env.pop("DIVHERM_PURE", None)
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    backend, secs = out.stdout.split()
    return backend, float(secs)


def main():
    rng = random.Random(0)
    print("raw kernel: 20000 multiply-reduce calls per degree")
    for n in (2, 6, 7):
        pairs, red = _workload(rng, n, 20000)
        t_py = bench_kernel(_mulmod_py, pairs, red)
        line = "  degree %d: python %.3fs" % (n, t_py)
        if _mulmod is not None:
            t_cy = bench_kernel(_mulmod, pairs, red)
            line += "  cython %.3fs  speedup %.1fx" % (t_cy, t_py / t_cy)
        print(line)

    print("whole-algebra workload: 200 products in the degree-18 algebra")
    backend, secs = bench_algebra(None)
    print("  %s backend: %.3fs" % (backend, secs))
    backend, secs = bench_algebra("1")
    print("  %s backend: %.3fs" % (backend, secs))


if __name__ == "__main__":
    main()
