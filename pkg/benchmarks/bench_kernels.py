"""Compare the compiled and pure-Python kernels on the hot loops.

Run ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Prints one line
per kernel with the median time of each backend and the speedup.
"""

import argparse
import statistics
import time

import numpy as np

from lojparam import kernels
from lojparam.loj import _shell_samples_cached, shell_samples
from lojparam.poly import MultiPoly, Region


def _poly():
    x, y, z = MultiPoly.variables(3)
    return ((x + y) ** 2 * (y - x**3) + z**4 - x * y * z).to_float()


def cases():
    rng = np.random.default_rng(0)
    f = _poly()
    exps, coeffs = f.float_arrays()
    pts = rng.standard_normal((20000, 3)) + 1j * rng.standard_normal((20000, 3))
    dirs = rng.standard_normal((256, 3)) + 1j * rng.standard_normal((256, 3))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    z = np.array([0.1, 0.05j, -0.02])
    uni = np.polynomial.polynomial.polyfromroots(rng.standard_normal(12) + 1j * rng.standard_normal(12))
    x, y = MultiPoly.variables(2)
    g = y**2 - x**3
    region = Region.ball((0, 0), 0.1)

    def shells():
        _shell_samples_cached.cache_clear()
        shell_samples(g, (0, 0), region, 256, 0)

    return {
        "aberth deg 12": lambda: kernels.aberth(uni, 1e-12, 200),
        "eval_multi 20k pts": lambda: kernels.eval_multi(exps, coeffs, pts),
        "restrict_line": lambda: kernels.restrict_line(exps, coeffs, z, dirs[0], f.degree),
        "nearest_roots 256 dirs": lambda: kernels.nearest_roots(exps, coeffs, z, dirs, f.degree),
        "winding 4096 nodes": lambda: kernels.winding(uni, 0.3, 1.0, 4096),
        "shell sampling (end to end)": shells,
    }


def timeit(fn, repeat):
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return statistics.median(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)} (default {kernels.BACKEND})")
    if "cython" not in backends:
        print("compiled extension not built; only the Python backend can be timed")
    prev = kernels.BACKEND
    try:
        for name, fn in cases().items():
            times = {}
            for b in backends:
                kernels.use_backend(b)
                fn()  # warm up
                times[b] = timeit(fn, args.repeat)
            line = "  ".join(f"{b} {t * 1e3:9.3f} ms" for b, t in times.items())
            if len(times) == 2:
                line += f"  speedup x{times['python'] / times['cython']:.1f}"
            print(f"{name:30s} {line}")
    finally:
        kernels.use_backend(prev)


if __name__ == "__main__":
    main()
