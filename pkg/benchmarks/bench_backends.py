#!/usr/bin/env python3
"""Timing comparison of the compiled kernels against the pure-Python twin.

Runs the two hot paths (operator weight pipeline, adaptive panel quadrature)
through both backends, reports best-of-N wall times and the speedup, and
cross-checks that the backends agree to the last few ulps.

Usage: python benchmarks/bench_backends.py [--degrees 64,256,1024] [--repeats 5]
"""

import argparse
import math
import timeit

import numpy as np

from bernaudit import _kernels_py

try:
    from bernaudit import _kernels
except ImportError:
    _kernels = None


def weight_pipeline(k, n, x, values):
    """One operator evaluation: weights, normalization, weighted mean."""
    logw = k.log_weights(n, x)
    w = k.weights_from_log(logw)
    total = k.comp_sum(w)
    return k.comp_dot(w, values) / total


def quad_panel(k, scale):
    # power-modulus integrand on a seam-free panel, tight budget
    spec = ("mod", k.KIND_POWER, 0.5, 1.0, np.empty(0), np.empty(0), scale)
    val, err, _ = k.panel_integrate(spec, 0.0, 10.0, 1e-13, 1 << 20)
    return val, err


def best_time(fn, repeats):
    number = 1
    while True:
        t = timeit.timeit(fn, number=number)
        if t > 0.05:
            break
        number *= 4
    times = timeit.repeat(fn, number=number, repeat=repeats)
    return min(times) / number


def fmt(seconds):
    if seconds < 1e-3:
        return f"{seconds * 1e6:8.1f} us"
    return f"{seconds * 1e3:8.2f} ms"


def report(row, timed, values=None):
    """Print one line per backend plus the python/compiled ratio."""
    base = timed.get("python")
    for name, t in timed.items():
        extra = ""
        if name == "compiled" and base is not None:
            extra = f"   {base / t:6.1f}x"
        print(f"{row:<28} {name:<10} {fmt(t):>12}{extra}")
    if values is not None and len(values) == 2:
        a, b = values
        assert a == b or math.isclose(a, b, rel_tol=1e-13), (row, a, b)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--degrees", default="64,256,1024")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    degrees = [int(tok) for tok in args.degrees.split(",")]

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("compiled", _kernels))
    else:
        print("compiled kernel not built; timing the pure backend only")

    print(f"{'kernel':<28} {'backend':<10} {'best':>12}   speedup")
    for n in degrees:
        x = 1.0 / 3.0
        values = np.array([(m / n) ** 2 for m in range(n + 1)])
        timed, out = {}, []
        for name, k in backends:
            timed[name] = best_time(
                lambda k=k: weight_pipeline(k, n, x, values), args.repeats)
            out.append(weight_pipeline(k, n, x, values))
        report(f"weights n={n}", timed, out)

    for scale in (0.05, 0.005):
        timed, out = {}, []
        for name, k in backends:
            timed[name] = best_time(lambda k=k: quad_panel(k, scale), args.repeats)
            out.append(quad_panel(k, scale)[0])
        report(f"quadrature s={scale}", timed, out)

    if len(backends) == 2:
        print("cross-backend agreement checks passed")


if __name__ == "__main__":
    main()
