"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints the best time per call for each kernel and backend, and the speedup.
"""

import argparse
import timeit

import numpy as np

from momentgate.kernels import BACKENDS


def cases():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(6, 6))
    s6 = x @ x.T
    y = rng.normal(size=(3, 3))
    s3 = y @ y.T
    s2 = np.array([0.2582**2, 0.1826**2, 0.5**2])
    p = np.array([2.0, 5.0, 1.0])
    hi = float(np.sqrt(s2.max()) * np.linalg.norm(p))
    return {
        "jacobi_eigh 3x3": (lambda k: k.jacobi_eigh(s3), 2000),
        "jacobi_eigh 6x6": (lambda k: k.jacobi_eigh(s6), 500),
        "lu_det 6x6": (lambda k: k.lu_det(s6), 5000),
        "secular_root 3d": (lambda k: k.secular_root(s2, p, 0.0, hi), 2000),
        "ellipse_scan 1e5": (lambda k: k.ellipse_scan(0.2582, 0.1826, 2.0, 5.0, 100_000), 5),
        "ellipsoid_scan 300x300": (lambda k: k.ellipsoid_scan(1.0, 2.0, 3.0, 2.0, 5.0, 1.0, 300, 300), 3),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    names = [b for b in ("cython", "python") if b in BACKENDS]
    print(f"{'kernel':<24}" + "".join(f"{n:>14}" for n in names) + ("   speedup" if len(names) == 2 else ""))
    for label, (fn, number) in cases().items():
        times = []
        for name in names:
            kernel = BACKENDS[name]
            best = min(timeit.repeat(lambda: fn(kernel), number=number, repeat=args.repeat)) / number
            times.append(best)
        row = f"{label:<24}" + "".join(f"{t * 1e6:>11.1f} us" for t in times)
        if len(times) == 2:
            row += f"   {times[1] / times[0]:7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
