"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends are run on identical inputs and their outputs compared before timing.
"""

import argparse
import sys
import timeit

from icosa.kernels import compiled_kernels, python_kernels


def _nonresidue(p):
    return next(d for d in range(2, p) if pow(d, (p - 1) // 2, p) == p - 1)


def cases():
    p1, p2 = 9973, 211
    d0 = _nonresidue(p2)
    chi5 = [0, 1, -1, -1, 1]
    return [
        (f"count_points_fp  p={p1}", "count_points_fp", (3, 7, 11, p1)),
        (f"count_points_fp2 p={p2}^2", "count_points_fp2", (1, 2, 3, 4, 5, 6, p2, d0, 0)),
        ("dirichlet_partial_sum n=1e6", "dirichlet_partial_sum", (chi5, 2.0, 0.0, 10**6)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if compiled_kernels is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'kernel':32s} {'python [s]':>11s} {'cython [s]':>11s} {'speedup':>8s}")
    for label, name, fargs in cases():
        py, cy = getattr(python_kernels, name), getattr(compiled_kernels, name)
        a, b = py(*fargs), cy(*fargs)
        if abs(complex(a) - complex(b)) > 1e-9 * max(1, abs(complex(a))):
            print(f"{label}: backends disagree ({a} vs {b})")
            return 1
        t_py = min(timeit.repeat(lambda: py(*fargs), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: cy(*fargs), number=1, repeat=args.repeat))
        print(f"{label:32s} {t_py:11.4f} {t_cy:11.4f} {t_py / t_cy:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
