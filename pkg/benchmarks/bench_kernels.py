"""Compare the compiled and numpy lattice-sum kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""
import argparse
import json
import math
import time

import numpy as np

from thetaframe import _pykernels

try:
    from thetaframe import _ckernels
except ImportError:
    _ckernels = None

CASES = [
    # (label, radius, number of character points)
    ("origin, K=8", 8, 1),
    ("origin, K=40", 40, 1),
    ("grid 32x32, K=8", 8, 1024),
    ("grid 96x96, K=6", 6, 9216),
]


def _points(count):
    if count == 1:
        return np.zeros(1), np.zeros(1)
    side = int(round(math.sqrt(count)))
    t = np.arange(side) / side
    xx, ww = np.meshgrid(t, t, indexing="ij")
    return xx.ravel(), ww.ravel()


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="write results to this file")
    args = ap.parse_args()

    m11, m12, m22 = 1.2, 0.35, 0.9
    rows = []
    print(f"{'case':<20}{'numpy [ms]':>12}{'cython [ms]':>13}{'speedup':>9}{'max diff':>11}")
    for label, radius, count in CASES:
        xs, ws = _points(count)
        call = (m11, m12, m22, radius, 0.0, 0.0, xs, ws)
        t_py = _best(lambda: _pykernels.lattice_sum(*call), args.repeat)
        row = {"case": label, "radius": radius, "points": count, "numpy_s": t_py}
        if _ckernels is not None:
            t_c = _best(lambda: _ckernels.lattice_sum(*call), args.repeat)
            a = np.asarray(_pykernels.lattice_sum(*call))
            b = np.asarray(_ckernels.lattice_sum(*call))
            diff = float(np.max(np.abs(a - b)))
            row.update(cython_s=t_c, speedup=t_py / t_c, max_abs_diff=diff)
            print(f"{label:<20}{1e3 * t_py:>12.3f}{1e3 * t_c:>13.3f}{t_py / t_c:>9.1f}{diff:>11.1e}")
        else:
            print(f"{label:<20}{1e3 * t_py:>12.3f}{'n/a':>13}{'':>9}{'':>11}")
        rows.append(row)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
