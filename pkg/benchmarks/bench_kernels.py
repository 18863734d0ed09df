"""Compare the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from walab import _pykernels
from walab.qseries import e7_in_e8
from walab.rootsys import build

try:
    from walab import _ckernels
except ImportError:
    _ckernels = None


def _cases():
    e8 = [[int(x) for x in row] for row in build("E8").simple_gram]
    e7, coset = e7_in_e8()
    d = 2
    shift = [int(x * d) for x in coset.shift]
    return [
        ("shell_counts E8, norm <= 12", "shell_counts", (e8, [0] * 8, 1, 12)),
        ("shell_counts E7, norm <= 60", "shell_counts", ([list(r) for r in e7.gram], [0] * 7, 1, 60)),
        ("shell_counts E7+w7, norm <= 61.5", "shell_counts", ([list(r) for r in e7.gram], shift, d, 246)),
        ("eta_power_coeffs k=-7, order 400", "eta_power_coeffs", (-7, 400)),
    ]


def _time(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'case':36s} {'python (s)':>11s} {'cython (s)':>11s} {'speedup':>8s}")
    for name, fname, fargs in _cases():
        tp, rp = _time(getattr(_pykernels, fname), fargs, args.repeat)
        if _ckernels is None:
            print(f"{name:36s} {tp:11.4f} {'n/a':>11s} {'n/a':>8s}")
            continue
        tc, rc = _time(getattr(_ckernels, fname), fargs, args.repeat)
        assert rp == rc, f"backends disagree on {name}"
        print(f"{name:36s} {tp:11.4f} {tc:11.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
