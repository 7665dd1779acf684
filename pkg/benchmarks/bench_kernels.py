"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from fcfsim import _purepy
from fcfsim.fock import build_momentum

try:
    from fcfsim import _kernels
except ImportError:
    _kernels = None


def cases():
    for d in (4, 8, 16, 64):
        p = build_momentum(d)
        yield f"expm  d={d:<3d}", lambda k, p=p: k.expm_minus_i(p, 3.0 / 11), 200
    bs = np.linspace(0, 4, 161)
    yield "fcf grid m,n<=3 (161 b)", lambda k: [k.fcf_overlap_grid(m, n, bs) for m in range(4) for n in range(4)], 20
    yield "fcf grid m,n<=40 (161 b)", lambda k: [k.fcf_overlap_grid(m, 40, bs) for m in range(41)], 5


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'case':<28}{'python [ms]':>14}{'compiled [ms]':>16}{'speedup':>10}")
    for name, fn, number in cases():
        t_py = min(timeit.repeat(lambda: fn(_purepy), number=number, repeat=args.repeat)) / number
        if _kernels is None:
            print(f"{name:<28}{t_py * 1e3:>14.4f}")
            continue
        t_cy = min(timeit.repeat(lambda: fn(_kernels), number=number, repeat=args.repeat)) / number
        print(f"{name:<28}{t_py * 1e3:>14.4f}{t_cy * 1e3:>16.4f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
