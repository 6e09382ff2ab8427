"""
Time the numba and numpy modular kernels against each other.

    python3 benchmarks/bench_kernels.py [--orders 1000,3000,6000] [--modulus 15625]

Each row is the best of ``--repeat`` runs after one warm-up call (which
also absorbs numba compilation).  The two backends must agree exactly.
"""

import argparse
import time

import numpy as np

from qcore import _kernels as K


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--orders", default="1000,3000,6000")
    ap.add_argument("--modulus", type=int, default=5**6)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not K.HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    m = args.modulus
    rng = np.random.default_rng(args.seed)
    print(f"modulus {m}")
    print(f"{'op':<8}{'order':>8}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for order in (int(x) for x in args.orders.split(",")):
        a = rng.integers(0, m, order, dtype=np.int64)
        b = rng.integers(0, m, order, dtype=np.int64)
        a[0] = 1
        if not K.fits_int64(m, order):
            print(f"skip order {order}: products overflow int64")
            continue
        cases = {
            "mul": (lambda: K.mul_mod_numpy(a, b, m, order), lambda: K.mul_mod_numba(a, b, m, order)),
            "inv": (lambda: K.inv_mod_numpy(a, m, order, 1), lambda: K.inv_mod_numba(a, m, order, 1)),
        }
        for name, (f_np, f_nb) in cases.items():
            if not np.array_equal(f_np(), f_nb()):
                raise SystemExit(f"{name} at order {order}: backends disagree")
            t_np = best_of(f_np, args.repeat)
            t_nb = best_of(f_nb, args.repeat)
            print(f"{name:<8}{order:>8}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
