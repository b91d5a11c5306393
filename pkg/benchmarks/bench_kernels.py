"""Time the truncated-polynomial product under each backend.

    python3 benchmarks/bench_kernels.py --nvars 8 --maxdeg 8 --repeat 20

The compiled and numpy kernels run in the same process on identical
inputs; the script checks that they agree before printing timings.
"""
import argparse
import time

import numpy as np

from odlcalc import _kernels as K


def _time(fn, repeat):
    fn()  # warm-up, includes numba compilation
    start = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - start) / repeat


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nvars", type=int, default=8)
    parser.add_argument("--maxdeg", type=int, default=8)
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    size = len(K.monomial_basis(args.nvars, args.maxdeg)[0])
    a = rng.integers(-9, 10, size=size).astype(np.int64)
    b = rng.integers(-9, 10, size=size).astype(np.int64)
    ia, ib, ic = K.pair_table(args.nvars, args.maxdeg)
    print(f"monomials {size}, index pairs {len(ia)}")

    def run(kernel):
        return kernel(a, b, ia, ib, ic, np.zeros(size, dtype=np.int64))

    reference = run(K._product_numpy)
    t_numpy = _time(lambda: run(K._product_numpy), args.repeat)
    print(f"numpy  {t_numpy * 1e3:9.3f} ms")
    if K.HAVE_NUMBA:
        assert np.array_equal(run(K._product_int64), reference)
        t_numba = _time(lambda: run(K._product_int64), args.repeat)
        print(f"numba  {t_numba * 1e3:9.3f} ms  (x{t_numpy / t_numba:.1f})")
    else:
        print("numba  unavailable or disabled")
    ao, bo = a.astype(object), b.astype(object)
    t_object = _time(lambda: K._product_numpy(ao, bo, ia, ib, ic, np.zeros(size, dtype=object)),
                     max(1, args.repeat // 4))
    print(f"object {t_object * 1e3:9.3f} ms  (exact fallback)")


if __name__ == "__main__":
    main()
