"""Time the compiled elimination kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--sizes 64,128,256]
"""

import argparse
import time

import numpy as np

from spechtlab import kernels
from spechtlab.fflinalg import ExtField


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(sizes, rng):
    for n in sizes:
        for p in (3, 5, 2**31 - 1):
            a = rng.integers(0, p, size=(n, n))
            yield f"rank_modp p={p}", n, lambda b, a=a, p=p: kernels.rank_modp(a, p, backend=b)
        a = rng.integers(0, 2, size=(n, n))
        yield "rref_gf2", n, lambda b, a=a: kernels.rref_gf2(a, backend=b)
        field = ExtField(3, 5)
        m = field.random(rng, size=(n, n))
        yield "rank_gfq 3^5", n, lambda b, m=m, f=field: kernels.rank_gfq_log(
            f.to_log(m), f.qm1, f.zech, f.neg_one_log, backend=b)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sizes", default="64,128,256")
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]
    backends = kernels.available_backends()
    rng = np.random.default_rng(0)
    print("kernel\tn\t" + "\t".join(f"{b}_s" for b in backends) + "\tspeedup")
    for name, n, fn in cases(sizes, rng):
        times = {b: _best(lambda: fn(b), args.repeat) for b in backends}
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        cols = "\t".join(f"{times[b]:.4f}" for b in backends)
        print(f"{name}\t{n}\t{cols}\t{speed:.1f}x")


if __name__ == "__main__":
    main()
