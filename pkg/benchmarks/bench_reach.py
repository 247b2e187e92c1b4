"""Compare the compiled reachability kernel with the pure-Python one.

    python benchmarks/bench_reach.py [--n 2000] [--degree 4] [--repeat 5]
"""

import argparse
import random
import timeit

from wsep import kernels
from wsep.graph import ArcIndex


def random_index(n, degree, seed):
    rng = random.Random(seed)
    arcs = [(rng.randrange(n), rng.randrange(n)) for _ in range(n * degree)]
    return ArcIndex.build(n, arcs), len(arcs)


def blocked(m, frac, seed):
    rng = random.Random(seed)
    return bytearray(1 if rng.random() < frac else 0 for _ in range(m))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    idx, m = random_index(args.n, args.degree, args.seed)
    arc_block = blocked(m, 0.2, args.seed + 1)
    args_ = (idx.indptr, idx.heads, idx.arc_ids, 0, arc_block, None)
    if bytes(kernels.reach(*args_)) != bytes(kernels.reach_py(*args_)):
        raise SystemExit("kernels disagree")

    print(f"backend: {kernels.BACKEND}  n={args.n} arcs={m}")
    results = {}
    for name, fn in (("compiled", kernels.reach), ("python", kernels.reach_py)):
        if name == "compiled" and kernels.BACKEND != "cython":
            print("compiled: not built, skipped")
            continue
        t = min(timeit.repeat(lambda: fn(*args_), number=20, repeat=args.repeat)) / 20
        results[name] = t
        print(f"{name:9s} {t * 1e3:9.3f} ms per call")
    if len(results) == 2:
        print(f"speedup   {results['python'] / results['compiled']:9.1f}x")


if __name__ == "__main__":
    main()
