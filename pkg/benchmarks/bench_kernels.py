"""Time the compiled and pure-Python row reduction kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--sizes 10,20,40,80] [--repeat 3]

Two workloads: sparse matrices with small entries, like the constraint systems
the package builds, and dense ones whose eliminations overflow int64 and send
the compiled kernel to its Python-integer fallback.
"""
import argparse
import random
import timeit

from homnambu import _kernels

WORKLOADS = {
    "sparse": dict(density=0.15, bound=2),
    "dense": dict(density=0.6, bound=9),
}


def random_rows(rng, nrows, ncols, density, bound):
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(ncols)]
            for _ in range(nrows)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="10,20,40,80")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = _kernels.BACKENDS
    if "cython" not in backends:
        print("compiled extension not built; only the python backend is available")
    rng = random.Random(args.seed)
    print(f"{'workload':>8} {'size':>5} " + " ".join(f"{name:>10}" for name in backends) + "   speedup")
    for label, kw in WORKLOADS.items():
        for n in (int(s) for s in args.sizes.split(",")):
            rows = random_rows(rng, n, 2 * n, **kw)
            ncols = 2 * n
            results = {name: fn(rows, ncols) for name, fn in backends.items()}
            assert len({repr(r) for r in results.values()}) == 1, "backends disagree"
            times = {name: min(timeit.repeat(lambda fn=fn: fn(rows, ncols), number=1, repeat=args.repeat))
                     for name, fn in backends.items()}
            speed = times["python"] / times["cython"] if "cython" in times else 1.0
            print(f"{label:>8} {n:>5} " + " ".join(f"{t * 1e3:>8.2f}ms" for t in times.values())
                  + f"   {speed:6.2f}x")


if __name__ == "__main__":
    main()
