"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--sizes 10 100 1000] [--repeat 5]
"""

import argparse
import random
import timeit

import numpy as np

from facloc.kernels import backends


def cases(n: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    xs, ys = rng.normal(size=n).tolist(), rng.normal(size=n).tolist()
    order = list(range(n))
    random.Random(seed).shuffle(order)
    sx, sy = [xs[i] for i in order], [ys[i] for i in order]
    k = 32
    ax, ay = rng.normal(size=k).tolist(), rng.normal(size=k).tolist()
    w = rng.dirichlet(np.ones(k)).tolist()
    return {
        "mec_shuffled": lambda m: m.mec_shuffled(sx, sy),
        "max_cost": lambda m: m.max_cost(ax, ay, w, xs, ys),
        "mean_distance": lambda m: m.mean_distance(ax, ay, w, 0.1, -0.2),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 100, 1000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    mods = backends()
    names = sorted(mods)
    print(f"{'kernel':<14}{'n':>6}" + "".join(f"{b + ' us':>14}" for b in names) + f"{'speedup':>10}")
    for n in args.sizes:
        for kernel, fn in cases(n).items():
            times = {}
            for b in names:
                timer = timeit.Timer(lambda: fn(mods[b]))
                number, _ = timer.autorange()
                times[b] = min(timer.repeat(args.repeat, number)) / number * 1e6
            ratio = times["python"] / times["cython"] if "cython" in times else float("nan")
            print(f"{kernel:<14}{n:>6}" + "".join(f"{times[b]:>14.2f}" for b in names) + f"{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
