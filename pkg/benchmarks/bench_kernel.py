"""Compare the compiled wedge/contract kernel with the pure-Python one.

    python benchmarks/bench_kernel.py [--repeat N]

Prints per-call timings for random 8-dimensional forms and the wall time of
one full ``analyze`` on a table1 algebra under each kernel.
"""

import argparse
import itertools
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from paratorsion import _kernel_py

PIPELINE = (
    "import time; from paratorsion import corpus, analyze, Structure, KERNEL;"
    "L = corpus.table1_family(1, 1, 1, 0); t = time.perf_counter();"
    "[analyze(Structure(L, check=False)) for _ in range(3)];"
    "print(KERNEL, (time.perf_counter() - t) / 3)"
)


def random_terms(rng, m, k, count):
    keys = list(itertools.combinations(range(1, m + 1), k))
    return {key: Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            for key in rng.sample(keys, min(count, len(keys)))}


def bench(mod, pairs, repeat):
    w = timeit.timeit(lambda: [mod.wedge_terms(a, b) for a, b in pairs], number=repeat)
    c = timeit.timeit(lambda: [mod.contract_terms(i, a) for a, _ in pairs for i in (1, 4, 8)],
                      number=repeat)
    return w / (repeat * len(pairs)), c / (repeat * 3 * len(pairs))


def pipeline(pure):
    env = dict(os.environ)
    env.pop("PARATORSION_PURE", None)
    if pure:
        env["PARATORSION_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", PIPELINE], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()
    rng = random.Random(0)
    pairs = [(random_terms(rng, 8, 3, 12), random_terms(rng, 8, 2, 10)) for _ in range(50)]
    kernels = [("python", _kernel_py)]
    try:
        from paratorsion import _kernel
        kernels.append(("compiled", _kernel))
    except ImportError:
        print("compiled kernel not built; only the pure kernel is timed")
    for name, mod in kernels:
        w, c = bench(mod, pairs, args.repeat)
        print(f"{name:9} wedge {w * 1e6:8.2f} us/call   contract {c * 1e6:8.2f} us/call")
    for pure in (True, False):
        kernel, secs = pipeline(pure)
        print(f"{kernel:9} analyze(table1 row 1) {secs * 1e3:8.1f} ms")


if __name__ == "__main__":
    main()
