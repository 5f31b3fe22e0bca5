"""Time the compiled kernels against the pure-Python ones.

Usage: python bench/benchmark_kernels.py [--repeat N]

Each case expands the symbol blocks of one generator and contracts them
into a polynomial.  Both backends are checked to give identical output.
"""

import argparse
import random
import time

from vvforms import _backend
from vvforms.invariants import canonicalize, GeneratorId
from vvforms.permutations import Permutation

CASES = [(2, 1, 2), (2, 2, 4), (3, 3, 3), (2, 2, 6), (3, 3, 6), (4, 2, 8)]


def random_generator(n, k, r, rng):
    s = list(range(1, 2 * r + 1))
    e = list(range(1, r + 1))
    rng.shuffle(s)
    rng.shuffle(e)
    return GeneratorId(n, k, r, Permutation(tuple(s)), Permutation(tuple(e)))


def run_case(kernels, bf, n, k, r):
    v = kernels.block_terms(bf.v_blocks, n, 2 * r)
    w = kernels.block_terms(bf.w_blocks, k, r)
    return kernels.contract_terms(v, w, n, k, r)


def best_of(func, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = func()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    compiled = _backend.compiled_kernels
    if compiled is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
        return 1
    pure = _backend.python_kernels
    rng = random.Random(args.seed)
    print(f"{'(n,k,r)':>10} {'terms':>8} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n, k, r in CASES:
        bf = canonicalize(random_generator(n, k, r, rng))
        t_py, out_py = best_of(lambda: run_case(pure, bf, n, k, r), args.repeat)
        t_c, out_c = best_of(lambda: run_case(compiled, bf, n, k, r), args.repeat)
        assert out_py == out_c, f"backends disagree at {(n, k, r)}"
        print(f"{str((n, k, r)):>10} {len(out_c):>8} {t_py:>10.4f} {t_c:>10.4f} {t_py / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
