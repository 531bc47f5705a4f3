"""Compiled vs numpy kernels: displacement matrices and beam-splitter application.

    python benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel and size with best-of-N timings and the maximum
absolute difference between the two backends.
"""

import argparse
import timeit

import numpy as np

from dvcv.kernels import get_backend

SIZES = (20, 40, 80)


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    py = get_backend("python")
    try:
        cy = get_backend("cython")
    except ImportError:
        print("compiled extension not built; nothing to compare")
        return

    rng = np.random.default_rng(1)
    print(f"{'kernel':<22}{'dim':>5}{'python ms':>12}{'cython ms':>12}{'speedup':>9}{'max diff':>11}")
    for dim in SIZES:
        alpha = 1.3 - 0.4j
        a, b = py.displacement_matrix(alpha, dim), cy.displacement_matrix(alpha, dim)
        tp = bench(lambda: py.displacement_matrix(alpha, dim), args.repeat)
        tc = bench(lambda: cy.displacement_matrix(alpha, dim), args.repeat)
        print(f"{'displacement_matrix':<22}{dim:>5}{tp * 1e3:>12.3f}{tc * 1e3:>12.3f}"
              f"{tp / tc:>9.1f}{np.max(np.abs(a - b)):>11.1e}")
    for dim in SIZES:
        psi = rng.normal(size=(dim, dim, 4)) + 1j * rng.normal(size=(dim, dim, 4))
        t, r = 0.6, 0.8
        py.beam_splitter_blocks(t, r, 2 * dim - 2)  # warm the shared block cache
        a, b = py.apply_beam_splitter(psi, t, r), cy.apply_beam_splitter(psi, t, r)
        tp = bench(lambda: py.apply_beam_splitter(psi, t, r), args.repeat)
        tc = bench(lambda: cy.apply_beam_splitter(psi, t, r), args.repeat)
        print(f"{'apply_beam_splitter':<22}{dim:>5}{tp * 1e3:>12.3f}{tc * 1e3:>12.3f}"
              f"{tp / tc:>9.1f}{np.max(np.abs(a - b)):>11.1e}")


if __name__ == "__main__":
    main()
