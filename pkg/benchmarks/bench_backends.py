"""Benchmark the exhaustive enumeration kernel: numba path versus numpy path.

The enumeration over all 2**n block selections, with one small Hermitian
eigendecomposition per selection, dominates the runtime of every exhaustive
universal-bound computation.  This script times both backends on the same
seeded instance, verifies they agree, and prints the speedup.

Usage:
    python benchmarks/bench_backends.py [--blocks N] [--dim D] [--repeats R]

The numpy path can also be forced package-wide by setting
GWEAVE_DISABLE_NUMBA=1 in the environment.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from gweave import _kernels
from gweave.gframe import block_grams, new_gframe


def build_instance(n_blocks: int, dim: int, seed: int):
    rng = np.random.default_rng(seed)
    first = new_gframe(
        dim, [rng.standard_normal((int(rng.integers(1, 4)), dim)) for _ in range(n_blocks)]
    )
    second = new_gframe(
        dim, [rng.standard_normal((int(rng.integers(1, 4)), dim)) for _ in range(n_blocks)]
    )
    p = block_grams(first)
    q = block_grams(second)
    base = np.ascontiguousarray(q.sum(axis=0))
    deltas = np.ascontiguousarray(p - q)
    return base, deltas


def time_backend(fn, base, deltas, repeats: int):
    best = np.inf
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(base, deltas)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--blocks", type=int, default=14)
    parser.add_argument("--dim", type=int, default=8)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    base, deltas = build_instance(args.blocks, args.dim, args.seed)
    subsets = 1 << args.blocks
    print(f"instance: {args.blocks} blocks, dimension {args.dim}, {subsets} subsets")

    t_np, r_np = time_backend(_kernels.weaving_scan_numpy, base, deltas, args.repeats)
    print(f"numpy : {t_np:.3f} s  ({subsets / t_np:,.0f} subsets/s)")

    if not _kernels.HAVE_NUMBA:
        print("numba : not installed, skipping comparison")
        return 0

    _kernels.weaving_scan_numba(base[:2, :2].copy(), deltas[:1, :2, :2].copy())  # warm up
    t_nb, r_nb = time_backend(_kernels.weaving_scan_numba, base, deltas, args.repeats)
    print(f"numba : {t_nb:.3f} s  ({subsets / t_nb:,.0f} subsets/s)")
    print(f"speedup: {t_np / t_nb:.2f}x")

    lower_diff = abs(r_np[0] - r_nb[0])
    upper_diff = abs(r_np[2] - r_nb[2])
    # Witness masks may differ between backends when several selections tie
    # at rounding level; what matters is that each recorded witness attains
    # its backend's bound.
    masks = np.array([r_np[1], r_nb[1], r_np[3], r_nb[3]], dtype=np.int64)
    lo, hi = _kernels.mask_spectra_numpy(base, deltas, masks)
    witness_residual = max(
        abs(lo[0] - r_np[0]),
        abs(lo[1] - r_nb[0]),
        abs(hi[2] - r_np[2]),
        abs(hi[3] - r_nb[2]),
    )
    print(
        f"agreement: |lower diff| = {lower_diff:.2e},"
        f" |upper diff| = {upper_diff:.2e},"
        f" witness attainment residual = {witness_residual:.2e}"
    )
    if lower_diff > 1e-9 or upper_diff > 1e-9 or witness_residual > 1e-9:
        print("BACKENDS DISAGREE")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
