"""Benchmark the numba kernels against the pure-numpy fallback.

Times assemble_coo and tri_quality on a sequence of refined square
meshes.  Run from the repository root:

    python3 benchmarks/bench_accel.py [--repeats 5]

The numba path is selected automatically when numba imports; the numpy
path is forced here by calling the private implementations directly, so
one process measures both.  Numbers are best-of-N wall times.
"""

import argparse
import time

import numpy as np

from eigdiag.accel import (
    HAVE_NUMBA,
    _assemble_coo_numpy,
    _tri_quality_numpy,
)
from eigdiag.fem import mesh_pipeline
from eigdiag.shapes import regular_ngon

if HAVE_NUMBA:
    from eigdiag.accel import _assemble_coo_numba, _tri_quality_numba


def best_of(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    print(f"numba available: {HAVE_NUMBA}")
    header = f"{'elements':>10} {'kernel':>12} {'numpy [ms]':>12}"
    if HAVE_NUMBA:
        header += f" {'numba [ms]':>12} {'speedup':>8}"
    print(header)

    for levels in (3, 4, 5, 6):
        _, mesh = mesh_pipeline(regular_ngon(64, 1.0), levels)
        xy = np.ascontiguousarray(mesh.nodes, dtype=np.float64)
        tris = np.ascontiguousarray(mesh.triangles, dtype=np.int64)
        kernels = [("assemble", _assemble_coo_numpy, None), ("quality", _tri_quality_numpy, None)]
        if HAVE_NUMBA:
            _assemble_coo_numba(xy, tris)  # trigger JIT outside the timer
            _tri_quality_numba(xy, tris)
            kernels = [
                ("assemble", _assemble_coo_numpy, _assemble_coo_numba),
                ("quality", _tri_quality_numpy, _tri_quality_numba),
            ]
        for name, np_fn, nb_fn in kernels:
            t_np = best_of(np_fn, (xy, tris), args.repeats)
            line = f"{len(tris):>10} {name:>12} {t_np * 1e3:>12.3f}"
            if nb_fn is not None:
                t_nb = best_of(nb_fn, (xy, tris), args.repeats)
                line += f" {t_nb * 1e3:>12.3f} {t_np / t_nb:>7.1f}x"
            print(line)


if __name__ == "__main__":
    main()
