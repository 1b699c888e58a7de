"""Compare the compiled and pure-Python validation kernels on a Penrose patch.

    python3 benchmarks/bench_kernels.py [--k 6] [--repeat 3]

Both backends are imported directly, so one run times both and checks that
they agree.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from tessella import _kernels_py
from tessella.penrose import penrose_patch
from tessella.validate import candidate_pairs, pack

try:
    from tessella import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def run(k: int, repeat: int) -> list[dict]:
    t = penrose_patch(k)
    polys = t.polygons
    xy, offsets = pack(polys)
    pairs = candidate_pairs(polys)
    (x0, y0), (x1, y1) = t.window
    pitch = 1.0 / 16
    nx, ny = int((x1 - x0) / pitch) + 1, int((y1 - y0) / pitch) + 1
    eps = 1e-7
    jobs = {
        "overlap_pairs": lambda m: m.overlap_pairs(xy, offsets, pairs, eps),
        "edge_to_edge_pairs": lambda m: m.edge_to_edge_pairs(xy, offsets, pairs, eps),
        "cover_grid": lambda m: m.cover_grid(xy, offsets, x0, y0, pitch, nx, ny, eps),
    }
    rows = []
    for name, job in jobs.items():
        tp, outp = _time(lambda: job(_kernels_py), repeat)
        row = {"kernel": name, "tiles": len(polys), "python_s": tp}
        if _kernels_cy is not None:
            tc, outc = _time(lambda: job(_kernels_cy), repeat)
            row.update(cython_s=tc, speedup=tp / tc if tc else float("inf"),
                       agree=bool(np.array_equal(np.asarray(outp), np.asarray(outc))))
        rows.append(row)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels_cy is None:
        print("compiled extension not built; timing the fallback only")
    for r in run(args.k, args.repeat):
        line = f"{r['kernel']:>20}  tiles={r['tiles']:5d}  python={r['python_s']:.4f}s"
        if "cython_s" in r:
            line += f"  cython={r['cython_s']:.4f}s  speedup={r['speedup']:.1f}x  agree={r['agree']}"
        print(line)


if __name__ == "__main__":
    main()
