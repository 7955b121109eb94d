"""Construction-time scaling on ``H = sum_i M_i``."""

from __future__ import annotations

import csv
import io
import math
import time

import numpy as np

from .fermion import MajoranaHamiltonian
from .hatt import build, build_unopt

GRID = (16, 24, 32, 48, 64, 96, 128)
METHODS = {"hatt-unopt": build_unopt, "hatt": build}


def linear_hamiltonian(n_modes: int) -> MajoranaHamiltonian:
    return MajoranaHamiltonian.from_dict(n_modes, {(i,): 1.0 for i in range(2 * n_modes)})


def grid_up_to(max_modes: int) -> list[int]:
    """The default grid below ``max_modes``; a doubling grid from 8 when that is empty."""
    if max_modes < 8:
        raise ValueError("max_modes must be >= 8")
    grid = [n for n in GRID if n <= max_modes]
    if len(grid) < 2:
        grid = [8 << k for k in range(int(math.log2(max_modes / 8)) + 1)]
    return grid


def time_build(method: str, n_modes: int, repeats: int = 1, n_jobs: int | None = None) -> float:
    """Best wall time over ``repeats`` runs."""
    fn = METHODS[method]
    h = linear_hamiltonian(n_modes)
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(h, n_jobs=n_jobs)
        best = min(best, time.perf_counter() - t0)
    return best


def loglog_slope(ns, seconds) -> float:
    slope, _ = np.polyfit(np.log(ns), np.log(seconds), 1)
    return float(slope)


def run_scaling(grid, methods=("hatt-unopt", "hatt"), repeats: int = 1, n_jobs: int | None = None):
    """Rows of ``(n_modes, method, seconds)`` and the slope per method."""
    rows = []
    for method in methods:
        for n in grid:
            rows.append((n, method, time_build(method, n, repeats, n_jobs)))
    slopes = {}
    for method in methods:
        pts = [(n, s) for n, m, s in rows if m == method]
        slopes[method] = loglog_slope([n for n, _ in pts], [s for _, s in pts])
    return rows, slopes


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n_modes", "method", "seconds"])
    for n, method, s in rows:
        w.writerow([n, method, f"{s:.6f}"])
    return buf.getvalue()
