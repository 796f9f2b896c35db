"""Numeric kernels for the feature pipeline.

Each kernel exists twice: a pure-numpy vectorized version and a numba
@njit loop. The numba path is the default when numba imports; setting
COLLECTOR_NO_NUMBA=1 (or numba being absent) selects the numpy path.
Both paths use identical floating-point expressions, so their outputs
are bit-for-bit equal. ``benchmarks/bench_kernels.py`` compares them.
"""

from __future__ import annotations

import os

import numpy as np

N_ACTIONS = 8  # len(events.MOUSE_ACTIONS); pair codes are a*8+b


# -- pure numpy --------------------------------------------------------------

def _segment_starts_np(down_ms, space_prev, gap_ms):
    n = down_ms.shape[0]
    starts = np.empty(n, dtype=np.bool_)
    if n == 0:
        return starts
    starts[0] = True
    starts[1:] = (np.diff(down_ms) > gap_ms) | space_prev[:-1]
    return starts


def _pair_kinematics_np(x, y, t_ms):
    dx = x[1:] - x[:-1]
    dy = y[1:] - y[:-1]
    elapsed = t_ms[1:] - t_ms[:-1]
    distance = np.sqrt(dx * dx + dy * dy)
    speed = np.zeros_like(distance)
    positive = elapsed > 0
    speed[positive] = distance[positive] * 1000.0 / elapsed[positive]
    return distance, elapsed, speed


def _pair_stats_np(pair_codes, speeds, n_slots):
    counts = np.bincount(pair_codes, minlength=n_slots).astype(np.int64)
    sums = np.bincount(pair_codes, weights=speeds, minlength=n_slots)
    mins = np.full(n_slots, np.inf)
    maxs = np.full(n_slots, -np.inf)
    np.minimum.at(mins, pair_codes, speeds)
    np.maximum.at(maxs, pair_codes, speeds)
    return counts, sums, mins, maxs


# -- numba loops (same arithmetic, element at a time) -------------------------

def _segment_starts_loop(down_ms, space_prev, gap_ms):
    n = down_ms.shape[0]
    starts = np.empty(n, dtype=np.bool_)
    if n == 0:
        return starts
    starts[0] = True
    for i in range(1, n):
        starts[i] = (down_ms[i] - down_ms[i - 1] > gap_ms) or space_prev[i - 1]
    return starts


def _pair_kinematics_loop(x, y, t_ms):
    n = x.shape[0] - 1
    distance = np.empty(n, dtype=np.float64)
    elapsed = np.empty(n, dtype=np.int64)
    speed = np.empty(n, dtype=np.float64)
    for i in range(n):
        dx = x[i + 1] - x[i]
        dy = y[i + 1] - y[i]
        elapsed[i] = t_ms[i + 1] - t_ms[i]
        distance[i] = np.sqrt(dx * dx + dy * dy)
        if elapsed[i] > 0:
            speed[i] = distance[i] * 1000.0 / elapsed[i]
        else:
            speed[i] = 0.0
    return distance, elapsed, speed


def _pair_stats_loop(pair_codes, speeds, n_slots):
    counts = np.zeros(n_slots, dtype=np.int64)
    sums = np.zeros(n_slots, dtype=np.float64)
    mins = np.full(n_slots, np.inf)
    maxs = np.full(n_slots, -np.inf)
    for i in range(pair_codes.shape[0]):
        c = pair_codes[i]
        s = speeds[i]
        counts[c] += 1
        sums[c] += s
        if s < mins[c]:
            mins[c] = s
        if s > maxs[c]:
            maxs[c] = s
    return counts, sums, mins, maxs


_NUMPY_IMPL = {
    "segment_starts": _segment_starts_np,
    "pair_kinematics": _pair_kinematics_np,
    "pair_stats": _pair_stats_np,
}

IMPLS: dict[str, dict] = {"numpy": _NUMPY_IMPL}

if os.environ.get("COLLECTOR_NO_NUMBA", "").lower() not in ("1", "true", "yes"):
    try:
        from numba import njit

        IMPLS["numba"] = {
            "segment_starts": njit(cache=True)(_segment_starts_loop),
            "pair_kinematics": njit(cache=True)(_pair_kinematics_loop),
            "pair_stats": njit(cache=True)(_pair_stats_loop),
        }
    except ImportError:
        pass

ACTIVE_BACKEND = "numba" if "numba" in IMPLS else "numpy"
_active = IMPLS[ACTIVE_BACKEND]

segment_starts = _active["segment_starts"]
pair_kinematics = _active["pair_kinematics"]
pair_stats = _active["pair_stats"]
