#!/usr/bin/env python3
"""Clustering on a circle: why angles near 0 and near 2 pi belong together.

    python3 demos/demo_wraparound.py
"""

import numpy as np

from scanseg import CircularDomain, DbscanParams, dbscan_1d, dbscan_1d_circular

TWO_PI = 2.0 * np.pi


def main():
    rng = np.random.default_rng(3)

    # A bearing cluster centred on 0 radians: half its members sit just
    # below 2 pi, the other half just above 0. A second cluster lives
    # mid-range where wrapping plays no role.
    seam = np.mod(rng.normal(0.0, 0.03, 30), TWO_PI)
    mid = rng.normal(np.pi, 0.05, 20)
    values = np.sort(np.concatenate([seam, mid]))

    params = DbscanParams(epsilon=0.1, min_points=4)

    labels, clusters = dbscan_1d(values, params)
    print(f"treated as plain reals: {len(clusters)} clusters")
    for c in clusters:
        print(f"  cluster {c.id}: rows {c.lower}..{c.upper} ({c.size} points)")
    print("the seam group splits in two because 0.01 and 6.27 look far apart\n")

    domain = CircularDomain(period=TWO_PI)
    labels, clusters = dbscan_1d_circular(values, params, domain)
    print(f"on a circle of period 2 pi: {len(clusters)} clusters")
    for c in clusters:
        rows = c.indices(values.size)
        lo, hi = rows[0], rows[-1]
        wrapped = " (wraps through the seam)" if c.upper >= values.size else ""
        print(f"  cluster {c.id}: rows {c.lower}..{c.upper} -> "
              f"indices {lo}..{hi}{wrapped}, {c.size} points")

    # A wrapped cluster reports an index range that runs past N-1;
    # indices() folds it back onto real row numbers.
    wrap = next(c for c in clusters if c.upper >= values.size)
    rows = wrap.indices(values.size)
    print(f"  member angles of cluster {wrap.id}: "
          f"{np.round(values[rows[:4]], 3).tolist()} ... "
          f"{np.round(values[rows[-3:]], 3).tolist()}")

    # Degenerate but legal: points spread evenly enough that every one
    # reaches its neighbors. The chain closes around the ring and the
    # result is a single cluster covering all N points.
    ring = np.arange(12) * (TWO_PI / 12)
    labels, clusters = dbscan_1d_circular(ring, DbscanParams(0.6, 3), domain)
    c = clusters[0]
    print(f"\nevenly spaced ring: {len(clusters)} cluster spanning "
          f"rows {c.lower}..{c.upper} (all {c.size} points)")


if __name__ == "__main__":
    main()
