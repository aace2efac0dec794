#!/usr/bin/env python3
"""Full pipeline on a synthetic room: simulate, segment, fit wall lines.

    python3 demos/demo_segmentation.py
"""

import math

import numpy as np

from scanseg import (
    NoiseModel,
    RoomModel,
    SegmentationParams,
    angular_segmentation,
    fit_cluster_lines,
    generate_scan,
)


def main():
    # An L-shaped room. Edge k runs from vertex k to vertex k+1; the
    # sensor sees all six walls, on six distinct support lines.
    room = RoomModel(
        vertices=np.array([
            [-3.0, -2.0],
            [3.0, -2.0],
            [3.0, 1.0],
            [0.0, 1.0],
            [0.0, 3.0],
            [-3.0, 3.0],
        ]),
        sensor=(-1.0, 0.0, 0.0),
    )
    noise = NoiseModel(range_noise_sigma=0.01, dropout_probability=0.05, seed=11)
    scan, wall_ids = generate_scan(room, beams=360, noise=noise)

    valid = int(scan.valid.sum())
    print(f"simulated {scan.beams} beams, {valid} returned "
          f"({scan.beams - valid} dropped)")
    print(f"walls actually hit: {sorted(set(wall_ids.tolist()))}")

    # Cluster beams by local wall orientation, then split each angular
    # group by line offset, then least-squares fit each surviving group.
    params = SegmentationParams(epsilon_theta=0.1, epsilon_dist=0.2, min_points=16)
    clusters = fit_cluster_lines(scan, angular_segmentation(scan, params))

    print(f"\nrecovered {len(clusters)} wall segments:")
    sensor = np.array(room.sensor[:2])
    for c in clusters:
        line = c.fitted_line
        if line is None:
            print(f"  segment {c.id}: {c.point_indices.size} points, "
                  f"fit failed ({c.fit_error})")
            continue
        # Fits are sensor-centred; shifting d by the sensor offset along
        # the normal recovers the room's own coordinates.
        d_world = line.d + float(sensor @ [math.cos(line.theta), math.sin(line.theta)])
        print(f"  segment {c.id}: {c.point_indices.size:3d} points, "
              f"theta={math.degrees(line.theta):6.1f} deg, "
              f"d={line.d:.3f}  -> world x*cos+y*sin = {d_world:+.3f}")

    print("\nnote the two walls near theta=90: the y=1 shelf and the y=3 top "
          "wall are\nparallel, so orientation alone cannot split them; the "
          "offset pass can and does")


if __name__ == "__main__":
    main()
