"""Scan serialization and a synthetic lidar generator for ground truth.

Two line-oriented text formats, both diff-able and full precision:

* scan files: header ``beams=<int> full_circle=<0|1>``, then one record
  per beam, ``<angle> <range> <0|1>`` (radians, meters, validity flag);
* 1D point lists: one scalar per line, optionally preceded by a
  ``# circular period=<real>`` comment declaring a circular domain.

Floats are written with repr, which round-trips every finite double
exactly.  The generator ray-casts beams from a sensor pose inside a
simple polygon and perturbs ranges with seeded multiplicative Gaussian
noise; the RNG is the 64-bit counter-based Philox generator, so streams
are reproducible bit for bit across platforms.
"""

from __future__ import annotations

import io
import math
import re
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from .geometry import TWO_PI
from .scan import Scan


class ScanFormatError(ValueError):
    """Malformed scan or point-list file."""


@contextmanager
def _maybe_open(source, mode: str):
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, mode, encoding="ascii") as f:
            yield f
    else:
        yield source


def save_scan(scan: Scan, sink) -> None:
    """Write a scan in the text format; sink is a path or writable file."""
    with _maybe_open(sink, "w") as f:
        f.write(f"beams={scan.beams} full_circle={1 if scan.full_circle else 0}\n")
        for a, r, v in zip(scan.beam_angles, scan.ranges, scan.valid):
            f.write(f"{float(a)!r} {float(r)!r} {1 if v else 0}\n")


def _parse_header(line: str) -> tuple[int, bool]:
    m = re.fullmatch(r"beams=(\d+) full_circle=([01])", line.strip())
    if not m:
        raise ScanFormatError(f"line 1: bad header {line.strip()!r}")
    return int(m.group(1)), m.group(2) == "1"


def load_scan(source) -> Scan:
    """Read a scan file; raises ScanFormatError with the offending line."""
    with _maybe_open(source, "r") as f:
        lines = f.read().splitlines()
    if not lines:
        raise ScanFormatError("line 1: missing header")
    beams, full_circle = _parse_header(lines[0])
    records = lines[1:]
    if len(records) != beams:
        raise ScanFormatError(
            f"header declares {beams} beams but file has {len(records)} records"
        )
    angles = np.empty(beams)
    ranges = np.empty(beams)
    valid = np.empty(beams, dtype=bool)
    for i, rec in enumerate(records):
        lineno = i + 2
        parts = rec.split()
        if len(parts) != 3:
            raise ScanFormatError(f"line {lineno}: expected 'angle range valid', got {rec!r}")
        try:
            a = float(parts[0])
            r = float(parts[1])
        except ValueError:
            raise ScanFormatError(f"line {lineno}: bad number in {rec!r}") from None
        if not (math.isfinite(a) and math.isfinite(r)):
            raise ScanFormatError(f"line {lineno}: non-finite value")
        if parts[2] not in ("0", "1"):
            raise ScanFormatError(f"line {lineno}: valid flag must be 0 or 1, got {parts[2]!r}")
        v = parts[2] == "1"
        if v and r < 0.0:
            raise ScanFormatError(f"line {lineno}: negative range on a valid beam")
        angles[i] = a
        ranges[i] = r
        valid[i] = v
    return Scan(angles, ranges, valid, full_circle)


def save_points(values, sink, period: float | None = None) -> None:
    """Write a 1D point list, optionally with a circular-period header."""
    x = np.asarray(values, dtype=np.float64)
    with _maybe_open(sink, "w") as f:
        if period is not None:
            f.write(f"# circular period={float(period)!r}\n")
        for v in x:
            f.write(f"{float(v)!r}\n")


def load_points(source) -> tuple[np.ndarray, float | None]:
    """Read a 1D point list; returns (values, period-or-None).

    Blank lines and comments are skipped; a ``# circular period=<real>``
    comment switches downstream clustering to the circular metric.
    """
    period = None
    vals = []
    with _maybe_open(source, "r") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                m = re.match(r"#\s*circular\s+period=(\S+)$", line)
                if m:
                    try:
                        period = float(m.group(1))
                    except ValueError:
                        raise ScanFormatError(f"line {lineno}: bad period") from None
                    if not math.isfinite(period) or period <= 0.0:
                        raise ScanFormatError(f"line {lineno}: period must be finite and > 0")
                continue
            try:
                v = float(line)
            except ValueError:
                raise ScanFormatError(f"line {lineno}: not a number: {line!r}") from None
            if not math.isfinite(v):
                raise ScanFormatError(f"line {lineno}: non-finite value")
            vals.append(v)
    return np.array(vals, dtype=np.float64), period


def _orientation(ox, oy, ax, ay, bx, by) -> float:
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def _on_segment(ax, ay, bx, by, px, py) -> bool:
    # collinearity assumed; checks the bounding box only
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def _segments_cross(p1, p2, p3, p4) -> bool:
    """True if closed segments p1p2 and p3p4 share any point."""
    d1 = _orientation(*p3, *p4, *p1)
    d2 = _orientation(*p3, *p4, *p2)
    d3 = _orientation(*p1, *p2, *p3)
    d4 = _orientation(*p1, *p2, *p4)
    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 and ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        return True
    if d1 == 0 and _on_segment(*p3, *p4, *p1):
        return True
    if d2 == 0 and _on_segment(*p3, *p4, *p2):
        return True
    if d3 == 0 and _on_segment(*p1, *p2, *p3):
        return True
    if d4 == 0 and _on_segment(*p1, *p2, *p4):
        return True
    return False


@dataclass(frozen=True, eq=False)
class RoomModel:
    """A simple polygon room and the sensor pose strictly inside it.

    vertices is an ordered (V, 2) array (either winding); sensor is
    (x, y, heading).  Construction rejects self-intersecting polygons,
    degenerate edges, and sensor positions outside or on the boundary.
    """

    vertices: np.ndarray
    sensor: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        v = np.ascontiguousarray(self.vertices, dtype=np.float64)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise ValueError(f"vertices must have shape (V >= 3, 2), got {v.shape}")
        if not np.isfinite(v).all():
            raise ValueError("vertices must be finite")
        sensor = tuple(float(c) for c in self.sensor)
        if len(sensor) != 3 or not all(math.isfinite(c) for c in sensor):
            raise ValueError("sensor must be a finite (x, y, heading) triple")
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "sensor", sensor)
        nv = v.shape[0]
        edges = [(tuple(v[i]), tuple(v[(i + 1) % nv])) for i in range(nv)]
        for a, b in edges:
            if a == b:
                raise ValueError("polygon has a zero-length edge")
        for i in range(nv):
            for j in range(i + 1, nv):
                adjacent = j == i + 1 or (i == 0 and j == nv - 1)
                if adjacent:
                    # consecutive edges may only meet at the shared vertex
                    shared = edges[i][1] if j == i + 1 else edges[i][0]
                    others = [p for p in (*edges[i], *edges[j]) if p != shared]
                    for p in others:
                        seg = edges[j] if p in edges[i] else edges[i]
                        if _orientation(*seg[0], *seg[1], *p) == 0 and _on_segment(
                            *seg[0], *seg[1], *p
                        ):
                            raise ValueError("polygon folds back on itself")
                elif _segments_cross(*edges[i], *edges[j]):
                    raise ValueError(
                        f"polygon is not simple: edges {i} and {j} intersect"
                    )
        if not self._strictly_inside(sensor[0], sensor[1]):
            raise ValueError("sensor must be strictly inside the polygon")

    def _strictly_inside(self, px: float, py: float) -> bool:
        v = self.vertices
        nv = v.shape[0]
        for i in range(nv):
            ax, ay = v[i]
            bx, by = v[(i + 1) % nv]
            if _orientation(ax, ay, bx, by, px, py) == 0.0 and _on_segment(
                ax, ay, bx, by, px, py
            ):
                return False
        inside = False
        j = nv - 1
        for i in range(nv):
            if (v[i, 1] > py) != (v[j, 1] > py):
                xint = v[i, 0] + (py - v[i, 1]) * (v[j, 0] - v[i, 0]) / (v[j, 1] - v[i, 1])
                if px < xint:
                    inside = not inside
            j = i
        return inside


@dataclass(frozen=True)
class NoiseModel:
    """Multiplicative range noise and beam dropout, seeded."""

    range_noise_sigma: float = 0.0
    dropout_probability: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not np.isfinite(self.range_noise_sigma) or self.range_noise_sigma < 0.0:
            raise ValueError(f"sigma must be >= 0, got {self.range_noise_sigma}")
        if not 0.0 <= self.dropout_probability <= 1.0:
            raise ValueError(f"dropout must be in [0, 1], got {self.dropout_probability}")


def _cast_ray(vertices: np.ndarray, px: float, py: float, angle: float) -> tuple[float, int]:
    """Distance and edge index of the nearest wall hit; ties pick the lowest edge."""
    ux = math.cos(angle)
    uy = math.sin(angle)
    nv = vertices.shape[0]
    best_t = math.inf
    best_edge = -1
    for i in range(nv):
        ax, ay = vertices[i]
        bx, by = vertices[(i + 1) % nv]
        ex = bx - ax
        ey = by - ay
        denom = ux * ey - uy * ex
        if denom == 0.0:
            continue
        apx = ax - px
        apy = ay - py
        t = (apx * ey - apy * ex) / denom
        s = (apx * uy - apy * ux) / denom
        if t > 0.0 and 0.0 <= s <= 1.0 and t < best_t:
            best_t = t
            best_edge = i
    if best_edge < 0:
        raise RuntimeError("ray escaped the polygon; room model is inconsistent")
    return best_t, best_edge


def generate_scan(
    room: RoomModel, beams: int, noise: NoiseModel | None = None
) -> tuple[Scan, np.ndarray]:
    """Simulate one full-circle scan; returns (scan, per-beam wall id).

    Beam k points at heading + 2 pi k / beams.  Ranges are the exact
    ray-cast distances times (1 + sigma * g) with g standard normal,
    clamped at zero; dropped beams are flagged invalid with range 0.
    Wall ids are the polygon edge indices the beams geometrically hit,
    regardless of dropout.  Fixed seeds give identical scans.
    """
    if beams < 1:
        raise ValueError(f"beams must be >= 1, got {beams}")
    noise = noise if noise is not None else NoiseModel()
    px, py, heading = room.sensor
    angles = (heading + TWO_PI * np.arange(beams) / beams) % TWO_PI
    angles[angles >= TWO_PI] = 0.0
    true_ranges = np.empty(beams)
    wall_ids = np.empty(beams, dtype=np.int64)
    for k in range(beams):
        true_ranges[k], wall_ids[k] = _cast_ray(room.vertices, px, py, angles[k])
    rng = np.random.Generator(np.random.Philox(noise.seed))
    gauss = rng.standard_normal(beams)
    uniform = rng.random(beams)
    ranges = true_ranges * (1.0 + noise.range_noise_sigma * gauss)
    np.maximum(ranges, 0.0, out=ranges)
    valid = uniform >= noise.dropout_probability
    ranges[~valid] = 0.0
    return Scan(angles, ranges, valid, full_circle=True), wall_ids
