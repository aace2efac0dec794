"""Line fitting and angle arithmetic for planar scan processing.

Lines are kept in the polar normal form ``x cos(theta) + y sin(theta) = d``
with d >= 0 and theta in [0, 2 pi).  A line through the origin has two
equally valid antipodal normals, so its theta is reduced to [0, pi).
Directions (as opposed to normals) are axial quantities and live in
[0, pi) throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

# Relative eigen-gap below which a scatter has no usable principal
# direction, and relative resultant length below which a set of angles
# has no usable circular mean.
ISO_TOL = 1e-12
RESULTANT_TOL = 1e-9


class DegenerateLineError(ValueError):
    """General-form coefficients describe no line (a = b = 0)."""


class DegenerateFitError(ValueError):
    """All points coincide, so no line fit exists."""


class OrientationUndefinedError(ValueError):
    """Point scatter is isotropic, leaving the fitted direction arbitrary."""


class UndefinedMeanError(ValueError):
    """Angles cancel out, leaving no circular mean."""


class InsufficientDataError(ValueError):
    """Fewer data points than the operation needs."""


def wrap_angle(angle: float, period: float = TWO_PI) -> float:
    """Reduce a scalar angle to [0, period)."""
    a = angle % period
    # fmod of a tiny negative can round up to the period itself
    if a >= period or a < 0.0:
        a = 0.0
    return a


@dataclass(frozen=True)
class PolarLine:
    """Line in polar normal form ``x cos(theta) + y sin(theta) = d``.

    ``d`` is the origin distance, never negative; ``theta`` is the
    direction of the normal from the origin toward the line.
    """

    d: float
    theta: float

    def __post_init__(self):
        if not (np.isfinite(self.d) and np.isfinite(self.theta)):
            raise ValueError("d and theta must be finite")
        if self.d < 0.0:
            raise ValueError(f"d must be >= 0, got {self.d}")
        if not 0.0 <= self.theta < TWO_PI:
            raise ValueError(f"theta must lie in [0, 2*pi), got {self.theta}")
        if self.d == 0.0 and self.theta >= math.pi:
            raise ValueError("a line through the origin needs theta in [0, pi)")

    @property
    def direction(self) -> float:
        """Direction the line runs along, reduced to [0, pi)."""
        return wrap_angle(self.theta + 0.5 * math.pi, math.pi)


@dataclass(frozen=True)
class GeneralLine:
    """Line as ``a x + b y + c = 0``; (a, b) must not both vanish."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b) and np.isfinite(self.c)):
            raise ValueError("coefficients must be finite")
        if self.a == 0.0 and self.b == 0.0:
            raise DegenerateLineError("a and b are both zero")


def canonical_polar(d: float, theta: float) -> PolarLine:
    """Canonicalize an unrestricted (d, theta) pair into a PolarLine.

    Negative d flips the normal to the antipode; theta is wrapped to
    [0, 2 pi), and for d == 0 further down to [0, pi).
    """
    d = float(d)
    theta = float(theta)
    if d < 0.0:
        d = -d
        theta += math.pi
    theta = wrap_angle(theta)
    if d == 0.0 and theta >= math.pi:
        theta -= math.pi
    return PolarLine(d, theta)


def normalize_general_to_polar(line: GeneralLine) -> PolarLine:
    """Convert general form to canonical polar form."""
    n = math.hypot(line.a, line.b)
    return canonical_polar(-line.c / n, math.atan2(line.b, line.a))


def tls_fit(points) -> PolarLine:
    """Total least squares line through a 2D point set.

    Minimizes the summed squared orthogonal distances.  The optimal normal
    angle is ``0.5 * atan2(-2 Sxy, Syy - Sxx)`` from the centered second
    moments, the optimal offset the centroid projection onto that normal.

    Raises InsufficientDataError below 2 points, DegenerateFitError when
    every point coincides, and OrientationUndefinedError when the scatter
    is isotropic (relative moment gap under ISO_TOL) so that no direction
    beats any other.
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"points must have shape (n, 2), got {pts.shape}")
    if pts.shape[0] < 2:
        raise InsufficientDataError("line fit needs at least 2 points")
    if not np.isfinite(pts).all():
        raise ValueError("points must be finite")
    cx = pts[:, 0].mean()
    cy = pts[:, 1].mean()
    dx = pts[:, 0] - cx
    dy = pts[:, 1] - cy
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    sxy = float(dx @ dy)
    spread = sxx + syy
    if spread <= 0.0:
        raise DegenerateFitError("all points coincide")
    num = -2.0 * sxy
    den = syy - sxx
    if math.hypot(num, den) <= ISO_TOL * spread:
        raise OrientationUndefinedError("point scatter is isotropic")
    theta = 0.5 * math.atan2(num, den)
    return canonical_polar(cx * math.cos(theta) + cy * math.sin(theta), theta)


def signed_distance_to_origin_line(x, y, theta: float):
    """Signed distances from the origin line whose normal is ``theta``.

    The projection ``x cos(theta) + y sin(theta)``; positive on the side
    the normal points into.  Broadcasts over array x, y.
    """
    return x * math.cos(theta) + y * math.sin(theta)


def circular_mean(angles, period: float = TWO_PI) -> float:
    """Mean direction of angles on a circle with the given period.

    Angles must lie in [0, period).  The computation rescales to the full
    circle, averages unit vectors, and maps the resultant angle back.
    When the resultant nearly vanishes (relative length under
    RESULTANT_TOL, e.g. two angles half a period apart) the mean carries
    no information and UndefinedMeanError is raised.
    """
    a = np.ascontiguousarray(angles, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError(f"angles must be one-dimensional, got shape {a.shape}")
    if a.size == 0:
        raise InsufficientDataError("circular mean of an empty set")
    if not np.isfinite(a).all():
        raise ValueError("angles must be finite")
    if not np.isfinite(period) or period <= 0.0:
        raise ValueError(f"period must be finite and > 0, got {period}")
    if a.min() < 0.0 or a.max() >= period:
        raise ValueError(f"angles must lie in [0, {period!r})")
    scale = TWO_PI / period
    c = float(np.cos(a * scale).sum())
    s = float(np.sin(a * scale).sum())
    if math.hypot(c, s) <= RESULTANT_TOL * a.size:
        raise UndefinedMeanError("resultant vanishes, circular mean undefined")
    return wrap_angle(math.atan2(s, c) / scale, period)


def _principal_directions(sxx, syy, sxy) -> np.ndarray:
    """Major-axis angles in [0, pi) of centered scatters, NaN if isotropic."""
    spread = sxx + syy
    num = 2.0 * sxy
    den = sxx - syy
    gap = np.hypot(num, den)
    ang = 0.5 * np.arctan2(num, den)
    ang = ang % math.pi
    ang[ang == math.pi] = 0.0
    ang[(spread <= 0.0) | (gap <= ISO_TOL * spread)] = np.nan
    return ang


def _triplet_directions(px: np.ndarray, py: np.ndarray, ring: bool) -> np.ndarray:
    """Principal direction of each (prev, self, next) point triplet.

    For a ring every point has a triplet (wrapping both ends); otherwise
    only the len(px) - 2 interior points do.
    """
    if ring:
        x0, y0 = np.roll(px, 1), np.roll(py, 1)
        x1, y1 = px, py
        x2, y2 = np.roll(px, -1), np.roll(py, -1)
    else:
        x0, y0 = px[:-2], py[:-2]
        x1, y1 = px[1:-1], py[1:-1]
        x2, y2 = px[2:], py[2:]
    cx = (x0 + x1 + x2) / 3.0
    cy = (y0 + y1 + y2) / 3.0
    d0x, d1x, d2x = x0 - cx, x1 - cx, x2 - cx
    d0y, d1y, d2y = y0 - cy, y1 - cy, y2 - cy
    sxx = d0x * d0x + d1x * d1x + d2x * d2x
    syy = d0y * d0y + d1y * d1y + d2y * d2y
    sxy = d0x * d0y + d1x * d1y + d2x * d2y
    return _principal_directions(sxx, syy, sxy)


def _valid_runs(valid: np.ndarray, full_circle: bool) -> tuple[list[np.ndarray], bool]:
    """Maximal runs of consecutive valid indices, in scan order.

    On a full-circle scan a run touching the end continues at the start,
    so such head and tail runs merge into one (tail indices first).  The
    returned flag marks the fully-valid full-circle case, where the single
    run closes on itself as a ring.
    """
    n = valid.size
    if n == 0:
        return [], False
    if valid.all():
        return [np.arange(n, dtype=np.int64)], bool(full_circle)
    edges = np.diff(np.concatenate(([False], valid, [False])).astype(np.int8))
    starts = np.flatnonzero(edges == 1)
    stops = np.flatnonzero(edges == -1)
    runs = [np.arange(s, e, dtype=np.int64) for s, e in zip(starts, stops)]
    if full_circle and len(runs) > 1 and valid[0] and valid[-1]:
        head = runs.pop(0)
        tail = runs.pop()
        runs.append(np.concatenate((tail, head)))
    return runs, False


def estimate_local_angles(x, y, valid, full_circle: bool = False) -> np.ndarray:
    """Local line direction at every scan point, in [0, pi); NaN if unknown.

    Each point is assigned the principal direction of the three-point
    window (previous, self, next) within its run of consecutive valid
    returns.  Run endpoints borrow the estimate of their neighbor one
    step inside; runs shorter than three points stay NaN, as do invalid
    points and degenerate (coincident or isotropic) triplets.  With
    ``full_circle`` the index space wraps, so runs join across the seam
    and a fully valid scan forms a closed ring with no endpoints at all.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    valid = np.ascontiguousarray(valid, dtype=bool)
    if x.ndim != 1 or x.shape != y.shape or x.shape != valid.shape:
        raise ValueError("x, y, valid must be one-dimensional and equally long")
    out = np.full(x.size, np.nan)
    runs, ring = _valid_runs(valid, full_circle)
    for idx in runs:
        if idx.size < 3:
            continue
        if ring:
            out[idx] = _triplet_directions(x[idx], y[idx], ring=True)
        else:
            out[idx[1:-1]] = _triplet_directions(x[idx], y[idx], ring=False)
            out[idx[0]] = out[idx[1]]
            out[idx[-1]] = out[idx[-2]]
    return out
