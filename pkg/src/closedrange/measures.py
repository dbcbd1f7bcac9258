"""Measures on the disk and Carleson-type constants over dyadic arcs.

Two concrete measure types are supported:

* :class:`DiscreteMeasure` -- finitely many weighted atoms.
* :class:`GridMeasure` -- a polar tensor grid whose cells carry mass spread
  uniformly (in area) over the cell. It stands in for an absolutely
  continuous measure such as normalized area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .disk import check_in_disk

GRID_KIND = "continuous-approximation"
TWO_PI = 2.0 * np.pi


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Finite sum of point masses, sum_n a_n delta_{z_n}.

    Atoms at identical locations are merged (weights added) and keep the
    position of their first occurrence.
    """

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = check_in_disk(np.asarray(self.points, dtype=complex).ravel())
        w = np.asarray(self.weights, dtype=float).ravel()
        if pts.shape != w.shape:
            raise ValueError("points and weights must have the same length")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise ValueError("atom weights must be finite and strictly positive")
        if len(pts):
            _, first, inverse = np.unique(pts, return_index=True, return_inverse=True)
            if len(first) < len(pts):
                merged = np.zeros(len(first))
                np.add.at(merged, inverse.ravel(), w)
                order = np.argsort(first, kind="stable")
                pts = pts[first[order]]
                w = merged[order]
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def atoms(self) -> list[tuple[complex, float]]:
        return [(complex(z), float(a)) for z, a in zip(self.points, self.weights)]

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))

    def head(self, n: int) -> "DiscreteMeasure":
        return DiscreteMeasure(self.points[:n], self.weights[:n])

    def scaled(self, c: float) -> "DiscreteMeasure":
        return DiscreteMeasure(self.points, c * self.weights)

    def rotated(self, theta: float) -> "DiscreteMeasure":
        return DiscreteMeasure(self.points * np.exp(1j * theta), self.weights)

    def __add__(self, other: "DiscreteMeasure") -> "DiscreteMeasure":
        return DiscreteMeasure(
            np.concatenate([self.points, other.points]),
            np.concatenate([self.weights, other.weights]),
        )


@dataclass(frozen=True, eq=False)
class GridMeasure:
    """Polar grid measure: ``weights[i, j]`` is the mass of the cell
    r_edges[i] <= |z| < r_edges[i+1], theta_edges[j] <= arg z < theta_edges[j+1].

    ``theta_edges`` must be increasing and span exactly one turn; the start
    angle is arbitrary (rotations shift it).
    """

    r_edges: np.ndarray
    theta_edges: np.ndarray
    weights: np.ndarray
    kind: str = GRID_KIND

    def __post_init__(self):
        r = np.asarray(self.r_edges, dtype=float)
        t = np.asarray(self.theta_edges, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if r.ndim != 1 or t.ndim != 1 or w.shape != (len(r) - 1, len(t) - 1):
            raise ValueError("weights must have shape (len(r_edges)-1, len(theta_edges)-1)")
        if np.any(np.diff(r) <= 0) or r[0] < 0 or r[-1] > 1:
            raise ValueError("r_edges must increase within [0, 1]")
        if np.any(np.diff(t) <= 0) or not math.isclose(t[-1] - t[0], TWO_PI, rel_tol=1e-12):
            raise ValueError("theta_edges must increase and span 2*pi")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise ValueError("cell weights must be finite and nonnegative")
        for name, arr in (("r_edges", r), ("theta_edges", t), ("weights", w)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.weights.shape

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))

    @property
    def centers(self) -> np.ndarray:
        """Cell midpoints (midpoint radius, midpoint angle), shape (nr, ntheta)."""
        rc = 0.5 * (self.r_edges[:-1] + self.r_edges[1:])
        tc = 0.5 * (self.theta_edges[:-1] + self.theta_edges[1:])
        return rc[:, None] * np.exp(1j * tc)[None, :]

    @property
    def cells(self) -> list[tuple[complex, float]]:
        return [(complex(z), float(a)) for z, a in zip(self.centers.ravel(), self.weights.ravel())]

    def scaled(self, c: float) -> "GridMeasure":
        return GridMeasure(self.r_edges, self.theta_edges, c * self.weights)

    def rotated(self, theta: float) -> "GridMeasure":
        return GridMeasure(self.r_edges, self.theta_edges + theta, self.weights)


Measure = Union[DiscreteMeasure, GridMeasure]


@dataclass(frozen=True)
class DyadicArc:
    """Arc of normalized length 2^-level starting at angle 2*pi*index*2^-level."""

    level: int
    index: int

    def __post_init__(self):
        if self.level < 0 or not 0 <= self.index < 2**self.level:
            raise ValueError("invalid dyadic arc")

    @property
    def length(self) -> float:
        return 2.0**-self.level

    @property
    def start(self) -> float:
        return TWO_PI * self.index * self.length

    def contains_angle(self, theta: float) -> bool:
        return arc_index(np.exp(1j * theta), self.level) == self.index

    def square_contains(self, z: complex) -> bool:
        """Membership in the Carleson square over this arc (closed radial condition)."""
        return bool(abs(z) >= 1.0 - self.length and arc_index(z, self.level) == self.index)


def dyadic_arcs(max_level: int) -> Iterator[DyadicArc]:
    for level in range(max_level + 1):
        for index in range(2**level):
            yield DyadicArc(level, index)


def normalized_angle(z) -> np.ndarray:
    """arg(z) / 2pi in [0, 1); the origin is given direction 1, i.e. angle 0."""
    t = np.angle(np.asarray(z, dtype=complex)) / TWO_PI
    t = np.where(t < 0, t + 1.0, t)
    return np.where(t >= 1.0, 0.0, t)


def arc_index(z, level: int):
    idx = np.floor(normalized_angle(z) * 2.0**level).astype(np.int64)
    idx = np.minimum(idx, 2**level - 1)
    return int(idx) if idx.ndim == 0 else idx


def carleson_constant(mu: Measure, alpha: int, max_level: int) -> tuple[float, list[float]]:
    """Maximum of mu(Q_I) / m(I)^alpha over dyadic arcs of levels 0..max_level.

    Returns the overall maximum and the per-level maxima. The dyadic
    maximum bounds the supremum over all arcs from below and is comparable
    to it up to an absolute factor.
    """
    if alpha not in (1, 2):
        raise ValueError("alpha must be 1 or 2")
    if max_level < 0:
        raise ValueError("max_level must be >= 0")
    if isinstance(mu, DiscreteMeasure):
        per_level = [_discrete_level_max(mu, level) / 2.0 ** (-level * alpha)
                     for level in range(max_level + 1)]
    elif isinstance(mu, GridMeasure):
        per_level = [_grid_level_max(mu, level) / 2.0 ** (-level * alpha)
                     for level in range(max_level + 1)]
    else:
        raise TypeError(f"unsupported measure type {type(mu).__name__}")
    return max(per_level), per_level


def _discrete_level_max(mu: DiscreteMeasure, level: int) -> float:
    if len(mu) == 0:
        return 0.0
    inside = np.abs(mu.points) >= 1.0 - 2.0**-level
    if not np.any(inside):
        return 0.0
    idx = arc_index(mu.points[inside], level)
    _, inverse = np.unique(idx, return_inverse=True)
    return float(np.max(np.bincount(inverse.ravel(), weights=mu.weights[inside])))


def _grid_level_max(mu: GridMeasure, level: int) -> float:
    threshold = 1.0 - 2.0**-level
    r0, r1 = mu.r_edges[:-1], mu.r_edges[1:]
    lo = np.clip(threshold, r0, r1)
    frac = (r1**2 - lo**2) / (r1**2 - r0**2)
    columns = frac @ mu.weights
    bounds = TWO_PI * np.arange(2**level + 1) / 2**level
    cumulative = _periodic_cumulative(mu.theta_edges, columns, bounds)
    return float(np.max(np.diff(cumulative)))


def _periodic_cumulative(edges: np.ndarray, columns: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Continuous nondecreasing primitive of the angular mass distribution."""
    total = float(np.sum(columns))
    base = np.concatenate([[0.0], np.cumsum(columns)])
    start = edges[0]
    shifted = (angles - start) % TWO_PI
    turns = np.floor((angles - start) / TWO_PI)
    return np.interp(start + shifted, edges, base) + total * turns


def blaschke_sum(mu: DiscreteMeasure) -> float:
    """Sum of (1 - |z_n|) over atom locations; weights play no role."""
    return float(np.sum(1.0 - np.abs(mu.points)))


def weight_equivalence_ratio(mu: DiscreteMeasure, alpha: int) -> tuple[float, float]:
    if len(mu) == 0:
        raise ValueError("weight_equivalence_ratio needs a nonempty measure")
    ratio = mu.weights / (1.0 - np.abs(mu.points)) ** alpha
    return float(np.min(ratio)), float(np.max(ratio))


def _distinct_points(points) -> np.ndarray:
    pts = check_in_disk(np.asarray(points, dtype=complex).ravel())
    if len(np.unique(pts)) != len(pts):
        raise ValueError("sequence points must be pairwise distinct")
    return pts


def build_mu_Z(points) -> DiscreteMeasure:
    """sum_n (1 - |z_n|) delta_{z_n}."""
    pts = _distinct_points(points)
    return DiscreteMeasure(pts, 1.0 - np.abs(pts))


def build_nu_Z(points) -> DiscreteMeasure:
    """sum_n (1 - |z_n|)^2 delta_{z_n}."""
    pts = _distinct_points(points)
    return DiscreteMeasure(pts, (1.0 - np.abs(pts)) ** 2)


def build_sigma_grid(nr: int, ntheta: int, total: float = 1.0) -> GridMeasure:
    """Normalized area measure (times ``total``) on a uniform polar grid."""
    if nr < 8 or ntheta < 8:
        raise ValueError("nr and ntheta must be at least 8")
    if not total > 0:
        raise ValueError("total mass must be positive")
    r = np.linspace(0.0, 1.0, nr + 1)
    t = TWO_PI * np.arange(ntheta + 1) / ntheta
    ring = np.diff(r**2)
    weights = np.outer(ring, np.full(ntheta, total / ntheta))
    return GridMeasure(r, t, weights)
