"""Point sequences in the disk and their separation constants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .disk import HorowitzSpec, check_in_disk


@dataclass(frozen=True, eq=False)
class PointSequence:
    """Ordered list of pairwise distinct disk points."""

    points: np.ndarray

    def __post_init__(self):
        pts = check_in_disk(np.asarray(self.points, dtype=complex).ravel()).copy()
        if len(np.unique(pts)) != len(pts):
            raise ValueError("sequence points must be pairwise distinct")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(complex(z) for z in self.points)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return PointSequence(self.points[item])
        return complex(self.points[item])

    def rotated(self, theta: float) -> "PointSequence":
        return PointSequence(self.points * np.exp(1j * theta))


def gen_radial(ratio: float, count: int) -> PointSequence:
    """z_n = 1 - ratio^n for n = 1..count."""
    if not 0.0 < ratio < 1.0:
        raise ValueError("ratio must lie in (0, 1)")
    if count < 1:
        raise ValueError("count must be >= 1")
    n = np.arange(1, count + 1)
    return PointSequence(1.0 - ratio**n)


def horowitz_zeros(spec: HorowitzSpec) -> PointSequence:
    """Zeros of the first ``spec.levels`` Horowitz factors, level by level.

    Level k contributes the 2^k roots of z^(2^k) = 1/b, all on the circle
    of radius 2^(-1/(p0 2^k)), in increasing angle starting from 0.
    """
    chunks = []
    for k in range(1, spec.levels + 1):
        m = 2**k
        radius = 2.0 ** (-1.0 / (spec.p0 * m))
        chunks.append(radius * np.exp(2j * np.pi * np.arange(m) / m))
    return PointSequence(np.concatenate(chunks))


def _pseudo_matrix(z: np.ndarray) -> np.ndarray:
    return np.abs(z[:, None] - z[None, :]) / np.abs(1.0 - np.conj(z)[:, None] * z[None, :])


def interpolation_log_products(seq: PointSequence) -> np.ndarray:
    """For each k, sum_{j != k} log rho(z_j, z_k)."""
    z = seq.points
    rho = _pseudo_matrix(z)
    np.fill_diagonal(rho, 1.0)
    with np.errstate(divide="ignore"):
        return np.sum(np.log(rho), axis=0)


def interpolation_constant(seq: PointSequence) -> tuple[float, int]:
    """min_k prod_{j != k} rho(z_j, z_k), with the minimizing index.

    Products are accumulated in log space. A single point gives 1.
    """
    if len(seq) == 0:
        raise ValueError("interpolation_constant needs a nonempty sequence")
    logs = interpolation_log_products(seq)
    k = int(np.argmin(logs))
    return float(np.exp(logs[k])), k


def separation_constant(seq: PointSequence) -> float:
    if len(seq) < 2:
        raise ValueError("separation_constant needs at least two points")
    rho = _pseudo_matrix(seq.points)
    np.fill_diagonal(rho, np.inf)
    return float(np.min(rho))


def double_sequence(seq: PointSequence, eps_power: float) -> PointSequence:
    """Interleave each z_n with a radial twin at distance (1 - |z_n|)^(eps_power + 1).

    The twin moves away from the origin along the ray through z_n (the
    positive axis for z_n = 0); since eps_power >= 1 it stays in the disk.
    """
    if eps_power < 1:
        raise ValueError("eps_power must be >= 1")
    z = seq.points
    r = np.abs(z)
    direction = np.where(r > 0, z / np.where(r > 0, r, 1.0), 1.0)
    twins = z + (1.0 - r) ** (eps_power + 1.0) * direction
    same = np.flatnonzero(twins == z)
    if len(same):
        raise ValueError(
            f"twin offset at index {same[0]} is below floating-point resolution; "
            "use fewer points or a smaller eps_power")
    out = np.empty(2 * len(z), dtype=complex)
    out[0::2] = z
    out[1::2] = twins
    if len(np.unique(out)) != len(out):
        raise ValueError("twin offset collides with an existing point")
    return PointSequence(out)
