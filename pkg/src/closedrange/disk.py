"""Unit-disk geometry and evaluation of the analytic building blocks.

Points of the disk are plain Python/numpy complex numbers; every public
entry point validates them with :func:`check_in_disk`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

# 1 - |z| below this is treated as "on the boundary" and rejected.
BOUNDARY_GUARD = 1e-14


class Space(str, enum.Enum):
    HARDY = "hardy"
    BERGMAN = "bergman"


def as_space(space) -> Space:
    if isinstance(space, Space):
        return space
    try:
        return Space(str(space).lower())
    except ValueError:
        raise ValueError(f"unknown space {space!r}; expected 'hardy' or 'bergman'") from None


def check_in_disk(z) -> np.ndarray:
    """Return ``z`` as a complex array, raising if any entry is not a disk point."""
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError("disk points must be finite")
    if np.any(1.0 - np.abs(arr) < BOUNDARY_GUARD):
        raise ValueError(
            f"point outside the disk or within {BOUNDARY_GUARD:g} of the unit circle"
        )
    return arr


def disk_point(re: float, im: float = 0.0) -> complex:
    z = complex(re, im)
    check_in_disk(z)
    return z


def mobius(a, z):
    """The involutive automorphism z -> (a - z) / (1 - conj(a) z)."""
    a = np.asarray(a, dtype=complex)
    z = np.asarray(z, dtype=complex)
    return (a - z) / (1.0 - np.conj(a) * z)


def pseudo_dist(z, w):
    """Pseudohyperbolic distance |z - w| / |1 - conj(z) w| (broadcasts)."""
    z = check_in_disk(z)
    w = check_in_disk(w)
    d = np.abs(z - w) / np.abs(1.0 - np.conj(z) * w)
    return float(d) if d.ndim == 0 else d


def blaschke_factor(a: complex, z):
    z = np.asarray(z, dtype=complex)
    if a == 0:
        return z.copy()
    # rescale before normalizing so |a|/a stays unimodular for subnormal a
    s = max(abs(a.real), abs(a.imag))
    u = complex(a.real / s, a.imag / s)
    return (abs(u) / u) * (a - z) / (1.0 - np.conj(a) * z)


def blaschke_eval(zeros, z):
    """Finite Blaschke product with the given zeros, evaluated at ``z``.

    Each factor is normalized to be positive at the origin; a zero at the
    origin contributes the factor ``z``. The empty product is 1.
    """
    zeros = check_in_disk(np.asarray(zeros, dtype=complex).ravel())
    z = check_in_disk(z)
    out = np.ones_like(z, dtype=complex)
    for a in zeros.ravel():
        out = out * blaschke_factor(complex(a), z)
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class HorowitzSpec:
    """Parameters of the lacunary product prod_k (1 - b z^(2^k)), b = 2^(1/p0)."""

    p0: float
    levels: int = 1
    b: float = field(init=False)

    def __post_init__(self):
        if not (self.p0 > 0 and math.isfinite(self.p0)):
            raise ValueError("p0 must be a positive finite number")
        if int(self.levels) != self.levels or self.levels < 1:
            raise ValueError("levels must be an integer >= 1")
        object.__setattr__(self, "levels", int(self.levels))
        object.__setattr__(self, "b", 2.0 ** (1.0 / self.p0))

    def with_levels(self, levels: int) -> "HorowitzSpec":
        return HorowitzSpec(self.p0, levels)


@dataclass(frozen=True)
class TruncatedProductValue:
    value: complex
    tail_bound: float
    terms_used: int


def horowitz_eval(spec: HorowitzSpec, z: complex) -> TruncatedProductValue:
    """Evaluate the first ``spec.levels`` factors of the Horowitz product at z.

    With q_k = b |z|^(2^k), the omitted tail satisfies

        sum_{k>K} q_k <= b |z|^(2^(K+1)) / (1 - |z|) =: S

    (the exponents 2^k, k > K, are distinct integers >= 2^(K+1)), and since
    |log(1 - x)| <= |x| / (1 - |x|) for |x| < 1, the modulus of the log of
    the tail is at most S / (1 - q_{K+1}). When q_{K+1} >= 1 the tail may
    vanish and the bound is infinite.
    """
    z = complex(check_in_disk(z))
    K = spec.levels
    b = spec.b
    value = 1.0 + 0.0j
    power = z
    for _ in range(K):
        power = power * power
        value *= 1.0 - b * power
    r = abs(z)
    q_next = b * r ** (2 ** (K + 1))
    if q_next >= 1.0:
        tail = math.inf
    else:
        tail = (q_next / (1.0 - r)) / (1.0 - q_next)
    return TruncatedProductValue(value=value, tail_bound=tail, terms_used=K)


def norm_quadrature(
    f: Callable[[np.ndarray], np.ndarray],
    space,
    p: float,
    resolution: int = 256,
    radius: float | None = None,
) -> float:
    """Quadrature approximation of the H^p or A^p (quasi)norm of ``f``.

    Hardy: trapezoid rule with ``resolution`` nodes on the circle of the
    given radius (default 1 - 2^-20). Bergman: Gauss-Legendre in s = r^2
    (``resolution`` nodes) times the trapezoid rule in angle, which is
    exact for |polynomial|^2.
    """
    space = as_space(space)
    if not p > 0:
        raise ValueError("p must be positive")
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    theta = 2.0 * np.pi * np.arange(resolution) / resolution
    circle = np.exp(1j * theta)
    if space is Space.HARDY:
        r = 1.0 - 2.0**-20 if radius is None else float(radius)
        if not 0.0 < r < 1.0:
            raise ValueError("radius must lie in (0, 1)")
        vals = _sample(f, r * circle)
        _check_finite(vals)
        return float(np.mean(np.abs(vals) ** p) ** (1.0 / p))
    nodes, weights = np.polynomial.legendre.leggauss(resolution)
    s = 0.5 * (nodes + 1.0)
    ws = 0.5 * weights
    z = np.sqrt(s)[:, None] * circle[None, :]
    vals = _sample(f, z)
    _check_finite(vals)
    ring_means = np.mean(np.abs(vals) ** p, axis=1)
    return float(np.dot(ws, ring_means) ** (1.0 / p))


def _sample(f, z: np.ndarray) -> np.ndarray:
    return np.broadcast_to(np.asarray(f(z), dtype=complex), z.shape)


def _check_finite(vals: np.ndarray) -> None:
    if not np.all(np.isfinite(vals)):
        raise ValueError("non-finite sample value in norm quadrature")
