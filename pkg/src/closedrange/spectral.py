"""Hilbert-space (p = 2) machinery.

Reproducing kernels:

    Hardy    k_w(z) = 1 / (1 - conj(w) z),    ||k_w||^2 = 1 / (1 - |w|^2)
    Bergman  k_w(z) = 1 / (1 - conj(w) z)^2,  ||k_w||^2 = 1 / (1 - |w|^2)^2
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .disk import Space, as_space, blaschke_eval, check_in_disk
from .measures import DiscreteMeasure, GridMeasure, Measure
from .sequences import PointSequence

SINGULAR_CONDITION = 1e14
LEAST_NORM_LADDER = (8, 15, 30)
SECTION_LADDER = (8, 16, 32)


class IllConditionedError(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class GramMatrix:
    entries: np.ndarray
    space: Space
    points: PointSequence


@dataclass
class SpectralReport:
    """Eigen-extremes plus a margin series over a truncation ladder.

    ``kind`` names what ``margin`` and the series values mean:
    ``least-norm`` (best interpolation constant C_n), ``riesz`` (smallest
    eigenvalue of the normalized kernel Gram), ``section`` (smallest
    eigenvalue of the polynomial section matrix).
    """

    n: int
    eig_min: float
    eig_max: float
    margin: float
    condition: float
    series: list[tuple[int, float]] = field(default_factory=list)
    kind: str = ""
    singular: bool = False

    def series_ratio(self) -> float:
        """Last series value over the first one."""
        if len(self.series) < 2:
            return 1.0
        first, last = self.series[0][1], self.series[-1][1]
        return last / first if first != 0 else float("nan")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["series"] = [{"n": int(n), "margin": float(v)} for n, v in self.series]
        return d


def _as_points(points) -> np.ndarray:
    if isinstance(points, PointSequence):
        return points.points
    return PointSequence(points).points


def _normalized_gram(z: np.ndarray, space: Space) -> np.ndarray:
    # entry [j, k] = <k_{z_k}, k_{z_j}> / norms = k_{z_k}(z_j) / norms
    d = np.sqrt(1.0 - np.abs(z) ** 2)
    cross = d[:, None] * d[None, :] / (1.0 - z[:, None] * np.conj(z)[None, :])
    if space is Space.BERGMAN:
        cross = cross**2
    cross = 0.5 * (cross + cross.conj().T)
    np.fill_diagonal(cross, 1.0)
    return cross


def kernel_gram(points, space) -> GramMatrix:
    """Gram matrix of the normalized reproducing kernels at ``points``."""
    space = as_space(space)
    seq = points if isinstance(points, PointSequence) else PointSequence(points)
    return GramMatrix(_normalized_gram(seq.points, space), space, seq)


def hardy_gram_inverse(z: np.ndarray) -> np.ndarray:
    """Inverse of the Hardy kernel Gram G[j, k] = 1 / (1 - z_j conj(z_k)).

    G is the conjugate of the Pick matrix P[j, k] = 1 / (1 - conj(z_j) z_k),
    whose inverse has the closed form

        Pinv[i, j] = prod_k (1 - conj(z_j) z_k) prod_k (1 - conj(z_k) z_i)
                     / ((1 - conj(z_j) z_i) prod_{k!=j} (conj(z_j) - conj(z_k))
                        prod_{k!=i} (z_i - z_k)),

    evaluated in log space. Every factor is a difference of data, so the
    entries keep high relative accuracy even when G is far too
    ill-conditioned for a floating-point solve.
    """
    z = np.asarray(z, dtype=complex)
    n = len(z)
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    one = 1.0 - np.conj(z)[:, None] * z[None, :]  # one[j, k] = 1 - conj(z_j) z_k
    log_one = np.log(one)
    row = log_one.sum(axis=1)
    col = log_one.sum(axis=0)
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    log_diff = np.log(diff).sum(axis=1)
    log_diff_conj = np.log(diff.conj()).sum(axis=1)
    primed = np.exp(
        col[:, None] + row[None, :] - log_one.T - log_diff_conj[None, :] - log_diff[:, None]
    )
    inv = primed.conj()  # Ginv = conj(Pinv)
    return 0.5 * (inv + inv.conj().T)


def _eig_extremes(h: np.ndarray) -> tuple[float, float]:
    w = np.linalg.eigvalsh(h)
    return float(w[0]), float(w[-1])


def _least_norm_constant(z: np.ndarray, a: np.ndarray, space: Space):
    """Return (C_n, eig_min(N), eig_max(N), cond(N), singular) for the first atoms."""
    normalized = _normalized_gram(z, space)
    lo, hi = _eig_extremes(normalized)
    if space is Space.HARDY:
        ginv = hardy_gram_inverse(z)
        s = 1.0 / np.sqrt(a)
        w = s[:, None] * ginv * s[None, :]
        top = _eig_extremes(0.5 * (w + w.conj().T))[1]
        d = np.sqrt(1.0 - np.abs(z) ** 2)
        ninv = ginv / (d[:, None] * d[None, :])
        ninv_top = _eig_extremes(0.5 * (ninv + ninv.conj().T))[1]
        lo = 1.0 / ninv_top
        return float(np.sqrt(top)), lo, hi, hi * ninv_top, False
    cond = hi / lo if lo > 0 else np.inf
    if cond > SINGULAR_CONDITION:
        return float("inf"), lo, hi, float(cond), True
    try:
        chol = np.linalg.cholesky(normalized)
    except np.linalg.LinAlgError:
        return float("inf"), lo, hi, float(cond), True
    # G^{-1} = D N^{-1} D with D = diag(1 - |z|^2)
    scale = (1.0 - np.abs(z) ** 2) / np.sqrt(a)
    x = np.linalg.solve(chol, np.diag(scale).astype(complex))
    return float(np.linalg.norm(x, 2)), lo, hi, float(cond), False


def least_norm_margin(
    mu: DiscreteMeasure, space, n_list: Sequence[int] | None = None
) -> SpectralReport:
    """Best interpolation constants C_n over the first n atoms of ``mu``.

    C_n is the smallest constant such that any data (w_k) on the first n
    atoms has an interpolant in the space of norm <= C_n ||w||, where
    ||w||^2 = sum_k a_k |w_k|^2; equivalently C_n^2 is the largest
    eigenvalue of A^{-1/2} G^{-1} A^{-1/2} with G the (unnormalized)
    kernel Gram and A = diag(a_k). The condition number reported is that
    of the normalized Gram at the largest n.
    """
    space = as_space(space)
    if not isinstance(mu, DiscreteMeasure):
        raise TypeError("least_norm_margin needs a discrete measure")
    count = len(mu)
    if count == 0:
        raise ValueError("measure has no atoms")
    if n_list is None:
        n_list = [n for n in LEAST_NORM_LADDER if n <= count]
        if count < LEAST_NORM_LADDER[-1] and count not in n_list:
            n_list.append(count)
    n_list = [int(n) for n in n_list]
    if not n_list or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be nonempty and strictly increasing")
    if n_list[0] < 1 or n_list[-1] > count:
        raise ValueError("n_list entries must lie in [1, atom count]")
    series = []
    singular = False
    for n in n_list:
        c, lo, hi, cond, sing = _least_norm_constant(mu.points[:n], mu.weights[:n], space)
        singular = singular or sing
        series.append((n, c))
    return SpectralReport(
        n=n_list[-1], eig_min=lo, eig_max=hi, margin=series[-1][1], condition=cond,
        series=series, kind="least-norm", singular=singular,
    )


def least_norm_interpolant_norm(points, data, space) -> float:
    """Norm of the minimal-norm interpolant of ``data`` at ``points``."""
    space = as_space(space)
    z = _as_points(points)
    w = np.asarray(data, dtype=complex)
    if space is Space.HARDY:
        ginv = hardy_gram_inverse(z)
    else:
        d = 1.0 - np.abs(z) ** 2
        ginv = d[:, None] * np.linalg.inv(_normalized_gram(z, space)) * d[None, :]
    # ginv here inverts G[j, k] = k_{z_k}(z_j), matching f(z_j) = sum_k G[j, k] c_k
    return float(np.sqrt(max(np.real(np.conj(w) @ ginv @ w), 0.0)))


def riesz_bounds(points, space, ladder: Sequence[int] | None = None) -> SpectralReport:
    """Spectral bounds of the normalized kernel Gram.

    ``margin`` is the smallest eigenvalue for all points; ``series`` lists
    the smallest eigenvalue for the first n points, n in ``ladder``.
    """
    space = as_space(space)
    z = _as_points(points)
    if len(z) == 0:
        raise ValueError("riesz_bounds needs at least one point")
    gram = _normalized_gram(z, space)
    lo, hi = _eig_extremes(gram)
    ladder = [len(z)] if ladder is None else [int(n) for n in ladder if n <= len(z)]
    series = [(n, _eig_extremes(gram[:n, :n])[0]) for n in ladder]
    return SpectralReport(
        n=len(z), eig_min=lo, eig_max=hi, margin=lo,
        condition=hi / lo if lo > 0 else float("inf"), series=series, kind="riesz",
    )


def _discrete_section(z: np.ndarray, a: np.ndarray, n: int) -> np.ndarray:
    j = np.arange(n)
    basis = np.sqrt(j + 1.0)[None, :] * z[:, None] ** j[None, :]
    return basis.T @ (a[:, None] * basis.conj())


def _grid_section(mu: GridMeasure, n: int) -> np.ndarray:
    # Each cell's mass is spread uniformly in area over the cell, so
    # int_cell z^j conj(z)^k factors into radial and angular averages.
    r0, r1 = mu.r_edges[:-1], mu.r_edges[1:]
    t0, t1 = mu.theta_edges[:-1], mu.theta_edges[1:]
    s = np.arange(2 * n - 1)
    # area average of r^s over each ring
    radial = 2.0 * (r1[:, None] ** (s + 2) - r0[:, None] ** (s + 2)) / (
        (s + 2) * (r1**2 - r0**2)[:, None]
    )
    d = np.arange(-(n - 1), n)
    width = (t1 - t0)[:, None]
    with np.errstate(invalid="ignore", divide="ignore"):
        angular = (np.exp(1j * d * t1[:, None]) - np.exp(1j * d * t0[:, None])) / (1j * d * width)
    angular[:, d == 0] = 1.0
    table = radial.T @ mu.weights @ angular  # [j + k, j - k + n - 1]
    j = np.arange(n)
    idx_s = j[:, None] + j[None, :]
    idx_d = j[:, None] - j[None, :] + n - 1
    norm = np.sqrt((j + 1.0)[:, None] * (j + 1.0)[None, :])
    return norm * table[idx_s, idx_d]


def section_matrix(mu: Measure, n: int) -> np.ndarray:
    """M_n[j, k] = int e_j conj(e_k) dmu with e_j(z) = sqrt(j + 1) z^j."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(mu, DiscreteMeasure):
        m = _discrete_section(mu.points, mu.weights, n)
    elif isinstance(mu, GridMeasure):
        m = _grid_section(mu, n)
    else:
        raise TypeError(f"unsupported measure type {type(mu).__name__}")
    return 0.5 * (m + m.conj().T)


def section_matrix_spectrum(
    mu: Measure, n: int, ladder: Sequence[int] | None = None
) -> SpectralReport:
    """Spectrum of the degree < n section of the A^2 -> L^2(mu) embedding.

    eig_min(M_n) bounds the squared sampling constant from above (a
    necessary condition), eig_max estimates the squared Carleson bound.
    The series tracks eig_min(M_m) for m in the ladder.
    """
    big = section_matrix(mu, n)
    if ladder is None:
        ladder = sorted({m for m in SECTION_LADDER if m <= n} | {n})
    ladder = [int(m) for m in ladder if 1 <= m <= n]
    lo, hi = _eig_extremes(big)
    series = [(m, _eig_extremes(big[:m, :m])[0]) for m in ladder]
    return SpectralReport(
        n=n, eig_min=lo, eig_max=hi, margin=lo,
        condition=hi / lo if lo > 0 else float("inf"), series=series, kind="section",
    )


def normalized_kernel(w: complex, z, space) -> np.ndarray:
    """Unit-norm reproducing kernel at ``w`` evaluated at ``z``."""
    space = as_space(space)
    z = np.asarray(z, dtype=complex)
    t = 1.0 - abs(w) ** 2
    if space is Space.HARDY:
        return np.sqrt(t) / (1.0 - np.conj(w) * z)
    return t / (1.0 - np.conj(w) * z) ** 2


def _atoms(mu: Measure) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(mu, DiscreteMeasure):
        return mu.points, mu.weights
    return mu.centers.ravel(), mu.weights.ravel()


def default_witness_path(mu: Measure, steps: int = 12) -> list[complex]:
    """w_m = (1 - 2^-m) u, m = 1..steps, on the ray u opposite mu's center of mass."""
    z, a = _atoms(mu)
    center = complex(np.sum(a * z))
    if abs(center) <= 1e-15 * max(float(np.sum(a)), 1e-300):
        direction = -1.0 + 0.0j
    else:
        direction = -center / abs(center)
    return [(1.0 - 2.0**-m) * direction for m in range(1, steps + 1)]


def reverse_witness(mu: Measure, path=None, space=Space.HARDY) -> list[tuple[complex, float]]:
    """||k_w / ||k_w|| ||_{L^2(mu)} along ``path``.

    Test functions of unit space norm whose L^2(mu) norms tend to zero,
    exhibiting that no reverse Carleson estimate holds. Grid measures are
    sampled at cell centers.
    """
    space = as_space(space)
    if path is None:
        path = default_witness_path(mu)
    path = check_in_disk(np.asarray(list(path), dtype=complex))
    z, a = _atoms(mu)
    out = []
    for w in path:
        k = normalized_kernel(complex(w), z, space)
        out.append((complex(w), float(np.sqrt(np.sum(a * np.abs(k) ** 2)))))
    return out


def _barycentric(nodes: np.ndarray, values: np.ndarray) -> Callable:
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    lam = 1.0 / np.prod(diff, axis=1)

    def q(z):
        z = np.asarray(z, dtype=complex)
        flat = z.ravel()
        out = np.empty_like(flat)
        delta = flat[:, None] - nodes[None, :]
        hit = delta == 0
        on_node = hit.any(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            c = lam[None, :] / delta
            out[:] = (c @ values) / c.sum(axis=1)
        if on_node.any():
            out[on_node] = values[np.argmax(hit[on_node], axis=1)]
        return out.reshape(z.shape) if z.ndim else complex(out[0])

    return q


class HardyInterpolant:
    """h = B_N Q: B_N has zeros at the unprescribed points, Q is the Lagrange
    polynomial with Q(z_n) = w_n / B_N(z_n) at the prescribed ones."""

    def __init__(self, nodes: np.ndarray, zeros: np.ndarray, data: np.ndarray):
        self.nodes = nodes
        self.zeros = zeros
        self.data = data
        if len(nodes) == 0 or not np.any(data):
            self._q = None
            return
        b = np.asarray(blaschke_eval(zeros, nodes), dtype=complex)
        if np.any(np.abs(b) < 1e-12):
            raise IllConditionedError("Blaschke factor nearly vanishes at a prescribed node")
        self._q = _barycentric(nodes, data / b)

    def quotient(self, z):
        z = np.asarray(z, dtype=complex)
        if self._q is None:
            return np.zeros_like(z) if z.ndim else 0j
        return self._q(z)

    def __call__(self, z):
        z = check_in_disk(z)
        return blaschke_eval(self.zeros, z) * self.quotient(z)


def finite_interpolant_hardy(
    points, data, sample_radius: float = 0.999, samples: int = 2048
) -> tuple[HardyInterpolant, float]:
    """Interpolate finitely supported data: h(z_n) = w_n for the first
    len(data) points and h = 0 at every remaining point.

    Returns the interpolant and max |h| sampled on the circle of radius
    ``sample_radius``.
    """
    z = _as_points(points)
    w = np.asarray(data, dtype=complex).ravel()
    if len(w) > len(z):
        raise ValueError("more data values than points")
    h = HardyInterpolant(z[: len(w)], z[len(w):], w)
    circle = sample_radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    return h, float(np.max(np.abs(h(circle))))
