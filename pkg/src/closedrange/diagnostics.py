"""Closed-range verdicts for Carleson embeddings.

Hardy: the embedding H^p -> L^q(mu) has closed range iff p = q and
mu = sum a_n delta_{z_n} with {z_n} interpolating and a_n ~ 1 - |z_n|.
Bergman: iff p = q and mu is A^p-sampling, or mu = sum a_n delta_{z_n}
with {z_n} A^p-interpolating and a_n ~ (1 - |z_n|)^2.

Both criteria are asymptotic. On finite data every decision below is a
declared threshold test, and ``Inconclusive`` is a legitimate outcome.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .disk import HorowitzSpec, Space
from .measures import (
    DiscreteMeasure,
    GridMeasure,
    Measure,
    blaschke_sum,
    build_nu_Z,
    carleson_constant,
    weight_equivalence_ratio,
)
from .sequences import PointSequence, horowitz_zeros, interpolation_log_products
from .spectral import (
    LEAST_NORM_LADDER,
    SECTION_LADDER,
    SpectralReport,
    least_norm_margin,
    riesz_bounds,
    section_matrix_spectrum,
)

CLOSED = "Closed"
NOT_CLOSED = "NotClosed"
INCONCLUSIVE = "Inconclusive"

ROUTES = (
    "interpolating-form",
    "sampling",
    "p-neq-q",
    "non-discrete",
    "weight-mismatch",
    "margin-divergence",
    "insufficient-certainty",
)


@dataclass(frozen=True)
class Thresholds:
    delta_min: float = 1e-3
    equiv_cap: float = 1e3
    growth_cap: float = 2.0
    diverge_cap: float = 10.0
    sampling_floor: float = 1e-3
    riesz_min: float = 1e-3
    decay_cap: float = 0.2
    # a margin ladder counts as stable when last/first >= stable_ratio
    stable_ratio: float = 0.5
    blaschke_cap: float = 50.0

    def updated(self, **overrides) -> "Thresholds":
        names = {f.name for f in dataclasses.fields(self)}
        unknown = set(overrides) - names
        if unknown:
            raise ValueError(f"unknown threshold(s): {', '.join(sorted(unknown))}")
        return dataclasses.replace(self, **{k: float(v) for k, v in overrides.items()})


@dataclass(frozen=True)
class Evidence:
    criterion: str
    value: float
    threshold: float | None
    passed: bool

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "value": self.value,
            "threshold": self.threshold,
            "pass": self.passed,
        }


@dataclass
class ClosedRangeVerdict:
    status: str
    space: Space
    p: float
    q: float
    route: str
    reasons: list[Evidence] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "route": self.route,
            "space": self.space.value,
            "p": self.p,
            "q": self.q,
            "evidence": [e.to_dict() for e in self.reasons],
        }


def _check_exponents(p: float, q: float) -> None:
    if not (p > 0 and q > 0 and math.isfinite(p) and math.isfinite(q)):
        raise ValueError("exponents must be positive and finite")


def _check_measure(mu) -> None:
    if not isinstance(mu, (DiscreteMeasure, GridMeasure)):
        raise TypeError(f"unsupported measure type {type(mu).__name__}")
    if isinstance(mu, DiscreteMeasure) and len(mu) == 0:
        raise ValueError("measure has no atoms")


def _ladder_upto(ladder: Sequence[int], count: int) -> list[int]:
    out = [int(n) for n in ladder if int(n) <= count]
    if not out or (count < max(ladder) and out[-1] != count):
        out.append(count)
    return out


def _carleson_evidence(mu: Measure, alpha: int, levels: int) -> Evidence:
    value, _ = carleson_constant(mu, alpha, levels)
    return Evidence(f"carleson-alpha{alpha}", value, None, math.isfinite(value))


def diagnose_hardy(
    mu: Measure,
    p: float,
    q: float,
    cfg: Thresholds | None = None,
    ladder: Sequence[int] = LEAST_NORM_LADDER,
    levels: int = 10,
) -> ClosedRangeVerdict:
    """Decide whether H^p -> L^q(mu) has closed range, on finite evidence."""
    _check_exponents(p, q)
    _check_measure(mu)
    cfg = cfg or Thresholds()
    ev = [_carleson_evidence(mu, 1, levels)]

    def verdict(status, route):
        return ClosedRangeVerdict(status, Space.HARDY, float(p), float(q), route, ev)

    if p != q:
        ev.append(Evidence("p-equals-q", q - p, 0.0, False))
        return verdict(NOT_CLOSED, "p-neq-q")
    ev.append(Evidence("p-equals-q", 0.0, 0.0, True))
    if isinstance(mu, GridMeasure):
        ev.append(Evidence("atomic", 0.0, None, False))
        return verdict(NOT_CLOSED, "non-discrete")
    bsum = blaschke_sum(mu)
    ev.append(Evidence("blaschke-sum", bsum, cfg.blaschke_cap, bsum <= cfg.blaschke_cap))
    if bsum > cfg.blaschke_cap:
        return verdict(NOT_CLOSED, "non-discrete")

    ladder = _ladder_upto(ladder, len(mu))
    logs = [interpolation_log_products(PointSequence(mu.points[:n])).min() for n in ladder]
    deltas = np.exp(logs)
    delta = float(deltas[-1])
    delta_ok = delta >= cfg.delta_min
    ev.append(Evidence("delta", delta, cfg.delta_min, delta_ok))
    delta_decaying = len(deltas) > 1 and deltas[-1] < deltas[0]

    lo, hi = weight_equivalence_ratio(mu, 1)
    spread = hi / lo
    equiv_ok = spread <= cfg.equiv_cap
    ev.append(Evidence("weight-equivalence", spread, cfg.equiv_cap, equiv_ok))

    report = least_norm_margin(mu, Space.HARDY, ladder)
    growth = _doubling_growth(report)
    divergence = report.series_ratio()
    growth_ok = growth <= cfg.growth_cap
    ev.append(Evidence("least-norm-growth", growth, cfg.growth_cap, growth_ok))
    ev.append(Evidence("least-norm-divergence", divergence, cfg.diverge_cap,
                       divergence <= cfg.diverge_cap))

    if delta_ok and equiv_ok and growth_ok:
        return verdict(CLOSED, "interpolating-form")
    if delta_ok and equiv_ok:
        return verdict(INCONCLUSIVE, "insufficient-certainty")
    if divergence > cfg.diverge_cap:
        return verdict(NOT_CLOSED, "margin-divergence")
    if not delta_ok and delta_decaying:
        return verdict(NOT_CLOSED, "interpolating-form")
    if not equiv_ok:
        return verdict(NOT_CLOSED, "weight-mismatch")
    return verdict(INCONCLUSIVE, "insufficient-certainty")


def _doubling_growth(report: SpectralReport) -> float:
    """C at the largest n over C at the largest ladder n not exceeding half of it."""
    n_last, c_last = report.series[-1]
    earlier = [(n, c) for n, c in report.series if n <= n_last / 2]
    if not earlier:
        return 1.0
    return c_last / earlier[-1][1]


@dataclass
class RouteResult:
    name: str
    passed: bool
    decayed: bool
    report: SpectralReport | None


def _sampling_route(mu: Measure, ladder: Sequence[int], cfg: Thresholds, ev: list) -> RouteResult:
    report = section_matrix_spectrum(mu, max(ladder), ladder)
    floor = min(v for _, v in report.series)
    ratio = report.series_ratio()
    ev.append(Evidence("sampling-floor", floor, cfg.sampling_floor, floor >= cfg.sampling_floor))
    ev.append(Evidence("sampling-stability", ratio, cfg.stable_ratio, ratio >= cfg.stable_ratio))
    passed = floor >= cfg.sampling_floor and ratio >= cfg.stable_ratio
    decayed = not ratio >= cfg.decay_cap
    ev.append(Evidence("sampling-decay", ratio, cfg.decay_cap, not decayed))
    return RouteResult("sampling", passed, decayed, report)


def _interpolating_route(mu: Measure, ladder: Sequence[int], cfg: Thresholds, ev: list) -> RouteResult:
    if not isinstance(mu, DiscreteMeasure):
        ev.append(Evidence("atomic", 0.0, None, False))
        return RouteResult("interpolating-form", False, True, None)
    report = riesz_bounds(mu.points, Space.BERGMAN, _ladder_upto(ladder, len(mu)))
    ratio = report.series_ratio()
    lo, hi = weight_equivalence_ratio(mu, 2)
    spread = hi / lo
    ev.append(Evidence("riesz-min", report.eig_min, cfg.riesz_min, report.eig_min >= cfg.riesz_min))
    ev.append(Evidence("riesz-stability", ratio, cfg.stable_ratio, ratio >= cfg.stable_ratio))
    ev.append(Evidence("weight-equivalence", spread, cfg.equiv_cap, spread <= cfg.equiv_cap))
    passed = (
        report.eig_min >= cfg.riesz_min
        and ratio >= cfg.stable_ratio
        and spread <= cfg.equiv_cap
    )
    decayed = not ratio >= cfg.decay_cap
    ev.append(Evidence("riesz-decay", ratio, cfg.decay_cap, not decayed))
    return RouteResult("interpolating-form", passed, decayed, report)


def diagnose_bergman(
    mu: Measure,
    p: float,
    q: float,
    cfg: Thresholds | None = None,
    ladder: Sequence[int] = SECTION_LADDER,
    levels: int = 10,
) -> ClosedRangeVerdict:
    """Decide whether A^p -> L^q(mu) has closed range, on finite evidence.

    Only p = q = 2 is decided; there both the sampling route (polynomial
    sections) and the interpolating route (normalized-kernel Riesz bounds
    plus weight equivalence) are run. A route passes when its margin clears
    the floor and its ladder is stable; it counts as decayed when the
    ladder ratio falls below ``decay_cap``.
    """
    _check_exponents(p, q)
    _check_measure(mu)
    cfg = cfg or Thresholds()
    ev = [_carleson_evidence(mu, 2, levels)]

    def verdict(status, route):
        return ClosedRangeVerdict(status, Space.BERGMAN, float(p), float(q), route, ev)

    if p != q:
        ev.append(Evidence("p-equals-q", q - p, 0.0, False))
        return verdict(NOT_CLOSED, "p-neq-q")
    ev.append(Evidence("p-equals-q", 0.0, 0.0, True))
    sampling = _sampling_route(mu, ladder, cfg, ev)
    if p != 2:
        # p = q != 2 carries no computable certificate; the ladders above are trend data only.
        return verdict(INCONCLUSIVE, "insufficient-certainty")
    interpolating = _interpolating_route(mu, ladder, cfg, ev)
    if sampling.passed:
        return verdict(CLOSED, "sampling")
    if interpolating.passed:
        return verdict(CLOSED, "interpolating-form")
    if sampling.decayed and interpolating.decayed:
        return verdict(NOT_CLOSED, "margin-divergence")
    return verdict(INCONCLUSIVE, "insufficient-certainty")


@dataclass
class HorowitzReport:
    p0: float
    levels: int
    point_count: int
    carleson: float
    carleson_per_level: list[float]
    sampling: SpectralReport
    sampling_ratio: float
    interpolation: SpectralReport
    interpolation_ratio: float
    verdict: ClosedRangeVerdict

    def to_dict(self) -> dict:
        return {
            "p0": self.p0,
            "levels": self.levels,
            "point_count": self.point_count,
            "carleson": {"value": self.carleson, "per_level": self.carleson_per_level},
            "sampling": {**self.sampling.to_dict(), "ratio": self.sampling_ratio},
            "interpolation": {**self.interpolation.to_dict(), "ratio": self.interpolation_ratio},
            "verdict": self.verdict.to_dict(),
        }


def horowitz_threshold_report(
    p0: float,
    K: int,
    n_ladder: Sequence[int] = SECTION_LADDER,
    cfg: Thresholds | None = None,
    carleson_levels: int = 10,
) -> HorowitzReport:
    """Sampling and interpolation margins at p = 2 for nu_Z, Z = Horowitz zeros.

    The sampling ladder is eig_min of the degree < n polynomial sections;
    the interpolation ladder is the smallest eigenvalue of the normalized
    Bergman Gram of the first n zeros (listed level by level).
    """
    if K > 8:
        raise ValueError("K is capped at 8 (2^(K+1) - 2 points)")
    spec = HorowitzSpec(p0, K)
    zeros = horowitz_zeros(spec)
    nu = build_nu_Z(zeros.points)
    carleson, per_level = carleson_constant(nu, 2, carleson_levels)
    sampling = section_matrix_spectrum(nu, max(n_ladder), n_ladder)
    interpolation = riesz_bounds(zeros, Space.BERGMAN, _ladder_upto(n_ladder, len(zeros)))
    verdict = diagnose_bergman(nu, 2.0, 2.0, cfg, n_ladder, carleson_levels)
    return HorowitzReport(
        p0=float(p0), levels=K, point_count=len(zeros), carleson=carleson,
        carleson_per_level=per_level, sampling=sampling,
        sampling_ratio=sampling.series_ratio(), interpolation=interpolation,
        interpolation_ratio=interpolation.series_ratio(), verdict=verdict,
    )
