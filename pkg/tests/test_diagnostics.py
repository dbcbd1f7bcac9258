import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from closedrange import (
    CLOSED,
    INCONCLUSIVE,
    NOT_CLOSED,
    DiscreteMeasure,
    Thresholds,
    build_mu_Z,
    diagnose_bergman,
    diagnose_hardy,
    horowitz_threshold_report,
    interpolation_constant,
    PointSequence,
)
from closedrange.diagnostics import ROUTES


def test_hardy_radial_closed(mu_radial):
    v = diagnose_hardy(mu_radial, 2, 2)
    assert (v.status, v.route) == (CLOSED, "interpolating-form")
    assert {e.criterion for e in v.reasons} >= {"delta", "weight-equivalence", "least-norm-growth"}


def test_hardy_doubled_not_closed(mu_doubled):
    v = diagnose_hardy(mu_doubled, 2, 2)
    assert v.status == NOT_CLOSED
    assert v.route == "margin-divergence"


@pytest.mark.parametrize("diagnose", [diagnose_hardy, diagnose_bergman])
@pytest.mark.parametrize("p, q", [(2, 4), (1, 2), (3, 2.5)])
def test_p_neq_q(diagnose, p, q, mu_radial, sigma64):
    for mu in (mu_radial, sigma64):
        v = diagnose(mu, p, q)
        assert (v.status, v.route) == (NOT_CLOSED, "p-neq-q")


def test_hardy_grid_is_non_discrete(sigma64):
    v = diagnose_hardy(sigma64, 2, 2)
    assert (v.status, v.route) == (NOT_CLOSED, "non-discrete")


def test_hardy_blaschke_cap():
    pts = 0.5 * np.exp(2j * np.pi * np.arange(120) / 120)
    v = diagnose_hardy(build_mu_Z(pts), 2, 2)
    assert (v.status, v.route) == (NOT_CLOSED, "non-discrete")


def test_bergman_sigma_sampling(sigma64):
    v = diagnose_bergman(sigma64, 2, 2)
    assert (v.status, v.route) == (CLOSED, "sampling")


def test_bergman_general_p_inconclusive(sigma64):
    v = diagnose_bergman(sigma64, 3, 3)
    assert (v.status, v.route) == (INCONCLUSIVE, "insufficient-certainty")


def test_bergman_horowitz_p0_1(horowitz_nu):
    v = diagnose_bergman(horowitz_nu(1), 2, 2)
    assert (v.status, v.route) == (CLOSED, "sampling")


def test_bergman_horowitz_p0_2(horowitz_nu):
    v = diagnose_bergman(horowitz_nu(2), 2, 2)
    assert v.status in (NOT_CLOSED, INCONCLUSIVE)
    assert v.status != CLOSED


def test_bergman_horowitz_p0_4(horowitz_nu):
    v = diagnose_bergman(horowitz_nu(4), 2, 2)
    assert (v.status, v.route) == (CLOSED, "interpolating-form")


def test_bergman_horowitz_p0_4_is_never_rejected(horowitz_nu):
    assert diagnose_bergman(horowitz_nu(4), 2, 2).status != NOT_CLOSED


def test_bergman_inner_measure_not_closed(rng):
    z = rng.uniform(0, 0.5, 40) * np.exp(2j * np.pi * rng.uniform(size=40))
    z = np.concatenate([z, 0.5 * z + 0.01])
    v = diagnose_bergman(DiscreteMeasure(z, np.ones(len(z))), 2, 2)
    assert (v.status, v.route) == (NOT_CLOSED, "margin-divergence")


@pytest.mark.parametrize(
    "p0, sampling_stable, interpolation_stable",
    [(1, True, False), (2, False, False), (4, False, True)],
)
def test_threshold_report_regimes(p0, sampling_stable, interpolation_stable):
    rep = horowitz_threshold_report(p0, 6)
    cfg = Thresholds()
    assert rep.point_count == 126
    assert (rep.sampling_ratio >= cfg.stable_ratio) == sampling_stable
    assert (rep.interpolation_ratio >= cfg.stable_ratio) == interpolation_stable
    if not sampling_stable:
        assert rep.sampling_ratio < cfg.decay_cap
    if not interpolation_stable:
        assert rep.interpolation_ratio < cfg.decay_cap


@pytest.mark.parametrize(
    "p0, sampling, interpolation",
    [(1, [0.2077, 0.1553, 0.1125], [0.0206, 0.00615, 0.00239]),
     (2, [0.0482, 0.0309, 0.0192], [0.0226, 0.0073, 0.0032]),
     (4, [0.01134, 0.00643, 0.00351], [0.0228, 0.0074, 0.0033])],
)
def test_threshold_report_values_frozen(p0, sampling, interpolation):
    rep = horowitz_threshold_report(p0, 6)
    np.testing.assert_allclose([v for _, v in rep.sampling.series], sampling, rtol=0.01)
    np.testing.assert_allclose([v for _, v in rep.interpolation.series], interpolation, rtol=0.03)


def test_threshold_report_caps_K():
    with pytest.raises(ValueError):
        horowitz_threshold_report(1, 9)


def test_thresholds_updated():
    cfg = Thresholds().updated(delta_min=0.5)
    assert cfg.delta_min == 0.5 and cfg.growth_cap == 2.0
    with pytest.raises(ValueError):
        Thresholds().updated(bogus=1)


def test_threshold_override_changes_verdict(mu_radial):
    v = diagnose_hardy(mu_radial, 2, 2, Thresholds().updated(delta_min=0.5))
    assert v.status != CLOSED


def test_verdict_serialization(mu_radial):
    d = diagnose_hardy(mu_radial, 2, 2).to_dict()
    assert list(d) == ["status", "route", "space", "p", "q", "evidence"]
    assert d["route"] in ROUTES
    assert set(d["evidence"][0]) == {"criterion", "value", "threshold", "pass"}


@pytest.mark.parametrize("bad", [(0, 0), (-1, -1), (float("inf"), float("inf"))])
def test_bad_exponents(bad, mu_radial):
    with pytest.raises(ValueError):
        diagnose_hardy(mu_radial, *bad)


def test_empty_measure_rejected():
    with pytest.raises(ValueError):
        diagnose_hardy(DiscreteMeasure([], []), 2, 2)


@pytest.mark.parametrize("c", [1 / 8, 0.5, 3, 8])
@pytest.mark.parametrize("theta", [0.0, 1.0, 2.0])
def test_hardy_invariances(c, theta, mu_radial, mu_doubled):
    for mu in (mu_radial, mu_doubled):
        base = diagnose_hardy(mu, 2, 2)
        moved = diagnose_hardy(mu.scaled(c).rotated(theta), 2, 2)
        assert (moved.status, moved.route) == (base.status, base.route)


@pytest.mark.parametrize("seed", range(5))
def test_hardy_weight_comparability(seed, mu_radial, mu_doubled):
    rng = np.random.default_rng(seed)
    for mu in (mu_radial, mu_doubled):
        c = rng.uniform(0.5, 2, len(mu))
        base = diagnose_hardy(mu, 2, 2)
        other = diagnose_hardy(DiscreteMeasure(mu.points, c * mu.weights), 2, 2)
        assert (other.status, other.route) == (base.status, base.route)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 20))
def test_hardy_one_sided_soundness(seed, n):
    rng = np.random.default_rng(seed)
    z = rng.uniform(0, 0.98, n) * np.exp(2j * np.pi * rng.uniform(size=n))
    mu = DiscreteMeasure(z, (1 - np.abs(z)) * rng.uniform(0.5, 2, n))
    cfg = Thresholds()
    if interpolation_constant(PointSequence(z))[0] >= cfg.delta_min:
        assert diagnose_hardy(mu, 2, 2, cfg).status != NOT_CLOSED
