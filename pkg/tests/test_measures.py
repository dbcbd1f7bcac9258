import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from closedrange import (
    DiscreteMeasure,
    DyadicArc,
    GridMeasure,
    blaschke_sum,
    build_mu_Z,
    build_nu_Z,
    build_sigma_grid,
    carleson_constant,
    dyadic_arcs,
    weight_equivalence_ratio,
)


def brute_force_carleson(points, weights, alpha, L):
    """Loop over every dyadic square and every atom."""
    best = 0.0
    per_level = []
    for level in range(L + 1):
        m = 2.0**-level
        level_best = 0.0
        for i in range(2**level):
            total = 0.0
            for z, a in zip(points, weights):
                t = (math.atan2(z.imag, z.real) / (2 * math.pi)) % 1.0
                if abs(z) >= 1 - m and i * m <= t < (i + 1) * m:
                    total += a
            level_best = max(level_best, total / m**alpha)
        per_level.append(level_best)
        best = max(best, level_best)
    return best, per_level


def random_measure(rng, n):
    r = 1 - rng.uniform(0, 1, n) ** 2
    r = np.minimum(r, 0.999)
    z = r * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    return DiscreteMeasure(z, rng.uniform(0.05, 2.0, n))


@pytest.mark.parametrize("alpha", [1, 2])
@pytest.mark.parametrize("seed", range(5))
def test_matches_brute_force(seed, alpha):
    rng = np.random.default_rng(seed)
    mu = random_measure(rng, int(rng.integers(1, 9)))
    L = int(rng.integers(0, 7))
    value, per_level = carleson_constant(mu, alpha, L)
    expected, expected_levels = brute_force_carleson(mu.points, mu.weights, alpha, L)
    assert value == expected
    assert per_level == expected_levels


def test_point_mass_at_origin():
    value, per_level = carleson_constant(DiscreteMeasure([0], [1.0]), 1, 10)
    assert value == 1.0
    assert per_level[0] == 1.0 and all(v == 0.0 for v in per_level[1:])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([1, 2]), st.floats(0.1, 10))
def test_homogeneous_and_monotone_in_level(seed, alpha, c):
    mu = random_measure(np.random.default_rng(seed), 6)
    v, levels = carleson_constant(mu, alpha, 8)
    assert carleson_constant(mu.scaled(c), alpha, 8)[0] == pytest.approx(c * v, rel=1e-14)
    running = np.maximum.accumulate(levels)
    assert all(carleson_constant(mu, alpha, L)[0] == running[L] for L in range(9))


def test_mu_Z_dominates_own_atoms(rng):
    pts = 0.95 * np.exp(2j * np.pi * rng.uniform(0, 1, 8)) * rng.uniform(0.2, 1, 8)
    mu = build_mu_Z(pts)
    value, _ = carleson_constant(mu, 1, 6)
    # each atom sits in the square over the dyadic arc of the finest admissible level
    for z, a in mu.atoms:
        level = min(6, max(0, math.floor(-math.log2(1 - abs(z)))))
        assert value >= a / 2.0**-level - 1e-15


def test_sigma_closed_form():
    grid = build_sigma_grid(64, 64)
    _, per_level = carleson_constant(grid, 2, 10)
    # sigma(Q_I) = m (2m - m^2)
    expected = [2 - 2.0**-l for l in range(11)]
    np.testing.assert_allclose(per_level, expected, rtol=1e-12)


def test_sigma_rotation_exact():
    grid = build_sigma_grid(32, 48).rotated(0.123)
    assert carleson_constant(grid, 1, 6)[0] == pytest.approx(1.0, rel=1e-12)


def test_sigma_grid_mass():
    assert build_sigma_grid(256, 256).mass == pytest.approx(1.0, abs=1e-9)
    assert build_sigma_grid(16, 16, total=3.0).mass == pytest.approx(3.0)


@pytest.mark.parametrize("bad", [dict(nr=4, ntheta=16), dict(nr=16, ntheta=16, total=0)])
def test_sigma_grid_rejects(bad):
    with pytest.raises(ValueError):
        build_sigma_grid(**bad)


def test_grid_validation():
    r = np.linspace(0, 1, 5)
    t = np.linspace(0, 2 * np.pi, 9)
    GridMeasure(r, t, np.ones((4, 8)))
    with pytest.raises(ValueError):
        GridMeasure(r, t[:-1], np.ones((4, 7)))
    with pytest.raises(ValueError):
        GridMeasure(r, t, -np.ones((4, 8)))
    with pytest.raises(ValueError):
        GridMeasure(r, t, np.ones((8, 4)))


def test_blaschke_sum_examples():
    N = 12
    mu = build_mu_Z(1 - 2.0 ** -np.arange(1, N + 1))
    assert blaschke_sum(mu) == pytest.approx(1 - 2.0**-N, abs=1e-15)
    assert blaschke_sum(DiscreteMeasure([0], [1])) == 1
    assert blaschke_sum(DiscreteMeasure([], [])) == 0


def test_blaschke_sum_monotone_under_restriction(rng):
    mu = random_measure(rng, 10)
    for n in range(11):
        assert blaschke_sum(mu.head(n)) <= blaschke_sum(mu)


def test_weight_equivalence_examples():
    N = 10
    z = 1 - 2.0 ** -np.arange(1, N + 1)
    mu3 = DiscreteMeasure(z, 3 * (1 - z))
    assert weight_equivalence_ratio(mu3, 1) == pytest.approx((3, 3))
    nu = build_nu_Z(z)
    assert weight_equivalence_ratio(nu, 1) == pytest.approx((2.0**-N, 0.5))
    assert weight_equivalence_ratio(nu, 2) == pytest.approx((1, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.01, 100), st.sampled_from([1, 2]))
def test_weight_equivalence_properties(seed, c, alpha):
    mu = random_measure(np.random.default_rng(seed), 5)
    lo, hi = weight_equivalence_ratio(mu, alpha)
    assert lo <= hi
    assert weight_equivalence_ratio(mu.scaled(c), alpha) == pytest.approx((c * lo, c * hi), rel=1e-12)


def test_builders():
    (z, a), = build_mu_Z([0.5]).atoms
    assert (z, a) == (0.5, 0.5)
    assert build_nu_Z([0.5]).atoms == [(0.5, 0.25)]
    with pytest.raises(ValueError):
        build_mu_Z([0.5, 0.5])
    with pytest.raises(ValueError):
        build_nu_Z([0.5, 1.0])


def test_discrete_measure_merges_duplicates():
    mu = DiscreteMeasure([0.5, 0.1j, 0.5], [1.0, 2.0, 3.0])
    assert mu.atoms == [(0.5, 4.0), (0.1j, 2.0)]
    with pytest.raises(ValueError):
        DiscreteMeasure([0.5], [0.0])
    with pytest.raises(ValueError):
        DiscreteMeasure([0.5, 0.2], [1.0])


def test_dyadic_arcs():
    arcs = list(dyadic_arcs(4))
    assert len(arcs) == 2**5 - 1
    arc = DyadicArc(2, 1)
    assert arc.length == 0.25 and arc.start == pytest.approx(np.pi / 2)
    assert arc.contains_angle(np.pi / 2) and not arc.contains_angle(np.pi)
    assert arc.square_contains(0.8j) and not arc.square_contains(0.7j)
    with pytest.raises(ValueError):
        DyadicArc(1, 2)
