import numpy as np
import pytest

from closedrange import (
    HorowitzSpec,
    build_mu_Z,
    build_nu_Z,
    build_sigma_grid,
    double_sequence,
    gen_radial,
    horowitz_zeros,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def radial30():
    return gen_radial(0.5, 30)


@pytest.fixture(scope="session")
def doubled30():
    # 15 base points doubled; twins of later points fall below double resolution
    return double_sequence(gen_radial(0.5, 15), 2)


@pytest.fixture(scope="session")
def mu_radial(radial30):
    return build_mu_Z(radial30.points)


@pytest.fixture(scope="session")
def mu_doubled(doubled30):
    return build_mu_Z(doubled30.points)


@pytest.fixture(scope="session")
def sigma64():
    return build_sigma_grid(64, 64)


@pytest.fixture(scope="session")
def horowitz_nu():
    cache = {}

    def get(p0, K=6):
        if (p0, K) not in cache:
            cache[p0, K] = build_nu_Z(horowitz_zeros(HorowitzSpec(p0, K)).points)
        return cache[p0, K]

    return get
