import json
import math

import numpy as np
import pytest

from closedrange import DiscreteMeasure, GridMeasure, build_sigma_grid, gen_radial
from closedrange.formats import (
    FormatError,
    dumps,
    measure_from_text,
    measure_to_data,
    sequence_from_text,
    sequence_to_data,
    series_csv,
    witness_csv,
)

GOOD_DISCRETE = """{
  "type": "discrete",
  "atoms": [
    {"re": 0.5, "im": 0.0, "weight": 0.5},
    {"re": 0.0, "im": -0.25, "weight": 2}
  ]
}"""


def test_parse_discrete():
    mu = measure_from_text(GOOD_DISCRETE)
    assert mu.atoms == [(0.5, 0.5), (-0.25j, 2.0)]


def test_parse_grid():
    mu = measure_from_text('{"type": "grid", "nr": 16, "ntheta": 32, "total": 2.0}')
    assert isinstance(mu, GridMeasure)
    assert mu.shape == (16, 32) and mu.mass == pytest.approx(2.0)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        (GOOD_DISCRETE.replace('"weight": 2}', '"weight": 2, "tag": 1}'), 5, "tag"),
        (GOOD_DISCRETE.replace('"weight": 0.5', '"weight": -0.5'), 4, "-0.5"),
        (GOOD_DISCRETE.replace('"re": 0.0', '"re": 0.99'), 5, "inside the unit disk"),
        (GOOD_DISCRETE.replace('"im": 0.0, ', ""), 4, "'im'"),
        (GOOD_DISCRETE.replace('"discrete"', '"cloud"'), 2, "type"),
        (GOOD_DISCRETE.replace("},\n", "}\n"), 5, "delimiter"),
        ('{"type": "grid", "nr": 16, "ntheta": 4, "total": 1}', 1, "4"),
        ('{"type": "grid",\n "nr": 16.5, "ntheta": 16, "total": 1}', 2, "16.5"),
        ('{"type": "grid", "nr": 16, "ntheta": 16}', 1, "total"),
    ],
)
def test_measure_errors_reference_lines(text, line, fragment):
    with pytest.raises(FormatError) as info:
        measure_from_text(text, "m.json")
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"m.json:{line}:")


def test_sequence_errors():
    text = '{"points": [\n {"re": 0.1, "im": 0},\n {"re": 0.2, "im": 0},\n {"re": 0.1, "im": 0}\n]}'
    with pytest.raises(FormatError) as info:
        sequence_from_text(text)
    assert info.value.line == 4 and "duplicate" in str(info.value)
    with pytest.raises(FormatError) as info:
        sequence_from_text('{"points": [],\n "extra": 1}')
    assert info.value.line == 2


def test_round_trip_exact():
    seq = gen_radial(0.5, 40)
    again = sequence_from_text(dumps(sequence_to_data(seq), exact=True))
    np.testing.assert_array_equal(again.points, seq.points)
    mu = DiscreteMeasure(seq.points * np.exp(0.3j), np.linspace(0.1, 1, 40))
    back = measure_from_text(dumps(measure_to_data(mu), exact=True))
    np.testing.assert_array_equal(back.points, mu.points)
    np.testing.assert_array_equal(back.weights, mu.weights)
    grid = build_sigma_grid(12, 20, 3.0)
    assert measure_to_data(measure_from_text(json.dumps(measure_to_data(grid)))) == measure_to_data(grid)


def test_nonuniform_grid_not_serializable():
    grid = build_sigma_grid(8, 8)
    skew = GridMeasure(grid.r_edges, grid.theta_edges, grid.weights * np.arange(1, 9)[:, None])
    with pytest.raises(ValueError):
        measure_to_data(skew)


def test_dumps_formatting():
    text = dumps({"b": 1 / 3, "a": [math.inf, -math.inf, math.nan], "c": np.float64(2.5), "z": 1 + 2j})
    data = json.loads(text)
    assert list(data) == ["b", "a", "c", "z"]
    assert data["b"] == 0.333333333333
    assert data["a"] == ["inf", "-inf", "nan"]
    assert data["z"] == {"re": 1.0, "im": 2.0}
    assert text.endswith("\n")


def test_csv_writers():
    assert series_csv([(8, 0.5), (16, 1 / 3)]) == "n,margin\n8,0.5\n16,0.333333333333\n"
    assert witness_csv([(-0.5 + 0j, 0.25)]) == "re,im,value\n-0.5,0,0.25\n"
