import json
import os
from itertools import product

import pytest

from ska_tropical_newton.domain.documents import FanDocument, PolynomialDocument
from ska_tropical_newton.domain.exact_models import ExactMatrix, ExactVector
from ska_tropical_newton.domain.polytope_models import ExponentSet
from ska_tropical_newton.services.hull_oracle import (
    convex_hull,
    weighted_normal_skeleton,
)


def load_string_from_file(filename):
    """
    Return a file from the current directory as a string
    """
    cwd, _ = os.path.split(__file__)
    path = os.path.join(cwd, filename)
    with open(path, "r", encoding="utf-8") as json_file:
        json_data = json.load(json_file)
        return json_data


json_file_path = "unit/ska_tropical_newton/test_data_files"


def data_file_path(filename):
    """Absolute path of a file in the shared test data directory."""
    cwd, _ = os.path.split(__file__)
    return os.path.join(cwd, json_file_path, filename)


def load_fan(filename):
    return FanDocument.model_validate(
        load_string_from_file(f"{json_file_path}/{filename}")
    ).to_collection()


@pytest.fixture
def six_ray_curve():
    """The balanced curve in R^3 with six rays, all of weight one."""
    return load_fan("testfile_six_ray_curve.json")


@pytest.fixture
def unit_ray_curve():
    """The curve with rays +-e_i in R^3, all of weight one."""
    return load_fan("testfile_unit_ray_curve.json")


@pytest.fixture
def triangle_fan():
    """Tropical hypersurface of 1 + x + y."""
    return load_fan("testfile_triangle_fan.json")


@pytest.fixture
def segment_fan():
    """Tropical hypersurface of (1 + x)^2: the origin of R^1 with weight two."""
    return load_fan("testfile_segment_fan.json")


@pytest.fixture
def tropical_line():
    """Tropical hypersurface of x + y + z, with lineality (1,1,1)."""
    return load_fan("testfile_tropical_line.json")


@pytest.fixture
def triangle_exponents():
    return PolynomialDocument.model_validate(
        load_string_from_file(f"{json_file_path}/testfile_triangle_poly.json")
    ).to_exponents()


@pytest.fixture
def triangle_skeleton(triangle_exponents):
    return weighted_normal_skeleton(convex_hull(triangle_exponents))


@pytest.fixture
def cube_skeleton():
    """Normal fan skeleton of the unit 3-cube."""
    cube = ExponentSet(
        points=tuple(ExactVector.of(p) for p in product((0, 1), repeat=3)), dim=3
    )
    return weighted_normal_skeleton(convex_hull(cube))


def draw_exponents(rng):
    n = rng.randint(1, 4)
    count = rng.randint(1, 15)
    rows = {tuple(rng.randint(0, 8) for _ in range(n)) for _ in range(count)}
    return ExponentSet(points=tuple(ExactVector.of(r) for r in sorted(rows)), dim=n)


@pytest.fixture
def random_exponents():
    """
    Draw a random support from an rng: up to 15 monomials in up to four
    variables with exponents at most 8.
    """
    return draw_exponents


@pytest.fixture
def cube_grading_rows():
    return load_string_from_file(f"{json_file_path}/testfile_cube_grading.json")[
        "rows"
    ]


@pytest.fixture
def cube_grading_matrix(cube_grading_rows):
    return ExactMatrix.from_rows(cube_grading_rows)


@pytest.fixture
def segre_vertex():
    """A vertex of the Newton polytope of the secant hypersurface of (P^1)^4."""
    data = load_string_from_file(f"{json_file_path}/testfile_segre_vertex.json")
    return ExactVector(tuple(data["vertex"]))


@pytest.fixture
def test_data():
    """Loader for the JSON files in the shared test data directory."""
    return lambda filename: load_string_from_file(f"{json_file_path}/{filename}")


@pytest.fixture
def test_data_path():
    """Absolute path of a file in the shared test data directory."""
    return data_file_path
