import random

import pytest

from ska_tropical_newton.common.custom_exceptions import (
    DimensionMismatch,
    InputFormatError,
    TooLarge,
)
from ska_tropical_newton.domain.exact_models import ExactVector
from ska_tropical_newton.domain.fan_models import WeightedCone
from ska_tropical_newton.services.fan_core import primitive_normal
from ska_tropical_newton.services.symmetry import (
    act,
    canonical_rep,
    compose,
    cube_grading,
    group_elements,
    group_from_spec,
    group_order,
    hyperoctahedral_on_cube,
    orbit,
    orbit_cones,
    permutation_group,
    stabilizer,
    trivial_group,
)


@pytest.mark.parametrize("m,order", [(1, 2), (2, 8), (3, 48), (4, 384)])
def test_hyperoctahedral_order(m, order):
    assert group_order(hyperoctahedral_on_cube(m)) == order


def test_hyperoctahedral_rank_is_bounded():
    with pytest.raises(TooLarge):
        hyperoctahedral_on_cube(9)


class TestOrbit:
    def test_constant_vector(self):
        group = hyperoctahedral_on_cube(4)

        assert len(orbit(group, ExactVector.of([3] * 16))) == 1

    def test_vertex_with_a_stabilizer_of_order_two(self, segre_vertex):
        group = hyperoctahedral_on_cube(4)

        assert len(orbit(group, segre_vertex)) == 192
        assert len(stabilizer(group, segre_vertex)) == 2

    def test_distinct_entries_give_a_regular_orbit(self):
        entries = list(range(16))
        random.Random(1).shuffle(entries)

        assert len(orbit(hyperoctahedral_on_cube(4), ExactVector.of(entries))) == 384

    def test_orbit_stabilizer(self):
        group = hyperoctahedral_on_cube(3)
        rng = random.Random(9)
        for _ in range(30):
            v = ExactVector.of([rng.randint(0, 2) for _ in range(8)])

            assert len(orbit(group, v)) * len(stabilizer(group, v)) == 48

    def test_independent_of_the_generating_set(self):
        standard = hyperoctahedral_on_cube(3)
        flip_first, _, _, swap_01, swap_12 = standard.generators
        smaller = permutation_group(8, [flip_first, swap_01, swap_12])
        v = ExactVector.of([5, 0, 1, 1, 2, 7, 0, 3])

        assert group_order(smaller) == 48
        assert orbit(smaller, v) == orbit(standard, v)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            orbit(trivial_group(3), ExactVector.of([1, 2]))


class TestCanonicalRep:
    def test_lexicographic_minimum(self):
        swap = permutation_group(2, [(1, 0)])

        assert canonical_rep(swap, ExactVector.of([1, 0])) == ExactVector.of([0, 1])

    def test_fixed_vector(self):
        swap = permutation_group(2, [(1, 0)])

        assert canonical_rep(swap, ExactVector.of([4, 4])) == ExactVector.of([4, 4])


def test_act_moves_coordinate_i_to_position_g_i():
    assert act((2, 0, 1), ("a", "b", "c")) == ("b", "c", "a")


def test_compose_acts_right_to_left():
    a, b = (1, 2, 0), (1, 0, 2)
    v = (10, 20, 30)

    assert act(compose(a, b), v) == act(a, act(b, v))


def test_elements_are_closed_under_composition():
    elements = set(group_elements(hyperoctahedral_on_cube(2)))

    assert all(compose(a, b) in elements for a in elements for b in elements)


class TestOrbitCones:
    def test_cone_fixed_by_the_group(self):
        group = hyperoctahedral_on_cube(2)
        lineality = tuple(ExactVector(row) for row in cube_grading(2).row_list())
        cone = WeightedCone(rays=(), multiplicity=1, ambient_dim=4)

        assert len(orbit_cones(group, cone, lineality)) == 1

    def test_tropical_line_under_s3(self, tropical_line):
        group = permutation_group(3, [(1, 0, 2), (1, 2, 0)])

        images = orbit_cones(group, tropical_line.cones[0], tropical_line.lineality)

        assert len(images) == 3
        assert {c.key for c in images} == {c.key for c in tropical_line.cones}

    def test_orbit_size_divides_the_group_order(self):
        group = hyperoctahedral_on_cube(2)
        cone = WeightedCone(
            rays=(ExactVector.of([1, 0, 0, 0]), ExactVector.of([0, 1, 0, 0])),
            multiplicity=2,
            ambient_dim=4,
        )

        images = orbit_cones(group, cone)

        assert 8 % len(images) == 0
        assert all(image.multiplicity == 2 for image in images)

    def test_normals_stay_primitive(self, tropical_line):
        group = permutation_group(3, [(1, 0, 2), (1, 2, 0)])

        for image in orbit_cones(
            group, tropical_line.cones[1], tropical_line.lineality
        ):
            assert primitive_normal(image, tropical_line.lineality).is_primitive


def test_cube_grading_matches_the_data_file(cube_grading_rows):
    assert cube_grading(4).to_int_rows() == cube_grading_rows


class TestGroupFromSpec:
    def test_shorthands(self):
        assert group_from_spec("trivial", 5).n_coords == 5
        assert group_order(group_from_spec("hyperoctahedral:2")) == 8
        assert group_order(group_from_spec({"hyperoctahedral_cube": 3})) == 48

    def test_one_based_generators(self):
        group = group_from_spec({"n_coords": 3, "generators": [[2, 1, 3], [2, 3, 1]]})

        assert group_order(group) == 6

    def test_zero_based_generators(self):
        group = group_from_spec({"n_coords": 3, "generators": [[1, 0, 2]]})

        assert group_order(group) == 2

    def test_bad_specifications(self):
        with pytest.raises(InputFormatError):
            group_from_spec("dihedral:4")
        with pytest.raises(InputFormatError):
            group_from_spec("trivial")
        with pytest.raises(InputFormatError):
            group_from_spec({"n_coords": 3, "generators": [[0, 0, 1]]})
