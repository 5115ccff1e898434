from fractions import Fraction

import pytest

from ska_tropical_newton.common.custom_exceptions import (
    DimensionMismatch,
    GenericityViolation,
    ObjectiveInCone,
)
from ska_tropical_newton.domain.exact_models import ExactVector
from ska_tropical_newton.domain.polytope_models import WitnessSource
from ska_tropical_newton.services.newton_recon import (
    ray_shoot,
    ray_shoot_batch,
    shoot_generic,
    shoot_records,
)
from ska_tropical_newton.services.newton_recon.ray_shooting import (
    crossing_parameters,
    generic_candidates,
)


def vec(*entries):
    return ExactVector.of(entries)


class TestRayShoot:
    @pytest.mark.parametrize(
        "w,vertex",
        [((2, 1), (1, 0)), ((1, 2), (0, 1)), ((-1, -1), (0, 0)), ((5, -3), (1, 0))],
    )
    def test_triangle(self, triangle_fan, w, vertex):
        witness = ray_shoot(triangle_fan, vec(*w))

        assert witness.vertex == vec(*vertex)
        assert witness.objective == vec(*w)
        assert witness.source == WitnessSource.SHOOT

    def test_segment_counts_the_weight(self, segment_fan):
        assert ray_shoot(segment_fan, vec(1)).vertex == vec(2)
        assert ray_shoot(segment_fan, vec(-1)).vertex == vec(0)

    def test_lineality_space(self, tropical_line):
        assert ray_shoot(tropical_line, vec(3, 1, 0)).vertex == vec(1, 0, 0)
        assert ray_shoot(tropical_line, vec(0, 5, 2)).vertex == vec(0, 1, 0)

    def test_rational_objective(self, triangle_fan):
        w = ExactVector((Fraction(2, 3), Fraction(1, 3)))

        assert ray_shoot(triangle_fan, w).vertex == vec(1, 0)

    def test_objective_in_a_cone(self, triangle_fan):
        with pytest.raises(ObjectiveInCone):
            ray_shoot(triangle_fan, vec(1, 1))

    def test_ray_through_the_apex(self, triangle_fan):
        with pytest.raises(GenericityViolation):
            ray_shoot(triangle_fan, vec(0, 1))

    def test_dimension_mismatch(self, triangle_fan):
        with pytest.raises(DimensionMismatch):
            ray_shoot(triangle_fan, vec(1, 2, 3))

    def test_cube(self, cube_skeleton):
        assert ray_shoot(cube_skeleton, vec(7, -3, 2)).vertex == vec(1, 0, 1)


def test_shoot_records_keeps_both_directions(triangle_fan):
    shot = shoot_records(triangle_fan, vec(2, 1), signs=(-1, 1))

    assert shot.witness.vertex == vec(1, 0)
    assert [(r.sign, r.coord, r.param, r.cone_id) for r in shot.records] == [
        (-1, 0, 1, 0),
        (1, 1, 1, 0),
    ]
    assert crossing_parameters(shot.records, 0, -1) == [1]
    assert crossing_parameters(shot.records, 0, 1) == []


def test_shoot_records_of_a_rational_objective(triangle_fan):
    shot = shoot_records(triangle_fan, ExactVector((Fraction(2, 3), Fraction(1, 3))))

    assert [r.param for r in shot.records] == [Fraction(1, 3)]


def test_batch_reports_failures_in_place(triangle_fan):
    results = ray_shoot_batch(triangle_fan, [vec(2, 1), vec(1, 1), vec(1, 2)])

    assert results[0].vertex == vec(1, 0)
    assert isinstance(results[1], ObjectiveInCone)
    assert results[2].vertex == vec(0, 1)


def test_batch_agrees_with_single_shots(cube_skeleton):
    objectives = [vec(7, -3, 2), vec(-11, 4, 9), vec(1, 13, -6)]

    batch = ray_shoot_batch(cube_skeleton, objectives)

    for w, result in zip(objectives, batch):
        assert result.vertex == ray_shoot(cube_skeleton, w).vertex


def test_parallel_scan_matches_the_serial_one(cube_skeleton):
    w = vec(-11, 4, 9)

    assert (
        ray_shoot(cube_skeleton, w, parallelism=2).vertex
        == ray_shoot(cube_skeleton, w).vertex
    )


class TestShootGeneric:
    def test_generic_objective_is_used_as_is(self, triangle_fan):
        shot = shoot_generic(triangle_fan, vec(2, 1))

        assert shot.witness.objective == vec(2, 1)

    def test_perturbation_stays_in_the_chamber(self, triangle_fan):
        shot = shoot_generic(triangle_fan, vec(0, 1), seed=3)

        assert shot.witness.vertex == vec(0, 1)
        assert shot.witness.objective != vec(0, 1)

    def test_objective_in_a_cone_moves_to_a_neighbour(self, triangle_fan):
        shot = shoot_generic(triangle_fan, vec(1, 1))

        assert shot.witness.vertex in (vec(1, 0), vec(0, 1))

    def test_retries_are_bounded(self, triangle_fan):
        with pytest.raises(ObjectiveInCone):
            shoot_generic(triangle_fan, vec(1, 1), max_retries=0)


def test_generic_candidates_start_from_the_objective():
    candidates = list(generic_candidates(vec(1, 2), seed=0, attempts=3))

    assert candidates[0] == vec(1, 2)
    assert len(candidates) == 4
    assert candidates == list(generic_candidates(vec(1, 2), seed=0, attempts=3))
