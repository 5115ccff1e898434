import random
from fractions import Fraction

import pytest

from ska_tropical_newton.common.custom_exceptions import (
    InconsistentRecords,
    NonParallelTie,
)
from ska_tropical_newton.domain.exact_models import ExactVector
from ska_tropical_newton.domain.fan_models import IntersectionRecord
from ska_tropical_newton.domain.polytope_models import WitnessSource
from ska_tropical_newton.services.hull_oracle import (
    convex_hull,
    oracle_vertex,
    orthant_shift,
    weighted_normal_skeleton,
)
from ska_tropical_newton.services.newton_recon import (
    shoot_generic,
    shoot_records,
    walk,
)
from ska_tropical_newton.services.newton_recon.walking import segment_objective


def vec(*entries):
    return ExactVector.of(entries)


class TestWalk:
    def test_triangle_downwards(self, triangle_fan):
        shot = shoot_records(triangle_fan, vec(2, 1))

        steps = walk(triangle_fan, vec(2, 1), shot.witness.vertex, shot.records)

        assert [(s.vertex, s.objective) for s in steps] == [(vec(0, 1), vec(0, 1))]
        assert steps[0].source == WitnessSource.WALK

    def test_triangle_upwards(self, triangle_fan):
        shot = shoot_records(triangle_fan, vec(2, 1), signs=(-1, 1))

        steps = walk(triangle_fan, vec(2, 1), vec(1, 0), shot.records, sign=1)

        assert [(s.vertex, s.objective) for s in steps] == [(vec(0, 1), vec(2, 3))]

    def test_weight_scales_the_step(self, segment_fan):
        shot = shoot_records(segment_fan, vec(1))

        steps = walk(segment_fan, vec(1), shot.witness.vertex, shot.records)

        assert [(s.vertex, s.objective) for s in steps] == [(vec(0), vec(-1))]

    def test_no_crossings_no_steps(self, triangle_fan):
        assert walk(triangle_fan, vec(-1, -1), vec(0, 0), []) == []

    def test_sign_must_be_a_unit(self, triangle_fan):
        with pytest.raises(ValueError):
            walk(triangle_fan, vec(2, 1), vec(1, 0), [], sign=0)

    def test_records_behind_the_start(self, triangle_fan):
        records = [IntersectionRecord(cone_id=0, coord=0, param=Fraction(0))]

        with pytest.raises(InconsistentRecords):
            walk(triangle_fan, vec(2, 1), vec(1, 0), records)

    def test_objective_must_be_integral(self, triangle_fan):
        w = ExactVector((Fraction(2, 3), Fraction(1, 3)))

        with pytest.raises(InconsistentRecords):
            walk(triangle_fan, w, vec(1, 0), [])

    def test_tie_between_different_normals(self, triangle_fan):
        records = [
            IntersectionRecord(cone_id=0, coord=0, param=Fraction(1)),
            IntersectionRecord(cone_id=1, coord=0, param=Fraction(1)),
        ]

        with pytest.raises(NonParallelTie):
            walk(triangle_fan, vec(2, 1), vec(1, 0), records)


class TestSegmentObjective:
    def test_integer_strictly_inside(self):
        objective = segment_objective((5, 0), 0, -1, Fraction(1), Fraction(4))

        assert objective == vec(3, 0)

    def test_unbounded_segment(self):
        objective = segment_objective((5, 0), 0, -1, Fraction(5, 2), None)

        assert objective == vec(2, 0)

    def test_short_segment_uses_the_scaled_midpoint(self):
        objective = segment_objective((1, 1), 1, 1, Fraction(1, 3), Fraction(2, 3))

        assert objective == vec(2, 3)


def test_walked_vertices_are_hull_vertices_selected_by_their_objectives(
    random_exponents,
):
    rng = random.Random(2718)
    checked = skipped = 0
    for _ in range(500):
        E = random_exponents(rng)
        hull = convex_hull(E)
        shift = orthant_shift(E.points)
        T = weighted_normal_skeleton(hull)
        w = ExactVector(tuple(rng.randint(-1000, 1000) for _ in range(E.dim)))
        shot = shoot_generic(T, w, seed=1, signs=(-1, 1))
        for sign in (-1, 1):
            try:
                steps = walk(
                    T, shot.witness.objective, shot.witness.vertex, shot.records, sign
                )
            except NonParallelTie:
                skipped += 1
                continue
            for step in steps:
                assert step.vertex == oracle_vertex(E, step.objective)
                assert step.vertex + shift in hull.vertices
                checked += 1

    assert checked > 750
    assert skipped < 50
