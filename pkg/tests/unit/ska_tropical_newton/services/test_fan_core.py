from fractions import Fraction

import pytest

from ska_tropical_newton.common.custom_exceptions import (
    MultiplicityConflict,
    NonSimplicialCone,
    NotACurve,
    SingularSystem,
    WrongCodimension,
)
from ska_tropical_newton.domain.exact_models import ExactVector
from ska_tropical_newton.domain.fan_models import TropicalCollection, WeightedCone
from ska_tropical_newton.services.fan_core import (
    canonicalize,
    check_balancing_curve,
    collection_normals,
    cone_contains,
    containing_cones,
    in_any_cone,
    is_hypersurface,
    line_cone_intersection,
    primitive_normal,
    ray_cone_intersection,
    reduce_rays,
    segment_crosses,
    triangulate_cone,
)


def cone(*rays, m=1, n=None):
    n = n if n is not None else len(rays[0])
    return WeightedCone(
        rays=tuple(ExactVector.of(r) for r in rays), multiplicity=m, ambient_dim=n
    )


def vec(*entries):
    return ExactVector.of(entries)


class TestConeContains:
    def test_interior_point(self):
        assert cone_contains(cone((1, 0)), (), vec(2, 0)) == (True, True)

    def test_apex_is_on_the_boundary(self):
        assert cone_contains(cone((1, 0)), (), vec(0, 0)) == (True, False)

    def test_point_off_the_ray(self):
        assert cone_contains(cone((1, 1)), (), vec(1, 2)) == (False, False)

    def test_opposite_direction(self):
        assert cone_contains(cone((1, 1)), (), vec(-1, -1)) == (False, False)

    def test_lineality_directions_are_free(self):
        lineality = (vec(1, 1, 1),)
        c = cone((-2, 1, 1))

        assert cone_contains(c, lineality, vec(-7, 5, 5)) == (True, True)
        assert cone_contains(c, lineality, vec(3, 3, 3)) == (True, False)
        assert cone_contains(c, lineality, vec(5, 1, 1)) == (False, False)

    def test_rational_points(self):
        point = ExactVector((Fraction(1, 3), Fraction(1, 3)))

        assert cone_contains(cone((1, 1)), (), point) == (True, True)

    def test_dependent_generators_are_refused(self):
        with pytest.raises(NonSimplicialCone):
            cone_contains(cone((1, 0), (2, 0)), (), vec(1, 0))


class TestRayConeIntersection:
    def test_transversal_crossing(self):
        record = ray_cone_intersection(cone((1, 1)), (), vec(2, 1), coord=0, sign=-1)

        assert record.param == 1
        assert not record.boundary_hit
        assert record.coord == 0
        assert record.sign == -1

    def test_crossing_behind_the_start(self):
        assert ray_cone_intersection(cone((1, 1)), (), vec(2, 1), 1, -1) is None

    def test_crossing_through_the_apex(self):
        record = ray_cone_intersection(cone((1, 0)), (), vec(0, 1), 1, -1)

        assert record.param == 1
        assert record.boundary_hit

    def test_positive_direction(self):
        record = ray_cone_intersection(cone((1, 1)), (), vec(2, 1), 1, 1)

        assert record.param == 1
        assert record.sign == 1

    def test_ray_inside_the_hyperplane(self):
        with pytest.raises(SingularSystem):
            ray_cone_intersection(cone((1, 0)), (), vec(3, 0), 0, -1)

    def test_rational_objective(self):
        w = ExactVector((Fraction(2, 3), Fraction(1, 3)))

        record = ray_cone_intersection(cone((1, 1)), (), w, 0, -1)

        assert record.param == Fraction(1, 3)

    def test_agrees_with_cone_contains(self, triangle_fan):
        for w in [vec(2, 1), vec(3, -1), vec(-1, -2), vec(5, 4), vec(-3, 2)]:
            for coord in (0, 1):
                for sign in (-1, 1):
                    for c in triangle_fan.cones:
                        try:
                            record = ray_cone_intersection(c, (), w, coord, sign)
                        except SingularSystem:
                            continue
                        if record is None:
                            continue
                        moved = list(w.entries)
                        moved[coord] += sign * record.param
                        inside, interior = cone_contains(c, (), ExactVector(moved))

                        assert inside
                        assert interior == (not record.boundary_hit)

    def test_sign_must_be_a_unit(self):
        with pytest.raises(ValueError):
            ray_cone_intersection(cone((1, 1)), (), vec(2, 1), 0, 2)


def test_line_cone_intersection_reports_any_parameter():
    hit = line_cone_intersection(cone((1, 1)), (), vec(2, 1), vec(0, 1))

    assert hit == (Fraction(1), False)

    hit = line_cone_intersection(cone((1, 1)), (), vec(2, 1), vec(1, 0))

    assert hit == (Fraction(-1), False)


class TestPrimitiveNormal:
    def test_coordinate_plane(self):
        c = cone((1, 0, 0), (0, 1, 0))

        assert primitive_normal(c, ()) == vec(0, 0, 1)

    def test_line_in_the_plane(self):
        assert primitive_normal(cone((1, 1)), ()) == vec(1, -1)

    def test_normal_with_lineality(self):
        normal = primitive_normal(cone((-2, 1, 1)), (vec(1, 1, 1),))

        assert normal == vec(0, 1, -1)

    def test_wrong_codimension(self):
        with pytest.raises(WrongCodimension):
            primitive_normal(cone((1, 0, 0)), ())

    def test_normals_of_canonical_cones_are_orthogonal(self, tropical_line):
        T = canonicalize(tropical_line)
        for c in T.cones:
            normal = primitive_normal(c, T.lineality)

            assert normal.is_primitive
            assert all(normal.dot(r) == 0 for r in c.rays + T.lineality)


class TestCanonicalize:
    def test_ray_order_does_not_matter(self):
        T = TropicalCollection(2, (), (cone((1, 1), (0, 1)), cone((0, 1), (1, 1))))

        assert len(canonicalize(T)) == 1

    def test_rays_become_primitive(self):
        T = canonicalize(TropicalCollection(2, (), (cone((2, 2)),)))

        assert T.cones[0].rays == (vec(1, 1),)

    def test_conflicting_duplicates(self):
        T = TropicalCollection(2, (), (cone((1, 1), m=1), cone((2, 2), m=2)))

        with pytest.raises(MultiplicityConflict):
            canonicalize(T)

    def test_idempotent(self, six_ray_curve, tropical_line):
        for T in (six_ray_curve, tropical_line):
            once = canonicalize(T)
            twice = canonicalize(once)

            assert [c.key for c in twice.cones] == [c.key for c in once.cones]
            assert twice.lineality == once.lineality

    def test_rays_are_reduced_modulo_lineality(self):
        T = TropicalCollection(3, (vec(1, 1, 1),), (cone((0, 1, 1)), cone((-2, 1, 1))))

        with pytest.raises(MultiplicityConflict):
            canonicalize(
                TropicalCollection(
                    3, (vec(1, 1, 1),), (cone((0, 1, 1), m=1), cone((-1, 0, 0), m=3))
                )
            )
        assert len(canonicalize(T)) == 1


class TestBalancing:
    def test_six_ray_curve(self, six_ray_curve):
        assert check_balancing_curve(six_ray_curve)

    def test_unit_ray_curve(self, unit_ray_curve):
        assert check_balancing_curve(unit_ray_curve)

    def test_single_ray(self):
        assert not check_balancing_curve(TropicalCollection(2, (), (cone((1, 0)),)))

    def test_invariant_under_positive_rescaling(self, six_ray_curve):
        scaled = TropicalCollection(
            3,
            (),
            tuple(
                cone(tuple(3 * x for x in c.rays[0].to_ints())) for c in six_ray_curve
            ),
        )

        assert check_balancing_curve(canonicalize(scaled))

    def test_balanced_modulo_lineality(self, tropical_line):
        assert check_balancing_curve(tropical_line)

    def test_only_curves(self, triangle_fan):
        T = TropicalCollection(3, (), (cone((1, 0, 0), (0, 1, 0)),))

        with pytest.raises(NotACurve):
            check_balancing_curve(T)
        assert check_balancing_curve(triangle_fan)


class TestTriangulateCone:
    def test_simplicial_cone_is_kept(self):
        pieces = triangulate_cone([vec(1, 0, 0), vec(0, 1, 0)], (), 3, 3)

        assert len(pieces) == 1
        assert pieces[0].multiplicity == 3

    def test_cone_over_a_square(self):
        rays = [vec(1, 0, 1), vec(0, 1, 1), vec(-1, 0, 1), vec(0, -1, 1)]

        pieces = triangulate_cone(rays, (), 2, 3)

        assert len(pieces) == 2
        assert all(len(p.rays) == 3 and p.multiplicity == 2 for p in pieces)
        assert {r for p in pieces for r in p.rays} == set(rays)
        # Both pieces contain the centre of the square.
        centre = vec(0, 0, 1)
        assert all(cone_contains(p, (), centre)[0] for p in pieces)


class TestCollectionQueries:
    def test_containing_cones(self, triangle_fan):
        assert containing_cones(triangle_fan, vec(0, 0)) == [0, 1, 2]
        assert len(containing_cones(triangle_fan, vec(3, 3))) == 1
        assert containing_cones(triangle_fan, vec(2, 1)) == []

    def test_in_any_cone(self, triangle_fan):
        assert in_any_cone(triangle_fan, vec(2, 1)) is None
        assert in_any_cone(triangle_fan, vec(-4, 0)) is not None

    def test_segment_crosses(self, triangle_fan):
        assert segment_crosses(triangle_fan, vec(2, 1), vec(1, 2))
        assert not segment_crosses(triangle_fan, vec(2, 1), vec(3, 1))

    def test_collection_normals(self, triangle_fan):
        assert collection_normals(triangle_fan) == {(1, -1), (0, 1), (1, 0)}

    def test_is_hypersurface(self, triangle_fan, tropical_line, six_ray_curve):
        assert is_hypersurface(triangle_fan)
        assert is_hypersurface(tropical_line)
        assert not is_hypersurface(six_ray_curve)


def test_reduce_rays_drops_lineality_directions():
    rays = reduce_rays([vec(1, 1, 1), vec(0, 2, 2), vec(-1, 0, 0)], (vec(1, 1, 1),))

    assert rays == [vec(-2, 1, 1)]
