import pytest

from ska_tropical_newton.common.custom_exceptions import ExhaustedCoordinates
from ska_tropical_newton.domain.exact_models import ExactVector
from ska_tropical_newton.domain.polytope_models import WitnessSource
from ska_tropical_newton.services.fan_core import in_any_cone
from ska_tropical_newton.services.newton_recon import (
    certify_facet,
    certify_facet_direction,
    find_chamber_vector,
)
from ska_tropical_newton.services.newton_recon.facet_certificate import (
    check_facet,
    normal_rank,
)


def vec(*entries):
    return ExactVector.of(entries)


class TestCertifyFacet:
    def test_hypotenuse_of_the_triangle(self, triangle_fan):
        assert certify_facet(triangle_fan, vec(1, 1), 1)

    def test_wrong_bound(self, triangle_fan):
        assert not certify_facet(triangle_fan, vec(1, 1), 2)

    def test_objective_in_a_chamber(self, triangle_fan):
        check = check_facet(triangle_fan, vec(1, 0), 1)

        assert not check.certified
        assert check.rank == 0
        assert check.witness is None

    def test_coordinate_facets(self, triangle_fan):
        assert certify_facet(triangle_fan, vec(-1, 0), 0)
        assert certify_facet(triangle_fan, vec(0, -1), 0)

    def test_failed_bound_still_reports_the_vertex(self, triangle_fan):
        check = check_facet(triangle_fan, vec(1, 1), 2)

        assert check.rank == 1
        assert check.witness.vertex in (vec(1, 0), vec(0, 1))
        assert check.witness.source == WitnessSource.FACET_REPAIR

    def test_segment(self, segment_fan):
        assert certify_facet(segment_fan, vec(1), 2)
        assert certify_facet(segment_fan, vec(-1), 0)
        assert not certify_facet(segment_fan, vec(1), 1)

    def test_lineality_lowers_the_rank_needed(self, tropical_line):
        assert certify_facet(tropical_line, vec(-1, 0, 0), 0)
        assert not certify_facet(tropical_line, vec(1, 0, 0), 1)


def test_direction_stage(tropical_line):
    assert certify_facet_direction(tropical_line, vec(0, -1, 0))
    assert not certify_facet_direction(tropical_line, vec(0, 1, 0))
    assert not certify_facet_direction(tropical_line, vec(0, -1, 0), d=0)


def test_normal_rank_at_the_apex(triangle_fan):
    assert normal_rank(triangle_fan, vec(0, 0)) == 2
    assert normal_rank(triangle_fan, vec(3, 3)) == 1


class TestFindChamberVector:
    def test_generic_point_is_returned(self, triangle_fan):
        assert find_chamber_vector(triangle_fan, vec(2, 1)) == vec(2, 1)

    def test_leaves_a_ray(self, triangle_fan):
        chamber = find_chamber_vector(triangle_fan, vec(1, 1))

        assert chamber == vec(0, 1)

    def test_takes_a_second_coordinate(self, triangle_fan):
        chamber = find_chamber_vector(triangle_fan, vec(-1, 0))

        assert chamber == vec(-2, -1)
        assert in_any_cone(triangle_fan, chamber) is None

    def test_positive_direction(self, triangle_fan):
        chamber = find_chamber_vector(triangle_fan, vec(1, 1), sign=1)

        assert chamber == vec(2, 1)

    def test_no_coordinates_left(self, triangle_fan):
        with pytest.raises(ExhaustedCoordinates):
            find_chamber_vector(triangle_fan, vec(1, 1), order=[])
