"""
Deciding whether ``w·x <= a`` is a facet of the Newton polytope.

An objective is a facet normal exactly when the normals of the cones
containing it span a space of dimension ``n - d - 1``. The bound is then
the value of ``w`` on any vertex selected from a chamber touching ``w``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ska_tropical_newton.common.custom_exceptions import (
    ExhaustedCoordinates,
    SingularSystem,
)
from ska_tropical_newton.domain.exact_models import ExactVector
from ska_tropical_newton.domain.fan_models import TropicalCollection
from ska_tropical_newton.domain.polytope_models import (
    VertexWitness,
    WitnessSource,
)
from ska_tropical_newton.services.exact_linalg import rank_rows
from ska_tropical_newton.services.fan_core import (
    axis_crossing,
    cone_system,
    containing_cones,
    in_any_cone,
    integral_point,
)
from ska_tropical_newton.services.newton_recon.ray_shooting import shoot_generic

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class FacetCheck:
    """Outcome of a facet certificate with the vertex it was decided on."""

    certified: bool
    rank: int
    witness: Optional[VertexWitness] = None


def _first_crossing(T: TropicalCollection, point, coord: int, sign: int):
    """Smallest positive crossing parameter along ``sign·e_coord``, boundaries
    included."""
    first: Optional[Fraction] = None
    for cone in T.cones:
        system = cone_system(cone, T.lineality)
        lw = sum(x * y for x, y in zip(system.normal, point))
        try:
            hit = axis_crossing(system, point, lw, coord, sign)
        except SingularSystem:
            continue
        if hit is not None and (first is None or hit[0] < first):
            first = hit[0]
    return first


def find_chamber_vector(
    T: TropicalCollection,
    w: ExactVector,
    sign: int = -1,
    order: Optional[Sequence[int]] = None,
) -> ExactVector:
    """
    An integral objective in no cone whose chamber has ``w`` in its closure.

    Moves along ``sign·e_i`` for each coordinate in turn, by half the
    distance to the first crossing (or by 1 when nothing is crossed), and
    stops as soon as the point has left every cone.

    :raises ExhaustedCoordinates: still inside a cone after every coordinate
    """
    point = integral_point(w)
    if in_any_cone(T, point) is None:
        return ExactVector(point)
    coords = list(order) if order is not None else list(range(T.ambient_dim))
    for coord in coords:
        first = _first_crossing(T, point, coord, sign)
        step = Fraction(1) if first is None else first / 2
        moved = [Fraction(x) for x in point]
        moved[coord] += sign * step
        point = ExactVector(tuple(moved)).scaled_to_integral()
        if in_any_cone(T, point) is None:
            LOGGER.debug("Chamber vector %s found from %s", point, w)
            return ExactVector(point)
    raise ExhaustedCoordinates(f"{w} still lies in a cone after every coordinate")


def normal_rank(T: TropicalCollection, w: ExactVector) -> int:
    """Dimension of the span of the normals of the cones containing ``w``."""
    normals = [
        cone_system(T.cones[cone_id], T.lineality).normal
        for cone_id in containing_cones(T, w)
    ]
    return rank_rows(normals) if normals else 0


def certify_facet_direction(
    T: TropicalCollection, w: ExactVector, d: Optional[int] = None
) -> bool:
    """The rank stage alone: is ``w`` a facet normal of the polytope?"""
    d = T.lineality_dim if d is None else d
    return normal_rank(T, w) >= T.ambient_dim - d - 1


def check_facet(
    T: TropicalCollection,
    w: ExactVector,
    a: int,
    d: Optional[int] = None,
    seed: int = 0,
    parallelism: int = 1,
) -> FacetCheck:
    """
    :func:`certify_facet` keeping the rank and the vertex it shot.

    The witness is reported whenever a vertex was shot, also when the bound
    did not match, so callers can grow their vertex set from it.
    """
    d = T.lineality_dim if d is None else d
    rank = normal_rank(T, w)
    if rank < T.ambient_dim - d - 1:
        return FacetCheck(certified=False, rank=rank)
    chamber = find_chamber_vector(T, w)
    shot = shoot_generic(
        T, chamber, seed, parallelism=parallelism, source=WitnessSource.FACET_REPAIR
    )
    value = w.dot(shot.witness.vertex)
    LOGGER.debug("Facet candidate %s: bound %s, shot value %s", w, a, value)
    return FacetCheck(certified=value == a, rank=rank, witness=shot.witness)


def certify_facet(
    T: TropicalCollection,
    w: ExactVector,
    a: int,
    d: Optional[int] = None,
    seed: int = 0,
    parallelism: int = 1,
) -> bool:
    """
    Whether ``w·x <= a`` is a facet inequality of the Newton polytope.

    :param d: dimension of the lineality space, by default the collection's
    """
    return check_facet(T, w, a, d, seed, parallelism).certified
