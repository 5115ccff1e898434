"""
Walking: neighbouring vertices from the crossings of one shot.

Each crossing of ``w + sign·t·e_i`` with a cone of normal ``ℓ`` (oriented so
that ``ℓ_i > 0``) moves the selected vertex by ``sign·m·ℓ``, so the crossings
found while shooting already describe a path of vertices along every
coordinate.
"""

import logging
from fractions import Fraction
from itertools import groupby
from math import floor
from typing import Sequence

from ska_tropical_newton.common.custom_exceptions import (
    InconsistentRecords,
    NonParallelTie,
    WrongCodimension,
)
from ska_tropical_newton.domain.exact_models import ExactVector
from ska_tropical_newton.domain.fan_models import (
    IntersectionRecord,
    TropicalCollection,
)
from ska_tropical_newton.domain.polytope_models import (
    VertexWitness,
    WitnessSource,
)
from ska_tropical_newton.services.fan_core import cone_system, integral_point

LOGGER = logging.getLogger(__name__)


def _oriented_normal(T: TropicalCollection, cone_id: int, coord: int) -> tuple:
    normal = cone_system(T.cones[cone_id], T.lineality).normal
    if normal is None:
        raise WrongCodimension(f"cone {cone_id} is not of codimension one")
    if normal[coord] < 0:
        return tuple(-x for x in normal)
    return normal


def segment_objective(
    w: Sequence[int], coord: int, sign: int, low: Fraction, high: Fraction | None
) -> ExactVector:
    """
    An integral objective on the open segment of ``w + sign·t·e_coord``
    between the crossings at ``low`` and ``high`` (``None``: unbounded).

    The integer nearest the midpoint when one lies strictly inside,
    otherwise the midpoint scaled to the integral multiple of the objective.
    """
    if high is None:
        t = Fraction(floor(low) + 1)
    else:
        middle = (low + high) / 2
        t = Fraction(round(middle))
        if not low < t < high:
            t = middle
    point = list(map(Fraction, w))
    point[coord] += sign * t
    return ExactVector(integral_point(point))


def walk(
    T: TropicalCollection,
    w: ExactVector,
    vertex: ExactVector,
    records: Sequence[IntersectionRecord],
    sign: int = -1,
) -> list[VertexWitness]:
    """
    The vertices met while moving ``w`` along ``sign·e_i`` for every ``i``.

    :param w: the integral objective the records were shot from
    :param vertex: the vertex ``w`` selects
    :param records: the transversal crossings of that shot; records of the
        other sign are ignored
    :raises InconsistentRecords: a record with a non-positive parameter
    :raises NonParallelTie: cones crossed at the same parameter along one
        coordinate have different normals
    """
    if sign not in (-1, 1):
        raise ValueError("sign must be -1 or +1")
    if any(record.param <= 0 for record in records):
        raise InconsistentRecords()
    point = integral_point(w)
    if any(Fraction(a) != b for a, b in zip(point, w)):
        raise InconsistentRecords("walking needs the integral objective of the shot")
    witnesses = []
    for coord in range(T.ambient_dim):
        crossings = sorted(
            (r for r in records if r.coord == coord and r.sign == sign),
            key=lambda r: r.param,
        )
        groups = [
            (param, list(tied))
            for param, tied in groupby(crossings, key=lambda r: r.param)
        ]
        current = vertex
        for index, (param, tied) in enumerate(groups):
            normals = {_oriented_normal(T, r.cone_id, coord) for r in tied}
            if len(normals) > 1:
                raise NonParallelTie(coord, param)
            step = sum(T.cones[r.cone_id].multiplicity for r in tied)
            current = current + ExactVector(normals.pop()).scale(sign * step)
            following = groups[index + 1][0] if index + 1 < len(groups) else None
            witnesses.append(
                VertexWitness(
                    vertex=current,
                    objective=segment_objective(point, coord, sign, param, following),
                    source=WitnessSource.WALK,
                )
            )
    LOGGER.debug("Walk from %s (sign %d): %d vertices", vertex, sign, len(witnesses))
    return witnesses
