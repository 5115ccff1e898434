"""
Vertices of the Newton polytope from crossings of coordinate rays.

Coordinate ``i`` of the vertex selected by a generic objective ``w`` is the
weighted number of crossings of ``w - t·e_i`` (``t > 0``) with the tropical
hypersurface, each cone counting ``m·|ℓ_i|``. The vertex obtained is the one
of the translate that lies in the nonnegative orthant and touches every
coordinate hyperplane.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Optional, Sequence

from ska_tropical_newton.common.constant import MAX_GENERICITY_RETRIES
from ska_tropical_newton.common.custom_exceptions import (
    DimensionMismatch,
    GenericityViolation,
    ObjectiveInCone,
    SingularSystem,
    TropicalNewtonError,
    WrongCodimension,
)
from ska_tropical_newton.common.utils import (
    chunked,
    parallel_map,
    perturbation_vector,
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
from ska_tropical_newton.services.fan_core import (
    axis_crossing,
    cone_system,
    in_any_cone,
    integral_point,
    segment_crosses,
    system_membership,
)

LOGGER = logging.getLogger(__name__)

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class ShotResult:
    """A shot vertex together with every transversal crossing met on the way."""

    witness: VertexWitness
    records: tuple[IntersectionRecord, ...] = ()


@dataclass
class _Scan:
    sums: list[list[int]]
    records: list[list[IntersectionRecord]]
    errors: list[Optional[TropicalNewtonError]]


def _scan_cones(
    T: TropicalCollection,
    objectives: tuple[IntVector, ...],
    signs: tuple[int, ...],
    cone_ids: Sequence[int],
) -> _Scan:
    n = T.ambient_dim
    scan = _Scan(
        sums=[[0] * n for _ in objectives],
        records=[[] for _ in objectives],
        errors=[None for _ in objectives],
    )
    for cone_id in cone_ids:
        cone = T.cones[cone_id]
        system = cone_system(cone, T.lineality)
        normal = system.normal
        if normal is None:
            raise WrongCodimension(f"cone {cone_id} is not of codimension one")
        for k, w in enumerate(objectives):
            error = scan.errors[k]
            if isinstance(error, ObjectiveInCone):
                continue
            if error is not None:
                if _inside(system, w):
                    scan.errors[k] = ObjectiveInCone(cone_id)
                continue
            try:
                _shoot_cone(scan, k, cone_id, cone.multiplicity, system, w, signs)
            except TropicalNewtonError as err:
                scan.errors[k] = err
    return scan


def _inside(system, w) -> bool:
    lw = sum(x * y for x, y in zip(system.normal, w))
    return lw == 0 and system_membership(system, w)[0]


def _shoot_cone(scan, k, cone_id, multiplicity, system, w, signs):
    normal = system.normal
    if _inside(system, w):
        raise ObjectiveInCone(cone_id)
    lw = sum(x * y for x, y in zip(normal, w))
    for coord in range(len(w)):
        for sign in signs:
            try:
                hit = axis_crossing(system, w, lw, coord, sign)
            except SingularSystem as err:
                raise GenericityViolation(cone_id, coord) from err
            if hit is None:
                continue
            t, boundary = hit
            if boundary:
                raise GenericityViolation(cone_id, coord)
            scan.records[k].append(
                IntersectionRecord(
                    cone_id=cone_id, coord=coord, param=t, boundary_hit=False, sign=sign
                )
            )
            if sign == -1:
                scan.sums[k][coord] += multiplicity * abs(normal[coord])


def _merge(scans: list[_Scan], count: int, n: int) -> _Scan:
    merged = _Scan(
        sums=[[0] * n for _ in range(count)],
        records=[[] for _ in range(count)],
        errors=[None for _ in range(count)],
    )
    for scan in scans:
        for k in range(count):
            current, error = merged.errors[k], scan.errors[k]
            if isinstance(current, ObjectiveInCone):
                continue
            if isinstance(error, ObjectiveInCone) or current is None:
                merged.errors[k] = error
            if merged.errors[k] is not None:
                continue
            merged.sums[k] = [a + b for a, b in zip(merged.sums[k], scan.sums[k])]
            merged.records[k].extend(scan.records[k])
    return merged


def _scan(
    T: TropicalCollection,
    objectives: list[IntVector],
    signs: tuple[int, ...],
    parallelism: int,
) -> _Scan:
    cone_ids = list(range(len(T.cones)))
    chunks = chunked(cone_ids, parallelism) or [[]]
    task = partial(_scan_cones, T, tuple(objectives), signs)
    return _merge(
        parallel_map(task, chunks, parallelism), len(objectives), T.ambient_dim
    )


def _witness(w: ExactVector, sums: list[int], source: WitnessSource) -> VertexWitness:
    return VertexWitness(vertex=ExactVector(tuple(sums)), objective=w, source=source)


def shoot_records(
    T: TropicalCollection,
    w: ExactVector,
    signs: tuple[int, ...] = (-1,),
    parallelism: int = 1,
    source: WitnessSource = WitnessSource.SHOOT,
) -> ShotResult:
    """
    Shoot from ``w`` and keep the crossings.

    The vertex is always computed from the ``-1`` direction; crossings of
    the ``+1`` direction are recorded when requested, for walking.

    :raises ObjectiveInCone: ``w`` lies in a cone
    :raises GenericityViolation: a ray meets a cone boundary or runs inside
        a cone's hyperplane
    """
    if w.dim != T.ambient_dim:
        raise DimensionMismatch(f"objective of dim {w.dim} in ambient {T.ambient_dim}")
    point = integral_point(w)
    scale = w.denominator()
    signs = tuple(sorted(set(signs) | {-1}))
    scan = _scan(T, [point], signs, parallelism)
    if scan.errors[0] is not None:
        raise scan.errors[0]
    records = scan.records[0]
    if scale != 1:
        records = [
            IntersectionRecord(r.cone_id, r.coord, r.param / scale, False, r.sign)
            for r in records
        ]
    records.sort(key=lambda r: (r.sign, r.coord, r.param, r.cone_id))
    return ShotResult(witness=_witness(w, scan.sums[0], source), records=tuple(records))


def ray_shoot(
    T: TropicalCollection, w: ExactVector, parallelism: int = 1
) -> VertexWitness:
    """
    The vertex of the Newton polytope maximizing ``w``.

    :raises ObjectiveInCone: ``w`` lies in a cone
    :raises GenericityViolation: a ray meets a cone boundary
    """
    return shoot_records(T, w, (-1,), parallelism).witness


def ray_shoot_batch(
    T: TropicalCollection, ws: Sequence[ExactVector], parallelism: int = 1
) -> list[VertexWitness | TropicalNewtonError]:
    """
    :func:`ray_shoot` for many objectives in one pass over the cones.

    Failures are returned in place of the witness of the objective that
    caused them.
    """
    points = [integral_point(w) for w in ws]
    scan = _scan(T, points, (-1,), parallelism)
    results: list[VertexWitness | TropicalNewtonError] = []
    for k, w in enumerate(ws):
        if scan.errors[k] is not None:
            results.append(scan.errors[k])
        else:
            results.append(_witness(w, scan.sums[k], WitnessSource.SHOOT))
    LOGGER.debug(
        "Batch of %d objectives: %d failed",
        len(ws),
        sum(isinstance(r, TropicalNewtonError) for r in results),
    )
    return results


def generic_candidates(w: ExactVector, seed: int, attempts: int):
    """``w`` itself, then ``2^k·w + p_k`` for seeded integral ``p_k``."""
    point = integral_point(w)
    yield ExactVector(point)
    for attempt in range(1, attempts + 1):
        noise = perturbation_vector(seed, len(point), attempt)
        factor = 1 << attempt
        yield ExactVector(tuple(factor * x + p for x, p in zip(point, noise)))


def shoot_generic(
    T: TropicalCollection,
    w: ExactVector,
    seed: int = 0,
    signs: tuple[int, ...] = (-1,),
    parallelism: int = 1,
    max_retries: int = MAX_GENERICITY_RETRIES,
    source: WitnessSource = WitnessSource.SHOOT,
) -> ShotResult:
    """
    Shoot from ``w``, or from the first seeded perturbation of it that is
    generic.

    When ``w`` lies in no cone the perturbation must stay in the chamber of
    ``w``, so the vertex is the one ``w`` selects. The objective actually
    used is reported on the witness.

    :raises GenericityViolation: or ObjectiveInCone when every candidate fails
    """
    in_chamber = in_any_cone(T, w) is None
    last_error: Optional[TropicalNewtonError] = None
    for attempt, candidate in enumerate(generic_candidates(w, seed, max_retries)):
        if attempt == 1:
            LOGGER.warning("Perturbing objective %s (seed %d)", w, seed)
        cone_id = in_any_cone(T, candidate)
        if cone_id is not None:
            last_error = ObjectiveInCone(cone_id)
            continue
        if attempt and in_chamber and segment_crosses(T, w, candidate):
            continue
        try:
            return shoot_records(T, candidate, signs, parallelism, source)
        except (GenericityViolation, ObjectiveInCone) as err:
            LOGGER.debug("Objective %s is not generic: %s", candidate, err.message)
            last_error = err
    raise last_error or GenericityViolation(
        -1, -1, f"no generic objective near {w} in {max_retries} attempts"
    )


def crossing_parameters(
    records: Sequence[IntersectionRecord], coord: int, sign: int
) -> list[Fraction]:
    return sorted({r.param for r in records if r.coord == coord and r.sign == sign})
