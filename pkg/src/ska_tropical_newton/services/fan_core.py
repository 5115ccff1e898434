"""
Cones of a tropical hypersurface and the exact queries run against them.

Every query goes through :func:`cone_system`, a lazily built, cached exact
factorization of the cone's generator matrix. Once it exists, membership and
crossing tests reduce to integer dot products.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ska_tropical_newton.common.custom_exceptions import (
    DimensionMismatch,
    MultiplicityConflict,
    NonSimplicialCone,
    NotACurve,
    SingularSystem,
    WrongCodimension,
    ZeroVector,
)
from ska_tropical_newton.domain.exact_models import ExactVector
from ska_tropical_newton.domain.fan_models import (
    IntersectionRecord,
    TropicalCollection,
    WeightedCone,
)
from ska_tropical_newton.services.exact_linalg import (
    fraction_free_echelon,
    integer_inverse,
    kernel_rows,
    pivot_columns,
    primitive_ints,
    rank_rows,
    sign_normalized,
    solve_rows,
)

LOGGER = logging.getLogger(__name__)

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class ConeSystem:
    """
    Exact factorization of ``(rays | lineality)``.

    For ``p`` in the span, the coefficient of generator ``j`` is
    ``sum(coefficient_rows[j][s] * p[pivots[s]]) / denominator``.
    """

    generators: tuple[IntVector, ...]
    n_rays: int
    pivots: tuple[int, ...]
    coefficient_rows: tuple[IntVector, ...]
    denominator: int
    normal: Optional[IntVector]


def cone_system(cone: WeightedCone, lineality: Sequence[ExactVector]) -> ConeSystem:
    """
    The cached factorization of a cone, built on first use.

    The cache is a write-once cell: concurrent first calls compute equal
    values and either may win.

    :raises NonSimplicialCone: rays and lineality are linearly dependent
    """
    if cone.system is not None:
        return cone.system
    generators = tuple(ray.to_ints() for ray in cone.rays) + tuple(
        vector.to_ints() for vector in lineality
    )
    n = cone.ambient_dim
    if generators:
        echelon = [list(g) for g in generators]
        pivots = fraction_free_echelon(echelon)
        if len(pivots) < len(generators):
            raise NonSimplicialCone()
        square = [[g[s] for g in generators] for s in pivots]
        coefficient_rows, denominator = integer_inverse(square)
    else:
        pivots, coefficient_rows, denominator = [], [], 1
    kernel = kernel_rows(generators, n) if generators else _standard_basis(n)
    normal = kernel[0] if len(kernel) == 1 else None
    system = ConeSystem(
        generators=generators,
        n_rays=len(cone.rays),
        pivots=tuple(pivots),
        coefficient_rows=tuple(tuple(row) for row in coefficient_rows),
        denominator=denominator,
        normal=normal,
    )
    cone.system = system
    if normal is not None and cone.normal is None:
        cone.normal = ExactVector(normal)
    return system


def _standard_basis(n: int) -> list[IntVector]:
    return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def integral_point(p: ExactVector | Sequence) -> IntVector:
    """A positive integral multiple of ``p`` (the same ray through 0)."""
    entries = p.entries if isinstance(p, ExactVector) else tuple(p)
    if all(isinstance(x, int) for x in entries):
        return tuple(entries)
    return ExactVector(entries).scaled_to_integral()


def _ray_numerators(system: ConeSystem, p: Sequence[int]) -> list[int]:
    """Ray coefficients of ``p`` times ``denominator`` (positive)."""
    pivots = system.pivots
    return [
        sum(q * p[s] for q, s in zip(row, pivots))
        for row in system.coefficient_rows[: system.n_rays]
    ]


def _in_span(system: ConeSystem, p: Sequence[int]) -> bool:
    if system.normal is not None:
        return _dot(system.normal, p) == 0
    if not system.generators:
        return not any(p)
    pivots = system.pivots
    numerators = [
        sum(q * p[s] for q, s in zip(row, pivots)) for row in system.coefficient_rows
    ]
    for coordinate, value in enumerate(p):
        combined = sum(c * g[coordinate] for c, g in zip(numerators, system.generators))
        if combined != system.denominator * value:
            return False
    return True


def system_membership(system: ConeSystem, p: Sequence[int]) -> tuple[bool, bool]:
    if not _in_span(system, p):
        return False, False
    numerators = _ray_numerators(system, p)
    if any(x < 0 for x in numerators):
        return False, False
    return True, all(x > 0 for x in numerators)


def cone_contains(
    cone: WeightedCone, lineality: Sequence[ExactVector], p: ExactVector
) -> tuple[bool, bool]:
    """
    Whether ``p`` lies in ``cone(rays) + span(lineality)``.

    :returns: ``(inside, interior)``; interior means every ray coefficient
        is strictly positive
    :raises NonSimplicialCone: the generators are dependent
    """
    if p.dim != cone.ambient_dim:
        raise DimensionMismatch(f"point of dim {p.dim} in ambient {cone.ambient_dim}")
    return system_membership(cone_system(cone, lineality), integral_point(p))


def primitive_normal(
    cone: WeightedCone, lineality: Sequence[ExactVector]
) -> ExactVector:
    """
    The primitive normal of a codimension one cone, first nonzero entry
    positive, cached on the cone.

    :raises WrongCodimension: the cone does not span a hyperplane
    """
    system = cone_system(cone, lineality)
    if system.normal is None:
        raise WrongCodimension(
            f"cone spans a {len(system.generators)}-dim space in"
            f" ambient dim {cone.ambient_dim}"
        )
    return cone.normal


def hyperplane_normal(
    cone: WeightedCone, lineality: Sequence[ExactVector]
) -> IntVector:
    system = cone_system(cone, lineality)
    if system.normal is None:
        raise WrongCodimension()
    return system.normal


def line_crossing(
    cone: WeightedCone,
    lineality: Sequence[ExactVector],
    w: Sequence[int],
    direction: Sequence[int],
) -> Optional[tuple[Fraction, bool]]:
    """
    Where the line ``w + t·direction`` meets a codimension one cone.

    :returns: ``(t, on_boundary)`` or None when the line misses the cone;
        ``t`` may have any sign
    :raises SingularSystem: the line lies inside the cone's hyperplane
    """
    system = cone_system(cone, lineality)
    normal = system.normal
    if normal is None:
        raise WrongCodimension()
    lw = _dot(normal, w)
    ld = _dot(normal, direction)
    if ld == 0:
        if lw == 0:
            raise SingularSystem()
        return None
    # ld·(w + t·d) with t = -lw/ld, which lies in the hyperplane
    scaled = [ld * a - lw * b for a, b in zip(w, direction)]
    numerators = _ray_numerators(system, scaled)
    if ld < 0:
        numerators = [-x for x in numerators]
    if any(x < 0 for x in numerators):
        return None
    return Fraction(-lw, ld), any(x == 0 for x in numerators)


def line_cone_intersection(
    cone: WeightedCone,
    lineality: Sequence[ExactVector],
    w: ExactVector,
    direction: ExactVector,
) -> Optional[tuple[Fraction, bool]]:
    """
    :func:`line_crossing` for exact vectors. ``w`` may be rational; the
    returned parameter refers to the original ``w``.
    """
    scale = w.denominator()
    hit = line_crossing(cone, lineality, integral_point(w), direction.to_ints())
    if hit is None:
        return None
    return hit[0] / scale, hit[1]


def axis_crossing(
    system: ConeSystem, w: Sequence[int], lw: int, coord: int, sign: int
) -> Optional[tuple[Fraction, bool]]:
    """
    Crossing of ``w + sign·t·e_coord`` (``t > 0``) with a codimension one cone
    whose normal satisfies ``normal·w == lw``.

    :raises SingularSystem: the ray lies in the cone's hyperplane
    """
    li = system.normal[coord]
    if li == 0:
        if lw == 0:
            raise SingularSystem()
        return None
    ld = sign * li
    if lw * ld >= 0:
        return None
    scaled = [ld * a for a in w]
    scaled[coord] -= lw * sign
    numerators = _ray_numerators(system, scaled)
    if ld < 0:
        numerators = [-x for x in numerators]
    if any(x < 0 for x in numerators):
        return None
    return Fraction(-lw, ld), any(x == 0 for x in numerators)


def ray_cone_intersection(
    cone: WeightedCone,
    lineality: Sequence[ExactVector],
    w: ExactVector,
    coord: int,
    sign: int = -1,
    cone_id: int = 0,
) -> Optional[IntersectionRecord]:
    """
    Crossing of the open ray ``w + sign·t·e_coord``, ``t > 0``, with a cone.

    :param coord: 0-based coordinate index
    :param sign: -1 shoots towards negative coordinate values, +1 towards
        positive ones
    :returns: the record, or None when the ray misses the cone
    :raises SingularSystem: the ray runs inside the cone's hyperplane
    """
    if sign not in (-1, 1):
        raise ValueError("sign must be -1 or +1")
    system = cone_system(cone, lineality)
    if system.normal is None:
        raise WrongCodimension()
    scale = w.denominator()
    point = integral_point(w)
    hit = axis_crossing(system, point, _dot(system.normal, point), coord, sign)
    if hit is None:
        return None
    return IntersectionRecord(
        cone_id=cone_id,
        coord=coord,
        param=hit[0] / scale,
        boundary_hit=hit[1],
        sign=sign,
    )


def containing_cones(T: TropicalCollection, p: ExactVector | Sequence) -> list[int]:
    point = integral_point(p)
    return [
        cone_id
        for cone_id, cone in enumerate(T.cones)
        if system_membership(cone_system(cone, T.lineality), point)[0]
    ]


def in_any_cone(T: TropicalCollection, p: ExactVector | Sequence) -> Optional[int]:
    point = integral_point(p)
    for cone_id, cone in enumerate(T.cones):
        if system_membership(cone_system(cone, T.lineality), point)[0]:
            return cone_id
    return None


def segment_crosses(
    T: TropicalCollection, a: ExactVector | Sequence, b: ExactVector | Sequence
) -> bool:
    """
    Whether the closed segment ``[a, b]`` meets any cone of ``T``.

    A segment running inside a cone's hyperplane counts as crossing.
    """
    a = ExactVector(tuple(a))
    b = ExactVector(tuple(b))
    scale = a.denominator() * b.denominator()
    start = tuple(int(x * scale) for x in a)
    direction = tuple(int((y - x) * scale) for x, y in zip(a, b))
    for cone in T.cones:
        try:
            hit = line_crossing(cone, T.lineality, start, direction)
        except SingularSystem:
            LOGGER.debug("Segment runs inside the hyperplane of %r", cone)
            return True
        if hit is not None and 0 <= hit[0] <= 1:
            return True
    return False


def collection_normals(T: TropicalCollection) -> set[IntVector]:
    """Primitive cone normals up to sign: the edge directions of the polytope."""
    return {hyperplane_normal(cone, T.lineality) for cone in T.cones}


def _lineality_projector(lineality: Sequence[ExactVector]):
    """Orthogonal projection onto the complement of the lineality span."""
    if not lineality:
        return lambda vector: tuple(vector)
    basis = [vector.entries for vector in lineality]
    gram = [[sum(x * y for x, y in zip(u, v)) for v in basis] for u in basis]

    def project(vector):
        vector = tuple(Fraction(x) for x in vector)
        rhs = [sum(x * y for x, y in zip(u, vector)) for u in basis]
        coefficients = solve_rows(gram, rhs)
        return tuple(
            x - sum(c * u[k] for c, u in zip(coefficients, basis))
            for k, x in enumerate(vector)
        )

    return project


def reduce_rays(
    rays: Iterable[ExactVector | Sequence], lineality: Sequence[ExactVector]
) -> list[ExactVector]:
    """
    Canonical generators: projected off the lineality space, primitive,
    deduplicated and sorted. Rays inside the lineality space vanish.
    """
    project = _lineality_projector(lineality)
    reduced = set()
    for ray in rays:
        try:
            reduced.add(primitive_ints(project(tuple(ray))))
        except ZeroVector:
            continue
    return [ExactVector(ray) for ray in sorted(reduced)]


def canonical_lineality(
    lineality: Iterable[ExactVector | Sequence],
) -> tuple[ExactVector, ...]:
    vectors = [sign_normalized(primitive_ints(tuple(v))) for v in lineality if any(v)]
    if rank_rows(vectors) < len(vectors):
        raise DimensionMismatch("lineality vectors are linearly dependent")
    return tuple(ExactVector(v) for v in vectors)


def canonicalize(T: TropicalCollection) -> TropicalCollection:
    """
    Sort and make primitive every cone's rays, merge identical cones.

    :raises MultiplicityConflict: two copies of a cone disagree on weight
    """
    lineality = canonical_lineality(T.lineality)
    merged: dict[tuple, WeightedCone] = {}
    for cone in T.cones:
        rays = tuple(reduce_rays(cone.rays, lineality))
        candidate = WeightedCone(
            rays=rays, multiplicity=cone.multiplicity, ambient_dim=T.ambient_dim
        )
        key = candidate.key
        existing = merged.get(key)
        if existing is None:
            merged[key] = candidate
        elif existing.multiplicity != candidate.multiplicity:
            raise MultiplicityConflict(
                f"cone {key} carries multiplicities {existing.multiplicity}"
                f" and {candidate.multiplicity}"
            )
    cones = tuple(merged[key] for key in sorted(merged))
    LOGGER.debug("Canonicalized %d cones into %d", len(T.cones), len(cones))
    return TropicalCollection(T.ambient_dim, lineality, cones)


def cone_dimension(
    rays: Sequence[ExactVector], lineality: Sequence[ExactVector]
) -> int:
    return rank_rows([tuple(v) for v in rays] + [tuple(v) for v in lineality])


def triangulate_cone(
    rays: Sequence[ExactVector | Sequence],
    lineality: Sequence[ExactVector],
    multiplicity: int,
    ambient_dim: int,
) -> list[WeightedCone]:
    """
    Placing triangulation of a pointed cone (modulo lineality) over its
    lexicographically sorted rays. Every piece keeps the multiplicity.
    """
    reduced = [ray.to_ints() for ray in reduce_rays(rays, lineality)]
    dim = rank_rows(reduced)
    if len(reduced) == dim:
        return [_cone(reduced, multiplicity, ambient_dim)]
    coords = pivot_columns(reduced)
    local = [tuple(ray[c] for c in coords) for ray in reduced]
    initial: list[int] = []
    for index in range(len(local)):
        if rank_rows([local[i] for i in initial] + [local[index]]) > len(initial):
            initial.append(index)
        if len(initial) == dim:
            break
    pieces = [frozenset(initial)]
    for index in range(len(local)):
        if index in initial:
            continue
        pieces.extend(_visible_pieces(pieces, local, index, dim))
    LOGGER.debug("Triangulated a %d-ray cone into %d pieces", len(reduced), len(pieces))
    return [
        _cone([reduced[i] for i in sorted(piece)], multiplicity, ambient_dim)
        for piece in sorted(pieces, key=sorted)
    ]


def _visible_pieces(
    pieces: list[frozenset], local: list[IntVector], index: int, dim: int
) -> list[frozenset]:
    facets = Counter(piece - {x} for piece in pieces for x in piece)
    added = []
    for piece in pieces:
        for opposite in piece:
            facet = piece - {opposite}
            if facets[facet] != 1:
                continue
            if facet:
                normal = kernel_rows([local[i] for i in facet], dim)[0]
            else:
                normal = (1,)
            if _dot(normal, local[opposite]) < 0:
                normal = tuple(-x for x in normal)
            if _dot(normal, local[index]) < 0:
                added.append(facet | {index})
    return added


def _cone(
    rays: Sequence[IntVector], multiplicity: int, ambient_dim: int
) -> WeightedCone:
    return WeightedCone(
        rays=tuple(ExactVector(ray) for ray in sorted(rays)),
        multiplicity=multiplicity,
        ambient_dim=ambient_dim,
    )


def normalize_collection(T: TropicalCollection) -> TropicalCollection:
    """
    Triangulate every non-simplicial cone, then canonicalize, so that
    copies of a cone listed under different generators are merged.

    :raises MultiplicityConflict: two copies of a cone disagree on weight
    """
    lineality = canonical_lineality(T.lineality)
    cones: list[WeightedCone] = []
    for cone in T.cones:
        if len(cone.rays) > cone_dimension(cone.rays, lineality) - len(lineality):
            cones.extend(
                triangulate_cone(cone.rays, lineality, cone.multiplicity, T.ambient_dim)
            )
        else:
            cones.append(cone)
    return canonicalize(TropicalCollection(T.ambient_dim, lineality, tuple(cones)))


def is_hypersurface(T: TropicalCollection) -> bool:
    return all(
        cone_dimension(cone.rays, T.lineality) == T.ambient_dim - 1 for cone in T.cones
    )


def check_balancing_curve(T: TropicalCollection) -> bool:
    """
    Balancing of a one-dimensional weighted fan modulo lineality.

    :raises NotACurve: some cone has other than one ray
    """
    total = [Fraction(0)] * T.ambient_dim
    for cone in T.cones:
        if len(cone.rays) != 1:
            raise NotACurve(f"cone with {len(cone.rays)} rays")
        for k, x in enumerate(cone.rays[0]):
            total[k] += cone.multiplicity * x
    if not any(total):
        return True
    basis = [tuple(v) for v in T.lineality]
    return rank_rows(basis + [tuple(total)]) == len(basis)
