"""
Desk-scale exact convex geometry.

Newton polytopes of explicit exponent sets, their weighted codimension one
normal skeletons, and the V-to-H conversion of tangent cones. The hull is
computed by double description on the homogenized point set, so every
pivot stays an exact integer.
"""

import logging
from itertools import combinations
from math import gcd
from typing import Sequence

from ska_tropical_newton.common.constant import HULL_MAX_DIM, HULL_MAX_POINTS
from ska_tropical_newton.common.custom_exceptions import (
    DimensionMismatch,
    ScaleExceeded,
)
from ska_tropical_newton.domain.exact_models import ExactVector
from ska_tropical_newton.domain.fan_models import TropicalCollection, WeightedCone
from ska_tropical_newton.domain.polytope_models import (
    ExponentSet,
    FacetInequality,
    HullResult,
)
from ska_tropical_newton.services.double_description import cone_facets
from ska_tropical_newton.services.exact_linalg import (
    independent_rows,
    kernel_rows,
    pivot_columns,
    primitive_ints,
    project_onto_span,
    rank_rows,
)
from ska_tropical_newton.services.fan_core import canonicalize, triangulate_cone

LOGGER = logging.getLogger(__name__)

IntVector = tuple[int, ...]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _as_ints(vectors) -> list[IntVector]:
    return [
        v.to_ints() if isinstance(v, ExactVector) else tuple(int(x) for x in v)
        for v in vectors
    ]


def _span_basis(vectors: list[IntVector]) -> list[IntVector]:
    return [vectors[i] for i in independent_rows(vectors)]


def _normal_in_span(
    local_normal: Sequence[int], coords: Sequence[int], n: int, basis: list[IntVector]
) -> IntVector:
    """Embed a normal given on ``coords`` and project it onto ``span(basis)``."""
    embedded = [0] * n
    for value, c in zip(local_normal, coords):
        embedded[c] = value
    return primitive_ints(project_onto_span(embedded, basis))


def convex_hull(E: ExponentSet) -> HullResult:
    """
    Vertices, facets and edges of ``conv(E)``.

    Facet normals lie in the direction space of the affine span and are
    primitive, so two hulls of the same polytope compare equal facet by
    facet. ``lineality`` spans the orthogonal complement of that space.

    :raises ScaleExceeded: beyond the desk-scale limits
    """
    if E.dim > HULL_MAX_DIM or len(E.points) > HULL_MAX_POINTS:
        raise ScaleExceeded(
            f"hull limited to {HULL_MAX_POINTS} points in dimension {HULL_MAX_DIM};"
            f" got {len(E.points)} in {E.dim}"
        )
    n = E.dim
    points = sorted(set(_as_ints(E.points)))
    origin = points[0]
    differences = [tuple(x - y for x, y in zip(p, origin)) for p in points]
    directions = [d for d in differences if any(d)]
    lineality = tuple(ExactVector(v) for v in kernel_rows(directions, n))
    if not directions:
        return HullResult(
            vertices=(ExactVector(origin),),
            facets=(),
            edges=(),
            dim=0,
            lineality=lineality,
            points=tuple(ExactVector(p) for p in points),
        )
    dim = rank_rows(directions)
    coords = pivot_columns(directions)
    basis = _span_basis(directions)
    lifted = [(1,) + tuple(p[c] for c in coords) for p in points]

    facets = []
    for y in cone_facets(lifted, list(range(dim + 1))):
        normal = _normal_in_span([-x for x in y[1:]], coords, n, basis)
        bound = max(_dot(normal, p) for p in points)
        facets.append(FacetInequality(ExactVector(normal), bound))
    facets.sort(key=lambda f: f.key)

    normals = [f.normal.to_ints() for f in facets]
    tight = {
        p: frozenset(
            k for k, f in enumerate(facets) if _dot(normals[k], p) == f.bound
        )
        for p in points
    }
    vertices = [
        p for p in points if rank_rows([normals[k] for k in tight[p]]) == dim
    ]
    edges = []
    for a, b in combinations(range(len(vertices)), 2):
        common = tight[vertices[a]] & tight[vertices[b]]
        if rank_rows([normals[k] for k in common]) == dim - 1:
            edges.append((a, b))
    LOGGER.debug(
        "Hull of %d points: %d vertices, %d edges, %d facets",
        len(points),
        len(vertices),
        len(edges),
        len(facets),
    )
    return HullResult(
        vertices=tuple(ExactVector(v) for v in vertices),
        facets=tuple(facets),
        edges=tuple(edges),
        dim=dim,
        lineality=lineality,
        points=tuple(ExactVector(p) for p in points),
    )


def lattice_length(u: ExactVector, v: ExactVector) -> int:
    """Number of lattice steps on the segment ``[u, v]`` (0 when equal)."""
    if u.dim != v.dim:
        raise DimensionMismatch(f"points of dim {u.dim} and {v.dim}")
    return gcd(*(int(a - b) for a, b in zip(u, v)))


def weighted_normal_skeleton(P: HullResult) -> TropicalCollection:
    """
    The tropical hypersurface of any polynomial with Newton polytope ``P``.

    One codimension one cone per edge: the cone over the normals of the
    facets containing the edge, triangulated when it has more rays than its
    dimension, weighted by the lattice length of the edge.
    """
    n = P.vertices[0].dim
    facet_normals = [f.normal.to_ints() for f in P.facets]
    tight = [
        {k for k, f in enumerate(P.facets) if f.is_tight(v)} for v in P.vertices
    ]
    cones: list[WeightedCone] = []
    for a, b in P.edges:
        multiplicity = lattice_length(P.vertices[a], P.vertices[b])
        rays = [facet_normals[k] for k in sorted(tight[a] & tight[b])]
        if len(rays) > P.dim - 1:
            cones.extend(triangulate_cone(rays, P.lineality, multiplicity, n))
        else:
            cones.append(
                WeightedCone(
                    rays=tuple(ExactVector(r) for r in sorted(rays)),
                    multiplicity=multiplicity,
                    ambient_dim=n,
                )
            )
    return canonicalize(TropicalCollection(n, P.lineality, tuple(cones)))


def dual_description(
    rays: Sequence[ExactVector],
    apex: ExactVector,
    lineality: Sequence[ExactVector] = (),
) -> list[FacetInequality]:
    """
    H-description of ``apex + cone(rays)`` as inequalities ``normal·x <= bound``.

    Facet normals are irredundant, primitive and lie in the span of the rays.
    Every linear equation of the cone that is not implied by ``lineality``
    (directions known to be orthogonal to everything) is returned as a pair
    of opposite inequalities.

    :raises ScaleExceeded: beyond the double description limits
    """
    n = apex.dim
    generators = [primitive_ints(r) for r in _as_ints(rays) if any(r)]
    apex_ints = apex.to_ints()
    inequalities = []

    known = _as_ints(lineality)
    for u in kernel_rows(generators + known, n):
        bound = _dot(u, apex_ints)
        inequalities.append(FacetInequality(ExactVector(u), bound))
        inequalities.append(FacetInequality(-ExactVector(u), -bound))

    if generators:
        dim = rank_rows(generators)
        coords = pivot_columns(generators)
        basis = _span_basis(generators)
        for y in cone_facets(generators, coords):
            normal = _normal_in_span([-x for x in y], coords, n, basis)
            bound = _dot(normal, apex_ints)
            inequalities.append(FacetInequality(ExactVector(normal), bound))
        LOGGER.debug(
            "Dual description: %d rays in a %d-dim span", len(generators), dim
        )
    return sorted(inequalities, key=lambda f: f.key)


def argmax_vertex(E: ExponentSet, w: ExactVector) -> ExactVector:
    """The point of ``E`` maximizing ``w``, ties broken lexicographically."""
    if w.dim != E.dim:
        raise DimensionMismatch(f"objective of dim {w.dim} for {E.dim} variables")
    return max(E.points, key=lambda p: (w.dot(p), p.entries))


def orthant_shift(points: Sequence[ExactVector]) -> ExactVector:
    """The coordinatewise minimum over ``points``."""
    return ExactVector(tuple(min(column) for column in zip(*points)))


def orthant_normalize(points: Sequence[ExactVector]) -> list[ExactVector]:
    """Translate ``points`` so that each coordinate has minimum 0."""
    shift = orthant_shift(points)
    return [p - shift for p in points]


def oracle_vertex(E: ExponentSet, w: ExactVector) -> ExactVector:
    """The vertex ray shooting must find at ``w``, in its normalization."""
    return argmax_vertex(E, w) - orthant_shift(E.points)
