"""
Growing a vertex set until it is the whole Newton polytope.

Vertices are found by shooting and walking and closed under the symmetry
group. The polytope spanned so far is complete once every facet of every
tangent cone at a known vertex is certified to be a facet of the Newton
polytope; an uncertified facet always points at an unknown vertex, which is
shot and explored before starting over.
"""

import logging
from collections import deque
from dataclasses import replace
from typing import Iterable, Optional, Sequence

from ska_tropical_newton.common.constant import MAX_COMPLETION_ROUNDS
from ska_tropical_newton.common.custom_exceptions import (
    DimensionMismatch,
    ExhaustedCoordinates,
    GenericityViolation,
    NoProgress,
    ObjectiveInCone,
)
from ska_tropical_newton.common.utils import perturbation_vector
from ska_tropical_newton.domain.exact_models import ExactMatrix, ExactVector
from ska_tropical_newton.domain.fan_models import TropicalCollection
from ska_tropical_newton.domain.polytope_models import (
    FacetInequality,
    PolytopeLedger,
    VertexWitness,
    WitnessSource,
)
from ska_tropical_newton.domain.symmetry_models import CoordSymmetryGroup
from ska_tropical_newton.services.exact_linalg import primitive_ints, sign_normalized
from ska_tropical_newton.services.fan_core import collection_normals
from ska_tropical_newton.services.hull_oracle import dual_description
from ska_tropical_newton.services.newton_recon.facet_certificate import (
    FacetCheck,
    check_facet,
    find_chamber_vector,
)
from ska_tropical_newton.services.newton_recon.ray_shooting import shoot_generic
from ska_tropical_newton.services.newton_recon.walking import walk
from ska_tropical_newton.services.symmetry import (
    act,
    canonical_rep,
    group_elements,
)

LOGGER = logging.getLogger(__name__)


def admit(
    ledger: PolytopeLedger, witness: VertexWitness, group: CoordSymmetryGroup
) -> bool:
    """
    Add a vertex and its orbit. Images are witnessed by the image of the
    objective, which is valid for a collection invariant under the group.

    :returns: whether the vertex was new
    """
    if witness.vertex in ledger:
        return False
    ledger.add_vertex(witness)
    for g in group_elements(group):
        ledger.add_vertex(
            VertexWitness(
                vertex=ExactVector(act(g, witness.vertex.entries)),
                objective=ExactVector(act(g, witness.objective.entries)),
                source=WitnessSource.ORBIT,
            )
        )
    return True


def explore(
    T: TropicalCollection,
    witnesses: Iterable[VertexWitness],
    group: CoordSymmetryGroup,
    ledger: Optional[PolytopeLedger] = None,
    seed: int = 0,
    parallelism: int = 1,
) -> PolytopeLedger:
    """
    Shoot from every witness, walk in both directions along every
    coordinate, and repeat from each new vertex until nothing new appears.
    """
    ledger = ledger if ledger is not None else PolytopeLedger(group=group)
    queue = deque()
    for witness in witnesses:
        admit(ledger, witness, group)
        queue.append(witness)
    explored = set()
    while queue:
        witness = queue.popleft()
        key = witness.vertex.to_ints()
        if key in explored:
            continue
        explored.add(key)
        shot = shoot_generic(
            T, witness.objective, seed, (-1, 1), parallelism, source=witness.source
        )
        if shot.witness.vertex != witness.vertex:
            LOGGER.warning(
                "Objective %s selects %s, not %s",
                witness.objective,
                shot.witness.vertex,
                witness.vertex,
            )
            if admit(ledger, shot.witness, group):
                queue.append(shot.witness)
        for sign in (-1, 1):
            found = walk(
                T, shot.witness.objective, shot.witness.vertex, shot.records, sign
            )
            for step in found:
                if admit(ledger, step, group):
                    queue.append(step)
    LOGGER.info("Exploration done: %d vertices known", len(ledger.vertices))
    return ledger


def _edge_key(difference: Sequence) -> tuple[int, ...]:
    return sign_normalized(primitive_ints(difference))


def tangent_cone(
    ledger: PolytopeLedger,
    vertex: ExactVector,
    lineality: Sequence[ExactVector] = (),
) -> list[FacetInequality]:
    """
    Facets of the cone at ``vertex`` over the known vertices reached along a
    known edge direction.

    Known vertices outside the cone are added as further rays until every
    known vertex satisfies every inequality.
    """
    rays = []
    for key in sorted(ledger.vertices):
        other = ExactVector(key)
        if other == vertex:
            continue
        difference = other - vertex
        if _edge_key(difference.entries) in ledger.edge_directions:
            rays.append(difference)
    known = ledger.sorted_vertices()
    while True:
        facets = dual_description(rays, vertex, lineality)
        outside = [
            u for u in known if u != vertex and not all(f.holds(u) for f in facets)
        ]
        if not outside:
            return facets
        LOGGER.warning(
            "Widening the tangent cone at %s by %d vertices", vertex, len(outside)
        )
        rays.extend(u - vertex for u in outside)


def representatives(
    ledger: PolytopeLedger, group: CoordSymmetryGroup
) -> list[ExactVector]:
    """Canonical representatives of the known vertex orbits, in lex order."""
    return sorted({canonical_rep(group, v) for v in ledger.sorted_vertices()})


def facet_orbit(
    group: CoordSymmetryGroup, facets: Iterable[FacetInequality]
) -> list[FacetInequality]:
    images = {}
    for facet in facets:
        for g in group_elements(group):
            image = replace(facet, normal=ExactVector(act(g, facet.normal.entries)))
            images.setdefault(image.key, image)
    return [images[key] for key in sorted(images)]


def _repair_objectives(T: TropicalCollection, normal: ExactVector):
    n = T.ambient_dim
    seen = set()
    for sign in (-1, 1):
        for shift in range(n):
            order = [(shift + k) % n for k in range(n)]
            try:
                chamber = find_chamber_vector(T, normal, sign, order)
            except ExhaustedCoordinates:
                continue
            if chamber not in seen:
                seen.add(chamber)
                yield chamber


def repair(
    T: TropicalCollection,
    ledger: PolytopeLedger,
    facet: FacetInequality,
    check: FacetCheck,
    seed: int = 0,
    parallelism: int = 1,
) -> Optional[VertexWitness]:
    """
    A vertex not yet in the ledger, searched for near an uncertified facet
    normal. The vertex the failed certificate shot comes first.
    """
    if check.witness is not None and check.witness.vertex not in ledger:
        return check.witness
    for attempt, chamber in enumerate(_repair_objectives(T, facet.normal)):
        try:
            shot = shoot_generic(
                T,
                chamber,
                seed + attempt,
                parallelism=parallelism,
                source=WitnessSource.FACET_REPAIR,
            )
        except (GenericityViolation, ObjectiveInCone) as err:
            LOGGER.debug("Repair objective %s failed: %s", chamber, err.message)
            continue
        if shot.witness.vertex not in ledger:
            return shot.witness
    return None


def auto_seed(
    T: TropicalCollection, seed: int = 0, parallelism: int = 1
) -> VertexWitness:
    """A first vertex, shot from a seeded pseudo-random objective."""
    objective = ExactVector(perturbation_vector(seed, T.ambient_dim, 0))
    return shoot_generic(T, objective, seed, parallelism=parallelism).witness


def complete_polytope(
    T: TropicalCollection,
    seeds: Sequence[VertexWitness],
    group: CoordSymmetryGroup,
    d: Optional[int] = None,
    seed: int = 0,
    parallelism: int = 1,
    max_rounds: int = MAX_COMPLETION_ROUNDS,
    ledger: Optional[PolytopeLedger] = None,
) -> tuple[list[ExactVector], list[FacetInequality]]:
    """
    All vertices and facets of the Newton polytope of ``T``.

    Tangent cones are examined only at orbit representatives, in
    lexicographic order, and certified facets are closed under the group;
    ``T`` must therefore be invariant under ``group``. Equations of a
    tangent cone that the lineality space does not imply are examined as
    pairs of opposite inequalities.

    :param seeds: vertices to start from, each re-shot from its objective
    :param d: dimension of the lineality space, by default the collection's
    :param ledger: filled in place when given; its vertices act as seeds
    :raises NoProgress: a pass certified nothing new and found no vertex
    """
    ledger = ledger if ledger is not None else PolytopeLedger(group=group)
    ledger.edge_directions |= collection_normals(T)
    d = T.lineality_dim if d is None else d
    starts = list(seeds) + [
        replace(witness, source=WitnessSource.LEDGER)
        for witness in ledger.vertices.values()
    ]
    if not starts:
        raise ValueError("completion needs at least one seed vertex")
    explore(T, starts, group, ledger, seed, parallelism)

    certified: dict[tuple, FacetInequality] = {}
    for round_index in range(max_rounds):
        found = None
        stuck = None
        for vertex in representatives(ledger, group):
            for facet in tangent_cone(ledger, vertex, T.lineality):
                if facet.key in certified:
                    continue
                check = check_facet(
                    T, facet.normal, facet.bound, d, seed, parallelism
                )
                if check.certified:
                    certified[facet.key] = replace(facet, certified=True)
                    LOGGER.info("Certified facet %s <= %s", facet.normal, facet.bound)
                    continue
                found = repair(T, ledger, facet, check, seed, parallelism)
                if found is not None:
                    break
                stuck = stuck or (vertex, facet.normal)
            if found is not None:
                break
        if found is None:
            if stuck is not None:
                raise NoProgress(*stuck)
            break
        LOGGER.info(
            "Round %d: new vertex %s, restarting", round_index + 1, found.vertex
        )
        explore(T, [found], group, ledger, seed, parallelism)
    else:
        raise NoProgress(message=f"no convergence within {max_rounds} rounds")

    facets = facet_orbit(group, certified.values())
    for facet in facets:
        ledger.add_facet(facet)
    vertices = ledger.sorted_vertices()
    LOGGER.info(
        "Completed polytope: %d vertices, %d facets", len(vertices), len(facets)
    )
    return vertices, facets


def multidegree(grading: ExactMatrix, vertex: ExactVector) -> ExactVector:
    """
    ``grading · vertex``; the same for every vertex of a polytope homogeneous
    for the grading.
    """
    if grading.cols != vertex.dim:
        raise DimensionMismatch(
            f"grading has {grading.cols} columns, vertex has dim {vertex.dim}"
        )
    return grading.apply(vertex.entries)


def parity_inequalities(m: int, bound: int) -> list[FacetInequality]:
    """
    ``sum x_c >= bound`` over the cube coordinates ``c`` of even weight, and
    the same over odd weight, as ``normal · x <= -bound``.
    """
    size = 1 << m
    inequalities = []
    for parity in (0, 1):
        normal = tuple(
            -1 if bin(index).count("1") % 2 == parity else 0 for index in range(size)
        )
        inequalities.append(FacetInequality(ExactVector(normal), -bound))
    return inequalities
