"""
Loading externally computed tropical hypersurfaces.

Large collections are shipped as one cone per orbit of a coordinate symmetry
group. Expansion recovers the full cone list; the checks below compare what
was recovered against the declared orbit sizes and weights, and run the
rank stage of the facet certificate on candidate facet directions.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ska_tropical_newton.common.custom_exceptions import DimensionMismatch
from ska_tropical_newton.domain.exact_models import ExactVector
from ska_tropical_newton.domain.fan_models import TropicalCollection, WeightedCone
from ska_tropical_newton.domain.symmetry_models import CoordSymmetryGroup
from ska_tropical_newton.services.fan_core import canonical_lineality, canonicalize
from ska_tropical_newton.services.newton_recon.facet_certificate import normal_rank
from ska_tropical_newton.services.symmetry import orbit_cones

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class IngestionReport:
    """
    Outcome of loading an orbit-compressed collection.

    :param orbit_sizes: number of distinct cones in each expanded orbit
    :param expected_orbit_sizes: the sizes shipped with the file, if any
    :param multiplicities: the distinct weights present, sorted
    :param allowed_multiplicities: the weights the collection may carry
    :param direction_ranks: per candidate facet direction, the rank of the
        normals of the cones containing it
    """

    n_representatives: int
    n_cones: int
    orbit_sizes: tuple[int, ...]
    multiplicities: tuple[int, ...]
    allowed_multiplicities: Optional[tuple[int, ...]] = None
    expected_orbit_sizes: Optional[tuple[int, ...]] = None
    direction_ranks: tuple[int, ...] = ()
    facet_rank: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def orbit_sizes_match(self) -> Optional[bool]:
        if self.expected_orbit_sizes is None:
            return None
        return self.expected_orbit_sizes == self.orbit_sizes

    @property
    def multiplicities_in_range(self) -> bool:
        if self.allowed_multiplicities is None:
            return all(m > 0 for m in self.multiplicities)
        return set(self.multiplicities) <= set(self.allowed_multiplicities)

    @property
    def certified_directions(self) -> tuple[bool, ...]:
        return tuple(rank >= self.facet_rank for rank in self.direction_ranks)


def expand_orbits(
    group: CoordSymmetryGroup,
    representatives: Sequence[WeightedCone],
    lineality: Sequence[ExactVector],
    ambient_dim: int,
) -> tuple[TropicalCollection, tuple[int, ...]]:
    """
    The full collection from one cone per orbit.

    :returns: the canonical collection and the size of every orbit
    :raises DimensionMismatch: the group does not act on the ambient space
    :raises MultiplicityConflict: two orbits share a cone with different weights
    """
    if group.n_coords != ambient_dim:
        raise DimensionMismatch(
            f"{group.name} acts on {group.n_coords} coordinates,"
            f" the collection lives in {ambient_dim}"
        )
    lineality = canonical_lineality(lineality)
    cones: list[WeightedCone] = []
    sizes = []
    for representative in representatives:
        images = orbit_cones(group, representative, lineality)
        sizes.append(len(images))
        cones.extend(images)
    T = canonicalize(TropicalCollection(ambient_dim, lineality, tuple(cones)))
    if len(T.cones) != len(cones):
        LOGGER.warning(
            "Orbits overlap: %d cones expanded, %d distinct", len(cones), len(T.cones)
        )
    LOGGER.info(
        "Expanded %d orbit representatives into %d cones",
        len(representatives),
        len(T.cones),
    )
    return T, tuple(sizes)


def ingest(
    group: CoordSymmetryGroup,
    representatives: Sequence[WeightedCone],
    lineality: Sequence[ExactVector],
    ambient_dim: int,
    expected_orbit_sizes: Optional[Iterable[int]] = None,
    allowed_multiplicities: Optional[Iterable[int]] = None,
    directions: Iterable[ExactVector] = (),
) -> tuple[TropicalCollection, IngestionReport]:
    """Expand an orbit-compressed collection and run the ingestion checks."""
    directions = tuple(directions)
    T, sizes = expand_orbits(group, representatives, lineality, ambient_dim)
    ranks = tuple(normal_rank(T, direction) for direction in directions)
    report = IngestionReport(
        n_representatives=len(representatives),
        n_cones=len(T.cones),
        orbit_sizes=sizes,
        multiplicities=tuple(sorted(set(T.multiplicities()))),
        allowed_multiplicities=(
            None if allowed_multiplicities is None else tuple(allowed_multiplicities)
        ),
        expected_orbit_sizes=(
            None if expected_orbit_sizes is None else tuple(expected_orbit_sizes)
        ),
        direction_ranks=ranks,
        facet_rank=T.ambient_dim - T.lineality_dim - 1,
    )
    if report.orbit_sizes_match is False:
        report.notes.append("orbit sizes differ from the declared ones")
    if not report.multiplicities_in_range:
        report.notes.append(f"multiplicities {report.multiplicities} out of range")
    for direction, certified in zip(directions, report.certified_directions):
        if not certified:
            report.notes.append(f"{direction} is not a facet direction")
    for note in report.notes:
        LOGGER.warning("Ingestion check: %s", note)
    return T, report
