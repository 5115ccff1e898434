from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Optional

from ska_tropical_newton.domain.exact_models import ExactMatrix, ExactVector


@dataclass(eq=False)
class WeightedCone:
    """
    A cone of a tropical hypersurface: ``cone(rays) + lineality``.

    The lineality space is shared by the whole collection and is not stored
    per cone. ``multiplicity`` 0 marks a cone whose weight has not been
    assigned yet (fresh Minkowski images).

    :param rays: primitive generators modulo the lineality space
    :param multiplicity: the weight of the cone
    :param ambient_dim: dimension of the ambient space
    :param normal: primitive normal, first nonzero entry positive, once known
    """

    rays: tuple[ExactVector, ...]
    multiplicity: int
    ambient_dim: int
    normal: Optional[ExactVector] = None
    # Write-once cache of the exact factorization; see fan_core.cone_system.
    system: Optional[object] = field(default=None, init=False, repr=False)

    @property
    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(ray.to_ints() for ray in self.rays))

    def with_multiplicity(self, multiplicity: int) -> "WeightedCone":
        cone = replace(self, multiplicity=multiplicity)
        cone.system = self.system
        return cone

    def __repr__(self) -> str:
        rays = ",".join(str(ray) for ray in self.rays)
        return f"WeightedCone(rays=[{rays}], m={self.multiplicity})"


@dataclass(frozen=True)
class TropicalCollection:
    """
    A weighted tropical hypersurface as an unordered set of cones.

    No fan structure is assumed: cones may overlap, and two cones of the
    collection need not meet in a common face.
    """

    ambient_dim: int
    lineality: tuple[ExactVector, ...]
    cones: tuple[WeightedCone, ...]

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    def __len__(self) -> int:
        return len(self.cones)

    def __iter__(self) -> Iterator[WeightedCone]:
        return iter(self.cones)

    def multiplicities(self) -> list[int]:
        return [cone.multiplicity for cone in self.cones]


@dataclass(frozen=True)
class IntersectionRecord:
    """
    A transversal crossing of the ray ``w + sign·t·e_coord`` (``t > 0``)
    with the cone ``cone_id``. Coordinates are 0-based.
    """

    cone_id: int
    coord: int
    param: Fraction
    boundary_hit: bool = False
    sign: int = -1


@dataclass(frozen=True)
class MonomialMapSpec:
    """
    A monomial map ``x -> x^A`` with its generic degree and source lattice.

    :param matrix: the d x r exponent matrix ``A``
    :param delta: degree of the map onto its image
    :param source_lattice: basis columns of the source lineality lattice
    """

    matrix: ExactMatrix
    delta: int = 1
    source_lattice: Optional[ExactMatrix] = None

    def __post_init__(self):
        if self.delta < 1:
            raise ValueError("the map degree must be positive")

    @property
    def source_dim(self) -> int:
        return self.matrix.cols

    @property
    def target_dim(self) -> int:
        return self.matrix.rows
