from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ska_tropical_newton.domain.exact_models import ExactVector
from ska_tropical_newton.domain.symmetry_models import CoordSymmetryGroup


class WitnessSource(str, Enum):
    SHOOT = "shoot"
    WALK = "walk"
    FACET_REPAIR = "facet_repair"
    ORBIT = "orbit"
    LEDGER = "ledger"


@dataclass(frozen=True)
class VertexWitness:
    """A vertex together with an objective vector selecting it (max convention)."""

    vertex: ExactVector
    objective: ExactVector
    source: WitnessSource = WitnessSource.SHOOT


@dataclass(frozen=True)
class FacetInequality:
    """The inequality ``normal · x <= bound``."""

    normal: ExactVector
    bound: int
    certified: bool = False

    @property
    def key(self) -> tuple[tuple[int, ...], int]:
        return self.normal.to_ints(), self.bound

    def value(self, point: ExactVector):
        return self.normal.dot(point)

    def is_tight(self, point: ExactVector) -> bool:
        return self.normal.dot(point) == self.bound

    def holds(self, point: ExactVector) -> bool:
        return self.normal.dot(point) <= self.bound


@dataclass
class PolytopeLedger:
    """
    The evolving reconstruction: known vertices with their witnesses,
    certified facets and the edge directions read off the cone normals.
    """

    group: CoordSymmetryGroup
    vertices: dict[tuple[int, ...], VertexWitness] = field(default_factory=dict)
    facets: dict[tuple[int, ...], FacetInequality] = field(default_factory=dict)
    edge_directions: set[tuple[int, ...]] = field(default_factory=set)

    def __contains__(self, vertex: ExactVector) -> bool:
        return vertex.to_ints() in self.vertices

    def add_vertex(self, witness: VertexWitness) -> bool:
        key = witness.vertex.to_ints()
        if key in self.vertices:
            return False
        self.vertices[key] = witness
        return True

    def add_facet(self, facet: FacetInequality) -> bool:
        key = facet.normal.to_ints()
        if key in self.facets:
            return False
        self.facets[key] = facet
        return True

    def sorted_vertices(self) -> list[ExactVector]:
        return [ExactVector(key) for key in sorted(self.vertices)]

    def sorted_facets(self) -> list[FacetInequality]:
        return [self.facets[key] for key in sorted(self.facets)]


@dataclass(frozen=True)
class ExponentSet:
    """Exponent vectors of the monomials of a polynomial."""

    points: tuple[ExactVector, ...]
    dim: int

    def __post_init__(self):
        if not self.points:
            raise ValueError("an exponent set needs at least one monomial")
        for point in self.points:
            if point.dim != self.dim or not point.is_integral:
                raise ValueError(f"{point} is not an integral {self.dim}-vector")
            if any(x < 0 for x in point):
                raise ValueError(f"{point} has a negative exponent")


@dataclass(frozen=True)
class HullResult:
    """
    Exact V- and H-description of a lattice polytope.

    ``edges`` index into ``vertices``; ``lineality`` is a primitive basis of
    the orthogonal complement of the affine span; ``dim`` is the dimension
    of the polytope.
    """

    vertices: tuple[ExactVector, ...]
    facets: tuple[FacetInequality, ...]
    edges: tuple[tuple[int, int], ...]
    dim: int
    lineality: tuple[ExactVector, ...] = ()
    points: Optional[tuple[ExactVector, ...]] = None

    @property
    def f_vector(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.facets)
