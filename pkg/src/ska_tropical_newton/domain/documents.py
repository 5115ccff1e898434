"""
File documents: the JSON forms of fans, maps, groups, ledgers and polynomials.

Every integer is written as a decimal string and read back from either a
string or a JSON number, so no value is ever rounded through a double.
"""

from typing import Annotated, Any, Optional, Union

from annotated_types import Ge
from pydantic import Field, field_validator, model_validator

from ska_tropical_newton.common.codec import ExactInt, ExactRational, TNPObject
from ska_tropical_newton.domain.exact_models import ExactMatrix, ExactVector
from ska_tropical_newton.domain.fan_models import (
    IntersectionRecord,
    MonomialMapSpec,
    TropicalCollection,
    WeightedCone,
)
from ska_tropical_newton.domain.polytope_models import (
    ExponentSet,
    FacetInequality,
    PolytopeLedger,
    VertexWitness,
    WitnessSource,
)

IntRow = list[ExactInt]


def _vectors(rows: list[IntRow]) -> tuple[ExactVector, ...]:
    return tuple(ExactVector(tuple(row)) for row in rows)


def _rows(vectors) -> list[list[int]]:
    return [list(v.to_ints()) for v in vectors]


def check_row_lengths(ambient_dim: int, what: str, rows: list[IntRow]) -> None:
    """
    :raises ValueError: a row whose length is not ``ambient_dim``
    """
    for index, row in enumerate(rows):
        if len(row) != ambient_dim:
            raise ValueError(
                f"{what} {index} has {len(row)} entries, expected {ambient_dim}"
            )


def _check_fan_rows(ambient_dim, lineality, cones) -> None:
    check_row_lengths(ambient_dim, "lineality vector", lineality)
    for index, cone in enumerate(cones):
        check_row_lengths(ambient_dim, f"cone {index}: ray", cone.rays)


class ConeDocument(TNPObject):
    """
    :param rays: generators of the cone modulo the lineality space
    :param multiplicity: the weight; 0 while not yet assigned
    """

    rays: list[IntRow] = []
    multiplicity: Annotated[ExactInt, Ge(0)] = 1

    @field_validator("rays")
    @classmethod
    def _no_zero_rays(cls, rays: list[IntRow]) -> list[IntRow]:
        if any(not any(ray) for ray in rays):
            raise ValueError("a cone generator is the zero vector")
        return rays

    def to_cone(self, ambient_dim: int) -> WeightedCone:
        return WeightedCone(
            rays=_vectors(self.rays),
            multiplicity=self.multiplicity,
            ambient_dim=ambient_dim,
        )

    @classmethod
    def from_cone(cls, cone: WeightedCone) -> "ConeDocument":
        return cls(rays=_rows(cone.rays), multiplicity=cone.multiplicity)


class FanDocument(TNPObject):
    ambient_dim: Annotated[ExactInt, Ge(1)]
    lineality: list[IntRow] = []
    cones: list[ConeDocument] = []

    @model_validator(mode="after")
    def _rows_fit_the_ambient_space(self) -> "FanDocument":
        _check_fan_rows(self.ambient_dim, self.lineality, self.cones)
        return self

    def to_collection(self) -> TropicalCollection:
        return TropicalCollection(
            ambient_dim=self.ambient_dim,
            lineality=_vectors(self.lineality),
            cones=tuple(cone.to_cone(self.ambient_dim) for cone in self.cones),
        )

    @classmethod
    def from_collection(cls, T: TropicalCollection) -> "FanDocument":
        return cls(
            ambient_dim=T.ambient_dim,
            lineality=_rows(T.lineality),
            cones=[ConeDocument.from_cone(cone) for cone in T.cones],
        )


class GroupDocument(TNPObject):
    """
    A coordinate symmetry group: explicit generators in one-line notation,
    or the shorthand ``hyperoctahedral_cube: m`` for the symmetries of the
    m-cube acting on its 2^m vertices.
    """

    n_coords: Optional[Annotated[int, Ge(1)]] = None
    generators: list[list[int]] = []
    hyperoctahedral_cube: Optional[Annotated[int, Ge(1)]] = None
    trivial: Optional[bool] = None
    name: Optional[str] = None


class OrbitFanDocument(TNPObject):
    """A fan given by one cone per orbit of a symmetry group."""

    ambient_dim: Annotated[ExactInt, Ge(1)]
    lineality: list[IntRow] = []
    group: Union[GroupDocument, str]
    orbit_representatives: list[ConeDocument]
    # Orbit sizes declared alongside the representatives, if any.
    orbit_sizes: Optional[list[ExactInt]] = None

    @model_validator(mode="after")
    def _rows_fit_the_ambient_space(self) -> "OrbitFanDocument":
        _check_fan_rows(self.ambient_dim, self.lineality, self.orbit_representatives)
        return self


class MapDocument(TNPObject):
    """
    A monomial map ``x -> x^A``.

    :param matrix: the exponent matrix, one row per target coordinate
    :param delta: degree of the map onto its image
    :param source_lattice: basis of the source lineality lattice, as rows
    """

    matrix: list[IntRow] = Field(alias="A")
    delta: Annotated[ExactInt, Ge(1)] = 1
    source_lattice: Optional[list[IntRow]] = Field(default=None, alias="lambda")

    def to_spec(self) -> MonomialMapSpec:
        cols = len(self.matrix[0]) if self.matrix else 0
        lattice = None
        if self.source_lattice:
            lattice = ExactMatrix.from_columns(self.source_lattice, cols)
        return MonomialMapSpec(
            matrix=ExactMatrix.from_rows(self.matrix, cols),
            delta=self.delta,
            source_lattice=lattice,
        )


class VertexEntry(TNPObject):
    v: IntRow
    objective: IntRow
    source: Optional[WitnessSource] = None

    def to_witness(self) -> VertexWitness:
        return VertexWitness(
            vertex=ExactVector(tuple(self.v)),
            objective=ExactVector(tuple(self.objective)),
            source=self.source or WitnessSource.LEDGER,
        )

    @classmethod
    def from_witness(cls, witness: VertexWitness) -> "VertexEntry":
        return cls(
            v=list(witness.vertex.to_ints()),
            objective=list(witness.objective.scaled_to_integral()),
            source=witness.source,
        )


class FacetEntry(TNPObject):
    normal: IntRow
    bound: ExactInt
    certified: bool = False

    def to_facet(self) -> FacetInequality:
        return FacetInequality(
            normal=ExactVector(tuple(self.normal)),
            bound=self.bound,
            certified=self.certified,
        )

    @classmethod
    def from_facet(cls, facet: FacetInequality) -> "FacetEntry":
        return cls(
            normal=list(facet.normal.to_ints()),
            bound=facet.bound,
            certified=facet.certified,
        )


class LedgerDocument(TNPObject):
    """Known vertices with their objectives and the certified facets."""

    vertices: list[VertexEntry] = []
    facets: list[FacetEntry] = []
    group: Optional[str] = None

    def witnesses(self) -> list[VertexWitness]:
        return [entry.to_witness() for entry in self.vertices]

    @classmethod
    def from_ledger(cls, ledger: PolytopeLedger) -> "LedgerDocument":
        return cls(
            vertices=[
                VertexEntry.from_witness(ledger.vertices[key])
                for key in sorted(ledger.vertices)
            ],
            facets=[FacetEntry.from_facet(f) for f in ledger.sorted_facets()],
            group=ledger.group.name,
        )


class PolynomialDocument(TNPObject):
    """Exponent vectors of a polynomial; coefficients do not matter here."""

    n: Annotated[int, Ge(1)]
    monomials: list[list[Annotated[ExactInt, Ge(0)]]]

    def to_exponents(self) -> ExponentSet:
        return ExponentSet(points=_vectors(self.monomials), dim=self.n)


class MatrixDocument(TNPObject):
    rows: list[IntRow]

    def to_matrix(self) -> ExactMatrix:
        cols = len(self.rows[0]) if self.rows else 0
        return ExactMatrix.from_rows(self.rows, cols)


class VectorDocument(TNPObject):
    vertex: IntRow


class RecordEntry(TNPObject):
    cone_id: int
    coord: int
    param: ExactRational
    boundary_hit: bool = False
    sign: int = -1

    @classmethod
    def from_record(cls, record: IntersectionRecord) -> "RecordEntry":
        return cls(
            cone_id=record.cone_id,
            coord=record.coord,
            param=record.param,
            boundary_hit=record.boundary_hit,
            sign=record.sign,
        )


class ObjectiveFailure(TNPObject):
    objective: list[ExactRational]
    variant: str
    detail: str
    context: dict[str, Any] = {}


class ShootDocument(TNPObject):
    witnesses: list[VertexEntry] = []
    failures: list[ObjectiveFailure] = []


class WalkDocument(TNPObject):
    start: VertexEntry
    sign: int
    records: list[RecordEntry] = []
    witnesses: list[VertexEntry] = []


class CertifyDocument(TNPObject):
    normal: IntRow
    bound: ExactInt
    rank: int
    certified: bool


class OrbitDocument(TNPObject):
    """Orbit of a vertex, with the parity sums of cube-indexed coordinates."""

    group: str
    vertex: IntRow
    orbit_size: int
    canonical_rep: IntRow
    stabilizer_order: int
    parity_sums: Optional[list[ExactInt]] = None


class IngestionDocument(TNPObject):
    n_representatives: int
    n_cones: int
    orbit_sizes: list[int]
    multiplicities: list[ExactInt]
    orbit_sizes_match: Optional[bool] = None
    multiplicities_in_range: bool
    certified_directions: list[bool] = []
    notes: list[str] = []


class OracleDocument(TNPObject):
    dim: int
    f_vector: list[int]
    vertices: list[IntRow]
    facets: list[FacetEntry]
    checked: int = 0
    matches: int = 0


class MultidegreeDocument(TNPObject):
    vertex: IntRow
    multidegree: list[ExactRational]
