import pytest
from pydantic import ValidationError

from ska_tropical_newton.domain.documents import (
    FanDocument,
    LedgerDocument,
    MapDocument,
    OrbitFanDocument,
    VertexEntry,
)
from ska_tropical_newton.domain.exact_models import ExactMatrix, ExactVector
from ska_tropical_newton.domain.polytope_models import (
    FacetInequality,
    PolytopeLedger,
    VertexWitness,
    WitnessSource,
)
from ska_tropical_newton.services.symmetry import trivial_group


def test_fan_document_to_collection(test_data):
    document = FanDocument.model_validate(test_data("testfile_six_ray_curve.json"))

    T = document.to_collection()

    assert T.ambient_dim == 3
    assert len(T) == 6
    assert T.multiplicities() == [1] * 6
    assert T.cones[5].rays == (ExactVector.of([-5, -4, -4]),)


def test_cone_multiplicity_defaults_to_one(test_data):
    document = FanDocument.model_validate(test_data("testfile_unit_ray_curve.json"))

    assert {cone.multiplicity for cone in document.cones} == {1}


@pytest.mark.parametrize(
    "fan,message",
    [
        ({"ambient_dim": 3, "cones": [{"rays": [[1, 0]]}]}, "2 entries"),
        ({"ambient_dim": 2, "cones": [{"rays": [[1, 0, 0]]}]}, "3 entries"),
        ({"ambient_dim": 3, "lineality": [[1, 1]]}, "lineality vector 0"),
        ({"ambient_dim": 2, "cones": [{"rays": [[0, 0]]}]}, "zero vector"),
    ],
)
def test_fan_document_refuses_rows_outside_the_ambient_space(fan, message):
    with pytest.raises(ValidationError, match=message):
        FanDocument.model_validate(fan)


def test_fan_document_from_collection_keeps_cones(test_data):
    document = FanDocument.model_validate(test_data("testfile_tropical_line.json"))

    again = FanDocument.from_collection(document.to_collection())

    assert again == document


def test_map_document_reads_the_short_names():
    document = MapDocument.model_validate(
        {"A": [[1, 0, 1, 0], [0, 1, 0, 1]], "delta": "2", "lambda": [[1, 1, 0, 0]]}
    )

    spec = document.to_spec()

    assert spec.matrix == ExactMatrix.from_rows([[1, 0, 1, 0], [0, 1, 0, 1]])
    assert spec.delta == 2
    assert spec.source_lattice == ExactMatrix.from_columns([[1, 1, 0, 0]])
    assert '"A"' in document.model_dump_json(by_alias=True)


def test_orbit_fan_document_accepts_group_documents_and_names(test_data):
    data = test_data("testfile_tropical_line_orbits.json")

    document = OrbitFanDocument.model_validate(data)

    assert document.group.generators == [[2, 1, 3], [2, 3, 1]]
    assert document.orbit_sizes == [3]

    data["group"] = "hyperoctahedral:1"
    assert OrbitFanDocument.model_validate(data).group == "hyperoctahedral:1"


def test_ledger_document_from_ledger():
    ledger = PolytopeLedger(group=trivial_group(2))
    ledger.add_vertex(
        VertexWitness(ExactVector.of([1, 0]), ExactVector.of([2, 1]))
    )
    ledger.add_vertex(
        VertexWitness(
            ExactVector.of([0, 0]), ExactVector.of([-1, -1]), WitnessSource.WALK
        )
    )
    ledger.add_facet(FacetInequality(ExactVector.of([1, 1]), 1, certified=True))

    document = LedgerDocument.from_ledger(ledger)

    assert [entry.v for entry in document.vertices] == [[0, 0], [1, 0]]
    assert document.vertices[0].source == WitnessSource.WALK
    assert document.facets[0].certified
    assert document.group == "trivial"


def test_vertex_entry_defaults_to_ledger_source():
    entry = VertexEntry.model_validate({"v": ["1", "0"], "objective": [2, 1]})

    witness = entry.to_witness()

    assert witness.source == WitnessSource.LEDGER
    assert witness.vertex == ExactVector.of([1, 0])
