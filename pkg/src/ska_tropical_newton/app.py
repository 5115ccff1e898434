"""
ska_tropical_newton app.py

Command line front end: every command reads JSON documents, runs one
pipeline and writes one JSON result. Logs go to standard error.
"""

import argparse
import logging
import random
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from pydantic import BaseModel, ValidationError
from ska_ser_logging import configure_logging

from ska_tropical_newton.common.constant import DEFAULT_PARALLELISM, LOG_LEVEL
from ska_tropical_newton.common.custom_exceptions import (
    GenericityViolation,
    InputFormatError,
    ObjectiveInCone,
    OracleMismatch,
    TropicalNewtonError,
)
from ska_tropical_newton.common.error_handling import (
    EXIT_FAILURE,
    EXIT_OK,
    error_response,
)
from ska_tropical_newton.common.utils import parse_int_list
from ska_tropical_newton.domain.app_model import Command, ErrorResponse, RunConfig
from ska_tropical_newton.domain.documents import (
    CertifyDocument,
    FacetEntry,
    FanDocument,
    IngestionDocument,
    LedgerDocument,
    MultidegreeDocument,
    ObjectiveFailure,
    OracleDocument,
    OrbitDocument,
    RecordEntry,
    ShootDocument,
    VertexEntry,
    WalkDocument,
)
from ska_tropical_newton.domain.exact_models import ExactVector
from ska_tropical_newton.domain.polytope_models import PolytopeLedger
from ska_tropical_newton.repository.fan_repository import (
    FanRepository,
    JsonFanRepository,
)
from ska_tropical_newton.services.hull_oracle import (
    convex_hull,
    oracle_vertex,
    weighted_normal_skeleton,
)
from ska_tropical_newton.services.ingestion import ingest
from ska_tropical_newton.services.newton_recon import (
    auto_seed,
    complete_polytope,
    multidegree,
    ray_shoot_batch,
    shoot_generic,
    shoot_records,
    walk,
)
from ska_tropical_newton.services.newton_recon.facet_certificate import check_facet
from ska_tropical_newton.services.pushforward import (
    hadamard_square,
    minkowski_image,
    product_fan,
)
from ska_tropical_newton.services.symmetry import (
    canonical_rep,
    group_order,
    orbit,
    stabilizer,
)

LOGGER = logging.getLogger(__name__)


def _require(value, flag: str):
    if value is None:
        raise InputFormatError(f"{flag} is required for this command")
    return value


def _objectives(config: RunConfig) -> list[ExactVector]:
    if not config.objective:
        raise InputFormatError("--objective is required for this command")
    return [ExactVector(tuple(w)) for w in config.objective]


def shoot(config: RunConfig, repository: FanRepository) -> BaseModel:
    T = repository.read_fan(_require(config.fan, "--fan"))
    objectives = _objectives(config)
    document = ShootDocument()
    results = ray_shoot_batch(T, objectives, config.parallelism)
    for w, result in zip(objectives, results):
        if isinstance(result, TropicalNewtonError):
            document.failures.append(
                ObjectiveFailure(
                    objective=list(w.entries),
                    variant=result.variant,
                    detail=result.message,
                    context=result.context(),
                )
            )
        else:
            document.witnesses.append(VertexEntry.from_witness(result))
    return document


def walk_command(config: RunConfig, repository: FanRepository) -> BaseModel:
    T = repository.read_fan(_require(config.fan, "--fan"))
    w = _objectives(config)[0]
    signs = tuple(sorted({-1, config.sign}))
    shot = shoot_records(T, w, signs, config.parallelism)
    found = walk(
        T, shot.witness.objective, shot.witness.vertex, shot.records, config.sign
    )
    return WalkDocument(
        start=VertexEntry.from_witness(shot.witness),
        sign=config.sign,
        records=[RecordEntry.from_record(r) for r in shot.records],
        witnesses=[VertexEntry.from_witness(witness) for witness in found],
    )


def certify(config: RunConfig, repository: FanRepository) -> BaseModel:
    T = repository.read_fan(_require(config.fan, "--fan"))
    normal = ExactVector(tuple(_require(config.normal, "--normal")))
    bound = _require(config.bound, "--bound")
    check = check_facet(
        T, normal, bound, seed=config.seed, parallelism=config.parallelism
    )
    return CertifyDocument(
        normal=list(normal.to_ints()),
        bound=bound,
        rank=check.rank,
        certified=check.certified,
    )


def complete(config: RunConfig, repository: FanRepository) -> BaseModel:
    T = repository.read_fan(_require(config.fan, "--fan"))
    group = repository.read_group(config.group, T.ambient_dim)
    ledger = PolytopeLedger(group=group)
    if config.seed_vertex == "auto":
        seeds = [auto_seed(T, config.seed, config.parallelism)]
    else:
        seeds = repository.read_ledger(Path(config.seed_vertex)).witnesses()
    vertices, _ = complete_polytope(
        T,
        seeds,
        group,
        seed=config.seed,
        parallelism=config.parallelism,
        ledger=ledger,
    )
    if config.csv is not None:
        repository.export_vertices_csv(config.csv, vertices)
    return LedgerDocument.from_ledger(ledger)


def minkowski(config: RunConfig, repository: FanRepository) -> BaseModel:
    T = repository.read_fan(_require(config.fan, "--fan"))
    spec = repository.read_map(_require(config.map, "--map"))
    return FanDocument.from_collection(minkowski_image(T, spec))


def product(config: RunConfig, repository: FanRepository) -> BaseModel:
    T1 = repository.read_fan(_require(config.fan, "--fan"))
    T2 = repository.read_fan(_require(config.fan2, "--fan2"))
    return FanDocument.from_collection(product_fan(T1, T2))


def hadamard(config: RunConfig, repository: FanRepository) -> BaseModel:
    T = repository.read_fan(_require(config.fan, "--fan"))
    square = hadamard_square(T, config.delta, config.seed, config.parallelism)
    return FanDocument.from_collection(square)


def _weight(index: int) -> int:
    return bin(index).count("1")


def orbit_command(config: RunConfig, repository: FanRepository) -> BaseModel:
    """Orbit of a vertex, or the ingestion report of an orbit-compressed fan."""
    if config.vertex is not None:
        vertex = repository.read_vector(config.vertex)
        group = repository.read_group(config.group, vertex.dim)
        parity = None
        if vertex.dim & (vertex.dim - 1) == 0:
            parity = [
                int(sum(x for k, x in enumerate(vertex) if _weight(k) % 2 == p))
                for p in (0, 1)
            ]
        return OrbitDocument(
            group=group.name,
            vertex=list(vertex.to_ints()),
            orbit_size=len(orbit(group, vertex)),
            canonical_rep=list(canonical_rep(group, vertex).to_ints()),
            stabilizer_order=len(stabilizer(group, vertex)),
            parity_sums=parity,
        )
    document = repository.read_orbit_fan(_require(config.fan, "--fan"))
    group = repository.read_group_document(document.group, document.ambient_dim)
    LOGGER.info("Group %s of order %d", group.name, group_order(group))
    directions = []
    if config.directions is not None:
        directions = [
            ExactVector(tuple(row))
            for row in repository.read_matrix(config.directions).to_int_rows()
        ]
    _, report = ingest(
        group,
        [
            cone.to_cone(document.ambient_dim)
            for cone in document.orbit_representatives
        ],
        [ExactVector(tuple(row)) for row in document.lineality],
        document.ambient_dim,
        expected_orbit_sizes=document.orbit_sizes,
        allowed_multiplicities=config.allowed_multiplicities,
        directions=directions,
    )
    return IngestionDocument(
        n_representatives=report.n_representatives,
        n_cones=report.n_cones,
        orbit_sizes=list(report.orbit_sizes),
        multiplicities=list(report.multiplicities),
        orbit_sizes_match=report.orbit_sizes_match,
        multiplicities_in_range=report.multiplicities_in_range,
        certified_directions=list(report.certified_directions),
        notes=report.notes,
    )


def oracle(config: RunConfig, repository: FanRepository) -> BaseModel:
    """Hull of a polynomial's exponents, cross-checked by shooting at its fan."""
    E = repository.read_polynomial(_require(config.poly, "--poly"))
    hull = convex_hull(E)
    document = OracleDocument(
        dim=hull.dim,
        f_vector=list(hull.f_vector),
        vertices=[list(v.to_ints()) for v in hull.vertices],
        facets=[FacetEntry.from_facet(f) for f in hull.facets],
    )
    if config.check_shoot == 0 or len(hull.vertices) < 2:
        return document
    T = weighted_normal_skeleton(hull)
    rng = random.Random(config.seed)
    objectives = [
        ExactVector(tuple(rng.randint(-1000, 1000) for _ in range(E.dim)))
        for _ in range(config.check_shoot)
    ]
    results = ray_shoot_batch(T, objectives, config.parallelism)
    for w, result in zip(objectives, results):
        document.checked += 1
        if isinstance(result, (GenericityViolation, ObjectiveInCone)):
            try:
                result = shoot_generic(T, w, seed=config.seed).witness
            except (GenericityViolation, ObjectiveInCone) as err:
                result = err
        if isinstance(result, TropicalNewtonError):
            LOGGER.warning("Objective %s skipped: %s", w, result.message)
            continue
        expected = oracle_vertex(E, result.objective)
        if result.vertex != expected:
            raise OracleMismatch(
                f"shooting at {result.objective} gives {result.vertex},"
                f" the hull gives {expected}"
            )
        document.matches += 1
    LOGGER.info("%d of %d objectives match", document.matches, document.checked)
    return document


def multidegree_command(config: RunConfig, repository: FanRepository) -> BaseModel:
    grading = repository.read_matrix(_require(config.grading, "--grading"))
    vertex = repository.read_vector(_require(config.vertex, "--vertex"))
    return MultidegreeDocument(
        vertex=list(vertex.to_ints()),
        multidegree=list(multidegree(grading, vertex).entries),
    )


COMMANDS: dict[Command, Callable[[RunConfig, FanRepository], BaseModel]] = {
    Command.SHOOT: shoot,
    Command.WALK: walk_command,
    Command.CERTIFY: certify,
    Command.COMPLETE: complete,
    Command.MINKOWSKI: minkowski,
    Command.PRODUCT: product,
    Command.HADAMARD: hadamard,
    Command.ORBIT: orbit_command,
    Command.ORACLE: oracle,
    Command.MULTIDEGREE: multidegree_command,
}


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(output).write_text(text, encoding="utf-8")


def run(config: RunConfig, repository: Optional[FanRepository] = None) -> int:
    """
    Execute one command.

    :returns: the exit status; on failure the structured error document is
        written where the result would have gone
    """
    repository = repository or JsonFanRepository()
    LOGGER.info("Running %s (seed %d)", config.command.value, config.seed)
    try:
        result = COMMANDS[config.command](config, repository)
    except (TropicalNewtonError, ValueError, OSError) as err:
        _emit(_error_text(config.command.value, err), config.output)
        return EXIT_FAILURE
    except Exception as err:  # pylint: disable=W0718
        LOGGER.exception("Unexpected failure in %s", config.command.value)
        _emit(_error_text(config.command.value, err), config.output)
        return EXIT_FAILURE
    _emit(result.model_dump_json(indent=2, by_alias=True) + "\n", config.output)
    return EXIT_OK


def _error_text(operation: str, err: Exception) -> str:
    response = ErrorResponse.model_validate(error_response(operation, err))
    return response.model_dump_json(indent=2, exclude_none=True) + "\n"


def _vector(text: str) -> list[int]:
    try:
        return parse_int_list(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"not an integer vector: {text!r}") from err


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ska-tropical-newton",
        description=(
            "Reconstruct Newton polytopes from weighted tropical hypersurfaces"
            " (max convention)."
        ),
    )
    parser.add_argument("command", choices=[c.value for c in Command])
    parser.add_argument("--output", type=Path, help="result file (default stdout)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--parallelism", type=int, default=DEFAULT_PARALLELISM)
    parser.add_argument("--delta", type=int, default=1, help="map degree")
    parser.add_argument("--fan", type=Path)
    parser.add_argument("--fan2", type=Path)
    parser.add_argument("--map", type=Path)
    parser.add_argument(
        "--group",
        default="trivial",
        help="trivial, hyperoctahedral:m, or a group document",
    )
    parser.add_argument(
        "--objective", type=_vector, action="append", default=[], help="e.g. 2,1"
    )
    parser.add_argument("--seed-vertex", default="auto", help="auto or a ledger")
    parser.add_argument("--vertex", help="inline vector or vector document")
    parser.add_argument("--grading", type=Path)
    parser.add_argument("--poly", type=Path)
    parser.add_argument("--check-shoot", type=int, default=20)
    parser.add_argument("--normal", type=_vector)
    parser.add_argument("--bound", type=int)
    parser.add_argument("--sign", type=int, choices=[-1, 1], default=-1)
    parser.add_argument("--csv", type=Path, help="vertex or cone export")
    parser.add_argument("--directions", type=Path, help="candidate facet directions")
    parser.add_argument("--allowed-multiplicities", type=_vector)
    return parser


def build_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    return RunConfig.model_validate(vars(args))


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging(level=LOG_LEVEL)
    try:
        config = build_config(argv)
    except ValidationError as err:
        _emit(_error_text("configure", err), None)
        return EXIT_FAILURE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
