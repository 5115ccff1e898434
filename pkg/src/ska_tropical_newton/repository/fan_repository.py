import csv
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Iterator, Optional, Sequence, TypeVar, Union

from pydantic import BaseModel, TypeAdapter, ValidationError

from ska_tropical_newton.common.custom_exceptions import InputFormatError
from ska_tropical_newton.common.utils import parse_int_list
from ska_tropical_newton.domain.documents import (
    ConeDocument,
    FanDocument,
    GroupDocument,
    LedgerDocument,
    MapDocument,
    MatrixDocument,
    OrbitFanDocument,
    PolynomialDocument,
    VectorDocument,
    check_row_lengths,
)
from ska_tropical_newton.domain.exact_models import ExactMatrix, ExactVector
from ska_tropical_newton.domain.fan_models import (
    MonomialMapSpec,
    TropicalCollection,
    WeightedCone,
)
from ska_tropical_newton.domain.polytope_models import ExponentSet, PolytopeLedger
from ska_tropical_newton.domain.symmetry_models import CoordSymmetryGroup
from ska_tropical_newton.services.fan_core import normalize_collection
from ska_tropical_newton.services.ingestion import expand_orbits
from ska_tropical_newton.services.symmetry import group_from_spec

LOGGER = logging.getLogger(__name__)

Document = TypeVar("Document", bound=BaseModel)

_FAN_FORMS = TypeAdapter(Union[FanDocument, OrbitFanDocument])
_MATRIX_FORMS = TypeAdapter(Union[MatrixDocument, list[list[int | str]]])
_VECTOR_FORMS = TypeAdapter(Union[VectorDocument, list[int | str]])


class FanRepository(ABC):
    """
    Abstract base class for the storage of collections, maps, groups and
    ledgers.

    Any implementation of this class must provide concrete methods for the
    specified abstract methods.
    """

    @abstractmethod
    def read_fan(self, path: Path) -> TropicalCollection:
        """
        Read a tropical hypersurface, expanding orbit-compressed files.

        :param path: location of the fan

        :returns: the collection in canonical form, every cone simplicial

        :raises: InputFormatError if the file cannot be read or parsed
        """
        raise NotImplementedError

    @abstractmethod
    def iter_cones(self, path: Path) -> Iterator[WeightedCone]:
        """
        Stream the cones of a fan one by one without holding the file.

        :param path: location of the fan

        :raises: InputFormatError if a cone cannot be parsed
        """
        raise NotImplementedError

    @abstractmethod
    def write_fan(self, path: Path, T: TropicalCollection) -> None:
        raise NotImplementedError

    @abstractmethod
    def read_map(self, path: Path) -> MonomialMapSpec:
        raise NotImplementedError

    @abstractmethod
    def read_group(self, spec: str, n_coords: Optional[int] = None):
        """
        Resolve a group given inline (``trivial``, ``hyperoctahedral:m``) or
        as the path of a group document.
        """
        raise NotImplementedError

    @abstractmethod
    def read_group_document(self, spec, n_coords: Optional[int] = None):
        raise NotImplementedError

    @abstractmethod
    def read_orbit_fan(self, path: Path) -> OrbitFanDocument:
        raise NotImplementedError

    @abstractmethod
    def read_ledger(self, path: Path) -> LedgerDocument:
        raise NotImplementedError

    @abstractmethod
    def write_ledger(self, path: Path, ledger: PolytopeLedger) -> None:
        raise NotImplementedError

    @abstractmethod
    def read_polynomial(self, path: Path) -> ExponentSet:
        raise NotImplementedError

    @abstractmethod
    def read_matrix(self, path: Path) -> ExactMatrix:
        raise NotImplementedError

    @abstractmethod
    def read_vector(self, source: str) -> ExactVector:
        raise NotImplementedError

    @abstractmethod
    def export_vertices_csv(self, path: Path, vertices: Sequence[ExactVector]) -> None:
        raise NotImplementedError


class JsonFanRepository(FanRepository):
    """
    Fans, maps, groups, ledgers and polynomials as JSON files.

    A ``.jsonl`` fan holds a header line with ``ambient_dim`` and
    ``lineality`` followed by one cone per line; it is read cone by cone.
    """

    def _read_text(self, path: Path) -> str:
        try:
            return Path(path).read_text(encoding="utf-8")
        except OSError as err:
            raise InputFormatError(f"cannot read {path}: {err}", path=path) from err

    def _parse(self, path: Path, model: type[Document], text: str) -> Document:
        try:
            return model.model_validate_json(text)
        except ValidationError as err:
            raise InputFormatError(
                f"{path} is not a valid {model.__name__}: {err}", path=path
            ) from err

    def _parse_forms(self, path: Path, adapter: TypeAdapter, text: str):
        try:
            return adapter.validate_json(text)
        except ValidationError as err:
            raise InputFormatError(
                f"{path} could not be parsed: {err}", path=path
            ) from err

    def _write(self, path: Path, document: BaseModel) -> None:
        Path(path).write_text(
            document.model_dump_json(indent=2, by_alias=True) + "\n", encoding="utf-8"
        )
        LOGGER.info("Wrote %s", path)

    def read_fan(self, path: Path) -> TropicalCollection:
        path = Path(path)
        if path.suffix == ".jsonl":
            header = self._jsonl_header(path)
            cones = tuple(self.iter_cones(path))
            T = TropicalCollection(
                header.ambient_dim, header.to_collection().lineality, cones
            )
        else:
            document = self._parse_forms(path, _FAN_FORMS, self._read_text(path))
            if isinstance(document, OrbitFanDocument):
                T = self.expand(document)
            else:
                T = document.to_collection()
        T = normalize_collection(T)
        LOGGER.info("Loaded %s: %d cones in dimension %d", path, len(T), T.ambient_dim)
        return T

    def expand(self, document: OrbitFanDocument) -> TropicalCollection:
        group = self.read_group_document(document.group, document.ambient_dim)
        T, _ = expand_orbits(
            group,
            [
                cone.to_cone(document.ambient_dim)
                for cone in document.orbit_representatives
            ],
            [ExactVector(tuple(row)) for row in document.lineality],
            document.ambient_dim,
        )
        return T

    def read_orbit_fan(self, path: Path) -> OrbitFanDocument:
        return self._parse(path, OrbitFanDocument, self._read_text(path))

    def _jsonl_header(self, path: Path) -> FanDocument:
        try:
            with open(path, encoding="utf-8") as stream:
                first = stream.readline()
        except OSError as err:
            raise InputFormatError(f"cannot read {path}: {err}", path=path) from err
        return self._parse(path, FanDocument, first)

    def iter_cones(self, path: Path) -> Iterator[WeightedCone]:
        path = Path(path)
        if path.suffix != ".jsonl":
            yield from self.read_fan(path).cones
            return
        ambient_dim = self._jsonl_header(path).ambient_dim
        with open(path, encoding="utf-8") as stream:
            next(stream)
            for line_number, line in enumerate(stream, start=2):
                if not line.strip():
                    continue
                try:
                    cone = ConeDocument.model_validate_json(line)
                    check_row_lengths(ambient_dim, "ray", cone.rays)
                except ValueError as err:
                    raise InputFormatError(
                        f"{path}:{line_number} is not a cone: {err}", path=path
                    ) from err
                yield cone.to_cone(ambient_dim)

    def write_fan(self, path: Path, T: TropicalCollection) -> None:
        path = Path(path)
        if path.suffix != ".jsonl":
            self._write(path, FanDocument.from_collection(T))
            return
        header = FanDocument(
            ambient_dim=T.ambient_dim,
            lineality=[list(v.to_ints()) for v in T.lineality],
        )
        with open(path, "w", encoding="utf-8") as stream:
            stream.write(header.model_dump_json(exclude={"cones"}) + "\n")
            for cone in T.cones:
                stream.write(ConeDocument.from_cone(cone).model_dump_json() + "\n")
        LOGGER.info("Wrote %d cones to %s", len(T), path)

    def read_map(self, path: Path) -> MonomialMapSpec:
        return self._parse(path, MapDocument, self._read_text(path)).to_spec()

    def read_group_document(
        self, spec: Union[GroupDocument, str], n_coords: Optional[int]
    ) -> CoordSymmetryGroup:
        if isinstance(spec, str):
            return self.read_group(spec, n_coords)
        return group_from_spec(spec, n_coords)

    def read_group(
        self, spec: str, n_coords: Optional[int] = None
    ) -> CoordSymmetryGroup:
        text = spec.strip()
        if text.lower() == "trivial" or text.lower().startswith("hyperoctahedral:"):
            return group_from_spec(text, n_coords)
        document = self._parse(Path(text), GroupDocument, self._read_text(Path(text)))
        return group_from_spec(document, n_coords)

    def read_ledger(self, path: Path) -> LedgerDocument:
        return self._parse(path, LedgerDocument, self._read_text(path))

    def write_ledger(self, path: Path, ledger: PolytopeLedger) -> None:
        self._write(path, LedgerDocument.from_ledger(ledger))

    def read_polynomial(self, path: Path) -> ExponentSet:
        document = self._parse(path, PolynomialDocument, self._read_text(path))
        try:
            return document.to_exponents()
        except ValueError as err:
            raise InputFormatError(f"{path}: {err}", path=path) from err

    def read_matrix(self, path: Path) -> ExactMatrix:
        parsed = self._parse_forms(path, _MATRIX_FORMS, self._read_text(path))
        if isinstance(parsed, MatrixDocument):
            return parsed.to_matrix()
        return MatrixDocument(rows=parsed).to_matrix()

    def read_vector(self, source: str) -> ExactVector:
        """A vector given inline as ``"1,2,3"`` or as a JSON file."""
        path = Path(source)
        if not path.exists():
            try:
                return ExactVector(tuple(parse_int_list(source)))
            except ValueError as err:
                raise InputFormatError(
                    f"cannot read a vector from {source!r}"
                ) from err
        parsed = self._parse_forms(path, _VECTOR_FORMS, self._read_text(path))
        if isinstance(parsed, VectorDocument):
            return ExactVector(tuple(parsed.vertex))
        return ExactVector(tuple(VectorDocument(vertex=parsed).vertex))

    def export_vertices_csv(self, path: Path, vertices: Sequence[ExactVector]) -> None:
        """One vertex per row, for external convex hull tools."""
        with open(path, "w", newline="", encoding="utf-8") as stream:
            writer = csv.writer(stream)
            for vertex in vertices:
                writer.writerow(vertex.to_ints())
        LOGGER.info("Exported %d vertices to %s", len(vertices), path)
