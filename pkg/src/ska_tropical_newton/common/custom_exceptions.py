from typing import Any, Optional


class TropicalNewtonError(Exception):
    """Base class for every error raised by the reconstruction pipeline.

    Subclasses carry the context of the failure as attributes, and
    ``variant`` names the error in the structured error JSON.
    """

    def __init__(self, message: str = "Tropical Newton reconstruction failed"):
        self.message = message
        super().__init__(self.message)

    @property
    def variant(self) -> str:
        return type(self).__name__

    def context(self) -> dict[str, Any]:
        return {}

    def __reduce__(self):
        return _restore, (type(self), dict(self.__dict__))


def _restore(cls: type, state: dict[str, Any]) -> TropicalNewtonError:
    """Rebuild an error in a parent process; subclasses take varied arguments."""
    err = cls.__new__(cls)
    Exception.__init__(err, state.get("message"))
    err.__dict__.update(state)
    return err


class RankDrop(TropicalNewtonError):
    def __init__(self, message="The map drops the rank of the lattice"):
        super().__init__(message)


class ZeroLattice(TropicalNewtonError):
    def __init__(self, message="The lattice generators are all zero"):
        super().__init__(message)


class Inconsistent(TropicalNewtonError):
    def __init__(self, message="The linear system has no solution"):
        super().__init__(message)


class Underdetermined(TropicalNewtonError):
    def __init__(self, message="The linear system has more than one solution"):
        super().__init__(message)


class ZeroVector(TropicalNewtonError):
    def __init__(self, message="A nonzero vector was expected"):
        super().__init__(message)


class DimensionMismatch(TropicalNewtonError):
    def __init__(self, message="Dimensions of the operands do not agree"):
        super().__init__(message)


class NonSimplicialCone(TropicalNewtonError):
    def __init__(
        self,
        message="Cone generators are linearly dependent; triangulate first",
        cone_id: Optional[int] = None,
    ):
        self.cone_id = cone_id
        super().__init__(message)

    def context(self) -> dict[str, Any]:
        return {"cone_id": self.cone_id}


class SingularSystem(TropicalNewtonError):
    def __init__(
        self,
        message="The shooting direction is parallel to the span of the cone",
        cone_id: Optional[int] = None,
    ):
        self.cone_id = cone_id
        super().__init__(message)

    def context(self) -> dict[str, Any]:
        return {"cone_id": self.cone_id}


class WrongCodimension(TropicalNewtonError):
    def __init__(self, message="The cone is not of codimension one"):
        super().__init__(message)


class MultiplicityConflict(TropicalNewtonError):
    def __init__(
        self, message="Two copies of the same cone carry different multiplicities"
    ):
        super().__init__(message)


class NotACurve(TropicalNewtonError):
    def __init__(self, message="A cone has more than one ray modulo lineality"):
        super().__init__(message)


class NonIntegralResult(TropicalNewtonError):
    def __init__(self, message="The fiber sum is not divisible by the map degree"):
        super().__init__(message)


class InfiniteFiber(TropicalNewtonError):
    def __init__(self, message="The map is not finite on a fiber cone"):
        super().__init__(message)


class NotInLineality(TropicalNewtonError):
    def __init__(
        self, message="The quotient directions are not in the lineality space"
    ):
        super().__init__(message)


class NonPrimitiveImage(TropicalNewtonError):
    def __init__(
        self,
        message="The image of the source lattice is not a primitive sublattice",
        index: Optional[int] = None,
    ):
        self.index = index
        super().__init__(message)

    def context(self) -> dict[str, Any]:
        return {"index": self.index}


class ObjectiveInCone(TropicalNewtonError):
    def __init__(self, cone_id: int, message: Optional[str] = None):
        self.cone_id = cone_id
        super().__init__(message or f"Objective vector lies in cone {cone_id}")

    def context(self) -> dict[str, Any]:
        return {"cone_id": self.cone_id}


class GenericityViolation(TropicalNewtonError):
    def __init__(self, cone_id: int, coord: int, message: Optional[str] = None):
        self.cone_id = cone_id
        self.coord = coord
        super().__init__(
            message
            or f"Ray along coordinate {coord} meets cone {cone_id} non-transversally;"
            " perturb the objective"
        )

    def context(self) -> dict[str, Any]:
        return {"cone_id": self.cone_id, "coord": self.coord}


class NonParallelTie(TropicalNewtonError):
    def __init__(self, coord: int, param, message: Optional[str] = None):
        self.coord = coord
        self.param = param
        super().__init__(
            message
            or f"Cones crossed at t={param} along coordinate {coord} are not parallel"
        )

    def context(self) -> dict[str, Any]:
        return {"coord": self.coord, "param": str(self.param)}


class InconsistentRecords(TropicalNewtonError):
    def __init__(self, message="Intersection records must have positive parameters"):
        super().__init__(message)


class ExhaustedCoordinates(TropicalNewtonError):
    def __init__(
        self, message="No chamber reached after stepping along every coordinate"
    ):
        super().__init__(message)


class NoProgress(TropicalNewtonError):
    def __init__(self, vertex=None, normal=None, message: Optional[str] = None):
        self.vertex = vertex
        self.normal = normal
        super().__init__(
            message
            or f"Completion stalled at vertex {vertex} with uncertified facet {normal}"
        )

    def context(self) -> dict[str, Any]:
        return {
            "vertex": None if self.vertex is None else [str(x) for x in self.vertex],
            "normal": None if self.normal is None else [str(x) for x in self.normal],
        }


class TooLarge(TropicalNewtonError):
    def __init__(self, message="The group is too large to enumerate"):
        super().__init__(message)


class ScaleExceeded(TropicalNewtonError):
    def __init__(self, message="Input exceeds the desk-scale limits"):
        super().__init__(message)


class SampleExhausted(TropicalNewtonError):
    def __init__(
        self, message="No regular sample point found within the retry budget"
    ):
        super().__init__(message)


class OracleMismatch(TropicalNewtonError):
    def __init__(self, message="Ray shooting disagrees with the convex hull oracle"):
        super().__init__(message)


class InputFormatError(TropicalNewtonError):
    def __init__(self, message="Input file could not be parsed", path=None):
        self.path = path
        super().__init__(message)

    def context(self) -> dict[str, Any]:
        return {"path": None if self.path is None else str(self.path)}
