from enum import Enum
from pathlib import Path
from typing import Annotated, Optional

from annotated_types import Ge
from pydantic import BaseModel, ConfigDict

from ska_tropical_newton.common.constant import DEFAULT_PARALLELISM


class AppModel(BaseModel):
    """
    Base class for application data models - as distinct from file documents
    :param model_config: The configuration for the model
    """

    model_config = ConfigDict(
        extra="forbid", validate_default=True, validate_assignment=True
    )


class ErrorResponseTraceback(AppModel):
    """
    :param key: The key of the error
    :param type: The type of the error
    :param full_traceback: The full traceback of the error
    """

    key: str
    type: str
    full_traceback: str


class ErrorDetails(AppModel):
    """
    :param status: The exit status of the run
    :param title: The error variant
    :param detail: The human readable message
    :param context: Structured context of the failure (cone id, coordinate, ...)
    :param traceback: The traceback of the error
    """

    status: int
    title: str
    detail: str
    context: dict[str, object] = {}
    traceback: Optional[ErrorResponseTraceback] = None


class Command(str, Enum):
    SHOOT = "shoot"
    WALK = "walk"
    CERTIFY = "certify"
    COMPLETE = "complete"
    MINKOWSKI = "minkowski"
    PRODUCT = "product"
    HADAMARD = "hadamard"
    ORBIT = "orbit"
    ORACLE = "oracle"
    MULTIDEGREE = "multidegree"


class RunConfig(AppModel):
    """
    Validated configuration of a single command line run.

    :param command: The pipeline to execute
    :param output: Where the JSON result goes; standard output when absent
    :param seed: Seed of every perturbation and sample point
    :param delta: Degree of the monomial map for push-forward multiplicities
    :param parallelism: Number of worker processes for cone scans
    """

    command: Command
    output: Optional[Path] = None
    seed: int = 0
    delta: Annotated[int, Ge(1)] = 1
    parallelism: Annotated[int, Ge(1)] = DEFAULT_PARALLELISM
    fan: Optional[Path] = None
    fan2: Optional[Path] = None
    map: Optional[Path] = None
    group: str = "trivial"
    objective: list[list[int]] = []
    seed_vertex: str = "auto"
    vertex: Optional[str] = None
    grading: Optional[Path] = None
    poly: Optional[Path] = None
    check_shoot: Annotated[int, Ge(0)] = 20
    normal: Optional[list[int]] = None
    bound: Optional[int] = None
    sign: int = -1
    csv: Optional[Path] = None
    directions: Optional[Path] = None
    allowed_multiplicities: Optional[list[int]] = None


class ErrorResponse(AppModel):
    """
    :param detail: The error details
    :param operation: The command that failed
    :param variant: The error variant
    """

    detail: ErrorDetails
    operation: str
    variant: str
