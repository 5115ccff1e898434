import re
from fractions import Fraction
from os import environ
from typing import Annotated, Any, cast

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    PlainSerializer,
    PlainValidator,
    SerializerFunctionWrapHandler,
    model_serializer,
)
from pydantic.config import ExtraValues
from pydantic_core import PydanticUndefined

EXTRA_FIELDS = cast(ExtraValues | None, environ.get("EXTRA_FIELDS", "forbid"))

_INTEGER_PATTERN = re.compile(r"^[+-]?\d+$")
_RATIONAL_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_exact_int(value: Any) -> int:
    """Accept a JSON integer or its decimal string; reject anything lossy."""
    if isinstance(value, bool):
        raise ValueError("booleans are not integers")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _INTEGER_PATTERN.match(value.strip()):
        return int(value.strip())
    raise ValueError(f"expected an integer or a decimal string, got {value!r}")


def parse_exact_rational(value: Any) -> Fraction:
    """Accept an integer or a decimal string ``p/q``; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str) and _RATIONAL_PATTERN.match(value.strip()):
        return Fraction(value.strip())
    return Fraction(parse_exact_int(value))


# Integers travel through JSON as decimal strings so that no reader can
# silently round them to a double.
ExactInt = Annotated[
    int,
    BeforeValidator(parse_exact_int),
    PlainSerializer(str, return_type=str, when_used="json"),
]

ExactRational = Annotated[
    Fraction,
    PlainValidator(parse_exact_rational),
    PlainSerializer(str, return_type=str, when_used="json"),
]


class TNPObject(BaseModel):
    """Shared base class for every file document of the reconstruction tools."""

    model_config = ConfigDict(
        extra=EXTRA_FIELDS,
        validate_assignment=True,
        validate_default=True,
        populate_by_name=True,
    )

    def _is_default(self, key: str) -> bool:
        field_info = type(self).model_fields[key]
        if field_info.default_factory is not None:
            default = field_info.default_factory()
        elif field_info.default is not PydanticUndefined:
            default = field_info.default
        else:
            default = PydanticUndefined
        return getattr(self, key) == default

    @staticmethod
    def _is_empty(value: Any) -> bool:
        return value is None

    def _exclude_default_nulls(self, dumped: dict[str, Any]) -> dict[str, Any]:
        """Omit optional sections that were never set. Empty lists stay:
        an empty lineality or cone list is meaningful."""
        return {
            key: val
            for key, val in dumped.items()
            if not (
                key in type(self).model_fields
                and self._is_empty(val)
                and self._is_default(key)
            )
        }

    @model_serializer(mode="wrap")
    def _serialize(
        self, default_serializer: SerializerFunctionWrapHandler
    ) -> dict[str, Any]:
        dumped = default_serializer(self)
        return self._exclude_default_nulls(dumped)
