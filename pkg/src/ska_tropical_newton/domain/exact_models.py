"""
Arbitrary-precision vectors and matrices.

Entries are :class:`fractions.Fraction`; integral data simply has denominator 1.
Both types are immutable and hashable so they can key ledgers and cone sets.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence, Union

from ska_tropical_newton.common.custom_exceptions import DimensionMismatch

Number = Union[int, Fraction]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact arithmetic only, got {value!r}")
    return Fraction(value)


@dataclass(frozen=True, order=True)
class ExactVector:
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "entries", tuple(_as_fraction(x) for x in self.entries)
        )

    @classmethod
    def of(cls, values: Iterable[Number]) -> "ExactVector":
        return cls(tuple(values))

    @classmethod
    def zero(cls, dim: int) -> "ExactVector":
        return cls((0,) * dim)

    @classmethod
    def unit(cls, dim: int, index: int) -> "ExactVector":
        return cls(tuple(1 if k == index else 0 for k in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]

    def __add__(self, other: "ExactVector") -> "ExactVector":
        return ExactVector(tuple(a + b for a, b in zip(self, other, strict=True)))

    def __sub__(self, other: "ExactVector") -> "ExactVector":
        return ExactVector(tuple(a - b for a, b in zip(self, other, strict=True)))

    def __neg__(self) -> "ExactVector":
        return ExactVector(tuple(-a for a in self.entries))

    def scale(self, factor: Number) -> "ExactVector":
        return ExactVector(tuple(factor * a for a in self.entries))

    def dot(self, other: Union["ExactVector", Sequence[Number]]) -> Fraction:
        return sum(
            (a * b for a, b in zip(self.entries, other, strict=True)), Fraction(0)
        )

    def is_zero(self) -> bool:
        return not any(self.entries)

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    @property
    def is_primitive(self) -> bool:
        if not self.is_integral or self.is_zero():
            return False
        return gcd(*(int(x) for x in self.entries)) == 1

    def denominator(self) -> int:
        return lcm(1, *(x.denominator for x in self.entries))

    def to_ints(self) -> tuple[int, ...]:
        """The entries as Python ints; the vector must be integral."""
        if not self.is_integral:
            raise ValueError(f"{self} is not integral")
        return tuple(int(x) for x in self.entries)

    def scaled_to_integral(self) -> tuple[int, ...]:
        """The smallest positive integral multiple's entries."""
        denominator = self.denominator()
        return tuple(int(x * denominator) for x in self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.entries) + ")"


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(_as_fraction(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(entries)} entries do not fill a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Number]], cols: int | None = None
    ) -> "ExactMatrix":
        rows = [tuple(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(x for row in rows for x in row))

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[Number]], rows: int | None = None
    ) -> "ExactMatrix":
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows(
            [[column[i] for column in columns] for i in range(rows)], len(columns)
        )

    @classmethod
    def identity(cls, size: int) -> "ExactMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(size)] for i in range(size)], size
        )

    def row(self, index: int) -> tuple[Fraction, ...]:
        return self.entries[index * self.cols : (index + 1) * self.cols]

    def column(self, index: int) -> tuple[Fraction, ...]:
        return self.entries[index :: self.cols] if self.cols else ()

    def row_list(self) -> list[tuple[Fraction, ...]]:
        return [self.row(i) for i in range(self.rows)]

    def column_list(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(self.column_list(), self.rows)

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        columns = other.column_list()
        return ExactMatrix.from_rows(
            [
                [
                    sum((a * b for a, b in zip(row, column)), Fraction(0))
                    for column in columns
                ]
                for row in self.row_list()
            ],
            other.cols,
        )

    def apply(self, vector: Sequence[Number]) -> ExactVector:
        if self.cols != len(vector):
            raise DimensionMismatch(
                f"cannot apply a {self.rows}x{self.cols} matrix to a"
                f" {len(vector)}-vector"
            )
        return ExactVector(
            tuple(
                sum((a * b for a, b in zip(row, vector)), Fraction(0))
                for row in self.row_list()
            )
        )

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral:
            raise ValueError("matrix is not integral")
        return [[int(x) for x in row] for row in self.row_list()]
