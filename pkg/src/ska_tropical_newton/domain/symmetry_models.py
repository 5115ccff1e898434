from dataclasses import dataclass, field
from typing import Optional

Permutation = tuple[int, ...]


@dataclass(eq=False)
class CoordSymmetryGroup:
    """
    A finite group acting on coordinates by permutation.

    A permutation ``g`` is stored 0-based in one-line notation: coordinate
    ``i`` of a vector moves to position ``g[i]``.

    :param n_coords: number of coordinates acted on
    :param generators: generating permutations
    :param name: label used in logs and documents
    """

    n_coords: int
    generators: tuple[Permutation, ...]
    name: str = "custom"
    elements: Optional[tuple[Permutation, ...]] = field(default=None, repr=False)

    def __post_init__(self):
        expected = set(range(self.n_coords))
        for generator in self.generators:
            if len(generator) != self.n_coords or set(generator) != expected:
                raise ValueError(f"{generator} is not a permutation of {self.n_coords}")

    @property
    def identity(self) -> Permutation:
        return tuple(range(self.n_coords))
