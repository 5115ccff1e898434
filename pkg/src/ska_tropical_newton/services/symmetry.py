"""
Coordinate symmetry groups: enumeration, orbits, canonical representatives.

Signed symmetries of a cube are realised as permutations of its 2^m vertex
coordinates, so one mechanism covers the hyperoctahedral groups and any
subgroup of the symmetric group.
"""

import logging
from typing import Any, Iterable, Mapping, Sequence

from ska_tropical_newton.common.constant import (
    HYPEROCTAHEDRAL_MAX_RANK,
    MAX_GROUP_ORDER,
)
from ska_tropical_newton.common.custom_exceptions import (
    DimensionMismatch,
    InputFormatError,
    TooLarge,
)
from ska_tropical_newton.domain.exact_models import ExactMatrix, ExactVector
from ska_tropical_newton.domain.fan_models import WeightedCone
from ska_tropical_newton.domain.symmetry_models import CoordSymmetryGroup, Permutation
from ska_tropical_newton.services.fan_core import reduce_rays

LOGGER = logging.getLogger(__name__)


def permutation_group(
    n_coords: int, generators: Iterable[Sequence[int]], name: str = "custom"
) -> CoordSymmetryGroup:
    return CoordSymmetryGroup(
        n_coords=n_coords,
        generators=tuple(tuple(g) for g in generators),
        name=name,
    )


def trivial_group(n_coords: int) -> CoordSymmetryGroup:
    return CoordSymmetryGroup(n_coords=n_coords, generators=(), name="trivial")


def hyperoctahedral_on_cube(m: int) -> CoordSymmetryGroup:
    """
    The symmetry group of the m-cube acting on its 2^m vertices.

    Coordinates are indexed by bit strings in lexicographic order, the first
    axis being the most significant bit. Generated by the bit flip of every
    axis and the transpositions of neighbouring axes.

    :raises TooLarge: m beyond the enumeration bound
    """
    if m < 1 or m > HYPEROCTAHEDRAL_MAX_RANK:
        raise TooLarge(f"hyperoctahedral group of rank {m} is out of range")
    size = 1 << m
    shifts = [m - 1 - axis for axis in range(m)]
    generators = []
    for shift in shifts:
        generators.append(tuple(index ^ (1 << shift) for index in range(size)))
    for axis in range(m - 1):
        high, low = shifts[axis], shifts[axis + 1]
        generators.append(
            tuple(_swap_bits(index, high, low) for index in range(size))
        )
    return CoordSymmetryGroup(
        n_coords=size, generators=tuple(generators), name=f"hyperoctahedral:{m}"
    )


def _swap_bits(index: int, a: int, b: int) -> int:
    if ((index >> a) & 1) == ((index >> b) & 1):
        return index
    return index ^ ((1 << a) | (1 << b))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a ∘ b``: act by ``b`` first."""
    return tuple(a[x] for x in b)


def group_elements(group: CoordSymmetryGroup) -> tuple[Permutation, ...]:
    """
    All elements by breadth-first closure over the generators, cached.

    :raises TooLarge: more than the configured maximum order
    """
    if group.elements is not None:
        return group.elements
    identity = group.identity
    elements = {identity}
    boundary = [identity]
    while boundary:
        frontier = []
        for generator in group.generators:
            for element in boundary:
                product = compose(generator, element)
                if product not in elements:
                    elements.add(product)
                    frontier.append(product)
                    if len(elements) > MAX_GROUP_ORDER:
                        raise TooLarge(
                            f"{group.name} has more than {MAX_GROUP_ORDER} elements"
                        )
        boundary = frontier
    group.elements = tuple(sorted(elements))
    LOGGER.debug("Enumerated %s: order %d", group.name, len(group.elements))
    return group.elements


def group_order(group: CoordSymmetryGroup) -> int:
    return len(group_elements(group))


def act(permutation: Permutation, vector: Sequence) -> tuple:
    image = [None] * len(vector)
    for index, target in enumerate(permutation):
        image[target] = vector[index]
    return tuple(image)


def _check_dim(group: CoordSymmetryGroup, v: ExactVector):
    if v.dim != group.n_coords:
        raise DimensionMismatch(
            f"{group.name} acts on {group.n_coords} coordinates, got {v.dim}"
        )


def orbit(group: CoordSymmetryGroup, v: ExactVector) -> set[ExactVector]:
    _check_dim(group, v)
    return {ExactVector(act(g, v.entries)) for g in group_elements(group)}


def canonical_rep(group: CoordSymmetryGroup, v: ExactVector) -> ExactVector:
    """Lexicographic minimum of the orbit."""
    _check_dim(group, v)
    return min(ExactVector(act(g, v.entries)) for g in group_elements(group))


def stabilizer(group: CoordSymmetryGroup, v: ExactVector) -> list[Permutation]:
    _check_dim(group, v)
    return [g for g in group_elements(group) if act(g, v.entries) == v.entries]


def image_cone(
    permutation: Permutation, cone: WeightedCone, lineality: Sequence[ExactVector] = ()
) -> WeightedCone:
    rays = reduce_rays([act(permutation, ray.entries) for ray in cone.rays], lineality)
    return WeightedCone(
        rays=tuple(rays), multiplicity=cone.multiplicity, ambient_dim=cone.ambient_dim
    )


def orbit_cones(
    group: CoordSymmetryGroup,
    cone: WeightedCone,
    lineality: Sequence[ExactVector] = (),
) -> list[WeightedCone]:
    """
    The distinct images of a cone, sorted by canonical key.

    ``lineality`` must be invariant under the group; rays are reduced
    modulo it before images are compared.
    """
    if cone.ambient_dim != group.n_coords:
        raise DimensionMismatch(
            f"{group.name} acts on {group.n_coords} coordinates,"
            f" cone lives in {cone.ambient_dim}"
        )
    images = {}
    for g in group_elements(group):
        image = image_cone(g, cone, lineality)
        images.setdefault(image.key, image)
    return [images[key] for key in sorted(images)]


def cube_grading(m: int) -> ExactMatrix:
    """
    Rows: the all-ones vector, then for every axis the indicator of the
    coordinates whose bit on that axis is set.
    """
    size = 1 << m
    rows = [[1] * size]
    for axis in range(m):
        shift = m - 1 - axis
        rows.append([(index >> shift) & 1 for index in range(size)])
    return ExactMatrix.from_rows(rows, size)


def group_from_spec(spec: Any, n_coords: int | None = None) -> CoordSymmetryGroup:
    """
    Build a group from its document form.

    Accepts ``"trivial"``, ``"hyperoctahedral:m"``, a mapping with
    ``hyperoctahedral_cube``, or a mapping with ``n_coords`` and
    ``generators`` in one-line notation (1-based or 0-based).
    """
    if hasattr(spec, "model_dump"):
        spec = spec.model_dump(exclude_none=True)
    if isinstance(spec, str):
        return _group_from_text(spec, n_coords)
    if not isinstance(spec, Mapping):
        raise InputFormatError(f"unrecognised group specification {spec!r}")
    if spec.get("hyperoctahedral_cube") is not None:
        return hyperoctahedral_on_cube(int(spec["hyperoctahedral_cube"]))
    size = int(spec.get("n_coords") or n_coords or 0)
    generators = [[int(x) for x in g] for g in spec.get("generators") or []]
    if size <= 0:
        raise InputFormatError("group specification needs n_coords")
    if spec.get("trivial") or not generators:
        return trivial_group(size)
    zero_based = []
    for generator in generators:
        if sorted(generator) == list(range(1, size + 1)):
            zero_based.append([x - 1 for x in generator])
        else:
            zero_based.append(generator)
    try:
        return permutation_group(size, zero_based)
    except ValueError as err:
        raise InputFormatError(str(err)) from err


def _group_from_text(text: str, n_coords: int | None) -> CoordSymmetryGroup:
    text = text.strip().lower()
    if text == "trivial":
        if n_coords is None:
            raise InputFormatError("the trivial group needs the number of coordinates")
        return trivial_group(n_coords)
    if text.startswith("hyperoctahedral:"):
        return hyperoctahedral_on_cube(int(text.split(":", 1)[1]))
    raise InputFormatError(f"unrecognised group specification {text!r}")
