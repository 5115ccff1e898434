"""
Double description method in exact integer arithmetic.

Rays are kept primitive; each ray carries the bitmask of processed
constraints it is tight on, and two rays are combined only when they are
adjacent by the combinatorial test.
"""

import logging
from typing import Sequence

from ska_tropical_newton.common.constant import DD_MAX_DIM, DD_MAX_RAYS
from ska_tropical_newton.common.custom_exceptions import ScaleExceeded
from ska_tropical_newton.services.exact_linalg import (
    independent_rows,
    integer_inverse,
    primitive_ints,
)

LOGGER = logging.getLogger(__name__)

IntVector = tuple[int, ...]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _adjacent(zero_sets: list[int], p: int, q: int, dim: int) -> bool:
    common = zero_sets[p] & zero_sets[q]
    if common.bit_count() < dim - 2:
        return False
    for t, zeros in enumerate(zero_sets):
        if t != p and t != q and zeros & common == common:
            return False
    return True


def extreme_rays(constraints: Sequence[Sequence[int]], dim: int) -> list[IntVector]:
    """
    Extreme rays of the pointed cone ``{x : a·x >= 0 for every a}``.

    :param constraints: integral rows ``a``; they must have rank ``dim``
    :param dim: ambient dimension
    :returns: primitive extreme rays, sorted
    :raises ScaleExceeded: beyond the desk-scale limits
    """
    if dim > DD_MAX_DIM or len(constraints) > DD_MAX_RAYS:
        raise ScaleExceeded(
            f"double description limited to {DD_MAX_RAYS} constraints in"
            f" dimension {DD_MAX_DIM}; got {len(constraints)} in {dim}"
        )
    rows = sorted({primitive_ints(tuple(a)) for a in constraints if any(a)})
    basis = independent_rows(rows)
    if len(basis) < dim:
        raise ValueError("constraints do not define a pointed cone")
    inverse, _ = integer_inverse([rows[i] for i in basis])
    rays = [
        primitive_ints(tuple(inverse[r][j] for r in range(dim))) for j in range(dim)
    ]
    zero_sets = [
        sum(1 << basis[k] for k in range(dim) if k != j) for j in range(dim)
    ]
    processed = set(basis)
    for c, a in enumerate(rows):
        if c in processed:
            continue
        values = [_dot(a, ray) for ray in rays]
        positive = [k for k, v in enumerate(values) if v > 0]
        negative = [k for k, v in enumerate(values) if v < 0]
        next_rays, next_zero_sets = [], []
        for k, v in enumerate(values):
            if v >= 0:
                next_rays.append(rays[k])
                tight = 1 << c if v == 0 else 0
                next_zero_sets.append(zero_sets[k] | tight)
        for p in positive:
            for q in negative:
                if not _adjacent(zero_sets, p, q, dim):
                    continue
                combined = tuple(
                    values[p] * y - values[q] * x for x, y in zip(rays[p], rays[q])
                )
                next_rays.append(primitive_ints(combined))
                next_zero_sets.append((zero_sets[p] & zero_sets[q]) | (1 << c))
        rays, zero_sets = next_rays, next_zero_sets
        processed.add(c)
    LOGGER.debug("Double description: %d constraints -> %d rays", len(rows), len(rays))
    return sorted(set(rays))


def cone_facets(
    rays: Sequence[Sequence[int]], coords: Sequence[int]
) -> list[IntVector]:
    """
    Facet normals of ``cone(rays)`` inside the span of the rays.

    :param coords: coordinates on which the rays are linearly independent
        as a set spanning ``len(coords)`` dimensions
    :returns: inward normals ``y`` in those coordinates (``y·r >= 0``)
    """
    local = [tuple(ray[c] for c in coords) for ray in rays]
    return extreme_rays(local, len(coords))
