import logging
import random
from typing import Callable, Iterable, Sequence, TypeVar

from tqdm.contrib.concurrent import process_map

from ska_tropical_newton.common.constant import PERTURBATION_SPREAD

LOGGER = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def perturbation_vector(
    seed: int, dim: int, attempt: int, spread: int = PERTURBATION_SPREAD
) -> tuple[int, ...]:
    """
    Deterministic pseudo-random integral vector for the given attempt.

    Args:
        seed (int): The run seed every source of randomness derives from.
        dim (int): Length of the vector.
        attempt (int): Retry counter; each attempt draws a fresh vector.
        spread (int): Entries are drawn from [-spread, spread].

    Returns:
        tuple[int, ...]: A nonzero integral vector.
    """
    rng = random.Random(seed * 1_000_003 + attempt)
    while True:
        vector = tuple(rng.randint(-spread, spread) for _ in range(dim))
        if any(vector):
            return vector


def chunked(items: Sequence[T], chunks: int) -> list[Sequence[T]]:
    """Split into at most ``chunks`` contiguous, order-preserving slices."""
    if not items:
        return []
    chunks = max(1, min(chunks, len(items)))
    size, extra = divmod(len(items), chunks)
    slices = []
    start = 0
    for index in range(chunks):
        stop = start + size + (1 if index < extra else 0)
        slices.append(items[start:stop])
        start = stop
    return slices


def parallel_map(
    func: Callable[[T], R], items: Iterable[T], parallelism: int = 1
) -> list[R]:
    """
    Ordered map over ``items``, in worker processes when ``parallelism > 1``.

    ``func`` must be picklable (a module level function or a partial of one).
    Results come back in input order, so reductions over them are
    deterministic whatever the worker count. The progress bar shows only
    while debug logging is on.
    """
    items = list(items)
    if parallelism <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    LOGGER.debug("Dispatching %d tasks to %d workers", len(items), parallelism)
    return process_map(
        func,
        items,
        max_workers=parallelism,
        chunksize=1,
        disable=not LOGGER.isEnabledFor(logging.DEBUG),
    )


def parse_int_list(text: str) -> list[int]:
    """Parse ``"2,-1,0"`` into ``[2, -1, 0]``."""
    parts = [part.strip() for part in text.strip().strip("[]()").split(",")]
    return [int(part) for part in parts if part]
