"""
Tropical images under monomial maps.

Minkowski sums of weighted fans are computed as images of product fans under
``A = (I | I)``; the weight of an image cone is evaluated at an interior
sample point by the push-forward formula, summing lattice indices over the
fiber.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Optional, Sequence

from ska_tropical_newton.common.constant import (
    MAX_SAMPLE_RETRIES,
    PERTURBATION_SPREAD,
)
from ska_tropical_newton.common.custom_exceptions import (
    DimensionMismatch,
    Inconsistent,
    InfiniteFiber,
    NonIntegralResult,
    NonPrimitiveImage,
    NotInLineality,
    SampleExhausted,
)
from ska_tropical_newton.common.utils import parallel_map, perturbation_vector
from ska_tropical_newton.domain.exact_models import ExactMatrix, ExactVector
from ska_tropical_newton.domain.fan_models import (
    MonomialMapSpec,
    TropicalCollection,
    WeightedCone,
)
from ska_tropical_newton.services.exact_linalg import (
    gcd_maximal_minors,
    hermite_rows,
    image_lattice_index,
    lattice_basis_columns,
    matmul_columns,
    rank_rows,
    solve_rows,
)
from ska_tropical_newton.services.fan_core import (
    canonical_lineality,
    canonicalize,
    cone_system,
    integral_point,
    reduce_rays,
    system_membership,
    triangulate_cone,
)

LOGGER = logging.getLogger(__name__)

IntVector = tuple[int, ...]
Fiber = tuple[ExactVector, WeightedCone, int]


def _ints(vectors: Sequence[ExactVector]) -> list[IntVector]:
    return [v.to_ints() for v in vectors]


def product_fan(T1: TropicalCollection, T2: TropicalCollection) -> TropicalCollection:
    """
    All products ``σ × τ`` in ``R^(n1 + n2)``, weighted ``m_σ · m_τ``.

    Cones are ordered with ``σ`` outer, so the product of cones ``i`` and
    ``j`` has index ``i * len(T2) + j``.
    """
    n1, n2 = T1.ambient_dim, T2.ambient_dim
    left = [tuple(r) + (0,) * n2 for r in _ints(T1.lineality)]
    right = [(0,) * n1 + tuple(r) for r in _ints(T2.lineality)]
    cones = []
    for sigma in T1.cones:
        for tau in T2.cones:
            rays = [tuple(r) + (0,) * n2 for r in _ints(sigma.rays)] + [
                (0,) * n1 + tuple(r) for r in _ints(tau.rays)
            ]
            cones.append(
                WeightedCone(
                    rays=tuple(ExactVector(r) for r in rays),
                    multiplicity=sigma.multiplicity * tau.multiplicity,
                    ambient_dim=n1 + n2,
                )
            )
    LOGGER.debug("Product of %d and %d cones", len(T1), len(T2))
    return TropicalCollection(
        n1 + n2, tuple(ExactVector(v) for v in left + right), tuple(cones)
    )


def image_lattice(spec: MonomialMapSpec) -> list[IntVector]:
    """A basis of ``A(Λ)`` as columns; empty without a source lattice."""
    if spec.source_lattice is None or spec.source_lattice.cols == 0:
        return []
    generators = [list(map(int, c)) for c in spec.source_lattice.column_list()]
    image = matmul_columns(spec.matrix.to_int_rows(), generators)
    return [tuple(c) for c in lattice_basis_columns(image)]


def check_primitive_image(spec: MonomialMapSpec) -> None:
    """
    :raises NonPrimitiveImage: ``A(Λ)`` is not saturated in its span
    """
    if spec.source_lattice is None or spec.source_lattice.cols == 0:
        return
    index = image_lattice_index(spec.matrix, spec.source_lattice)
    if index > 1:
        raise NonPrimitiveImage(index=index)


def minkowski_image(
    T: TropicalCollection, spec: MonomialMapSpec, target_dim: Optional[int] = None
) -> TropicalCollection:
    """
    The cones ``A(σ)`` of dimension ``target_dim`` (default ``d - 1``).

    Lower dimensional images are discarded, non-simplicial images are
    triangulated and the result is canonicalized. Multiplicities are left
    at 0; they are assigned point by point with
    :func:`pushforward_multiplicity`.
    """
    if T.ambient_dim != spec.source_dim:
        raise DimensionMismatch(
            f"map from dimension {spec.source_dim} applied to a collection in"
            f" dimension {T.ambient_dim}"
        )
    d = spec.target_dim
    target = d - 1 if target_dim is None else target_dim
    a_rows = spec.matrix.to_int_rows()
    lineality_image = lattice_basis_columns(matmul_columns(a_rows, _ints(T.lineality)))
    lineality = canonical_lineality(lineality_image)
    lineality_rows = _ints(lineality)
    cones: list[WeightedCone] = []
    discarded = 0
    for cone in T.cones:
        rays = [tuple(c) for c in matmul_columns(a_rows, _ints(cone.rays))]
        if rank_rows(rays + lineality_rows) < target:
            discarded += 1
            continue
        cones.extend(triangulate_cone(rays, lineality, 0, d))
    LOGGER.info(
        "Minkowski image: %d cones kept, %d lower dimensional discarded",
        len(cones),
        discarded,
    )
    return canonicalize(TropicalCollection(d, lineality, tuple(cones)))


def _columns_rank(columns: Sequence[Sequence[int]]) -> int:
    return rank_rows([list(c) for c in columns])


def pushforward_multiplicity(
    w: ExactVector,
    fibers: Sequence[Fiber],
    w_cone_span: Optional[ExactMatrix],
    spec: MonomialMapSpec,
) -> int:
    """
    Weight of the image at a regular point ``w``.

    ``m_w = (1/δ) Σ m_v · [L_w ∩ Z^d : A(L_v ∩ Z^r)]`` over the fiber, with
    every index taken modulo the lineality lattices: the gcd of the maximal
    minors of ``(A·R_v | Λ')`` divided by that of ``(R_v | Λ)``.

    :param w: the regular point in the image
    :param fibers: ``(v, σ_v, m_v)`` for a complete set of fiber points
    :param w_cone_span: basis columns of the span of the image cone at ``w``
    :raises InfiniteFiber: ``A`` is not injective on some ``σ_v`` modulo Λ
    :raises NonIntegralResult: the sum is not divisible by δ
    """
    d, r = spec.target_dim, spec.source_dim
    if w.dim != d:
        raise DimensionMismatch(f"point of dim {w.dim} in a target of dim {d}")
    if not fibers:
        raise NonIntegralResult("the fiber list is empty")
    a_rows = spec.matrix.to_int_rows()
    source_lattice = (
        [tuple(map(int, c)) for c in spec.source_lattice.column_list()]
        if spec.source_lattice is not None
        else []
    )
    target_lattice = image_lattice(spec)
    span = (
        [tuple(map(int, c)) for c in w_cone_span.column_list()]
        if w_cone_span is not None
        else None
    )
    total = Fraction(0)
    for v, cone, multiplicity in fibers:
        rays = _ints(cone.rays)
        image = [tuple(c) for c in matmul_columns(a_rows, rays)] + target_lattice
        image_rank = _columns_rank(image)
        if image_rank < len(image):
            raise InfiniteFiber(f"the map is not finite on the cone of fiber point {v}")
        if span is not None and not (
            _columns_rank(span) == image_rank == _columns_rank(image + span)
        ):
            raise DimensionMismatch(
                f"the image of the cone of fiber point {v} does not span L_w"
            )
        numerator = gcd_maximal_minors(ExactMatrix.from_columns(image, d))
        denominator = gcd_maximal_minors(
            ExactMatrix.from_columns(rays + source_lattice, r)
        )
        total += multiplicity * Fraction(numerator, denominator)
    if total.denominator != 1 or total.numerator % spec.delta:
        raise NonIntegralResult(
            f"fiber sum {total} at {w} is not divisible by delta={spec.delta}"
        )
    return total.numerator // spec.delta


@dataclass(frozen=True)
class _PairSum:
    sigma: int
    tau: int
    generators: tuple[IntVector, ...]
    n_rays: int
    full: bool
    independent: bool


@dataclass(frozen=True)
class _SquareContext:
    source: TropicalCollection
    product: TropicalCollection
    image: TropicalCollection
    spec: MonomialMapSpec
    pairs: tuple[_PairSum, ...]
    seed: int


def _pair_sums(T: TropicalCollection) -> tuple[_PairSum, ...]:
    target = T.ambient_dim - 1
    lineality = _ints(T.lineality)
    pairs = []
    for i, sigma in enumerate(T.cones):
        for j, tau in enumerate(T.cones):
            rays = _ints(sigma.rays) + _ints(tau.rays)
            generators = tuple(rays + lineality)
            rank = rank_rows(generators)
            pairs.append(
                _PairSum(
                    sigma=i,
                    tau=j,
                    generators=generators,
                    n_rays=len(rays),
                    full=rank >= target,
                    independent=rank == len(generators),
                )
            )
    return tuple(pairs)


def sample_point(cone: WeightedCone, seed: int, attempt: int) -> tuple[Fraction, ...]:
    """
    A relative interior point ``Σ (1 + ε_j) r_j`` with small seeded ``ε_j``.
    """
    if not cone.rays:
        return tuple(Fraction(0) for _ in range(cone.ambient_dim))
    noise = perturbation_vector(seed, len(cone.rays), attempt)
    scale = 8 * (PERTURBATION_SPREAD + 1)
    weights = [1 + Fraction(x, scale) for x in noise]
    return tuple(
        sum((c * ray[k] for c, ray in zip(weights, cone.rays)), Fraction(0))
        for k in range(cone.ambient_dim)
    )


def _is_regular(ctx: _SquareContext, index: int, point: IntVector) -> bool:
    cone = ctx.image.cones[index]
    normal = cone_system(cone, ctx.image.lineality).normal
    for other_index, other in enumerate(ctx.image.cones):
        if other_index == index:
            continue
        system = cone_system(other, ctx.image.lineality)
        inside, interior = system_membership(system, point)
        if inside and (system.normal != normal or not interior):
            return False
    for pair in ctx.pairs:
        if pair.full:
            continue
        if rank_rows(pair.generators + (point,)) == rank_rows(pair.generators):
            return False
    return True


def _fiber_pairs(ctx: _SquareContext, point: IntVector) -> Optional[list[Fiber]]:
    """Fibers over ``point``, or None when it sits on a pair boundary."""
    n = ctx.source.ambient_dim
    fibers = []
    for pair in ctx.pairs:
        if not pair.full:
            continue
        columns = pair.generators
        rows = [[g[k] for g in columns] for k in range(n)]
        if not pair.independent:
            if rank_rows(columns + (point,)) == rank_rows(columns):
                raise InfiniteFiber(
                    f"cones {pair.sigma} and {pair.tau} sum to a lower dimensional"
                    " cone than their product"
                )
            continue
        try:
            coefficients = solve_rows(rows, point)
        except Inconsistent:
            continue
        ray_part = coefficients[: pair.n_rays]
        if any(c < 0 for c in ray_part):
            continue
        if any(c == 0 for c in ray_part):
            return None
        sigma = ctx.source.cones[pair.sigma]
        n_sigma = len(sigma.rays)
        left = [
            sum(c * ray[k] for c, ray in zip(ray_part[:n_sigma], sigma.rays))
            for k in range(n)
        ]
        right = [
            sum(
                c * ray[k]
                for c, ray in zip(ray_part[n_sigma:], ctx.source.cones[pair.tau].rays)
            )
            for k in range(n)
        ]
        product_cone = ctx.product.cones[pair.sigma * len(ctx.source) + pair.tau]
        fibers.append(
            (ExactVector(tuple(left + right)), product_cone, product_cone.multiplicity)
        )
    return fibers


def _cone_multiplicity(ctx: _SquareContext, index: int) -> int:
    cone = ctx.image.cones[index]
    span = _ints(cone.rays) + _ints(ctx.image.lineality)
    span_matrix = ExactMatrix.from_columns(span, ctx.image.ambient_dim)
    for attempt in range(MAX_SAMPLE_RETRIES):
        sample = sample_point(cone, ctx.seed + index, attempt)
        point = integral_point(sample)
        if not _is_regular(ctx, index, point):
            LOGGER.debug("Sample %d for image cone %d is not regular", attempt, index)
            continue
        fibers = _fiber_pairs(ctx, point)
        if fibers is None:
            continue
        return pushforward_multiplicity(
            ExactVector(point), fibers, span_matrix, ctx.spec
        )
    raise SampleExhausted(
        f"no regular sample point for image cone {index} in"
        f" {MAX_SAMPLE_RETRIES} attempts"
    )


def hadamard_square(
    T: TropicalCollection, delta: int = 1, seed: int = 0, parallelism: int = 1
) -> TropicalCollection:
    """
    The weighted Minkowski sum ``T + T``, the tropicalization of ``X · X``.

    Composes :func:`product_fan`, :func:`minkowski_image` under
    ``A = (I | I)`` and assigns every image cone the push-forward weight at a
    seeded regular sample point, summing over all ordered pairs ``(σ, τ)``
    whose sum contains it.

    :param delta: degree of ``X × X -> X · X``; 2 for the square of a curve
        whose points commute under the swap
    :raises NonPrimitiveImage: the image of the lineality lattice is not
        saturated
    :raises SampleExhausted: no regular sample point was found for a cone
    """
    if delta == 1:
        LOGGER.warning("Hadamard square with delta=1; pass the map degree if known")
    n = T.ambient_dim
    T = canonicalize(T)
    product = product_fan(T, T)
    a_rows = [[1 if j in (i, i + n) else 0 for j in range(2 * n)] for i in range(n)]
    source_lattice = (
        ExactMatrix.from_columns(_ints(product.lineality), 2 * n)
        if product.lineality
        else None
    )
    spec = MonomialMapSpec(
        matrix=ExactMatrix.from_rows(a_rows, 2 * n),
        delta=delta,
        source_lattice=source_lattice,
    )
    check_primitive_image(spec)
    image = minkowski_image(product, spec)
    ctx = _SquareContext(
        source=T,
        product=product,
        image=image,
        spec=spec,
        pairs=_pair_sums(T),
        seed=seed,
    )
    multiplicities = parallel_map(
        partial(_cone_multiplicity, ctx), range(len(image)), parallelism
    )
    cones = tuple(
        cone.with_multiplicity(m) for cone, m in zip(image.cones, multiplicities)
    )
    LOGGER.info(
        "Hadamard square: %d cones, multiplicities %s",
        len(cones),
        sorted(set(multiplicities)),
    )
    return TropicalCollection(n, image.lineality, cones)


def quotient_by_lineality(T: TropicalCollection, L: ExactMatrix) -> TropicalCollection:
    """
    Project ``T`` along the lattice spanned by the columns of ``L``.

    The projection is the bottom block of the unimodular transform that puts
    ``L`` in Hermite form, so its kernel is exactly the span of ``L``.

    :raises NotInLineality: some column of ``L`` is not in the lineality span
    """
    columns = [tuple(map(int, c)) for c in L.column_list() if any(c)]
    if not columns:
        return T
    if L.rows != T.ambient_dim:
        raise DimensionMismatch(f"{L.rows}-dim vectors for ambient {T.ambient_dim}")
    lineality = _ints(T.lineality)
    base_rank = rank_rows(lineality)
    for column in columns:
        if rank_rows(lineality + [column]) > base_rank:
            raise NotInLineality(f"{column} is not in the lineality span")
    k = rank_rows(columns)
    _, unimodular, _ = hermite_rows([[c[i] for c in columns] for i in range(L.rows)])
    projection = unimodular[k:]

    def project(vector: Sequence[int]) -> IntVector:
        return tuple(sum(p * x for p, x in zip(row, vector)) for row in projection)

    n = T.ambient_dim - k
    new_lineality = canonical_lineality(
        lattice_basis_columns([project(v) for v in lineality])
    )
    cones = tuple(
        WeightedCone(
            rays=tuple(
                reduce_rays([project(r) for r in _ints(cone.rays)], new_lineality)
            ),
            multiplicity=cone.multiplicity,
            ambient_dim=n,
        )
        for cone in T.cones
    )
    LOGGER.info("Quotient by a rank %d lattice: ambient %d -> %d", k, T.ambient_dim, n)
    return canonicalize(TropicalCollection(n, new_lineality, cones))
