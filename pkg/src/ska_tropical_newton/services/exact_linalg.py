"""
Exact integer and rational linear algebra.

Public operations take and return :class:`ExactMatrix` / :class:`ExactVector`.
The ``*_rows`` helpers work directly on lists of Python ints and back the hot
paths of the fan and hull services.
"""

import logging
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Sequence

from sympy import Matrix
from sympy.core.numbers import igcdex
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from ska_tropical_newton.common.custom_exceptions import (
    DimensionMismatch,
    Inconsistent,
    RankDrop,
    Underdetermined,
    ZeroLattice,
    ZeroVector,
)
from ska_tropical_newton.domain.exact_models import ExactMatrix, ExactVector, Number

LOGGER = logging.getLogger(__name__)


def integral_rows(rows: Sequence[Sequence[Number]]) -> list[list[int]]:
    """Scale every row by the lcm of its denominators (row space unchanged)."""
    scaled = []
    for row in rows:
        if all(isinstance(x, int) for x in row):
            scaled.append(list(row))
            continue
        row = [Fraction(x) for x in row]
        denominator = lcm(1, *(x.denominator for x in row))
        scaled.append([int(x * denominator) for x in row])
    return scaled


def fraction_free_echelon(
    rows: list[list[int]], pivot_limit: int | None = None
) -> list[int]:
    """
    Bareiss row echelon form, in place.

    Every entry produced is a minor of the input, so the divisions by the
    previous pivot are exact and intermediate growth stays polynomial.

    :param rows: integer matrix, modified in place
    :param pivot_limit: only columns below this index may hold pivots
        (augmented systems)
    :returns: the pivot columns, one per nonzero row of the echelon form
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    limit = n_cols if pivot_limit is None else pivot_limit
    previous = 1
    piv_r = 0
    pivots = []
    for piv_c in range(limit):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if rows[i_row][piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            rows[piv_r], rows[i_row] = rows[i_row], rows[piv_r]
        pivot_row = rows[piv_r]
        pivot = pivot_row[piv_c]
        for r in range(piv_r + 1, n_rows):
            row = rows[r]
            factor = row[piv_c]
            for c in range(piv_c + 1, n_cols):
                row[c] = (pivot * row[c] - factor * pivot_row[c]) // previous
            row[piv_c] = 0
        previous = pivot
        pivots.append(piv_c)
        piv_r += 1
    return pivots


def rank_rows(rows: Sequence[Sequence[Number]]) -> int:
    if not rows:
        return 0
    return len(fraction_free_echelon(integral_rows(rows)))


def pivot_columns(rows: Sequence[Sequence[Number]]) -> list[int]:
    """Indices of a maximal set of linearly independent columns."""
    if not rows:
        return []
    return fraction_free_echelon(integral_rows(rows))


def independent_rows(rows: Sequence[Sequence[Number]]) -> list[int]:
    """Indices of a maximal set of linearly independent rows (greedy, in order)."""
    if not rows:
        return []
    transposed = [list(column) for column in zip(*rows)]
    return pivot_columns(transposed)


def _back_substitute(
    echelon: list[list[int]], pivots: list[int], n_cols: int, rhs_col: int | None
) -> list[Fraction]:
    solution = [Fraction(0)] * n_cols
    for r in range(len(pivots) - 1, -1, -1):
        piv_c = pivots[r]
        row = echelon[r]
        s = Fraction(row[rhs_col]) if rhs_col is not None else Fraction(0)
        for c in range(piv_c + 1, n_cols):
            if row[c]:
                s -= row[c] * solution[c]
        solution[piv_c] = s / row[piv_c]
    return solution


def solve_many(
    rows: Sequence[Sequence[Number]], rhs_columns: Sequence[Sequence[Number]]
) -> list[tuple[Fraction, ...]]:
    """
    Solve ``M·x = b`` for several right-hand sides sharing one elimination.

    :raises Inconsistent: some right-hand side is not in the column space
    :raises Underdetermined: M has dependent columns
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    if any(len(column) != n_rows for column in rhs_columns):
        raise DimensionMismatch("right-hand side length differs from row count")
    augmented = integral_rows(
        [list(rows[i]) + [column[i] for column in rhs_columns] for i in range(n_rows)]
    )
    pivots = fraction_free_echelon(augmented, pivot_limit=n_cols)
    rank = len(pivots)
    for k in range(len(rhs_columns)):
        if any(augmented[r][n_cols + k] != 0 for r in range(rank, n_rows)):
            raise Inconsistent()
    if rank < n_cols:
        raise Underdetermined()
    return [
        tuple(_back_substitute(augmented, pivots, n_cols, n_cols + k))
        for k in range(len(rhs_columns))
    ]


def solve_rows(
    rows: Sequence[Sequence[Number]], rhs: Sequence[Number]
) -> tuple[Fraction, ...]:
    return solve_many(rows, [rhs])[0]


def project_onto_span(
    vector: Sequence[Number], basis: Sequence[Sequence[Number]]
) -> tuple[Fraction, ...]:
    """Orthogonal projection onto the span of linearly independent rows."""
    if not basis:
        return tuple(Fraction(0) for _ in vector)
    gram = [[sum(x * y for x, y in zip(u, v)) for v in basis] for u in basis]
    rhs = [sum(x * y for x, y in zip(u, vector)) for u in basis]
    coefficients = solve_rows(gram, rhs)
    return tuple(
        sum((c * Fraction(u[k]) for c, u in zip(coefficients, basis)), Fraction(0))
        for k in range(len(vector))
    )


def integer_inverse(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """
    Inverse of a square nonsingular integral matrix as ``(Q, D)``.

    ``Q / D`` is the inverse, ``D > 0``, and every entry of ``Q`` is an int.
    """
    size = len(rows)
    identity = [[1 if i == j else 0 for i in range(size)] for j in range(size)]
    columns = solve_many(rows, identity)
    denominator = lcm(1, *(x.denominator for column in columns for x in column))
    return (
        [[int(columns[j][i] * denominator) for j in range(size)] for i in range(size)],
        denominator,
    )


def primitive_ints(values: Sequence[Number]) -> tuple[int, ...]:
    """Positive rescaling of ``values`` to coprime integers."""
    if not any(values):
        raise ZeroVector()
    if all(isinstance(x, int) for x in values):
        ints = list(values)
    else:
        fractions = [Fraction(x) for x in values]
        denominator = lcm(1, *(x.denominator for x in fractions))
        ints = [int(x * denominator) for x in fractions]
    divisor = gcd(*ints)
    return tuple(x // divisor for x in ints)


def sign_normalized(values: tuple[int, ...]) -> tuple[int, ...]:
    """Flip the sign so that the first nonzero entry is positive."""
    for x in values:
        if x:
            return values if x > 0 else tuple(-y for y in values)
    return values


def kernel_rows(rows: Sequence[Sequence[Number]], n_cols: int) -> list[tuple[int, ...]]:
    """Primitive integral basis of the right kernel, first nonzero entry positive."""
    if not rows:
        echelon, pivots = [], []
    else:
        echelon = integral_rows(rows)
        pivots = fraction_free_echelon(echelon)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        solution = [Fraction(0)] * n_cols
        solution[free] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            piv_c = pivots[r]
            row = echelon[r]
            s = Fraction(0)
            for c in range(piv_c + 1, n_cols):
                if row[c] and solution[c]:
                    s -= row[c] * solution[c]
            solution[piv_c] = s / row[piv_c]
        basis.append(sign_normalized(primitive_ints(solution)))
    return basis


def hermite_rows(
    rows: Sequence[Sequence[int]],
) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """
    Row Hermite normal form with its unimodular transform.

    Column by column, the rows at and below the current pivot row are folded
    into the pivot row with 2x2 unimodular gcd steps, then the entries above
    the pivot are reduced into ``[0, pivot)``.

    :returns: ``(H, U, pivot_columns)`` with ``H = U·M``
    """
    h = [list(row) for row in rows]
    n_rows = len(h)
    n_cols = len(h[0]) if n_rows else 0
    u = [[1 if i == j else 0 for j in range(n_rows)] for i in range(n_rows)]
    pivots = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i in range(piv_r + 1, n_rows):
            b = h[i][piv_c]
            if b == 0:
                continue
            a = h[piv_r][piv_c]
            x, y, g = igcdex(a, b)
            p, q = -b // g, a // g
            for matrix in (h, u):
                top, bottom = matrix[piv_r], matrix[i]
                matrix[piv_r] = [x * s + y * t for s, t in zip(top, bottom)]
                matrix[i] = [p * s + q * t for s, t in zip(top, bottom)]
        pivot = h[piv_r][piv_c]
        if pivot == 0:
            continue
        if pivot < 0:
            h[piv_r] = [-s for s in h[piv_r]]
            u[piv_r] = [-s for s in u[piv_r]]
            pivot = -pivot
        for i in range(piv_r):
            q = h[i][piv_c] // pivot
            if q:
                h[i] = [s - q * t for s, t in zip(h[i], h[piv_r])]
                u[i] = [s - q * t for s, t in zip(u[i], u[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
    return h, u, pivots


def hermite_normal_form(m: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """
    Row Hermite normal form ``H = U·M`` of an integral matrix.

    :param m: integral matrix
    :returns: ``(H, U)`` with ``U`` unimodular; pivots of ``H`` are positive,
        entries above each pivot reduced modulo it, zero rows last
    """
    h, u, _ = hermite_rows(m.to_int_rows())
    return ExactMatrix.from_rows(h, m.cols), ExactMatrix.from_rows(u, m.rows)


def _gcd_maximal_minors_rows(rows: list[list[int]], n_cols: int) -> int:
    n_rows = len(rows)
    if n_rows < n_cols:
        rows = [list(column) for column in zip(*rows)] if rows else []
        n_rows, n_cols = n_cols, n_rows
    if n_cols == 0:
        return 1
    h, _, pivots = hermite_rows(rows)
    if len(pivots) < n_cols:
        return 0
    return prod(h[r][c] for r, c in enumerate(pivots))


def gcd_maximal_minors(m: ExactMatrix) -> int:
    """
    gcd of the absolute values of all maximal minors of an integral matrix.

    Left multiplication by a unimodular matrix preserves this gcd, so for a
    tall matrix it is the product of the Hermite pivots (0 when rank-deficient).
    A wide matrix is handled through its transpose.
    """
    return _gcd_maximal_minors_rows(m.to_int_rows(), m.cols)


def lattice_basis_columns(columns: Sequence[Sequence[int]]) -> list[list[int]]:
    """A basis (as columns) of the lattice generated by the given columns."""
    if not columns:
        return []
    h, _, pivots = hermite_rows([list(column) for column in columns])
    return [h[r] for r in range(len(pivots))]


def matmul_columns(
    a_rows: list[list[int]], columns: list[list[int]]
) -> list[list[int]]:
    return [
        [sum(x * y for x, y in zip(row, column)) for row in a_rows]
        for column in columns
    ]


def _columns_gcd(columns: list[list[int]]) -> int:
    if not columns:
        return 1
    rows = [list(row) for row in zip(*columns)]
    return _gcd_maximal_minors_rows(rows, len(columns))


def lattice_index(a: ExactMatrix, b: ExactMatrix) -> int:
    """
    Index of ``A(D)`` in ``span(A(D)) ∩ ℤ^d``, relative to the saturation of
    ``D``, where ``D`` is generated by the columns of ``b``.

    Computed as ``gcd_maximal_minors(A·B) / gcd_maximal_minors(B)`` for a
    basis ``B`` of ``D``.

    :raises ZeroLattice: the columns of ``b`` are all zero
    :raises RankDrop: ``rank(A·B) < rank(B)``
    """
    if a.cols != b.rows:
        raise DimensionMismatch(f"A has {a.cols} columns but B has {b.rows} rows")
    basis = lattice_basis_columns([list(map(int, c)) for c in b.column_list()])
    if not basis:
        raise ZeroLattice()
    image = matmul_columns(a.to_int_rows(), basis)
    if rank_rows([list(row) for row in zip(*image)]) < len(basis):
        raise RankDrop(
            f"the map sends a rank {len(basis)} lattice to a lower rank lattice"
        )
    return _columns_gcd(image) // _columns_gcd(basis)


def image_lattice_index(a: ExactMatrix, b: ExactMatrix) -> int:
    """
    Index of the lattice ``A(D)`` in the integer points of its real span,
    with no rank hypothesis. 1 means ``A(D)`` is a primitive sublattice.
    """
    if a.cols != b.rows:
        raise DimensionMismatch(f"A has {a.cols} columns but B has {b.rows} rows")
    generators = [list(map(int, c)) for c in b.column_list()]
    if not any(any(c) for c in generators):
        raise ZeroLattice()
    image = lattice_basis_columns(matmul_columns(a.to_int_rows(), generators))
    return _columns_gcd(image)


def solve_exact(m: ExactMatrix, b: ExactVector) -> ExactVector:
    """
    The unique ``x`` with ``M·x = b``.

    :raises Inconsistent: no solution
    :raises Underdetermined: more than one solution
    """
    if m.rows != b.dim:
        raise DimensionMismatch(f"{m.rows} equations but a {b.dim}-vector")
    return ExactVector(solve_rows(m.row_list(), b.entries))


def kernel_basis(m: ExactMatrix) -> list[ExactVector]:
    return [ExactVector(v) for v in kernel_rows(m.row_list(), m.cols)]


def make_primitive(v: ExactVector) -> ExactVector:
    """
    Positive rescaling of ``v`` to coprime integers.

    :raises ZeroVector: ``v`` is zero
    """
    return ExactVector(primitive_ints(v.entries))


def rank(m: ExactMatrix) -> int:
    return rank_rows(m.row_list())


def smith_index_oracle(m: ExactMatrix) -> int:
    """
    Product of the elementary divisors of an integral full-column-rank matrix.

    An independent check of :func:`gcd_maximal_minors`, computed through
    sympy's Smith normal form.
    """
    matrix = Matrix(m.to_int_rows())
    if matrix.rank() < m.cols:
        raise RankDrop("the matrix does not have full column rank")
    factors = invariant_factors(matrix, domain=ZZ)
    return prod(abs(int(f)) for f in factors if f != 0)
