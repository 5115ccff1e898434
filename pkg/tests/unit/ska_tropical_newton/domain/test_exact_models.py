from fractions import Fraction

import pytest

from ska_tropical_newton.common.custom_exceptions import DimensionMismatch
from ska_tropical_newton.domain.exact_models import ExactMatrix, ExactVector


class TestExactVector:
    def test_entries_become_fractions(self):
        v = ExactVector((1, Fraction(1, 2)))

        assert v.entries == (Fraction(1), Fraction(1, 2))
        assert not v.is_integral
        assert v.denominator() == 2
        assert v.scaled_to_integral() == (2, 1)

    def test_floats_are_refused(self):
        with pytest.raises(TypeError):
            ExactVector((0.5, 1))

    def test_arithmetic(self):
        u = ExactVector.of([1, 2, 3])
        v = ExactVector.unit(3, 1)

        assert u + v == ExactVector.of([1, 3, 3])
        assert u - v == ExactVector.of([1, 1, 3])
        assert -u == ExactVector.of([-1, -2, -3])
        assert u.scale(2) == ExactVector.of([2, 4, 6])
        assert u.dot(v) == 2
        assert ExactVector.zero(3).is_zero()

    def test_primitive(self):
        assert ExactVector.of([2, 3]).is_primitive
        assert not ExactVector.of([2, 4]).is_primitive
        assert not ExactVector.zero(2).is_primitive

    def test_to_ints_requires_integral_entries(self):
        with pytest.raises(ValueError):
            ExactVector((Fraction(1, 3),)).to_ints()

    def test_vectors_hash_by_value(self):
        assert len({ExactVector.of([1, 0]), ExactVector((Fraction(2, 2), 0))}) == 1


class TestExactMatrix:
    def test_rows_and_columns(self):
        m = ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6]])

        assert (m.rows, m.cols) == (2, 3)
        assert m.column(1) == (2, 5)
        assert m.transpose() == ExactMatrix.from_columns([[1, 2, 3], [4, 5, 6]])
        assert m[1, 2] == 6

    def test_matmul_and_apply(self):
        m = ExactMatrix.from_rows([[1, 1], [1, -1]])

        assert m.matmul(ExactMatrix.identity(2)) == m
        assert m.apply([1, 1]) == ExactVector.of([2, 0])

    def test_shape_mismatch(self):
        m = ExactMatrix.from_rows([[1, 2]])

        with pytest.raises(DimensionMismatch):
            m.apply([1, 2, 3])
        with pytest.raises(DimensionMismatch):
            m.matmul(m)

    def test_ragged_rows_are_refused(self):
        with pytest.raises(ValueError):
            ExactMatrix.from_rows([[1, 2], [3]])
