"""Tests for truncated power series arithmetic."""

import os
from unittest.mock import patch

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.qpartitions.errors import (
    CoefficientOverflowError,
    NonUnitInverseError,
    ParameterValidationError,
)
from src.qpartitions.series import (
    Series,
    coefficient_bits,
    div_binomial,
    first_difference,
    inverse,
    mul,
    mul_binomial,
    scale,
    shift,
    truncate,
)

coeff_lists = st.lists(st.integers(-50, 50), min_size=1, max_size=12)


class TestSeriesConstruction:
    """Test series construction and shape checks."""

    def test_from_coeffs_pads_and_cuts(self):
        assert Series.from_coeffs([1, 2], 4).coeffs == (1, 2, 0, 0, 0)
        assert Series.from_coeffs([1, 2, 3, 4], 1).coeffs == (1, 2)

    def test_from_terms(self):
        s = Series.from_terms({0: 1, 3: -2, 9: 5}, 4)
        assert s.coeffs == (1, 0, 0, -2, 0)
        assert s.terms() == {0: 1, 3: -2}

    def test_from_terms_rejects_negative_exponent(self):
        with pytest.raises(ParameterValidationError):
            Series.from_terms({-1: 1}, 3)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            Series(order=3, coeffs=(1, 2))

    def test_serialization(self):
        s = Series.monomial(2, 3, coefficient=-4)
        assert s.model_dump() == {"order": 3, "coeffs": (0, 0, -4, 0)}
        assert s.to_dict() == {"order": 3, "coeffs": [0, 0, -4, 0]}


class TestSeriesArithmetic:
    """Test ring operations and truncation."""

    def test_mixed_orders_truncate_to_smaller(self):
        s = Series.from_coeffs([1, 1, 1, 1], 3) + Series.from_coeffs([1, 1], 1)
        assert s.order == 1
        assert s.coeffs == (2, 2)

    def test_truncate(self):
        s = Series.from_coeffs([1, 2, 3], 2)
        assert truncate(s, 1).coeffs == (1, 2)
        with pytest.raises(ParameterValidationError):
            truncate(s, 3)

    def test_shift_keeps_order(self):
        assert shift(Series.from_coeffs([1, 2, 3], 2), 1).coeffs == (0, 1, 2)
        with pytest.raises(ParameterValidationError):
            shift(Series.one(2), -1)

    def test_geometric_inverse(self):
        one_minus_q = Series.from_coeffs([1, -1], 6)
        assert inverse(one_minus_q).coeffs == (1,) * 7

    def test_inverse_of_negative_unit(self):
        s = Series.from_coeffs([-1, 1], 4)
        assert mul(s, inverse(s)) == Series.one(4)

    def test_non_unit_inverse(self):
        with pytest.raises(NonUnitInverseError) as exc_info:
            inverse(Series.from_coeffs([2, 1], 3))
        assert exc_info.value.context["constant_term"] == 2

    def test_binomials(self):
        s = mul_binomial(Series.one(5), -1, 2)
        assert s.coeffs == (1, 0, -1, 0, 0, 0)
        assert div_binomial(s, -1, 2) == Series.one(5)
        with pytest.raises(ParameterValidationError):
            div_binomial(s, -1, 0)

    def test_first_difference(self):
        a = Series.from_coeffs([1, 2, 3, 4], 3)
        assert first_difference(a, a) is None
        assert first_difference(a, Series.from_coeffs([1, 2, 0, 4], 3)) == 2
        assert first_difference(a, Series.from_coeffs([1, 2], 1)) is None

    @given(coeff_lists, coeff_lists)
    def test_mul_commutes(self, xs, ys):
        order = min(len(xs), len(ys)) - 1
        a, b = Series.from_coeffs(xs, order), Series.from_coeffs(ys, order)
        assert mul(a, b) == mul(b, a)

    @given(coeff_lists)
    def test_inverse_round_trip(self, xs):
        s = Series.from_coeffs([1] + xs, len(xs))
        assert mul(s, inverse(s)) == Series.one(len(xs))

    @given(coeff_lists, st.integers(-5, 5))
    def test_scale_distributes(self, xs, factor):
        s = Series.from_coeffs(xs, len(xs) - 1)
        assert scale(s + s, factor) == scale(s, factor) + scale(s, factor)


class TestCoefficientWidth:
    """Test the configured coefficient width."""

    def setup_method(self):
        coefficient_bits.cache_clear()

    def teardown_method(self):
        coefficient_bits.cache_clear()

    def test_default_width(self):
        with patch.dict(os.environ, {}, clear=True):
            assert coefficient_bits() == 64

    def test_overflow_raises(self):
        with patch.dict(os.environ, {}, clear=True):
            with pytest.raises(CoefficientOverflowError):
                Series.from_coeffs([2**63], 0)
            with pytest.raises(CoefficientOverflowError):
                inverse(Series.from_coeffs([1, -2], 70))

    def test_wider_width(self):
        with patch.dict(os.environ, {"QPARTITIONS_COEFF_BITS": "128"}, clear=True):
            assert inverse(Series.from_coeffs([1, -2], 70)).coeffs[70] == 2**70
