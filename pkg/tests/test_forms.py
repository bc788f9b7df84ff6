"""Tests for named product/sum forms and Pochhammer products."""

import os
from unittest.mock import patch

import pytest

from src.qpartitions.errors import (
    NonUnitInverseError,
    OrderLimitError,
    ParameterValidationError,
    UnknownFormError,
)
from src.qpartitions.forms import (
    expand_form,
    list_forms,
    product_form,
    sum_form,
    validate_order,
)
from src.qpartitions.pochhammer import (
    PochSpec,
    divide_by_pochhammer,
    pochhammer,
    q_poch,
    q_poch_inverse,
)
from src.qpartitions.series import Series, mul


class TestPochhammer:
    """Test Pochhammer expansion and division."""

    def test_finite_product(self):
        # (q; q)_2 = (1 - q)(1 - q^2)
        assert q_poch(1, 1, 2, 4).coeffs == (1, -1, -1, 1, 0)

    def test_negated_base(self):
        # (-q; q^2)_2 = (1 + q)(1 + q^3)
        assert q_poch(1, 2, 2, 4, sign=-1).coeffs == (1, 1, 0, 1, 1)

    def test_inverse_matches_division(self):
        product = q_poch(1, 1, None, 15)
        assert mul(product, q_poch_inverse(1, 1, None, 15)) == Series.one(15)

    def test_spec_from_dict(self):
        spec = {"sign": 1, "base": 1, "modulus": 1, "length": 3}
        assert pochhammer(spec, 6) == q_poch(1, 1, 3, 6)

    def test_invalid_spec(self):
        with pytest.raises(ParameterValidationError):
            pochhammer({"base": 1, "modulus": 0}, 5)
        with pytest.raises(ParameterValidationError):
            pochhammer({"base": (1, 0), "modulus": (1, 0)}, 5)

    def test_constant_factor_is_not_invertible(self):
        spec = PochSpec(base=(0,), modulus=(1,), length=2)
        with pytest.raises(NonUnitInverseError):
            divide_by_pochhammer(Series.one(4), spec)

    def test_variable_count_must_match(self):
        spec = PochSpec(base=(1, 0, 0, 0), modulus=(1, 1, 1, 1))
        with pytest.raises(ParameterValidationError):
            divide_by_pochhammer(Series.one(4), spec)


class TestNamedForms:
    """Test named forms and classical identities between them."""

    def test_partition_numbers(self):
        assert expand_form("euler_inverse", None, 10).coeffs == (
            1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42,
        )

    def test_pentagonal_numbers(self):
        assert expand_form("euler", None, 12).terms() == {
            0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1,
        }

    @pytest.mark.parametrize(
        ("left", "right"),
        [
            ("odd_parts", "distinct"),
            ("rr1_sum", "rr1_product"),
            ("rr2_sum", "rr2_product"),
            ("gauss_sq", "euler_inverse"),
        ],
    )
    def test_classical_identities(self, left, right):
        assert expand_form(left, None, 40) == expand_form(right, None, 40)

    def test_auluck_sum(self):
        assert expand_form("auluck_sum", None, 5).coeffs == (1, 0, 1, 2, 3, 4)

    def test_dyson_alternating(self):
        assert expand_form("dyson_alternating", None, 3).coeffs == (1, -1, 0, 1)

    def test_finite_rhs(self):
        s = expand_form("finite_rhs", {"M": 1, "k": 2, "m": 2}, 4)
        assert s.coeffs == (0, 0, 1, 2, 3)

    def test_corollary_sum_infinite(self):
        # m = 2, k = 1 gives exponents i^2
        assert expand_form("corollary_sum", {"k": 1, "m": 2}, 30) == expand_form(
            "gauss_sq", None, 30
        )

    def test_corollary_sum_finite(self):
        s = expand_form("corollary_sum", {"M": 1, "k": 1, "m": 2}, 4)
        assert s.coeffs == (1, 1, 2, 3, 4)

    def test_corollary_sum_needs_finite_m_without_growth(self):
        with pytest.raises(ParameterValidationError):
            expand_form("corollary_sum", {"k": 0, "m": 0}, 5)

    def test_distinct_sq_doubled(self):
        doubled = expand_form("distinct_sq_doubled", None, 10)
        single = expand_form("distinct_sq", None, 10)
        assert doubled.coeffs == tuple(2 * c for c in single.coeffs)


class TestFormLookup:
    """Test form registry lookup and parameter checks."""

    def test_list_forms_by_kind(self):
        products = list_forms("product")
        sums = list_forms("sum")
        assert "euler_inverse" in products and "euler_inverse" not in sums
        assert "rr1_sum" in sums
        assert set(products) | set(sums) == set(list_forms())

    def test_unknown_form(self):
        with pytest.raises(UnknownFormError) as exc_info:
            expand_form("rogers", None, 5)
        assert "euler_inverse" in exc_info.value.context["available"]

    def test_kind_mismatch(self):
        with pytest.raises(UnknownFormError):
            product_form("rr1_sum", None, 5)
        assert sum_form("rr1_sum", None, 5) == expand_form("rr1_sum", None, 5)

    @pytest.mark.parametrize(
        "params",
        [{"M": 1, "k": 2}, {"M": 1, "k": 2, "m": 2, "x": 1}, {"M": -1, "k": 2, "m": 2}],
    )
    def test_bad_parameters(self, params):
        with pytest.raises(ParameterValidationError):
            expand_form("finite_rhs", params, 5)


class TestOrderLimit:
    """Test the configured order ceiling."""

    def test_default_ceiling(self):
        with patch.dict(os.environ, {}, clear=True):
            assert validate_order(200) == 200
            with pytest.raises(OrderLimitError):
                validate_order(201)

    def test_custom_ceiling(self):
        with patch.dict(os.environ, {"QPARTITIONS_MAX_ORDER": "50"}, clear=True):
            with pytest.raises(OrderLimitError) as exc_info:
                expand_form("euler", None, 60)
        assert exc_info.value.context["limit_value"] == 50

    @pytest.mark.parametrize("order", [-1, True, "3"])
    def test_rejects_non_orders(self, order):
        with pytest.raises(ParameterValidationError):
            validate_order(order)
