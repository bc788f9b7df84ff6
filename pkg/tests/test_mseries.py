"""Tests for four-variable series, the Boulet products and specialization."""

from collections import Counter

import pytest

from src.qpartitions.errors import NonUnitInverseError, ParameterValidationError, TruncationError
from src.qpartitions.forms import expand_form
from src.qpartitions.mseries import (
    MSeries,
    Q,
    boulet,
    decoration_sum,
    m_div_binomial,
    m_inverse,
    m_mul,
    m_mul_binomial,
    specialization_order,
    specialization_source_order,
    specialize,
)
from src.qpartitions.partitions import enumerate_by_norm
from src.qpartitions.presets import get_preset
from src.qpartitions.tally import tally
from src.qpartitions.weights import decoration


class TestMSeriesArithmetic:
    """Test construction and ring operations."""

    def test_from_terms_drops_zero_and_high_degree(self):
        ms = MSeries.from_terms({(1, 0, 0, 0): 2, (2, 2, 0, 0): 1, (0, 1, 0, 0): 0}, 3)
        assert ms.terms == {(1, 0, 0, 0): 2}

    def test_rejects_wrong_arity(self):
        with pytest.raises(ParameterValidationError):
            MSeries.from_terms({(1, 0): 1}, 3)

    def test_serialization_is_sorted(self):
        ms = MSeries.from_terms({(0, 1, 0, 0): 3, (1, 0, 0, 0): -1}, 2)
        assert ms.model_dump() == {"order": 2, "terms": [[[0, 1, 0, 0], 3], [[1, 0, 0, 0], -1]]}

    def test_subtraction_and_degree_slices(self):
        s = MSeries.from_terms({(1, 0, 0, 0): 2, (0, 1, 1, 0): 5}, 4)
        t = MSeries.from_terms({(1, 0, 0, 0): 2, (0, 0, 0, 2): 1}, 3)
        difference = s - t
        assert difference.order == 3
        assert difference.terms == {(0, 1, 1, 0): 5, (0, 0, 0, 2): -1}
        assert difference.terms_of_degree(2) == {(0, 1, 1, 0): 5, (0, 0, 0, 2): -1}
        assert difference.terms_of_degree(1) == {}
        assert (s - s).terms == {}

    def test_binomial_round_trip(self):
        one = MSeries.one(6)
        product = m_mul_binomial(one, 1, (1, 1, 0, 0))
        assert m_div_binomial(product, 1, (1, 1, 0, 0)) == one

    def test_inverse(self):
        s = m_mul_binomial(MSeries.one(8), -1, Q)
        assert m_mul(s, m_inverse(s)) == MSeries.one(8)

    def test_non_unit_inverse(self):
        with pytest.raises(NonUnitInverseError):
            m_inverse(MSeries.monomial((1, 0, 0, 0), 3))

    def test_div_by_constant_rejected(self):
        with pytest.raises(ParameterValidationError):
            m_div_binomial(MSeries.one(3), 1, (0, 0, 0, 0))


class TestBouletProducts:
    """Test the four-variable products against decorated diagram sums."""

    @pytest.mark.parametrize(("name", "preset"), [("psi", "D"), ("phi", "U")])
    def test_matches_decorated_diagrams(self, name, preset):
        assert boulet(name, 20) == decoration_sum(get_preset(preset), 20)

    def test_unknown_product(self):
        with pytest.raises(ParameterValidationError):
            boulet("chi", 4)

    def test_specialize_to_norm(self):
        psi = boulet("psi", 12)
        assert specialize(psi, (1, 1, 1, 1)) == expand_form("distinct", None, 12)
        phi = boulet("phi", 12)
        assert specialize(phi, {"a": 1, "b": 1, "c": 1, "d": 1}) == expand_form(
            "euler_inverse", None, 12
        )


class TestSpecialization:
    """Test substitution of q-powers for the four variables."""

    def test_order_follows_the_least_degree_ratio(self):
        psi = boulet("psi", 12)
        assert specialization_order(psi, (1, 1, 1, 1)) == 12
        assert specialization_order(psi, (1, 0, 1, 0)) == 6
        assert specialization_order(psi, (1, 1, 0, 0)) == 6
        assert specialization_order(boulet("psi", 8), (1, 0, 0, 0)) == 2
        assert specialization_order(boulet("psi", 16), (1, 0, 0, 0)) == 4
        assert specialization_order(psi, (0, 0, 0, 0)) == -1

    def test_source_order(self):
        assert specialization_source_order((1, 1, 1, 1), 10) == 10
        assert specialization_source_order((1, 0, 1, 0), 10) == 20
        assert specialization_source_order((1, 0, 0, 0), 4) == 16
        with pytest.raises(ParameterValidationError):
            specialization_source_order((0, 0, 0, 0), 4)

    def test_a_only_matches_decorated_count(self):
        # every distinct-part partition with at most 4 a-cells has norm <= 16
        counts = Counter(
            decoration(p).a_count
            for n in range(17)
            for p in enumerate_by_norm(get_preset("D"), n)
        )
        result = specialize(boulet("psi", 16), (1, 0, 0, 0))
        assert result.coeffs == tuple(counts[k] for k in range(5))
        assert result.coeffs == (1, 3, 7, 16, 32)
        assert specialize(boulet("psi", 8), (1, 0, 0, 0)).coeffs == (1, 3, 7)

    def test_a_only_beyond_valid_order(self):
        with pytest.raises(TruncationError) as exc_info:
            specialize(boulet("psi", 8), (1, 0, 0, 0), order=3)
        assert exc_info.value.context["valid_order"] == 2

    def test_all_variables_to_one(self):
        with pytest.raises(TruncationError):
            specialize(boulet("psi", 8), (0, 0, 0, 0))

    def test_odd_columns(self):
        # a, c count the dots in odd-numbered columns
        psi = boulet("psi", 12)
        assert specialize(psi, (1, 0, 1, 0)) == tally(get_preset("D"), "o-conj", "unit", 6)

    @pytest.mark.parametrize(
        ("name", "exponents", "form"),
        [
            ("psi", (1, 1, 0, 0), "euler_inverse"),
            ("phi", (1, 1, 0, 0), "unrestricted_sq"),
            ("psi", (1, 0, 1, 0), "distinct_sq"),
        ],
    )
    def test_named_specializations(self, name, exponents, form):
        source = boulet(name, specialization_source_order(exponents, 10))
        assert specialize(source, exponents, 10) == expand_form(form, None, 10)

    def test_beyond_valid_order(self):
        with pytest.raises(TruncationError) as exc_info:
            specialize(boulet("psi", 8), (1, 0, 1, 0), order=5)
        assert exc_info.value.context["valid_order"] == 4

    def test_rejects_unknown_variable(self):
        with pytest.raises(ParameterValidationError):
            specialize(boulet("psi", 4), {"e": 1})
