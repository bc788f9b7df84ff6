"""Tests for partition weights and the decoration count."""

import logging
import os
from unittest.mock import patch

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.qpartitions.errors import DomainError, ParameterValidationError
from src.qpartitions.partitions import EMPTY, enumerate_by_norm, make_partition, min_partition
from src.qpartitions.presets import get_preset
from src.qpartitions.statistics import statistic
from src.qpartitions.weights import (
    HAT1,
    SIGN,
    TILDE1,
    TILDE2,
    UNIT,
    WeightId,
    WeightTag,
    decoration,
    parse_weight,
    weight,
    weight_identity_check,
)


class TestParseWeight:
    """Test weight tag parsing."""

    def test_plain_tags(self):
        assert parse_weight("unit") == UNIT
        assert parse_weight("TILDE2") == TILDE2
        assert parse_weight("sign") == SIGN
        assert parse_weight(HAT1) is HAT1

    def test_omega(self):
        w = parse_weight("omega:1,2")
        assert w.tag is WeightTag.OMEGA_KM
        assert (w.k, w.m) == (1, 2)
        assert w.label == "omega:1,2"
        assert parse_weight("omega_km:2,2") == WeightId.omega(2, 2)

    @pytest.mark.parametrize("text", ["rank", "omega:1", "omega:a,b", "omega:-1,2", "tilde1:3"])
    def test_rejects_malformed(self, text):
        with pytest.raises(ParameterValidationError):
            parse_weight(text)


class TestWeightValues:
    """Test weight values on known partitions."""

    def test_omega_on_rr1(self):
        assert weight("omega:1,2", make_partition([6, 3, 1])) == 2

    def test_omega_off_domain_is_zero(self):
        assert weight("omega:1,2", make_partition([3, 2])) == 0

    def test_hat1(self):
        assert weight(HAT1, make_partition([5, 3, 2])) == 2

    def test_sign(self):
        assert weight(SIGN, make_partition([3, 2, 1])) == -1
        assert weight(SIGN, make_partition([2, 1])) == 1

    def test_empty_partition(self):
        assert weight(TILDE1, EMPTY) == 0
        for w in (UNIT, TILDE2, HAT1, SIGN, WeightId.omega(1, 2)):
            assert weight(w, EMPTY) == 1

    def test_minimal_partition_has_weight_one(self):
        for M in range(1, 5):
            for k in range(1, 4):
                for m in range(4):
                    assert weight(WeightId.omega(k, m), min_partition(M, k, m)) == 1

    def test_weight_relations_on_rr1(self):
        rr1 = get_preset("RR1")
        for n in range(41):
            for p in enumerate_by_norm(rr1, n):
                assert weight_identity_check(p)
                assert weight(TILDE2, p) == weight("omega:2,2", p) - weight(TILDE1, p)

    def test_omega_is_positive_on_its_domain(self):
        for M in range(6):
            for k in range(1, 4):
                for m in range(4):
                    spec = get_preset("PMkm", M=M, k=k, m=m)
                    w = WeightId.omega(k, m)
                    for n in range(31):
                        assert all(weight(w, p) >= 1 for p in enumerate_by_norm(spec, n))


class TestWeightDomain:
    """Test domain checks in permissive and strict modes."""

    def test_permissive_mode_warns(self, caplog):
        with patch.dict(os.environ, {"QPARTITIONS_STRICT_MODE": "false"}):
            with caplog.at_level(logging.WARNING):
                value = weight("omega:1,2", make_partition([3, 2]), domain=get_preset("RR1"))
        assert value == 0
        assert "outside its domain" in caplog.text

    def test_strict_mode_raises(self):
        with patch.dict(os.environ, {"QPARTITIONS_STRICT_MODE": "true"}):
            with pytest.raises(DomainError):
                weight("omega:1,2", make_partition([3, 2]), domain=get_preset("RR1"))

    def test_member_passes_silently(self):
        with patch.dict(os.environ, {"QPARTITIONS_STRICT_MODE": "true"}):
            assert weight("omega:1,2", make_partition([6, 3, 1]), domain=get_preset("RR1")) == 2


class TestDecoration:
    """Test the four-letter decoration count."""

    def test_known_partition(self):
        counts = decoration(make_partition([4, 4, 2, 1, 1]))
        assert counts.exponent() == (4, 3, 3, 2)

    def test_empty(self):
        assert decoration(EMPTY).exponent() == (0, 0, 0, 0)

    @given(st.lists(st.integers(1, 9), max_size=6))
    def test_letters_cover_every_dot(self, values):
        p = make_partition(sorted(values, reverse=True))
        a, b, c, d = decoration(p).exponent()
        assert a + b + c + d == p.norm
        assert a + b == sum(p.parts[0::2])
        assert c + d == sum(p.parts[1::2])

    def test_letters_split_row_sums(self):
        for n in range(31):
            for p in enumerate_by_norm(get_preset("U"), n):
                a, b, c, d = decoration(p).exponent()
                assert a + b == statistic("o", p)
                assert c + d == statistic("e", p)
                assert a >= b and c >= d and a >= c and b >= d
