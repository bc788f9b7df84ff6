"""Tests for the identity registry and its recipes."""

from collections import Counter

import pytest
from pydantic import ValidationError

from src.qpartitions.errors import ParameterValidationError, UnknownIdentityError
from src.qpartitions.forms import expand_form
from src.qpartitions.identities import (
    PARAMETERIZED_FAMILIES,
    CrankRecipe,
    EnumerationRecipe,
    FormRef,
    Identity,
    SeriesRecipe,
    corollary_sum,
    finite_weighted,
    get_identity,
    graded_weight_change_sum,
    instantiate,
    list_identity_ids,
    minimal_odd_index_sum,
    perturb,
    registry,
    select_identities,
    weight_change,
    weight_change_grid,
)
from src.qpartitions.partitions import (
    EMPTY,
    Partition,
    enumerate_by_norm,
    make_partition,
    member,
    project_odd_indexed,
)
from src.qpartitions.presets import get_preset
from src.qpartitions.statistics import CrankRelation, statistic
from src.qpartitions.tally import tally
from src.qpartitions.weights import TILDE1, WeightId, weight


class TestRegistry:
    """Test registry contents and lookup."""

    def test_sorted_and_unique(self):
        ids = list_identity_ids()
        assert ids == sorted(ids)
        assert len(ids) == len(set(ids))

    @pytest.mark.parametrize(
        "identity_id",
        [
            "euler",
            "rr1_combinatorial",
            "rr2_combinatorial",
            "alladi_weighted",
            "rr2_crank",
            "auluck_dyson",
            "even_distinct_crank",
            "ali2_unrestricted",
            "ali2_distinct_conj",
            "boulet_psi",
            "boulet_phi",
            "finite_weighted(M=2,k=1,m=2)",
            "corollary_sum(M=inf,k=1,m=2)",
            "weight_change(l=1,v=0)",
        ],
    )
    def test_registered(self, identity_id):
        assert get_identity(identity_id).id == identity_id

    @pytest.mark.parametrize(
        ("alias", "identity_id"),
        [
            ("odd_index_unrestricted", "ali2_unrestricted"),
            ("odd_index_conjugate_distinct", "ali2_distinct_conj"),
        ],
    )
    def test_aliases(self, alias, identity_id):
        assert get_identity(alias) is get_identity(identity_id)
        assert alias not in list_identity_ids()

    def test_unknown_identity(self):
        with pytest.raises(UnknownIdentityError) as exc_info:
            get_identity("fermat")
        assert "euler" in exc_info.value.context["available"]

    def test_select_by_pattern(self):
        selected = select_identities("finite_weighted(*")
        assert len(selected) == 5 * 3 * 4
        assert all(ident.id.startswith("finite_weighted(") for ident in selected)
        assert select_identities("all") == registry()
        assert select_identities("nothing*") == []

    def test_experimental_flags(self):
        experimental = {ident.id for ident in registry() if ident.experimental}
        assert experimental == {"e_variant_distinct", "e_variant_hat"}

    def test_multivariate_caps(self):
        psi = get_identity("boulet_psi")
        assert psi.multivariate
        assert psi.max_order is not None
        assert psi.effective_order(1000) == psi.max_order
        assert get_identity("boulet_psi_odd").max_order == psi.max_order // 2
        assert not get_identity("euler").multivariate
        assert get_identity("euler").effective_order(30) == 30

    def test_summary(self):
        summary = get_identity("rr2_crank").summary()
        assert summary["id"] == "rr2_crank"
        assert summary["rhs"] == "partitions with crank >= 0"
        assert summary["oracle"] == "auluck_sum"
        assert summary["experimental"] is False


class TestIdentityModel:
    """Test side independence and recipe validation."""

    def test_sides_must_be_independent(self):
        with pytest.raises(ValidationError):
            Identity(
                id="same",
                statement="a series equals itself",
                lhs=SeriesRecipe(factors=(FormRef(name="euler"),)),
                rhs=SeriesRecipe(factors=(FormRef(name="euler"),)),
            )

    def test_sides_share_a_ring(self):
        boulet = get_identity("boulet_psi")
        with pytest.raises(ValidationError):
            Identity(
                id="mixed",
                statement="mixed rings",
                lhs=boulet.lhs,
                rhs=SeriesRecipe(factors=(FormRef(name="distinct"),)),
            )

    def test_series_recipe_needs_factors(self):
        with pytest.raises(ValidationError):
            SeriesRecipe(factors=())

    def test_correction_validation(self):
        recipe = CrankRecipe(relation=CrankRelation.EQ, bound=0, correction={1: -1, 3: 0})
        assert recipe.correction == {1: -1}
        with pytest.raises(ValidationError):
            CrankRecipe(relation=CrankRelation.EQ, bound=0, correction={-1: 1})

    def test_discriminated_round_trip(self):
        ident = get_identity("tilde1_pos_crank")
        restored = Identity.model_validate(ident.model_dump())
        assert isinstance(restored.lhs, EnumerationRecipe)
        assert isinstance(restored.rhs, CrankRecipe)
        assert restored.rhs.correction == {1: 1}

    def test_recipe_build(self):
        recipe = get_identity("euler").oracle
        assert recipe is not None
        assert recipe.build(10) == expand_form("distinct", None, 10)


class TestParameterizedFamilies:
    """Test families instantiated outside the default grid."""

    def test_finite_weighted_sides(self):
        ident = finite_weighted(2, 1, 2)
        assert ident.id == "finite_weighted(M=2,k=1,m=2)"
        assert ident.lhs.build(20) == ident.rhs.build(20)

    def test_instantiate_outside_grid(self):
        ident = instantiate("finite_weighted", {"M": 6, "k": 1, "m": 2})
        assert ident.id == "finite_weighted(M=6,k=1,m=2)"
        assert ident.lhs.build(40) == ident.rhs.build(40)

    def test_corollary_sum_defaults_to_infinite(self):
        ident = instantiate("corollary_sum", {"k": 1, "m": 2})
        assert ident.id == "corollary_sum(M=inf,k=1,m=2)"
        assert ident == corollary_sum(None, 1, 2)

    def test_instantiate_errors(self):
        with pytest.raises(UnknownIdentityError):
            instantiate("euler", {"M": 1})
        with pytest.raises(ParameterValidationError):
            instantiate("finite_weighted", {"M": 1, "k": 1})

    def test_weight_change_validation(self):
        with pytest.raises(ParameterValidationError):
            weight_change(1, 2)
        with pytest.raises(ParameterValidationError):
            weight_change(-1, 0)

    def test_families_listed(self):
        assert set(PARAMETERIZED_FAMILIES) == {"finite_weighted", "corollary_sum", "weight_change"}


class TestGradedWeightChange:
    """Test the graded sum over the weight_change grid."""

    def test_minimal_odd_index_sum(self):
        assert minimal_odd_index_sum(0) == 0
        assert minimal_odd_index_sum(1) == 1
        assert minimal_odd_index_sum(4) == 6
        assert minimal_odd_index_sum(8) == 20

    def test_grid(self):
        grid = weight_change_grid(20)
        assert (4, 0) in grid
        assert (4, 1) not in grid
        assert (5, 0) not in grid
        assert grid[:2] == [(0, 0), (0, 1)]

    def test_graded_sum_covers_distinct_parts(self):
        assert graded_weight_change_sum(20) == tally(get_preset("D"), "o", "unit", 20)


class TestPerturb:
    """Test deliberately broken copies of identities."""

    def test_perturb_adds_to_rhs(self):
        ident = get_identity("euler")
        broken = perturb(ident, 5, delta=2)
        assert broken.id == "euler~perturbed"
        assert broken.rhs.build(8)[5] == ident.rhs.build(8)[5] + 2
        assert broken.lhs == ident.lhs

    def test_perturb_combines_with_existing_correction(self):
        broken = perturb(get_identity("tilde1_pos_crank"), 1, delta=-1)
        assert broken.rhs.correction == {}

    def test_perturb_rejects_bad_input(self):
        with pytest.raises(ParameterValidationError):
            perturb(get_identity("boulet_psi"), 2)
        with pytest.raises(ParameterValidationError):
            perturb(get_identity("euler"), -1)


class TestOddIndexedProjection:
    """Projecting 2l+v distinct parts onto their odd-indexed parts."""

    @pytest.mark.parametrize(
        ("l", "v"), [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0)]
    )
    def test_preimages_count_the_weight(self, l, v):  # noqa: E741
        order = 14
        source = get_preset("D_l", l=2 * l + v)
        target = get_preset("PMkm", M=l + v, k=2 - v, m=2)
        target_weight = TILDE1 if v else WeightId.omega(2, 2)

        # a preimage has norm at most twice the norm of its image
        preimages: Counter[Partition] = Counter()
        for n in range(2 * order + 1):
            for p in enumerate_by_norm(source, n):
                image = project_odd_indexed(p)
                assert image.norm == statistic("o", p)
                assert member(target, image)
                if image.norm <= order:
                    preimages[image] += 1

        for n in range(order + 1):
            for image in enumerate_by_norm(target, n):
                assert preimages[image] == weight(target_weight, image)

    def test_known_projection(self):
        assert project_odd_indexed(make_partition([9, 7, 4, 2, 1])).parts == (9, 4, 1)
        assert project_odd_indexed(EMPTY) == EMPTY
