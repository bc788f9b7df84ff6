"""Identity registry.

Each identity is an equation between two independently built sides. A side
is a recipe: a weighted sum over a partition set (row summation), a crank
class count, a product of named forms, a specialized four-variable product,
the four-variable product itself, or the decorated-diagram enumeration.
Finite correction polynomials (the +q / -q terms) are data on the recipe.

The registry is built once and is read-only afterwards.
"""

import fnmatch
import logging
from functools import lru_cache
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .config import get_multivariate_order
from .errors import ParameterValidationError, UnknownIdentityError
from .forms import expand_form
from .mseries import MSeries, boulet, decoration_sum, specialization_source_order, specialize
from .partitions import ConstraintSpec
from .presets import get_preset
from .series import Series, add, mul, scale
from .statistics import CrankRelation, StatisticId, crank_class_series
from .tally import tally
from .utils.timing_utils import timed_operation
from .weights import HAT1, SIGN, TILDE1, TILDE2, UNIT, WeightId

logger = logging.getLogger(__name__)


def _correction_series(correction: dict[int, int], order: int) -> Series:
    return Series.from_terms(correction, order)


class _Recipe(BaseModel):
    model_config = ConfigDict(frozen=True)

    correction: dict[int, int] = Field(
        default_factory=dict,
        description="Finite polynomial added to the side, exponent -> coefficient",
    )

    @field_validator("correction")
    @classmethod
    def validate_correction(cls, v: dict[int, int]) -> dict[int, int]:
        if any(exponent < 0 for exponent in v):
            raise ValueError("correction exponents must be >= 0")
        return {e: c for e, c in v.items() if c}

    def _corrected(self, s: Series) -> Series:
        if not self.correction:
            return s
        return add(s, _correction_series(self.correction, s.order))


class EnumerationRecipe(_Recipe):
    """scale * sum over members p of spec of weight(p) q^stat(p)."""

    kind: Literal["enumeration"] = "enumeration"
    set_label: str
    spec: ConstraintSpec
    stat: StatisticId = StatisticId.NORM
    weight: WeightId = UNIT
    scale: int = 1

    def build(self, order: int) -> Series:
        s = tally(self.spec, self.stat, self.weight, order)
        if self.scale != 1:
            s = scale(s, self.scale)
        return self._corrected(s)

    def paths(self) -> set[str]:
        return {f"tally:{self.set_label}:{self.stat.value}:{self.weight.label}"}

    def describe(self) -> str:
        text = f"sum over {self.set_label} of {self.weight.label} q^{self.stat.value}"
        return f"{self.scale}*({text})" if self.scale != 1 else text


class CrankRecipe(_Recipe):
    """Number of partitions of n with crank (relation) bound."""

    kind: Literal["crank"] = "crank"
    relation: CrankRelation
    bound: int

    def build(self, order: int) -> Series:
        return self._corrected(crank_class_series(self.relation, self.bound, order))

    def paths(self) -> set[str]:
        return {f"crank:{self.relation.value}{self.bound}"}

    def describe(self) -> str:
        return f"partitions with crank {self.relation.value} {self.bound}"


class FormRef(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    params: dict[str, int] = Field(default_factory=dict)

    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.name}({inner})"


class SeriesRecipe(_Recipe):
    """scale * product of named product/sum forms."""

    kind: Literal["series"] = "series"
    factors: tuple[FormRef, ...]
    scale: int = 1

    @field_validator("factors")
    @classmethod
    def validate_factors(cls, v: tuple[FormRef, ...]) -> tuple[FormRef, ...]:
        if not v:
            raise ValueError("a series recipe needs at least one form")
        return v

    def build(self, order: int) -> Series:
        result = expand_form(self.factors[0].name, self.factors[0].params, order)
        for factor in self.factors[1:]:
            result = mul(result, expand_form(factor.name, factor.params, order))
        if self.scale != 1:
            result = scale(result, self.scale)
        return self._corrected(result)

    def paths(self) -> set[str]:
        return {f"form:{factor.label()}" for factor in self.factors}

    def describe(self) -> str:
        text = " * ".join(factor.label() for factor in self.factors)
        return f"{self.scale}*{text}" if self.scale != 1 else text


class SpecializedRecipe(_Recipe):
    """A four-variable product with a, b, c, d sent to powers of q."""

    kind: Literal["specialized"] = "specialized"
    product: Literal["phi", "psi"]
    exponents: tuple[int, int, int, int]

    def build(self, order: int) -> Series:
        source_order = specialization_source_order(self.exponents, order)
        source = boulet(self.product, source_order)
        return self._corrected(specialize(source, self.exponents, order))

    def paths(self) -> set[str]:
        return {f"boulet:{self.product}"}

    def describe(self) -> str:
        args = ",".join(f"q^{e}" if e else "1" for e in self.exponents)
        return f"{self.product}({args})"


class BouletRecipe(_Recipe):
    """The four-variable product itself."""

    kind: Literal["boulet"] = "boulet"
    product: Literal["phi", "psi"]

    def build(self, order: int) -> MSeries:
        return boulet(self.product, order)

    def paths(self) -> set[str]:
        return {f"boulet:{self.product}"}

    def describe(self) -> str:
        return f"{self.product}(a,b,c,d)"


class DecorationRecipe(_Recipe):
    """Sum of decorated-diagram monomials over a partition set, by listing."""

    kind: Literal["decoration"] = "decoration"
    set_label: str
    spec: ConstraintSpec

    def build(self, order: int) -> MSeries:
        return decoration_sum(self.spec, order)

    def paths(self) -> set[str]:
        return {f"decoration:{self.set_label}"}

    def describe(self) -> str:
        return f"decorated diagrams of {self.set_label}"


Recipe = Annotated[
    EnumerationRecipe
    | CrankRecipe
    | SeriesRecipe
    | SpecializedRecipe
    | BouletRecipe
    | DecorationRecipe,
    Field(discriminator="kind"),
]

MULTIVARIATE_KINDS = frozenset({"boulet", "decoration"})


class Identity(BaseModel):
    """A registered equation lhs = rhs with an optional third oracle build."""

    model_config = ConfigDict(frozen=True)

    id: str
    statement: str
    params: dict[str, int | None] = Field(default_factory=dict)
    lhs: Recipe
    rhs: Recipe
    oracle: Recipe | None = None
    max_order: int | None = Field(
        None,
        ge=0,
        description="Highest order this identity is checked to",
    )
    experimental: bool = False

    @model_validator(mode="after")
    def check_independence(self) -> "Identity":
        if self.lhs.paths() & self.rhs.paths():
            raise ValueError(
                f"identity {self.id}: both sides share a builder "
                f"{sorted(self.lhs.paths() & self.rhs.paths())}",
            )
        lhs_multi = self.lhs.kind in MULTIVARIATE_KINDS
        if lhs_multi != (self.rhs.kind in MULTIVARIATE_KINDS):
            raise ValueError(f"identity {self.id}: sides live in different rings")
        return self

    @property
    def multivariate(self) -> bool:
        return self.lhs.kind in MULTIVARIATE_KINDS

    def effective_order(self, order: int) -> int:
        return order if self.max_order is None else min(order, self.max_order)

    def summary(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "statement": self.statement,
            "lhs": self.lhs.describe(),
            "rhs": self.rhs.describe(),
            "oracle": self.oracle.describe() if self.oracle else None,
            "max_order": self.max_order,
            "experimental": self.experimental,
        }


def _enum(
    set_name: str,
    stat: StatisticId = StatisticId.NORM,
    weight: WeightId = UNIT,
    correction: dict[int, int] | None = None,
    scale_by: int = 1,
    **params: int,
) -> EnumerationRecipe:
    label = set_name
    if params:
        label += "(" + ",".join(f"{k}={v}" for k, v in params.items()) + ")"
    return EnumerationRecipe(
        set_label=label,
        spec=get_preset(set_name, **params),
        stat=stat,
        weight=weight,
        scale=scale_by,
        correction=correction or {},
    )


def _forms(
    *names: str | tuple[str, dict[str, int]],
    correction: dict[int, int] | None = None,
    scale_by: int = 1,
) -> SeriesRecipe:
    factors = []
    for name in names:
        if isinstance(name, tuple):
            factors.append(FormRef(name=name[0], params=name[1]))
        else:
            factors.append(FormRef(name=name))
    return SeriesRecipe(factors=tuple(factors), scale=scale_by, correction=correction or {})


def _crank(relation: str, bound: int, correction: dict[int, int] | None = None) -> CrankRecipe:
    return CrankRecipe(
        relation=CrankRelation.parse(relation),
        bound=bound,
        correction=correction or {},
    )


def _param_id(family: str, params: dict[str, int | None]) -> str:
    inner = ",".join(f"{k}={'inf' if v is None else v}" for k, v in params.items())
    return f"{family}({inner})"


def finite_weighted(M: int, k: int, m: int) -> Identity:
    """Exactly M parts, smallest >= k, gaps >= m, weighted by omega_{k,m}."""
    params = {"M": M, "k": k, "m": m}
    return Identity(
        id=_param_id("finite_weighted", params),
        statement=(
            "Sum over P_M(k,m) of omega_{k,m}(p) q^|p| equals "
            "q^(m*C(M,2)+k*M)/(q;q)_M^2"
        ),
        params=params,
        lhs=_enum("PMkm", weight=WeightId.omega(k, m), M=M, k=k, m=m),
        rhs=_forms(("finite_rhs", params)),
    )


def corollary_sum(M: int | None, k: int, m: int) -> Identity:
    """At most M parts (any number when M is None), weighted by omega_{k,m}."""
    params: dict[str, int | None] = {"M": M, "k": k, "m": m}
    if M is None:
        lhs = EnumerationRecipe(
            set_label=f"P(k={k},m={m})",
            spec=ConstraintSpec(min_smallest=max(k, 1), min_gap=m),
            weight=WeightId.omega(k, m),
        )
        form_params = {"k": k, "m": m}
    else:
        lhs = _enum("PleMkm", weight=WeightId.omega(k, m), M=M, k=k, m=m)
        form_params = {"M": M, "k": k, "m": m}
    return Identity(
        id=_param_id("corollary_sum", params),
        statement=(
            "Sum over partitions with at most M parts, smallest >= k and gaps >= m "
            "of omega_{k,m}(p) q^|p| equals sum_{i<=M} q^(m*C(i,2)+k*i)/(q;q)_i^2"
        ),
        params=params,
        lhs=lhs,
        rhs=_forms(("corollary_sum", form_params)),
    )


def weight_change(l: int, v: int) -> Identity:  # noqa: E741
    """Distinct parts, 2l+v of them, by odd-indexed sum vs P_{l+v}(2-v,2) by norm."""
    if v not in (0, 1) or l < 0:
        raise ParameterValidationError(
            f"weight_change needs l >= 0 and v in {{0, 1}}, got l={l}, v={v}",
            parameter="v",
            value=v,
        )
    params = {"l": l, "v": v}
    target_weight = TILDE1 if v else WeightId.omega(2, 2)
    return Identity(
        id=_param_id("weight_change", params),
        statement=(
            "Partitions into exactly 2l+v distinct parts counted by odd-indexed sum "
            "equal P_{l+v}(2-v,2) weighted by (1-v)*omega_{2,2} + v*tilde1"
        ),
        params=params,
        lhs=_enum("D_l", stat=StatisticId.ODD_INDEX_SUM, l=2 * l + v),
        rhs=_enum("PMkm", weight=target_weight, M=l + v, k=2 - v, m=2),
    )


PARAMETERIZED_FAMILIES = {
    "finite_weighted": (finite_weighted, ["M", "k", "m"]),
    "corollary_sum": (corollary_sum, ["M", "k", "m"]),
    "weight_change": (weight_change, ["l", "v"]),
}


def instantiate(family: str, params: dict[str, int]) -> Identity:
    """Instantiate a parameterized identity outside the default grid.

    ``corollary_sum`` treats a missing M as the infinite sum.

    Raises:
        UnknownIdentityError: If family is not parameterized
        ParameterValidationError: On missing parameters
    """
    if family not in PARAMETERIZED_FAMILIES:
        raise UnknownIdentityError(
            f"Unknown identity family: {family}",
            name=family,
            available=sorted(PARAMETERIZED_FAMILIES),
        )
    builder, names = PARAMETERIZED_FAMILIES[family]
    kwargs: dict[str, int | None] = {}
    for name in names:
        if name in params:
            kwargs[name] = params[name]
        elif family == "corollary_sum" and name == "M":
            kwargs[name] = None
        else:
            raise ParameterValidationError(
                f"Identity family {family} needs parameter {name}",
                parameter=name,
            )
    return builder(**kwargs)


def minimal_odd_index_sum(parts: int) -> int:
    """Smallest odd-indexed sum over partitions into `parts` distinct parts."""
    # Attained by (parts, parts-1, ..., 1).
    return sum(range(parts, 0, -2))


def weight_change_grid(order: int) -> list[tuple[int, int]]:
    """Every (l, v) whose left side has a term of degree <= order."""
    grid = []
    l = 0  # noqa: E741
    while minimal_odd_index_sum(2 * l) <= order:
        for v in (0, 1):
            if minimal_odd_index_sum(2 * l + v) <= order:
                grid.append((l, v))
        l += 1  # noqa: E741
    return grid


def graded_weight_change_sum(order: int) -> Series:
    """Sum of the left sides of weight_change(l, v) over weight_change_grid(order).

    Grading distinct-part partitions by their number of parts, this adds back
    up to the odd-indexed-sum series of all distinct-part partitions.
    """
    total = Series.zero(order)
    for l, v in weight_change_grid(order):  # noqa: E741
        total = add(total, weight_change(l, v).lhs.build(order))
    return total


def _multivariate_identities() -> list[Identity]:
    cap = get_multivariate_order()
    half = cap // 2
    return [
        Identity(
            id="boulet_psi",
            statement=(
                "Decorated diagrams of distinct-part partitions sum to "
                "(-a,-abc;Q)_inf/(ab;Q)_inf"
            ),
            lhs=DecorationRecipe(set_label="D", spec=get_preset("D")),
            rhs=BouletRecipe(product="psi"),
            max_order=cap,
        ),
        Identity(
            id="boulet_phi",
            statement=(
                "Decorated diagrams of all partitions sum to "
                "(-a,-abc;Q)_inf/(ab,ac,Q;Q)_inf"
            ),
            lhs=DecorationRecipe(set_label="U", spec=get_preset("U")),
            rhs=BouletRecipe(product="phi"),
            max_order=cap,
        ),
        Identity(
            id="boulet_psi_odd",
            statement="psi(q,q,1,1) equals 1/(q;q)_inf",
            lhs=SpecializedRecipe(product="psi", exponents=(1, 1, 0, 0)),
            rhs=_forms("euler_inverse"),
            oracle=_enum("D", stat=StatisticId.ODD_INDEX_SUM),
            max_order=half,
        ),
        Identity(
            id="boulet_phi_odd",
            statement="phi(q,q,1,1) equals 1/(q;q)_inf^2",
            lhs=SpecializedRecipe(product="phi", exponents=(1, 1, 0, 0)),
            rhs=_forms("unrestricted_sq"),
            oracle=_enum("U", stat=StatisticId.ODD_INDEX_SUM),
            max_order=half,
        ),
        Identity(
            id="boulet_psi_conj",
            statement="psi(q,1,q,1) equals (-q;q)_inf^2",
            lhs=SpecializedRecipe(product="psi", exponents=(1, 0, 1, 0)),
            rhs=_forms("distinct_sq"),
            oracle=_enum("D", stat=StatisticId.ODD_INDEX_SUM_OF_CONJUGATE),
            max_order=half,
        ),
    ]


def _default_identities() -> list[Identity]:
    o = StatisticId.ODD_INDEX_SUM
    o_conj = StatisticId.ODD_INDEX_SUM_OF_CONJUGATE
    e_conj = StatisticId.EVEN_INDEX_SUM_OF_CONJUGATE
    identities = [
        Identity(
            id="euler",
            statement="Partitions into distinct parts equal partitions into odd parts",
            lhs=_enum("D"),
            rhs=_enum("odd_parts"),
            oracle=_forms("distinct"),
        ),
        Identity(
            id="euler_distinct_product",
            statement="Partitions into distinct parts are generated by (-q;q)_inf",
            lhs=_enum("D"),
            rhs=_forms("distinct"),
        ),
        Identity(
            id="euler_odd_product",
            statement="Partitions into odd parts are generated by 1/(q;q^2)_inf",
            lhs=_enum("odd_parts"),
            rhs=_forms("odd_parts"),
        ),
        Identity(
            id="euler_products",
            statement="(-q;q)_inf equals 1/(q;q^2)_inf",
            lhs=_forms("distinct"),
            rhs=_forms("odd_parts"),
        ),
        Identity(
            id="gauss_sq",
            statement="sum_n q^(n^2)/(q;q)_n^2 equals 1/(q;q)_inf",
            lhs=_forms("gauss_sq"),
            rhs=_forms("euler_inverse"),
            oracle=_enum("U"),
        ),
        Identity(
            id="rr1_sum_product",
            statement="sum_n q^(n^2)/(q;q)_n equals 1/(q,q^4;q^5)_inf",
            lhs=_forms("rr1_sum"),
            rhs=_forms("rr1_product"),
            oracle=_enum("RR1"),
        ),
        Identity(
            id="rr2_sum_product",
            statement="sum_n q^(n^2+n)/(q;q)_n equals 1/(q^2,q^3;q^5)_inf",
            lhs=_forms("rr2_sum"),
            rhs=_forms("rr2_product"),
            oracle=_enum("RR2"),
        ),
        Identity(
            id="rr1_combinatorial",
            statement="Partitions with gaps >= 2 equal partitions into parts = +-1 mod 5",
            lhs=_enum("RR1"),
            rhs=_enum("C1hat"),
            oracle=_forms("rr1_product"),
        ),
        Identity(
            id="rr2_combinatorial",
            statement=(
                "Partitions with gaps >= 2 and no part 1 equal partitions into "
                "parts = +-2 mod 5"
            ),
            lhs=_enum("RR2"),
            rhs=_enum("C2hat"),
            oracle=_forms("rr2_product"),
        ),
        Identity(
            id="alladi_weighted",
            statement="Gap >= 2 partitions weighted by omega_{1,2} count all partitions",
            lhs=_enum("RR1", weight=WeightId.omega(1, 2)),
            rhs=_enum("U"),
            oracle=_forms("euler_inverse"),
        ),
        Identity(
            id="odd_index_distinct",
            statement=(
                "Distinct-part partitions counted by odd-indexed sum equal all "
                "partitions counted by norm"
            ),
            lhs=_enum("D", stat=o),
            rhs=_enum("U"),
            oracle=_forms("euler_inverse"),
        ),
        Identity(
            id="rr2_crank",
            statement=(
                "RR2 weighted by omega_{2,2} counts partitions with non-negative crank"
            ),
            lhs=_enum("RR2", weight=WeightId.omega(2, 2)),
            rhs=_crank(">=", 0),
            oracle=_forms("auluck_sum"),
        ),
        Identity(
            id="auluck_dyson",
            statement=(
                "sum_i q^(i^2+i)/(q;q)_i^2 equals "
                "(1/(q;q)_inf) * sum_i (-1)^i q^C(i+1,2)"
            ),
            lhs=_forms("auluck_sum"),
            rhs=_forms("euler_inverse", "dyson_alternating"),
            oracle=_crank(">=", 0),
        ),
        Identity(
            id="tilde1_neg_crank",
            statement="RR1 weighted by tilde1 counts partitions with crank <= -1",
            lhs=_enum("RR1", weight=TILDE1),
            rhs=_crank("<=", -1),
        ),
        Identity(
            id="tilde1_pos_crank",
            statement="RR1 weighted by tilde1 equals q plus the count of crank >= 1",
            lhs=_enum("RR1", weight=TILDE1),
            rhs=_crank(">=", 1, correction={1: 1}),
        ),
        Identity(
            id="tilde2_zero_crank",
            statement="RR1 weighted by tilde2 equals -q plus the count of crank = 0",
            lhs=_enum("RR1", weight=TILDE2),
            rhs=_crank("=", 0, correction={1: -1}),
        ),
        Identity(
            id="even_distinct_crank",
            statement=(
                "An even number of distinct parts, counted by odd-indexed sum, "
                "equals partitions with non-negative crank"
            ),
            lhs=_enum("D_e", stat=o),
            rhs=_crank(">=", 0),
        ),
        Identity(
            id="odd_distinct_crank",
            statement=(
                "An odd number of distinct parts, counted by odd-indexed sum, "
                "equals partitions with negative crank"
            ),
            lhs=_enum("D_o", stat=o),
            rhs=_crank("<=", -1),
        ),
        Identity(
            id="signed_distinct_crank",
            statement=(
                "Distinct parts signed by (-1)^parts, counted by odd-indexed sum, "
                "equal -q plus the count of crank = 0"
            ),
            lhs=_enum("D", stat=o, weight=SIGN),
            rhs=_crank("=", 0, correction={1: -1}),
        ),
        Identity(
            id="ali2_unrestricted",
            statement="All partitions counted by odd-indexed sum give 1/(q;q)_inf^2",
            lhs=_enum("U", stat=o),
            rhs=_forms("unrestricted_sq"),
            oracle=_enum("U", weight=WeightId.omega(0, 0)),
        ),
        Identity(
            id="ali2_distinct_conj",
            statement=(
                "Distinct parts counted by the odd-indexed sum of the conjugate "
                "give (-q;q)_inf^2"
            ),
            lhs=_enum("D", stat=o_conj),
            rhs=_forms("distinct_sq"),
            oracle=_enum("K", weight=HAT1),
        ),
        Identity(
            id="cor_omega00",
            statement=(
                "All partitions by odd-indexed sum equal all partitions weighted "
                "by omega_{0,0} by norm"
            ),
            lhs=_enum("U", stat=o),
            rhs=_enum("U", weight=WeightId.omega(0, 0)),
            oracle=_forms("unrestricted_sq"),
        ),
        Identity(
            id="cor_hat",
            statement=(
                "Distinct parts by the odd-indexed sum of the conjugate equal "
                "K weighted by hat1 by norm"
            ),
            lhs=_enum("D", stat=o_conj),
            rhs=_enum("K", weight=HAT1),
            oracle=_forms("distinct_sq"),
        ),
        Identity(
            id="e_variant_distinct",
            statement=(
                "Distinct parts counted by the even-indexed sum of the conjugate "
                "give 2*(-q;q)_inf^2"
            ),
            lhs=_enum("D", stat=e_conj),
            rhs=_forms("distinct_sq_doubled"),
            experimental=True,
        ),
        Identity(
            id="e_variant_hat",
            statement=(
                "Distinct parts counted by the even-indexed sum of the conjugate "
                "equal twice K weighted by hat1"
            ),
            lhs=_enum("D", stat=e_conj),
            rhs=_enum("K", weight=HAT1, scale_by=2),
            experimental=True,
        ),
    ]

    for M in range(5):
        for k in (1, 2, 3):
            for m in range(4):
                identities.append(finite_weighted(M, k, m))
    for M in range(1, 5):
        for k in (1, 2, 3):
            for m in range(4):
                identities.append(corollary_sum(M, k, m))
    for k, m in ((1, 0), (1, 2), (2, 2)):
        identities.append(corollary_sum(None, k, m))
    for l in range(4):  # noqa: E741
        for v in (0, 1):
            identities.append(weight_change(l, v))

    identities.extend(_multivariate_identities())
    return identities


@lru_cache(maxsize=1)
@timed_operation("registry")
def _registry() -> tuple[Identity, ...]:
    identities = _default_identities()
    ids = [ident.id for ident in identities]
    duplicates = sorted({i for i in ids if ids.count(i) > 1})
    if duplicates:
        raise ValueError(f"duplicate identity ids: {duplicates}")
    logger.info(f"Identity registry built with {len(identities)} entries")
    return tuple(sorted(identities, key=lambda ident: ident.id))


def registry() -> list[Identity]:
    """Every registered identity, sorted by id."""
    return list(_registry())


def list_identity_ids() -> list[str]:
    return [ident.id for ident in _registry()]


# Descriptive names accepted wherever a registered id is.
IDENTITY_ALIASES = {
    "odd_index_unrestricted": "ali2_unrestricted",
    "odd_index_conjugate_distinct": "ali2_distinct_conj",
}


def get_identity(identity_id: str) -> Identity:
    """Look up a registered identity by id or alias.

    Raises:
        UnknownIdentityError: If no identity has that id
    """
    canonical = IDENTITY_ALIASES.get(identity_id, identity_id)
    for ident in _registry():
        if ident.id == canonical:
            return ident
    raise UnknownIdentityError(
        f"Unknown identity: {identity_id}",
        name=identity_id,
        available=list_identity_ids(),
    )


def select_identities(pattern: str | None = None) -> list[Identity]:
    """Identities whose id matches a shell-style pattern (``all`` or None: every one)."""
    if pattern is None or pattern == "all":
        return registry()
    return [ident for ident in _registry() if fnmatch.fnmatchcase(ident.id, pattern)]


def perturb(ident: Identity, exponent: int, delta: int = 1) -> Identity:
    """A copy of ident whose right side is off by delta at q^exponent.

    Used to check that verification reports the first mismatch.
    """
    if ident.multivariate:
        raise ParameterValidationError(
            "Only univariate identities can be perturbed",
            parameter="identity",
            value=ident.id,
        )
    if exponent < 0:
        raise ParameterValidationError(
            f"exponent must be >= 0, got {exponent}",
            parameter="exponent",
            value=exponent,
        )
    correction = dict(ident.rhs.correction)
    correction[exponent] = correction.get(exponent, 0) + delta
    rhs = ident.rhs.model_copy(update={"correction": {e: c for e, c in correction.items() if c}})
    return ident.model_copy(update={"id": f"{ident.id}~perturbed", "rhs": rhs})
