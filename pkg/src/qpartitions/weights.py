"""Partition weights and the four-letter decoration count.

Every weight here has the same shape: a factor for the last (smallest)
part, a factor per gap between consecutive parts and a constant factor per
row, plus a separate value on the empty partition. ``RowProduct`` exposes
that shape so the row summation in ``tally`` can evaluate any weight one
row at a time.

Weights are total: they are defined on every partition. Passing ``domain``
to ``weight`` flags evaluations outside the set the weight is meant for
(a warning, or DomainError in strict mode).
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import is_strict_mode
from .errors import DomainError, ParameterValidationError, handle_strict_validation
from .partitions import ConstraintSpec, Partition, member

logger = logging.getLogger(__name__)


class WeightTag(str, Enum):
    UNIT = "unit"
    OMEGA_KM = "omega_km"
    TILDE1 = "tilde1"
    TILDE2 = "tilde2"
    HAT1 = "hat1"
    SIGN_BY_PARTS = "sign_by_parts"


_TAG_ALIASES = {
    "unit": WeightTag.UNIT,
    "omega": WeightTag.OMEGA_KM,
    "omega_km": WeightTag.OMEGA_KM,
    "tilde1": WeightTag.TILDE1,
    "tilde2": WeightTag.TILDE2,
    "hat1": WeightTag.HAT1,
    "sign": WeightTag.SIGN_BY_PARTS,
    "sign_by_parts": WeightTag.SIGN_BY_PARTS,
}


class WeightId(BaseModel):
    """A named weight; omega_km carries its integer parameters k, m >= 0."""

    model_config = ConfigDict(frozen=True)

    tag: WeightTag
    k: int | None = Field(None, ge=0)
    m: int | None = Field(None, ge=0)

    @model_validator(mode="after")
    def check_params(self) -> "WeightId":
        if self.tag is WeightTag.OMEGA_KM:
            if self.k is None or self.m is None:
                raise ValueError("omega_km needs both k and m")
        elif self.k is not None or self.m is not None:
            raise ValueError(f"weight {self.tag.value} takes no parameters")
        return self

    @classmethod
    def omega(cls, k: int, m: int) -> "WeightId":
        return cls(tag=WeightTag.OMEGA_KM, k=k, m=m)

    @property
    def label(self) -> str:
        """CLI/JSON tag: ``omega:k,m``, ``unit``, ``tilde1``, ``tilde2``, ``hat1`` or ``sign``."""
        if self.tag is WeightTag.OMEGA_KM:
            return f"omega:{self.k},{self.m}"
        if self.tag is WeightTag.SIGN_BY_PARTS:
            return "sign"
        return self.tag.value

    def __str__(self) -> str:
        return self.label


UNIT = WeightId(tag=WeightTag.UNIT)
TILDE1 = WeightId(tag=WeightTag.TILDE1)
TILDE2 = WeightId(tag=WeightTag.TILDE2)
HAT1 = WeightId(tag=WeightTag.HAT1)
SIGN = WeightId(tag=WeightTag.SIGN_BY_PARTS)


def parse_weight(text: "WeightId | str") -> WeightId:
    """Parse ``unit``, ``omega:k,m``, ``omega_km:k,m``, ``tilde1``, ``tilde2``, ``hat1``, ``sign``.

    Raises:
        ParameterValidationError: On an unknown tag or malformed parameters
    """
    if isinstance(text, WeightId):
        return text
    name, _, raw_params = str(text).strip().partition(":")
    tag = _TAG_ALIASES.get(name.strip().lower())
    if tag is None:
        raise ParameterValidationError(
            f"Unknown weight: {text}. Use unit, omega:k,m, tilde1, tilde2, hat1 or sign",
            parameter="weight",
            value=text,
        )
    if tag is not WeightTag.OMEGA_KM:
        if raw_params.strip():
            raise ParameterValidationError(
                f"Weight {name} takes no parameters",
                parameter="weight",
                value=text,
            )
        return WeightId(tag=tag)
    try:
        k, m = (int(item) for item in raw_params.split(","))
    except ValueError as e:
        raise ParameterValidationError(
            f"omega weight needs two integers, e.g. omega:1,2; got {text}",
            parameter="weight",
            value=text,
        ) from e
    if k < 0 or m < 0:
        raise ParameterValidationError(
            f"omega parameters must be >= 0, got k={k}, m={m}",
            parameter="weight",
            value=text,
        )
    return WeightId.omega(k, m)


@dataclass(frozen=True)
class RowProduct:
    """weight(p) = last(lambda_nu) * prod gap(lambda_i - lambda_{i+1}) * row**nu,
    and weight(empty) = empty."""

    last: Callable[[int], int]
    gap: Callable[[int], int]
    row: int
    empty: int


def row_product(w: WeightId) -> RowProduct:
    if w.tag is WeightTag.UNIT:
        return RowProduct(last=lambda part: 1, gap=lambda d: 1, row=1, empty=1)
    if w.tag is WeightTag.OMEGA_KM:
        k, m = w.k, w.m
        return RowProduct(
            last=lambda part: part + 1 - k,
            gap=lambda d: d + 1 - m,
            row=1,
            empty=1,
        )
    if w.tag is WeightTag.TILDE1:
        # tilde1(empty) = 0
        return RowProduct(last=lambda part: 1, gap=lambda d: d - 1, row=1, empty=0)
    if w.tag is WeightTag.TILDE2:
        return RowProduct(last=lambda part: part - 2, gap=lambda d: d - 1, row=1, empty=1)
    if w.tag is WeightTag.HAT1:
        return RowProduct(
            last=lambda part: 2 ** (part % 2),
            gap=lambda d: 2 ** (d % 2),
            row=1,
            empty=1,
        )
    return RowProduct(last=lambda part: 1, gap=lambda d: 1, row=-1, empty=1)


def weight(w: WeightId | str, p: Partition, domain: ConstraintSpec | None = None) -> int:
    """Evaluate a weight on p.

    Args:
        w: Weight id or tag
        p: Partition
        domain: Optional set the weight is meant for; evaluating outside it is
            flagged, and raises DomainError in strict mode

    Returns:
        Exact integer weight, possibly 0 or negative off-domain
    """
    w = parse_weight(w)
    if domain is not None and not member(domain, p):
        handle_strict_validation(
            False,
            f"Weight {w.label} evaluated on {p}, which is outside its domain",
            DomainError,
            strict=is_strict_mode(),
            context={"weight": w.label, "partition": list(p.parts)},
        )

    product = row_product(w)
    if not p.parts:
        return product.empty
    value = product.last(p.smallest) * product.row ** len(p)
    for gap in p.gaps():
        value *= product.gap(gap)
    return value


class DecorationCount(BaseModel):
    """Letter counts of the decorated Ferrers diagram.

    Odd-indexed rows read a, b, a, b, ... and even-indexed rows c, d, c, d, ...
    """

    model_config = ConfigDict(frozen=True)

    a_count: int = Field(0, ge=0)
    b_count: int = Field(0, ge=0)
    c_count: int = Field(0, ge=0)
    d_count: int = Field(0, ge=0)

    def exponent(self) -> tuple[int, int, int, int]:
        return (self.a_count, self.b_count, self.c_count, self.d_count)


def decoration(p: Partition) -> DecorationCount:
    counts = [0, 0, 0, 0]
    for index, part in enumerate(p.parts):
        offset = 0 if index % 2 == 0 else 2
        counts[offset] += (part + 1) // 2
        counts[offset + 1] += part // 2
    a, b, c, d = counts
    return DecorationCount(a_count=a, b_count=b, c_count=c, d_count=d)


def weight_identity_check(p: Partition) -> bool:
    """omega_{1,2}(p) == omega_{2,2}(p) + tilde1(p); meant for p in RR1."""
    return weight(WeightId.omega(1, 2), p) == weight(WeightId.omega(2, 2), p) + weight(
        TILDE1, p
    )
