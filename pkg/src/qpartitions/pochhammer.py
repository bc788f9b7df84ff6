"""q-Pochhammer products (x; y)_L = prod_{n<L} (1 - sign * x * y^n).

Monomials are exponent tuples: one entry for a power of q, four for a
monomial in a, b, c, d. A univariate spec expands to a Series, a
four-variable spec to an MSeries.
"""

import logging
from collections.abc import Iterator
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import NonUnitInverseError, ParameterValidationError
from .mseries import MSeries, m_div_binomial, m_mul_binomial
from .series import Series, div_binomial, mul_binomial

logger = logging.getLogger(__name__)


class PochSpec(BaseModel):
    """One Pochhammer factor family.

    ``sign=1`` gives (x; y)_L, ``sign=-1`` gives (-x; y)_L. ``length=None``
    is the infinite product, which needs a modulus of positive degree.
    """

    model_config = ConfigDict(frozen=True)

    sign: Literal[1, -1] = 1
    base: tuple[int, ...]
    modulus: tuple[int, ...]
    length: int | None = Field(None, ge=0)

    @field_validator("base", "modulus", mode="before")
    @classmethod
    def promote_int(cls, v: object) -> object:
        if isinstance(v, int):
            return (v,)
        return v

    @model_validator(mode="after")
    def check_monomials(self) -> "PochSpec":
        if len(self.base) not in (1, 4) or len(self.base) != len(self.modulus):
            raise ValueError("base and modulus need matching length 1 (q) or 4 (a, b, c, d)")
        if min(self.base) < 0 or min(self.modulus) < 0:
            raise ValueError("monomial exponents must be non-negative")
        if self.length is None and sum(self.modulus) == 0:
            raise ValueError("an infinite product needs a modulus of positive degree")
        return self

    @property
    def univariate(self) -> bool:
        return len(self.base) == 1

    def factors(self, order: int) -> Iterator[tuple[int, ...]]:
        """Exponents x*y^n of every factor whose monomial has degree <= order."""
        n = 0
        while self.length is None or n < self.length:
            exponent = tuple(b + n * m for b, m in zip(self.base, self.modulus, strict=True))
            if sum(exponent) > order:
                return
            yield exponent
            n += 1


def _spec(spec: PochSpec | dict) -> PochSpec:
    if isinstance(spec, PochSpec):
        return spec
    try:
        return PochSpec.model_validate(spec)
    except ValueError as e:
        raise ParameterValidationError(f"Invalid Pochhammer spec: {e}", parameter="spec") from e


def pochhammer(spec: PochSpec | dict, order: int) -> Series | MSeries:
    """Expand the product to order N (total degree for four variables)."""
    spec = _spec(spec)
    if spec.univariate:
        result: Series | MSeries = Series.one(order)
        for (exponent,) in spec.factors(order):
            result = mul_binomial(result, -spec.sign, exponent)  # type: ignore[arg-type]
        return result
    result = MSeries.one(order)
    for exponent in spec.factors(order):
        result = m_mul_binomial(result, -spec.sign, exponent)  # type: ignore[arg-type]
    return result


def divide_by_pochhammer(s: Series | MSeries, spec: PochSpec | dict) -> Series | MSeries:
    """s / (x; y)_L at the order of s, one binomial division per factor.

    Raises:
        NonUnitInverseError: If a factor is the constant 0 or 2
    """
    spec = _spec(spec)
    if spec.univariate != isinstance(s, Series):
        raise ParameterValidationError(
            "series and Pochhammer spec must have the same number of variables",
            parameter="spec",
        )
    for exponent in spec.factors(s.order):
        if sum(exponent) == 0:
            raise NonUnitInverseError(
                "Pochhammer factor has no q-dependence and is not invertible",
                constant_term=1 - spec.sign,
            )
        if isinstance(s, Series):
            s = div_binomial(s, -spec.sign, exponent[0])
        else:
            s = m_div_binomial(s, -spec.sign, exponent)  # type: ignore[arg-type]
    return s


def q_poch(x: int, y: int, length: int | None, order: int, sign: Literal[1, -1] = 1) -> Series:
    """(q^x; q^y)_L as a Series; shorthand for the named forms."""
    return pochhammer(PochSpec(sign=sign, base=(x,), modulus=(y,), length=length), order)  # type: ignore[return-value]


def q_poch_inverse(
    x: int, y: int, length: int | None, order: int, sign: Literal[1, -1] = 1
) -> Series:
    """1 / (q^x; q^y)_L as a Series."""
    spec = PochSpec(sign=sign, base=(x,), modulus=(y,), length=length)
    return divide_by_pochhammer(Series.one(order), spec)  # type: ignore[return-value]
