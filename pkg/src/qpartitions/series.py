"""Exact truncated power series in q.

A Series carries its truncation order N: coefficients of q^0..q^N are exact,
nothing beyond N is ever read or written, and mixed-order arithmetic
truncates to the smaller order. Coefficients are Python integers held to a
configurable signed bit width (``QPARTITIONS_COEFF_BITS``); exceeding it
raises CoefficientOverflowError instead of wrapping.
"""

import logging
from collections.abc import Iterable, Mapping
from functools import lru_cache
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import get_coefficient_bits
from .errors import CoefficientOverflowError, NonUnitInverseError, ParameterValidationError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=1)
def coefficient_bits() -> int:
    """Configured signed coefficient width, read once per process.

    Call ``coefficient_bits.cache_clear()`` after changing the environment.
    """
    return get_coefficient_bits()


def check_coefficients(coeffs: Iterable[int], operation: str = "series") -> None:
    """Raise CoefficientOverflowError if any coefficient exceeds the signed width."""
    bits = coefficient_bits()
    low, high = -(1 << (bits - 1)), (1 << (bits - 1)) - 1
    for index, value in enumerate(coeffs):
        if value < low or value > high:
            raise CoefficientOverflowError(
                f"Coefficient at index {index} does not fit in {bits} signed bits",
                context={"operation": operation, "index": index},
                bits=bits,
            )


class Series(BaseModel):
    """Truncated formal power series c0 + c1 q + ... + cN q^N.

    Serializes as ``{"order": N, "coeffs": [c0, ..., cN]}``.
    """

    model_config = ConfigDict(frozen=True)

    order: int = Field(..., ge=0, description="Truncation order N")
    coeffs: tuple[int, ...] = Field(..., description="Exact coefficients of q^0..q^N")

    @model_validator(mode="after")
    def check_shape(self) -> "Series":
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"expected {self.order + 1} coefficients for order {self.order}, "
                f"got {len(self.coeffs)}",
            )
        check_coefficients(self.coeffs)
        return self

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], order: int) -> "Series":
        """Pad with zeros or cut to exactly order + 1 coefficients."""
        values = list(coeffs)[: order + 1]
        values.extend([0] * (order + 1 - len(values)))
        return cls(order=order, coeffs=tuple(values))

    @classmethod
    def from_terms(cls, terms: Mapping[int, int], order: int) -> "Series":
        """Build from an exponent -> coefficient mapping; exponents above order are dropped."""
        values = [0] * (order + 1)
        for exponent, value in terms.items():
            if exponent < 0:
                raise ParameterValidationError(
                    f"exponent must be >= 0, got {exponent}",
                    parameter="exponent",
                    value=exponent,
                )
            if exponent <= order:
                values[exponent] += value
        return cls(order=order, coeffs=tuple(values))

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls(order=order, coeffs=(0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coefficient: int = 1) -> "Series":
        return cls.from_terms({exponent: coefficient}, order)

    def __getitem__(self, index: int) -> int:
        return self.coeffs[index]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "Series") -> "Series":
        return add(self, other)

    def __sub__(self, other: "Series") -> "Series":
        return sub(self, other)

    def __mul__(self, other: "Series") -> "Series":
        return mul(self, other)

    def __neg__(self) -> "Series":
        return neg(self)

    def to_dict(self) -> dict[str, Any]:
        return {"order": self.order, "coeffs": list(self.coeffs)}

    def terms(self) -> dict[int, int]:
        """Nonzero coefficients keyed by exponent."""
        return {e: c for e, c in enumerate(self.coeffs) if c}


def truncate(s: Series, order: int) -> Series:
    """Lower the truncation order; raising it would invent coefficients."""
    if order > s.order:
        raise ParameterValidationError(
            f"cannot raise order {s.order} to {order}",
            parameter="order",
            value=order,
        )
    return Series(order=order, coeffs=s.coeffs[: order + 1])


def add(s1: Series, s2: Series) -> Series:
    order = min(s1.order, s2.order)
    return Series(
        order=order,
        coeffs=tuple(s1.coeffs[i] + s2.coeffs[i] for i in range(order + 1)),
    )


def neg(s: Series) -> Series:
    return Series(order=s.order, coeffs=tuple(-c for c in s.coeffs))


def sub(s1: Series, s2: Series) -> Series:
    order = min(s1.order, s2.order)
    return Series(
        order=order,
        coeffs=tuple(s1.coeffs[i] - s2.coeffs[i] for i in range(order + 1)),
    )


def scale(s: Series, factor: int) -> Series:
    return Series(order=s.order, coeffs=tuple(factor * c for c in s.coeffs))


def shift(s: Series, exponent: int) -> Series:
    """Multiply by q^exponent, keeping the order."""
    if exponent < 0:
        raise ParameterValidationError(
            f"shift must be >= 0, got {exponent}",
            parameter="exponent",
            value=exponent,
        )
    return Series.from_coeffs([0] * exponent + list(s.coeffs), s.order)


def mul(s1: Series, s2: Series) -> Series:
    """Cauchy product truncated at the smaller order."""
    order = min(s1.order, s2.order)
    a, b = s1.coeffs, s2.coeffs
    out = [0] * (order + 1)
    for i in range(order + 1):
        ai = a[i]
        if not ai:
            continue
        for j in range(order + 1 - i):
            if b[j]:
                out[i + j] += ai * b[j]
    return Series(order=order, coeffs=tuple(out))


def inverse(s: Series) -> Series:
    """Multiplicative inverse of a series with constant term +1 or -1.

    Raises:
        NonUnitInverseError: If the constant term is not a unit
    """
    c0 = s.coeffs[0]
    if c0 not in (1, -1):
        raise NonUnitInverseError(
            f"Constant term {c0} is not invertible over the integers",
            constant_term=c0,
        )
    out = [0] * (s.order + 1)
    out[0] = c0
    for n in range(1, s.order + 1):
        total = 0
        for i in range(1, n + 1):
            if s.coeffs[i] and out[n - i]:
                total += s.coeffs[i] * out[n - i]
        # c0 is its own inverse
        out[n] = -c0 * total
    check_coefficients(out, "inverse")
    return Series(order=s.order, coeffs=tuple(out))


def mul_binomial(s: Series, coefficient: int, exponent: int) -> Series:
    """Multiply by (1 + coefficient * q^exponent)."""
    if exponent > s.order:
        return s
    out = list(s.coeffs)
    for i in range(s.order, exponent - 1, -1):
        out[i] += coefficient * out[i - exponent]
    return Series(order=s.order, coeffs=tuple(out))


def div_binomial(s: Series, coefficient: int, exponent: int) -> Series:
    """Divide by (1 + coefficient * q^exponent), exponent >= 1."""
    if exponent < 1:
        raise ParameterValidationError(
            f"divisor exponent must be >= 1, got {exponent}",
            parameter="exponent",
            value=exponent,
        )
    if exponent > s.order:
        return s
    out = list(s.coeffs)
    for i in range(exponent, s.order + 1):
        out[i] -= coefficient * out[i - exponent]
    check_coefficients(out, "div_binomial")
    return Series(order=s.order, coeffs=tuple(out))


def first_difference(s1: Series, s2: Series) -> int | None:
    """Lowest exponent where two series disagree, within the common order."""
    order = min(s1.order, s2.order)
    for e in range(order + 1):
        if s1.coeffs[e] != s2.coeffs[e]:
            return e
    return None
