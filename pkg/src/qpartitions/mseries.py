"""Truncated polynomials in four variables a, b, c, d.

Truncation is by total degree: a decorated Ferrers diagram of norm n gives
a monomial of total degree n, so comparing an enumeration with a product
degree by degree is exact. Q = abcd is the degree-4 monomial (1, 1, 1, 1).
"""

import logging
import math
from collections.abc import Iterable, Mapping
from fractions import Fraction
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_serializer, model_validator

from .errors import NonUnitInverseError, ParameterValidationError, TruncationError
from .partitions import ConstraintSpec, enumerate_by_norm
from .series import Series, check_coefficients
from .utils.timing_utils import timed_operation
from .weights import decoration

logger = logging.getLogger(__name__)

Exponent = tuple[int, int, int, int]

VARIABLES = ("a", "b", "c", "d")
Q: Exponent = (1, 1, 1, 1)
ZERO_EXPONENT: Exponent = (0, 0, 0, 0)


def degree(exponent: Iterable[int]) -> int:
    return sum(exponent)


def _plus(e1: Exponent, e2: Exponent) -> Exponent:
    return (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])


class MSeries(BaseModel):
    """Four-variable polynomial truncated at total degree ``order``.

    Zero coefficients are never stored. Serializes as
    ``{"order": N, "terms": [[[i, j, k, l], c], ...]}`` sorted by exponent.
    """

    model_config = ConfigDict(frozen=True)

    order: int = Field(..., ge=0)
    terms: dict[Exponent, int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_terms(self) -> "MSeries":
        for exponent in self.terms:
            if min(exponent) < 0:
                raise ValueError(f"negative exponent {exponent}")
            if degree(exponent) > self.order:
                raise ValueError(
                    f"term {exponent} exceeds total degree {self.order}",
                )
        check_coefficients(self.terms.values(), "mseries")
        return self

    @model_serializer
    def serialize(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "terms": [[list(e), c] for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_terms(cls, terms: Mapping[Exponent, int], order: int) -> "MSeries":
        """Keep nonzero terms of total degree <= order."""
        kept: dict[Exponent, int] = {}
        for exponent, value in terms.items():
            exponent = tuple(exponent)  # type: ignore[assignment]
            if len(exponent) != 4:
                raise ParameterValidationError(
                    f"exponents need four entries, got {exponent}",
                    parameter="exponent",
                    value=exponent,
                )
            if value and degree(exponent) <= order:
                kept[exponent] = kept.get(exponent, 0) + value
        return cls(order=order, terms={e: c for e, c in kept.items() if c})

    @classmethod
    def one(cls, order: int) -> "MSeries":
        return cls(order=order, terms={ZERO_EXPONENT: 1})

    @classmethod
    def monomial(cls, exponent: Exponent, order: int, coefficient: int = 1) -> "MSeries":
        return cls.from_terms({exponent: coefficient}, order)

    def coefficient(self, exponent: Exponent) -> int:
        return self.terms.get(tuple(exponent), 0)  # type: ignore[arg-type]

    def terms_of_degree(self, total: int) -> dict[Exponent, int]:
        return {e: c for e, c in self.terms.items() if degree(e) == total}

    def __add__(self, other: "MSeries") -> "MSeries":
        return m_add(self, other)

    def __sub__(self, other: "MSeries") -> "MSeries":
        return m_sub(self, other)

    def __mul__(self, other: "MSeries") -> "MSeries":
        return m_mul(self, other)

    def __neg__(self) -> "MSeries":
        return m_neg(self)


def m_add(s1: MSeries, s2: MSeries) -> MSeries:
    order = min(s1.order, s2.order)
    out: dict[Exponent, int] = {}
    for source in (s1.terms, s2.terms):
        for exponent, value in source.items():
            out[exponent] = out.get(exponent, 0) + value
    return MSeries.from_terms(out, order)


def m_neg(s: MSeries) -> MSeries:
    return MSeries(order=s.order, terms={e: -c for e, c in s.terms.items()})


def m_sub(s1: MSeries, s2: MSeries) -> MSeries:
    return m_add(s1, m_neg(s2))


def m_mul(s1: MSeries, s2: MSeries) -> MSeries:
    order = min(s1.order, s2.order)
    out: dict[Exponent, int] = {}
    for e1, c1 in s1.terms.items():
        d1 = degree(e1)
        if d1 > order:
            continue
        for e2, c2 in s2.terms.items():
            if d1 + degree(e2) <= order:
                exponent = _plus(e1, e2)
                out[exponent] = out.get(exponent, 0) + c1 * c2
    return MSeries.from_terms(out, order)


def m_inverse(s: MSeries) -> MSeries:
    """Inverse of a polynomial with constant term +1 or -1.

    With t = c0 * (s - c0), 1/s = c0 * sum_j (-t)^j; t has no constant term so
    the sum stops once the powers pass the order.

    Raises:
        NonUnitInverseError: If the constant term is not a unit
    """
    c0 = s.coefficient(ZERO_EXPONENT)
    if c0 not in (1, -1):
        raise NonUnitInverseError(
            f"Constant term {c0} is not invertible over the integers",
            constant_term=c0,
        )
    minus_t = MSeries.from_terms(
        {e: -c0 * c for e, c in s.terms.items() if e != ZERO_EXPONENT},
        s.order,
    )
    power = MSeries.one(s.order)
    total = MSeries.one(s.order)
    while True:
        power = m_mul(power, minus_t)
        if not power.terms:
            break
        total = m_add(total, power)
    return MSeries(order=s.order, terms={e: c0 * c for e, c in total.terms.items()})


def m_mul_binomial(s: MSeries, coefficient: int, exponent: Exponent) -> MSeries:
    """Multiply by (1 + coefficient * x^exponent)."""
    out = dict(s.terms)
    for e, c in s.terms.items():
        shifted = _plus(e, exponent)
        if degree(shifted) <= s.order:
            out[shifted] = out.get(shifted, 0) + coefficient * c
    return MSeries.from_terms(out, s.order)


def m_div_binomial(s: MSeries, coefficient: int, exponent: Exponent) -> MSeries:
    """Divide by (1 + coefficient * x^exponent), exponent of positive degree."""
    step = degree(exponent)
    if step < 1:
        raise ParameterValidationError(
            "divisor monomial must have positive degree",
            parameter="exponent",
            value=exponent,
        )
    out = dict(s.terms)
    term = s.terms
    # 1/(1 + c x) = sum_j (-c x)^j
    while term:
        shifted: dict[Exponent, int] = {}
        for e, c in term.items():
            moved = _plus(e, exponent)
            if degree(moved) <= s.order:
                shifted[moved] = -coefficient * c
        term = shifted
        for e, c in term.items():
            out[e] = out.get(e, 0) + c
    return MSeries.from_terms(out, s.order)


@timed_operation("boulet")
def boulet(name: Literal["phi", "psi"], order: int) -> MSeries:
    """Boulet's four-variable products to total degree ``order``.

    psi = (-a, -abc; Q)_inf / (ab; Q)_inf sums the decorated diagrams of
    partitions into distinct parts; phi = (-a, -abc; Q)_inf / (ab, ac, Q; Q)_inf
    sums them over all partitions.
    """
    if name not in ("phi", "psi"):
        raise ParameterValidationError(
            f"Unknown product: {name}. Use phi or psi",
            parameter="name",
            value=name,
        )
    if order < 0:
        raise ParameterValidationError(
            f"order must be >= 0, got {order}", parameter="order", value=order
        )
    from .pochhammer import PochSpec, divide_by_pochhammer, pochhammer

    result = MSeries.one(order)
    for base in ((1, 0, 0, 0), (1, 1, 1, 0)):
        factor = pochhammer(PochSpec(sign=-1, base=base, modulus=Q), order)
        result = m_mul(result, factor)
    denominators: list[Exponent] = [(1, 1, 0, 0)]
    if name == "phi":
        denominators += [(1, 0, 1, 0), Q]
    for base in denominators:
        result = divide_by_pochhammer(result, PochSpec(sign=1, base=base, modulus=Q))
    return result


def decoration_sum(spec: ConstraintSpec, order: int) -> MSeries:
    """Sum of a^#a b^#b c^#c d^#d over the members of spec with norm <= order."""
    terms: dict[Exponent, int] = {}
    for n in range(order + 1):
        for p in enumerate_by_norm(spec, n):
            exponent = decoration(p).exponent()
            terms[exponent] = terms.get(exponent, 0) + 1
    return MSeries.from_terms(terms, order)


def _exponent_map(exponents: Mapping[str, int] | Iterable[int]) -> tuple[int, int, int, int]:
    if isinstance(exponents, Mapping):
        unknown = set(exponents) - set(VARIABLES)
        if unknown:
            raise ParameterValidationError(
                f"Unknown variables {sorted(unknown)}; use a, b, c, d",
                parameter="exponents",
                value=dict(exponents),
            )
        values = tuple(exponents.get(v, 0) for v in VARIABLES)
    else:
        values = tuple(exponents)
    if len(values) != 4 or any(v < 0 for v in values):
        raise ParameterValidationError(
            f"Need four non-negative q-powers, got {values}",
            parameter="exponents",
            value=values,
        )
    return values  # type: ignore[return-value]


# Extreme rays of the cone a >= b, a >= c, b >= d, c >= d holding every
# decorated-diagram exponent.
DECORATION_RAYS: tuple[Exponent, ...] = (
    (1, 0, 0, 0),
    (1, 1, 0, 0),
    (1, 0, 1, 0),
    (1, 1, 1, 0),
    (1, 1, 1, 1),
)


def _degree_ratio(values: Exponent) -> Fraction:
    # least q-power per unit of total degree over the decoration cone
    return min(
        Fraction(sum(e * v for e, v in zip(ray, values, strict=True)), degree(ray))
        for ray in DECORATION_RAYS
    )


def specialization_order(ms: MSeries, exponents: Mapping[str, int] | Iterable[int]) -> int:
    """Highest q-order a specialization of a decorated-diagram sum is exact to.

    Every monomial of such a sum lies in the cone a >= b, a >= c, b >= d,
    c >= d, so a monomial of total degree t lands on a q-power of at least
    L * t, where L is the least ratio q-power / degree over the cone's
    extreme rays. The dropped monomials have degree above ``ms.order``,
    hence every q-power below L * (ms.order + 1) is exact.

    Examples: all four exponents 1 give ms.order; (1, 0, 1, 0) or
    (1, 1, 0, 0) give L = 1/2 and about half the order; (1, 0, 0, 0)
    gives L = 1/4. A result of -1 means nothing is exact.
    """
    ratio = _degree_ratio(_exponent_map(exponents))
    return math.ceil(ratio * (ms.order + 1)) - 1


def specialization_source_order(
    exponents: Mapping[str, int] | Iterable[int],
    order: int,
) -> int:
    """Total-degree order a decorated-diagram sum needs so that its
    specialization is exact to q-order ``order``.

    Raises:
        ParameterValidationError: If every exponent is 0
    """
    values = _exponent_map(exponents)
    ratio = _degree_ratio(values)
    if ratio == 0:
        raise ParameterValidationError(
            f"Specialization {values} sends every diagram to q^0",
            parameter="exponents",
            value=values,
        )
    return math.floor(order / ratio)


def specialize(
    ms: MSeries,
    exponents: Mapping[str, int] | Iterable[int],
    order: int | None = None,
) -> Series:
    """Substitute a -> q^e_a, b -> q^e_b, c -> q^e_c, d -> q^e_d.

    Raises:
        TruncationError: If order exceeds the valid specialization order
    """
    values = _exponent_map(exponents)
    valid = specialization_order(ms, values)
    if order is None:
        order = valid
    if order > valid or order < 0:
        raise TruncationError(
            f"Specialization {values} is exact only to q-order {valid}, asked for {order}",
            requested=order,
            valid=valid,
        )
    coeffs = [0] * (order + 1)
    for exponent, value in ms.terms.items():
        power = sum(e * v for e, v in zip(exponent, values, strict=True))
        if power <= order:
            coeffs[power] += value
    return Series(order=order, coeffs=tuple(coeffs))
