"""Named product and sum forms, expanded to a truncation order.

Products are built from Pochhammer factors; sums add q^(leading exponent)
times 1/(q)_n or 1/(q)_n^2 term by term and stop as soon as the leading
exponent passes the order. Expansions are cached per (name, params, order);
Series values are immutable, so cached results are safe to share between
threads.
"""

import logging
from collections.abc import Callable, Iterator, Mapping
from functools import lru_cache
from typing import Any

from .config import get_max_order
from .errors import OrderLimitError, ParameterValidationError, UnknownFormError
from .pochhammer import q_poch, q_poch_inverse
from .series import Series, div_binomial, mul, scale, shift

logger = logging.getLogger(__name__)


def validate_order(order: int) -> int:
    """Check a requested truncation order against QPARTITIONS_MAX_ORDER.

    Raises:
        ParameterValidationError: If order is negative or not an integer
        OrderLimitError: If order exceeds the configured ceiling
    """
    if isinstance(order, bool) or not isinstance(order, int) or order < 0:
        raise ParameterValidationError(
            f"order must be a non-negative integer, got {order!r}",
            parameter="order",
            value=order,
        )
    max_order = get_max_order()
    if order > max_order:
        raise OrderLimitError(
            f"order {order} exceeds QPARTITIONS_MAX_ORDER={max_order}",
            order=order,
            max_order=max_order,
        )
    return order


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


# Products


def _euler_inverse(order: int) -> Series:
    return q_poch_inverse(1, 1, None, order)


def _euler(order: int) -> Series:
    return q_poch(1, 1, None, order)


def _odd_parts(order: int) -> Series:
    return q_poch_inverse(1, 2, None, order)


def _distinct(order: int) -> Series:
    return q_poch(1, 1, None, order, sign=-1)


def _rr1_product(order: int) -> Series:
    return mul(q_poch_inverse(1, 5, None, order), q_poch_inverse(4, 5, None, order))


def _rr2_product(order: int) -> Series:
    return mul(q_poch_inverse(2, 5, None, order), q_poch_inverse(3, 5, None, order))


def _distinct_sq(order: int) -> Series:
    distinct = _distinct(order)
    return mul(distinct, distinct)


def _distinct_sq_doubled(order: int) -> Series:
    return scale(_distinct_sq(order), 2)


def _unrestricted_sq(order: int) -> Series:
    inverse = _euler_inverse(order)
    return mul(inverse, inverse)


def _inverse_poch_squared(n: int, order: int) -> Series:
    # 1/(q)_n^2
    result = Series.one(order)
    for i in range(1, n + 1):
        result = div_binomial(div_binomial(result, -1, i), -1, i)
    return result


def _finite_rhs(order: int, M: int, k: int, m: int) -> Series:
    return shift(_inverse_poch_squared(M, order), m * _binom2(M) + k * M)


# Sums


def _quotient_sum(
    exponents: Iterator[int],
    order: int,
    squared: bool,
    limit: int | None = None,
) -> Series:
    """sum_n q^(exponents[n]) / (q)_n^(1 or 2), stopping at limit or past order."""
    total = Series.zero(order)
    running = Series.one(order)
    for n, exponent in enumerate(exponents):
        if limit is not None and n > limit:
            break
        if n:
            running = div_binomial(running, -1, n)
            if squared:
                running = div_binomial(running, -1, n)
        if exponent > order:
            break
        total = total + shift(running, exponent)
    return total


def _count_from(start: int = 0) -> Iterator[int]:
    n = start
    while True:
        yield n
        n += 1


def _gauss_sq(order: int) -> Series:
    return _quotient_sum((n * n for n in _count_from()), order, squared=True)


def _rr1_sum(order: int) -> Series:
    return _quotient_sum((n * n for n in _count_from()), order, squared=False)


def _rr2_sum(order: int) -> Series:
    return _quotient_sum((n * n + n for n in _count_from()), order, squared=False)


def _auluck_sum(order: int) -> Series:
    return _quotient_sum((n * n + n for n in _count_from()), order, squared=True)


def _dyson_alternating(order: int) -> Series:
    terms: dict[int, int] = {}
    i = 0
    while _binom2(i + 1) <= order:
        terms[_binom2(i + 1)] = (-1) ** i
        i += 1
    return Series.from_terms(terms, order)


def _corollary_sum(order: int, k: int, m: int, M: int | None = None) -> Series:
    if M is None and k == 0 and m == 0:
        raise ParameterValidationError(
            "corollary_sum with k = m = 0 needs a finite M: every term starts at q^0",
            parameter="M",
        )
    return _quotient_sum(
        (m * _binom2(i) + k * i for i in _count_from()),
        order,
        squared=True,
        limit=M,
    )


FORM_DEFINITIONS: dict[str, dict[str, Any]] = {
    "euler_inverse": {
        "kind": "product",
        "description": "1/(q;q)_inf, partitions by norm",
        "params": [],
        "builder": _euler_inverse,
    },
    "euler": {
        "kind": "product",
        "description": "(q;q)_inf",
        "params": [],
        "builder": _euler,
    },
    "odd_parts": {
        "kind": "product",
        "description": "1/(q;q^2)_inf, partitions into odd parts",
        "params": [],
        "builder": _odd_parts,
    },
    "distinct": {
        "kind": "product",
        "description": "(-q;q)_inf, partitions into distinct parts",
        "params": [],
        "builder": _distinct,
    },
    "rr1_product": {
        "kind": "product",
        "description": "1/(q,q^4;q^5)_inf",
        "params": [],
        "builder": _rr1_product,
    },
    "rr2_product": {
        "kind": "product",
        "description": "1/(q^2,q^3;q^5)_inf",
        "params": [],
        "builder": _rr2_product,
    },
    "distinct_sq": {
        "kind": "product",
        "description": "(-q;q)_inf^2",
        "params": [],
        "builder": _distinct_sq,
    },
    "distinct_sq_doubled": {
        "kind": "product",
        "description": "2*(-q;q)_inf^2",
        "params": [],
        "builder": _distinct_sq_doubled,
    },
    "unrestricted_sq": {
        "kind": "product",
        "description": "1/(q;q)_inf^2",
        "params": [],
        "builder": _unrestricted_sq,
    },
    "finite_rhs": {
        "kind": "product",
        "description": "q^(m*C(M,2)+k*M)/(q;q)_M^2",
        "params": ["M", "k", "m"],
        "builder": _finite_rhs,
    },
    "gauss_sq": {
        "kind": "sum",
        "description": "sum_n q^(n^2)/(q;q)_n^2",
        "params": [],
        "builder": _gauss_sq,
    },
    "rr1_sum": {
        "kind": "sum",
        "description": "sum_n q^(n^2)/(q;q)_n",
        "params": [],
        "builder": _rr1_sum,
    },
    "rr2_sum": {
        "kind": "sum",
        "description": "sum_n q^(n^2+n)/(q;q)_n",
        "params": [],
        "builder": _rr2_sum,
    },
    "auluck_sum": {
        "kind": "sum",
        "description": "sum_n q^(n^2+n)/(q;q)_n^2",
        "params": [],
        "builder": _auluck_sum,
    },
    "dyson_alternating": {
        "kind": "sum",
        "description": "sum_i (-1)^i q^C(i+1,2)",
        "params": [],
        "builder": _dyson_alternating,
    },
    "corollary_sum": {
        "kind": "sum",
        "description": "sum_{i<=M} q^(m*C(i,2)+k*i)/(q;q)_i^2, M optional (infinite)",
        "params": ["k", "m"],
        "optional_params": ["M"],
        "builder": _corollary_sum,
    },
}


def list_forms(kind: str | None = None) -> dict[str, str]:
    """Form names with descriptions, optionally only products or only sums."""
    return {
        name: definition["description"]
        for name, definition in FORM_DEFINITIONS.items()
        if kind is None or definition["kind"] == kind
    }


def _check_params(name: str, params: Mapping[str, int]) -> tuple[tuple[str, int], ...]:
    definition = FORM_DEFINITIONS[name]
    allowed = set(definition["params"]) | set(definition.get("optional_params", []))
    missing = [p for p in definition["params"] if p not in params]
    if missing:
        raise ParameterValidationError(
            f"Form {name} needs parameter(s) {', '.join(missing)}",
            parameter=missing[0],
        )
    extra = sorted(set(params) - allowed)
    if extra:
        raise ParameterValidationError(
            f"Form {name} does not take parameter(s) {', '.join(extra)}",
            parameter=extra[0],
        )
    for key, value in params.items():
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise ParameterValidationError(
                f"Form parameter {key} must be a non-negative integer, got {value!r}",
                parameter=key,
                value=value,
            )
    return tuple(sorted(params.items()))


@lru_cache(maxsize=256)
def _cached(name: str, params: tuple[tuple[str, int], ...], order: int) -> Series:
    builder: Callable[..., Series] = FORM_DEFINITIONS[name]["builder"]
    logger.debug(f"expanding {name}{dict(params) or ''} to order {order}")
    return builder(order, **dict(params))


def _expand(kind: str | None, name: str, params: Mapping[str, int] | None, order: int) -> Series:
    definition = FORM_DEFINITIONS.get(name)
    if definition is None or (kind is not None and definition["kind"] != kind):
        raise UnknownFormError(
            f"Unknown {kind or 'series'} form: {name}",
            name=name,
            available=list(list_forms(kind)),
        )
    return _cached(name, _check_params(name, params or {}), order)


def product_form(name: str, params: Mapping[str, int] | None, order: int) -> Series:
    """Expand a named product side.

    Raises:
        UnknownFormError: If name is not a product form
        ParameterValidationError: On missing or malformed parameters
    """
    return _expand("product", name, params, order)


def sum_form(name: str, params: Mapping[str, int] | None, order: int) -> Series:
    """Expand a named sum side.

    Raises:
        UnknownFormError: If name is not a sum form
        ParameterValidationError: On missing or malformed parameters
    """
    return _expand("sum", name, params, order)


def expand_form(name: str, params: Mapping[str, int] | None, order: int) -> Series:
    """Expand any named form (product or sum), checking the order limit."""
    validate_order(order)
    return _expand(None, name, params, order)
