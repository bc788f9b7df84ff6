"""Weighted generating functions by row summation.

``tally(spec, stat, weight, N)`` is the sum of weight(p) * q^stat(p) over
the members p of spec with stat(p) <= N. It walks Ferrers diagrams one row
at a time: the state after placing a row is its part and either the number
of rows so far (when the constraints bound the part count) or the row parity.
G(part, key) is the series of everything that can follow, so each state is
expanded once and the cost is polynomial in N instead of proportional to
the number of partitions.

When repeated parts are allowed, a part can follow itself and the two
parity states of one part refer to each other. That pair is solved in
closed form: G_k = (base_k + s_k * base_j) / (1 - s_k * s_j).

``explicit_sum`` computes the same series by listing the partitions; it is
the slow reference the row summation is checked against.
"""

import logging

from .errors import ComputationError, ParameterValidationError
from .partitions import EMPTY, ConstraintSpec, enumerate_by_statistic, member
from .series import Series, div_binomial
from .statistics import StatisticId, part_bound, row_contribution
from .weights import WeightId, parse_weight, row_product, weight

logger = logging.getLogger(__name__)


def _add_shifted(target: list[int], source: list[int], factor: int, shift: int) -> None:
    if not factor or shift >= len(target):
        return
    for e in range(len(target) - shift):
        value = source[e]
        if value:
            target[e + shift] += factor * value


def tally(
    spec: ConstraintSpec,
    stat: StatisticId | str,
    w: WeightId | str,
    order: int,
) -> Series:
    """Sum of weight(p) q^stat(p) over members of spec, truncated at order.

    Raises:
        NonFiniteStatisticError: If (spec, stat) has no finiteness certificate
    """
    stat = StatisticId.parse(stat)
    w = parse_weight(w)
    if order < 0:
        raise ParameterValidationError(
            f"order must be >= 0, got {order}", parameter="order", value=order
        )

    bound = part_bound(spec, stat, order)
    product = row_product(w)
    cap = spec.count_cap()
    size = order + 1

    def contribution(row: int, part: int) -> int:
        return row_contribution(stat, row, part)

    def stop_allowed(part: int, count: int) -> bool:
        return spec.admits_smallest(part) and spec.admits_count(count)

    def next_parts(part: int) -> range:
        low = spec.min_smallest
        if spec.max_gap is not None:
            low = max(low, part - spec.max_gap)
        return range(low, part - spec.min_gap + 1)

    # table[part][key] is G(part, key)
    table: dict[int, dict[int, list[int]]] = {}

    def base(part: int, row: int, include_self: bool) -> list[int]:
        """Stop term plus every transition to a smaller (or, if asked, equal) next part."""
        out = [0] * size
        if stop_allowed(part, row):
            out[0] = product.last(part)
        next_row = row + 1
        if cap is not None and next_row > cap:
            return out
        next_key = next_row if cap is not None else next_row % 2
        for nxt in next_parts(part):
            if nxt == part and not include_self:
                continue
            if not spec.admits_part(nxt):
                continue
            shift = contribution(next_row, nxt)
            if shift > order:
                continue
            factor = product.gap(part - nxt) * product.row
            _add_shifted(out, table[nxt][next_key], factor, shift)
        return out

    for part in range(spec.min_smallest, bound + 1):
        if not spec.admits_part(part):
            continue
        states: dict[int, list[int]] = {}
        table[part] = states
        if cap is not None:
            # Counts increase along every transition, so fill from the top count down.
            for count in range(cap, 0, -1):
                states[count] = base(part, count, include_self=True)
            continue

        # Parity keys: 1 after an odd row, 0 after an even row.
        # Rows 1 and 2 stand in for "odd" and "even" when checking stop conditions.
        base_odd = base(part, 1, include_self=False)
        base_even = base(part, 2, include_self=False)
        if spec.min_gap > 0:
            states[1], states[0] = base_odd, base_even
            continue

        self_factor = product.gap(0) * product.row
        shift_after_odd = contribution(2, part)
        shift_after_even = contribution(1, part)
        cycle = shift_after_odd + shift_after_even
        if cycle == 0:
            raise ComputationError(
                f"Statistic {stat.value} lets part {part} repeat at no cost",
                operation="tally",
            )
        # G_odd = base_odd + s_odd * G_even, G_even = base_even + s_even * G_odd
        numerator = list(base_odd)
        _add_shifted(numerator, base_even, self_factor, shift_after_odd)
        g_odd = list(
            div_binomial(
                Series(order=order, coeffs=tuple(numerator)),
                -(self_factor * self_factor),
                cycle,
            ).coeffs,
        )
        g_even = list(base_even)
        _add_shifted(g_even, g_odd, self_factor, shift_after_even)
        states[1], states[0] = g_odd, g_even

    total = [0] * size
    if member(spec, EMPTY):
        total[0] = product.empty
    if cap is None or cap >= 1:
        first_key = 1
        for part, states in table.items():
            shift = contribution(1, part)
            if shift <= order:
                _add_shifted(total, states[first_key], product.row, shift)

    logger.debug(
        f"tally {stat.value} {w.label} to order {order}: {len(table)} part sizes",
        extra={"operation": "tally", "bound": bound},
    )
    return Series(order=order, coeffs=tuple(total))


def explicit_sum(
    spec: ConstraintSpec,
    stat: StatisticId | str,
    w: WeightId | str,
    order: int,
) -> Series:
    """The same series as ``tally`` by listing every member explicitly."""
    stat = StatisticId.parse(stat)
    w = parse_weight(w)
    coeffs = [0] * (order + 1)
    for value in range(order + 1):
        for p in enumerate_by_statistic(spec, stat, value):
            coeffs[value] += weight(w, p)
    return Series(order=order, coeffs=tuple(coeffs))
