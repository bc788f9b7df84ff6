"""Partition statistics, crank classes and finiteness certificates.

Every statistic maps a partition to an integer. The row-local ones (norm,
part count, odd/even-indexed sums and their conjugate readings) are sums of
a per-row contribution, which is what the enumeration pruning and the row
summation in ``tally`` rely on.
"""

import logging
from collections.abc import Callable
from enum import Enum
from typing import Any

from .errors import NonFiniteStatisticError, ParameterValidationError
from .partitions import (
    ConstraintSpec,
    Partition,
    conjugate,
    enumerate_by_norm,
    project_odd_indexed,
)
from .presets import get_preset
from .series import Series

logger = logging.getLogger(__name__)


class StatisticId(str, Enum):
    """Closed set of statistics; values are the CLI/JSON tags."""

    NORM = "norm"
    NUM_PARTS = "parts"
    ODD_INDEX_SUM = "o"
    EVEN_INDEX_SUM = "e"
    ODD_INDEX_SUM_OF_CONJUGATE = "o-conj"
    EVEN_INDEX_SUM_OF_CONJUGATE = "e-conj"
    CRANK = "crank"
    DURFEE = "durfee"

    @classmethod
    def parse(cls, value: "StatisticId | str") -> "StatisticId":
        """Accept a tag (``o-conj``) or a member name (``odd_index_sum_of_conjugate``)."""
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        for member in cls:
            if text in (member.value, member.name.lower()):
                return member
        raise ParameterValidationError(
            f"Unknown statistic: {value}. Use one of {[m.value for m in cls]}",
            parameter="stat",
            value=value,
        )


class CrankRelation(str, Enum):
    EQ = "="
    LE = "<="
    GE = ">="

    @classmethod
    def parse(cls, value: "CrankRelation | str") -> "CrankRelation":
        if isinstance(value, cls):
            return value
        text = str(value).strip().replace("≤", "<=").replace("≥", ">=")
        aliases = {"==": "=", "eq": "=", "le": "<=", "ge": ">="}
        text = aliases.get(text.lower(), text)
        try:
            return cls(text)
        except ValueError as e:
            raise ParameterValidationError(
                f"Unknown crank relation: {value}. Use =, <= or >=",
                parameter="relation",
                value=value,
            ) from e

    def holds(self, value: int, bound: int) -> bool:
        if self is CrankRelation.EQ:
            return value == bound
        if self is CrankRelation.LE:
            return value <= bound
        return value >= bound


def norm(p: Partition) -> int:
    return p.norm


def num_parts(p: Partition) -> int:
    return p.num_parts


def odd_index_sum(p: Partition) -> int:
    """O(p) = lambda_1 + lambda_3 + ..."""
    return sum(p.parts[0::2])


def even_index_sum(p: Partition) -> int:
    """E(p) = lambda_2 + lambda_4 + ..."""
    return sum(p.parts[1::2])


def odd_index_sum_of_conjugate(p: Partition) -> int:
    """O of the conjugate: the dots in odd-numbered columns, sum of ceil(lambda_i / 2)."""
    return sum((part + 1) // 2 for part in p.parts)


def even_index_sum_of_conjugate(p: Partition) -> int:
    """E of the conjugate: the dots in even-numbered columns, sum of floor(lambda_i / 2)."""
    return sum(part // 2 for part in p.parts)


def crank(p: Partition) -> int:
    """Largest part if 1 is not a part, else #(parts > #1s) - #1s. crank(empty) = 0."""
    if not p.parts:
        return 0
    ones = p.parts.count(1)
    if ones == 0:
        return p.largest
    return sum(1 for part in p.parts if part > ones) - ones


def durfee(p: Partition) -> int:
    """Side of the largest square fitting in the Ferrers diagram."""
    side = 0
    for index, part in enumerate(p.parts, start=1):
        if part < index:
            break
        side = index
    return side


def parity(n: int) -> int:
    if n < 0:
        raise ParameterValidationError(f"parity needs n >= 0, got {n}", parameter="n", value=n)
    return n % 2


STATISTIC_FUNCTIONS: dict[StatisticId, Callable[[Partition], int]] = {
    StatisticId.NORM: norm,
    StatisticId.NUM_PARTS: num_parts,
    StatisticId.ODD_INDEX_SUM: odd_index_sum,
    StatisticId.EVEN_INDEX_SUM: even_index_sum,
    StatisticId.ODD_INDEX_SUM_OF_CONJUGATE: odd_index_sum_of_conjugate,
    StatisticId.EVEN_INDEX_SUM_OF_CONJUGATE: even_index_sum_of_conjugate,
    StatisticId.CRANK: crank,
    StatisticId.DURFEE: durfee,
}

ROW_LOCAL = frozenset(STATISTIC_FUNCTIONS) - {StatisticId.CRANK, StatisticId.DURFEE}


def statistic(stat: StatisticId | str, p: Partition) -> int:
    """Evaluate a statistic by id or tag."""
    return STATISTIC_FUNCTIONS[StatisticId.parse(stat)](p)


def all_statistics(p: Partition) -> dict[str, Any]:
    """Every statistic of p keyed by tag, plus the conjugate and the odd-indexed
    projection (used by ``stats``)."""
    values: dict[str, Any] = {stat.value: fn(p) for stat, fn in STATISTIC_FUNCTIONS.items()}
    values["conjugate"] = list(conjugate(p).parts)
    values["odd_projection"] = list(project_odd_indexed(p).parts)
    return values


def row_contribution(stat: StatisticId, row: int, part: int) -> int:
    """What row ``row`` (1-indexed) holding ``part`` dots adds to a row-local statistic."""
    if stat is StatisticId.NORM:
        return part
    if stat is StatisticId.NUM_PARTS:
        return 1
    if stat is StatisticId.ODD_INDEX_SUM:
        return part if row % 2 else 0
    if stat is StatisticId.EVEN_INDEX_SUM:
        return 0 if row % 2 else part
    if stat is StatisticId.ODD_INDEX_SUM_OF_CONJUGATE:
        return (part + 1) // 2
    if stat is StatisticId.EVEN_INDEX_SUM_OF_CONJUGATE:
        return part // 2
    raise NonFiniteStatisticError(
        f"Statistic {stat.value} is not a sum over rows",
        statistic=stat.value,
    )


def part_bound(spec: ConstraintSpec, stat: StatisticId | str, n: int) -> int:
    """Finiteness certificate: an upper bound on the largest part of any member
    whose statistic is at most n.

    Raises:
        NonFiniteStatisticError: If no certificate exists for the pair
    """
    stat = StatisticId.parse(stat)
    if stat in (StatisticId.NORM, StatisticId.ODD_INDEX_SUM):
        return n
    if stat is StatisticId.ODD_INDEX_SUM_OF_CONJUGATE:
        return 2 * n
    if stat is StatisticId.EVEN_INDEX_SUM_OF_CONJUGATE and spec.min_gap >= 1:
        return 2 * n + 1
    if (
        stat in (StatisticId.EVEN_INDEX_SUM, StatisticId.NUM_PARTS)
        and spec.max_gap is not None
        and spec.max_smallest is not None
    ):
        # At most 2n+1 rows, each at most max_gap above the next.
        return spec.max_smallest + 2 * n * spec.max_gap
    raise NonFiniteStatisticError(
        f"No finiteness certificate for statistic {stat.value} on this set: "
        "infinitely many members can share one value",
        context={"spec": spec.model_dump(exclude_defaults=True)},
        statistic=stat.value,
    )


def has_certificate(spec: ConstraintSpec, stat: StatisticId | str) -> bool:
    try:
        part_bound(spec, stat, 0)
    except NonFiniteStatisticError:
        return False
    return True


def count_crank_class(n: int, relation: CrankRelation | str, M: int) -> int:
    """Number of partitions of n whose crank satisfies the relation against M,
    by full enumeration."""
    relation = CrankRelation.parse(relation)
    return sum(
        1 for p in enumerate_by_norm(get_preset("U"), n) if relation.holds(crank(p), M)
    )


def _exact_parts_table(order: int) -> list[list[int]]:
    # table[t][j]: partitions of t into exactly j parts
    table = [[0] * (order + 1) for _ in range(order + 1)]
    table[0][0] = 1
    for t in range(1, order + 1):
        for j in range(1, t + 1):
            table[t][j] = table[t - 1][j - 1] + (table[t - j][j] if t - j >= j else 0)
    return table


def crank_class_series(relation: CrankRelation | str, M: int, order: int) -> Series:
    """Crank-class counts for every n <= order as one series.

    Each partition splits into w ones and a rest with parts >= 2. With no
    ones the crank is the largest part L, counted by partitions of n - L into
    parts in [2, L]. With w ones the crank is (#rest parts > w) - w; the rest
    splits into small parts in [2, w] and j big parts > w, the latter counted
    by partitions of (big norm - j*w) into exactly j parts.
    """
    relation = CrankRelation.parse(relation)
    out = [0] * (order + 1)
    if relation.holds(0, M):
        out[0] = 1

    exact = _exact_parts_table(order)
    # small[s]: partitions of s into parts in [2, w], grown one part size per step
    small = [1] + [0] * order
    for w in range(1, order + 1):
        if w >= 2:
            for s in range(w, order + 1):
                small[s] += small[s - w]

        # No ones, largest part L = w (needs w >= 2): rest is n - w in parts [2, w].
        if w >= 2 and relation.holds(w, M):
            for n in range(w, order + 1):
                out[n] += small[n - w]

        # Exactly w ones.
        for n in range(w, order + 1):
            rest = n - w
            total = 0
            for s in range(rest + 1):
                ways = small[s]
                if not ways:
                    continue
                big = rest - s
                if big == 0:
                    if relation.holds(-w, M):
                        total += ways
                    continue
                for j in range(1, big // (w + 1) + 1):
                    if relation.holds(j - w, M):
                        total += ways * exact[big - j * w][j]
            out[n] += total

    logger.debug(f"crank class {relation.value} {M} expanded to order {order}")
    return Series(order=order, coeffs=tuple(out))
