"""Partitions, constraint sets and enumeration.

A partition is a weakly decreasing tuple of positive integers; the empty
tuple is the unique partition of 0. A ``ConstraintSpec`` is a closed record
of the membership conditions used by the named partition sets (gap bounds,
smallest-part bounds, part counts, parity of the part count and residue
classes), which keeps membership decidable and serializable.

Enumeration is deterministic: results come in lexicographically decreasing
order of part sequences.
"""

import logging
from collections.abc import Iterable, Iterator, Sequence
from typing import Any, Literal

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationInfo,
    ValidationError as PydanticValidationError,
    field_validator,
    model_serializer,
    model_validator,
)

from .errors import ConstraintValidationError, ParameterValidationError, PartitionValidationError

logger = logging.getLogger(__name__)


def _partition_problem(values: Sequence[int]) -> str | None:
    for index, value in enumerate(values):
        if isinstance(value, bool) or not isinstance(value, int):
            return f"part {index + 1} is not an integer: {value!r}"
        if value <= 0:
            return f"part {index + 1} must be positive, got {value}"
        if index and value > values[index - 1]:
            return (
                f"parts must be weakly decreasing, {values[index - 1]} is followed by {value}"
            )
    return None


class Partition(BaseModel):
    """A weakly decreasing sequence of positive integers.

    Serializes as a plain JSON array, e.g. ``[4, 4, 2, 1, 1]``.
    """

    model_config = ConfigDict(frozen=True)

    parts: tuple[int, ...] = ()

    @field_validator("parts")
    @classmethod
    def validate_parts(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        problem = _partition_problem(v)
        if problem:
            raise ValueError(problem)
        return v

    @model_serializer
    def serialize(self) -> list[int]:
        return list(self.parts)

    @property
    def norm(self) -> int:
        return sum(self.parts)

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    @property
    def largest(self) -> int:
        """Largest part, 0 for the empty partition."""
        return self.parts[0] if self.parts else 0

    @property
    def smallest(self) -> int:
        """Smallest part, 0 for the empty partition."""
        return self.parts[-1] if self.parts else 0

    def gaps(self) -> list[int]:
        """Differences between consecutive parts."""
        return [a - b for a, b in zip(self.parts, self.parts[1:], strict=False)]

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:  # type: ignore[override]
        return iter(self.parts)

    def __getitem__(self, index: int) -> int:
        return self.parts[index]

    def __str__(self) -> str:
        return "(" + ",".join(str(part) for part in self.parts) + ")"


EMPTY = Partition.model_construct(parts=())


def _trusted(parts: Iterable[int]) -> Partition:
    # Only for sequences produced by enumeration, which are valid by construction.
    return Partition.model_construct(parts=tuple(parts))


def make_partition(values: Iterable[int]) -> Partition:
    """Build a Partition, rejecting increasing runs, zeros and negatives.

    Raises:
        PartitionValidationError: If values is not a partition
    """
    values = list(values)
    problem = _partition_problem(values)
    if problem:
        raise PartitionValidationError(f"Not a partition: {problem}", values=values)
    return _trusted(values)


class Residues(BaseModel):
    """Restriction of every part to a set of residue classes."""

    model_config = ConfigDict(frozen=True)

    modulus: int = Field(..., ge=1)
    allowed: tuple[int, ...]

    @field_validator("allowed")
    @classmethod
    def normalize(cls, v: tuple[int, ...], info: ValidationInfo) -> tuple[int, ...]:
        modulus = info.data.get("modulus")
        if modulus is None:
            return v
        normalized = tuple(sorted({value % modulus for value in v}))
        if not normalized:
            raise ValueError("residues must allow at least one class")
        return normalized

    def admits(self, part: int) -> bool:
        return part % self.modulus in self.allowed


class ConstraintSpec(BaseModel):
    """Declarative membership predicate for a set of partitions.

    Every field left at its default is inactive. Gaps are the differences
    ``lambda_i - lambda_{i+1}`` between consecutive parts.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    min_gap: int = Field(0, ge=0, description="Lower bound on consecutive-part gaps")
    max_gap: int | None = Field(None, ge=0, description="Upper bound on gaps")
    min_smallest: int = Field(1, ge=1, description="Lower bound on the smallest part")
    max_smallest: int | None = Field(None, ge=1, description="Upper bound on the smallest part")
    exact_parts: int | None = Field(None, ge=0, description="Exact number of parts")
    max_parts: int | None = Field(None, ge=0, description="Upper bound on the number of parts")
    parts_parity: Literal["even", "odd"] | None = Field(
        None,
        description="Parity of the number of parts",
    )
    residues: Residues | None = Field(None, description="Allowed residue classes of parts")

    @model_validator(mode="after")
    def check_bounds(self) -> "ConstraintSpec":
        if self.max_gap is not None and self.max_gap < self.min_gap:
            raise ValueError(f"max_gap {self.max_gap} is below min_gap {self.min_gap}")
        if self.max_smallest is not None and self.max_smallest < self.min_smallest:
            raise ValueError(
                f"max_smallest {self.max_smallest} is below min_smallest {self.min_smallest}",
            )
        return self

    def admits_part(self, part: int) -> bool:
        return self.residues is None or self.residues.admits(part)

    def admits_gap(self, gap: int) -> bool:
        return gap >= self.min_gap and (self.max_gap is None or gap <= self.max_gap)

    def admits_count(self, count: int) -> bool:
        if self.exact_parts is not None and count != self.exact_parts:
            return False
        if self.max_parts is not None and count > self.max_parts:
            return False
        if self.parts_parity is not None and count % 2 != (self.parts_parity == "odd"):
            return False
        return True

    def admits_smallest(self, part: int) -> bool:
        return part >= self.min_smallest and (
            self.max_smallest is None or part <= self.max_smallest
        )

    def count_cap(self) -> int | None:
        """Largest number of parts a member can have, if the constraints bound it."""
        caps = [cap for cap in (self.exact_parts, self.max_parts) if cap is not None]
        return min(caps) if caps else None


def spec_from_dict(data: dict[str, Any]) -> ConstraintSpec:
    """Build a ConstraintSpec from its JSON object form.

    Raises:
        ConstraintValidationError: If a field is unknown or out of range
    """
    try:
        return ConstraintSpec.model_validate(data)
    except PydanticValidationError as e:
        raise ConstraintValidationError(
            f"Invalid constraint spec: {e.errors()[0]['msg']}",
            spec=data,
        ) from e


def member(spec: ConstraintSpec, p: Partition) -> bool:
    """True iff p satisfies every active field of spec."""
    parts = p.parts
    if not spec.admits_count(len(parts)):
        return False
    if not parts:
        return True
    if not spec.admits_smallest(parts[-1]):
        return False
    if not all(spec.admits_part(part) for part in parts):
        return False
    return all(spec.admits_gap(gap) for gap in p.gaps())


def _search(
    spec: ConstraintSpec,
    remaining: int,
    ceiling: int,
    prefix: list[int],
    cap: int | None,
    found: list[Partition],
) -> None:
    # Gaps, residues and min_smallest are enforced while descending; only the
    # part count and the upper bound on the smallest part are left for the leaf.
    if remaining == 0:
        if spec.admits_count(len(prefix)) and (
            not prefix or spec.admits_smallest(prefix[-1])
        ):
            found.append(_trusted(prefix))
        return
    if cap is not None and len(prefix) >= cap:
        return
    floor = spec.min_smallest
    if prefix and spec.max_gap is not None:
        floor = max(floor, prefix[-1] - spec.max_gap)
    for part in range(min(ceiling, remaining), floor - 1, -1):
        if not spec.admits_part(part):
            continue
        prefix.append(part)
        _search(spec, remaining - part, part - spec.min_gap, prefix, cap, found)
        prefix.pop()


def enumerate_by_norm(spec: ConstraintSpec, n: int) -> list[Partition]:
    """All members of spec with norm n, in lexicographically decreasing order."""
    if n < 0:
        raise ParameterValidationError(f"norm must be >= 0, got {n}", parameter="n", value=n)
    found: list[Partition] = []
    _search(spec, n, n, [], spec.count_cap(), found)
    return found


def enumerate_by_statistic(spec: ConstraintSpec, stat: Any, n: int) -> list[Partition]:
    """All members of spec whose statistic equals n.

    Only (spec, statistic) pairs with a finiteness certificate are accepted;
    the certificate bounds the largest part, and the search is pruned on the
    running value of the statistic. The result equals enumerating every norm
    up to the bound and filtering, in lexicographically decreasing order.

    Raises:
        NonFiniteStatisticError: If the pair has no finiteness certificate
    """
    from .statistics import StatisticId, part_bound, row_contribution

    stat = StatisticId.parse(stat)
    if n < 0:
        raise ParameterValidationError(f"value must be >= 0, got {n}", parameter="n", value=n)
    if stat is StatisticId.NORM:
        return enumerate_by_norm(spec, n)

    bound = part_bound(spec, stat, n)
    cap = spec.count_cap()
    found: list[Partition] = []

    def walk(prefix: list[int], running: int, ceiling: int, floor: int) -> None:
        # Children first: every extension of a prefix sorts above the prefix itself.
        if cap is None or len(prefix) < cap:
            row = len(prefix) + 1
            for part in range(ceiling, floor - 1, -1):
                if not spec.admits_part(part):
                    continue
                value = running + row_contribution(stat, row, part)
                if value > n:
                    continue
                prefix.append(part)
                next_floor = spec.min_smallest
                if spec.max_gap is not None:
                    next_floor = max(next_floor, part - spec.max_gap)
                walk(prefix, value, part - spec.min_gap, next_floor)
                prefix.pop()
        if running == n:
            candidate = _trusted(prefix)
            if member(spec, candidate):
                found.append(candidate)

    walk([], 0, bound, spec.min_smallest)
    return found


def conjugate(p: Partition) -> Partition:
    """Reflect the Ferrers diagram across the main diagonal."""
    parts = p.parts
    return _trusted(sum(1 for part in parts if part > column) for column in range(p.largest))


def project_odd_indexed(p: Partition) -> Partition:
    """Keep the odd-indexed parts (lambda_1, lambda_3, ...).

    Sends 2l+v distinct parts into P_{l+v}(2-v, 2); the norm of the image
    is the odd-indexed sum of p.
    """
    return _trusted(p.parts[0::2])


def pointwise_add(p1: Partition, p2: Partition) -> Partition:
    """Row-wise sum of two Ferrers diagrams; the empty partition is the identity."""
    longer, shorter = (p1.parts, p2.parts) if len(p1) >= len(p2) else (p2.parts, p1.parts)
    rows = [a + (shorter[i] if i < len(shorter) else 0) for i, a in enumerate(longer)]
    assert _partition_problem(rows) is None, f"pointwise sum is not a partition: {rows}"
    return _trusted(rows)


def min_partition(M: int, k: int, m: int) -> Partition:
    """The norm-minimal member of P_M(k,m): ((M-1)m+k, (M-2)m+k, ..., m+k, k)."""
    if M < 1:
        raise ParameterValidationError(f"M must be >= 1, got {M}", parameter="M", value=M)
    if k < 1:
        raise ParameterValidationError(f"k must be >= 1, got {k}", parameter="k", value=k)
    if m < 0:
        raise ParameterValidationError(f"m must be >= 0, got {m}", parameter="m", value=m)
    return _trusted((M - 1 - i) * m + k for i in range(M))


def ferrers(p: Partition, symbol: str = "*") -> str:
    """ASCII dot diagram, one row per part."""
    return "\n".join(symbol * part for part in p.parts)
