"""Identity verification.

Builds both sides of a registered identity to a truncation order and
compares them coefficient by coefficient. A mismatch is reported as data
(the first exponent where the sides differ, with both values), never as an
exception; errors from the builders themselves (an order above the limit,
coefficient overflow) still propagate.
"""

import csv
import io
import json
import logging
import time
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from .config import get_worker_count
from .errors import ParameterValidationError
from .forms import validate_order
from .identities import Identity, select_identities
from .mseries import MSeries, degree
from .series import Series, first_difference
from .utils.logging_utils import log_with_context

logger = logging.getLogger(__name__)

Side = Literal["lhs", "rhs", "oracle"]
REPORT_COLUMNS = ("id", "order", "status", "first_mismatch", "ms")


class VerificationStatus(str, Enum):
    VERIFIED = "verified"
    FAILED = "failed"


class Mismatch(BaseModel):
    """First disagreement between two sides."""

    model_config = ConfigDict(frozen=True)

    exponent: int | tuple[int, int, int, int]
    lhs: int
    rhs: int


class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    order: int = Field(..., ge=0, description="Order the sides were compared to")
    status: VerificationStatus
    first_mismatch: Mismatch | None = None
    ms: float | None = Field(None, description="Wall time of the check in milliseconds")

    @property
    def verified(self) -> bool:
        return self.status is VerificationStatus.VERIFIED

    def to_record(self, include_timing: bool = False) -> dict[str, Any]:
        mismatch = self.first_mismatch
        return {
            "id": self.id,
            "order": self.order,
            "status": self.status.value,
            "first_mismatch": (
                {
                    "exponent": (
                        list(mismatch.exponent)
                        if isinstance(mismatch.exponent, tuple)
                        else mismatch.exponent
                    ),
                    "lhs": mismatch.lhs,
                    "rhs": mismatch.rhs,
                }
                if mismatch
                else None
            ),
            "ms": round(self.ms, 3) if include_timing and self.ms is not None else None,
        }


def build_side(ident: Identity, side: Side, order: int) -> Series | MSeries:
    """Expand one side of an identity to ``order``.

    Raises:
        ParameterValidationError: If the identity has no such side
    """
    recipe = getattr(ident, side, None) if side in ("lhs", "rhs", "oracle") else None
    if recipe is None:
        raise ParameterValidationError(
            f"Identity {ident.id} has no {side} side",
            parameter="side",
            value=side,
        )
    return recipe.build(order)


def first_mismatch(
    s1: Series | MSeries,
    s2: Series | MSeries,
) -> Mismatch | None:
    """Lowest exponent where the series differ.

    Four-variable series are compared by total degree, then by exponent.
    """
    if isinstance(s1, Series) and isinstance(s2, Series):
        e = first_difference(s1, s2)
        if e is None:
            return None
        return Mismatch(exponent=e, lhs=s1.coeffs[e], rhs=s2.coeffs[e])
    if isinstance(s1, MSeries) and isinstance(s2, MSeries):
        order = min(s1.order, s2.order)
        exponents = {e for e in s1.terms if degree(e) <= order}
        exponents |= {e for e in s2.terms if degree(e) <= order}
        for e in sorted(exponents, key=lambda x: (degree(x), x)):
            left, right = s1.coefficient(e), s2.coefficient(e)
            if left != right:
                return Mismatch(exponent=e, lhs=left, rhs=right)
        return None
    raise ParameterValidationError(
        "Cannot compare a univariate series with a four-variable one",
        parameter="series",
    )


def _compare(
    ident: Identity,
    first: Side,
    second: Side,
    order: int,
    report_id: str,
) -> VerificationReport:
    checked = ident.effective_order(order)
    start = time.perf_counter()
    mismatch = first_mismatch(
        build_side(ident, first, checked),
        build_side(ident, second, checked),
    )
    ms = (time.perf_counter() - start) * 1000
    status = VerificationStatus.VERIFIED if mismatch is None else VerificationStatus.FAILED
    report = VerificationReport(
        id=report_id,
        order=checked,
        status=status,
        first_mismatch=mismatch,
        ms=ms,
    )
    if mismatch is None:
        logger.info(
            f"{report_id}: verified to order {checked}",
            extra={"operation": "verify", "identity": report_id, "ms": ms},
        )
    else:
        logger.warning(
            f"{report_id}: sides differ at {mismatch.exponent} "
            f"({mismatch.lhs} != {mismatch.rhs})",
            extra={"operation": "verify", "identity": report_id},
        )
    return report


def verify(ident: Identity, order: int) -> VerificationReport:
    """Compare lhs and rhs of an identity to ``order``.

    The order actually checked is capped at the identity's ``max_order``
    and recorded in the report.

    Raises:
        OrderLimitError: If order exceeds QPARTITIONS_MAX_ORDER
    """
    validate_order(order)
    return _compare(ident, "lhs", "rhs", order, ident.id)


def verify_oracle(ident: Identity, order: int) -> list[VerificationReport]:
    """Check the oracle build against both sides; empty when there is none."""
    validate_order(order)
    if ident.oracle is None:
        return []
    return [
        _compare(ident, "lhs", "oracle", order, f"{ident.id}#oracle-lhs"),
        _compare(ident, "rhs", "oracle", order, f"{ident.id}#oracle-rhs"),
    ]


def verify_all(
    order: int,
    pattern: str | None = None,
    identities: Sequence[Identity] | None = None,
    workers: int | None = None,
) -> list[VerificationReport]:
    """Verify every selected identity; results come back sorted by id.

    Args:
        order: Truncation order
        pattern: Shell-style id pattern, ``all`` or None for the whole registry
        identities: Explicit identities to check instead of a registry pattern
        workers: Thread count (defaults to QPARTITIONS_WORKERS)
    """
    validate_order(order)
    selected = list(identities) if identities is not None else select_identities(pattern)
    selected.sort(key=lambda ident: ident.id)
    workers = workers or get_worker_count()
    log_with_context(
        "info",
        f"Verifying {len(selected)} identities to order {order}",
        operation="verify_all",
        identities=len(selected),
        workers=workers,
    )

    if workers == 1 or len(selected) < 2:
        reports = [verify(ident, order) for ident in selected]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda ident: verify(ident, order), selected))

    failed = [r.id for r in reports if not r.verified]
    if failed:
        logger.warning(f"{len(failed)} of {len(reports)} identities failed: {failed}")
    return reports


def to_json_line(report: VerificationReport, include_timing: bool = False) -> str:
    """One report as a JSON line; ``ms`` is null unless timing is asked for."""
    return json.dumps(report.to_record(include_timing), separators=(",", ":"))


def reports_to_csv(reports: Iterable[VerificationReport], include_timing: bool = False) -> str:
    """Reports as CSV with a header row; first_mismatch is a JSON cell."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for report in reports:
        record = report.to_record(include_timing)
        mismatch = record["first_mismatch"]
        writer.writerow(
            [
                record["id"],
                record["order"],
                record["status"],
                json.dumps(mismatch, separators=(",", ":")) if mismatch else "",
                "" if record["ms"] is None else record["ms"],
            ],
        )
    return buffer.getvalue()
