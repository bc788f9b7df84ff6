#!/usr/bin/env python3
"""
qpartitions MCP Server

Exposes partition enumeration, statistics, series expansion and identity
verification as MCP tools over stdio. Every tool is a thin wrapper around a
pure library call; failures come back as structured error payloads.
"""

import json
import logging
import sys
from datetime import datetime

from mcp.server.fastmcp import FastMCP

from .errors import convert_exception, create_error_response
from .forms import expand_form, list_forms, validate_order
from .identities import get_identity, instantiate, registry
from .partitions import enumerate_by_statistic, ferrers, make_partition
from .presets import get_preset_summary, resolve_spec
from .statistics import StatisticId, all_statistics
from .tally import tally
from .verification import verify, verify_oracle
from .weights import parse_weight, weight

logger = logging.getLogger(__name__)

# Initialize FastMCP server
mcp = FastMCP("qpartitions")

MAX_ENUMERATION_VALUE = 60
STANDARD_WEIGHTS = ("unit", "omega:1,2", "omega:2,2", "tilde1", "tilde2", "hat1", "sign")


@mcp.tool()
def ping() -> dict:
    """Lightweight health check for the MCP server."""
    try:
        from . import __version__ as _version  # type: ignore
    except Exception:
        _version = "0.0.0"

    return {
        "status": "ok",
        "server": "qpartitions",
        "version": _version,
        "time": datetime.now().isoformat(),
    }


def validate_mcp_request(tool_name: str, **kwargs) -> tuple[bool, str | None]:
    """Validate MCP tool arguments with the shared validation utilities.

    Returns:
        Tuple of (is_valid, error_message)
    """
    from .utils.validation_utils import validate_numeric_range, validate_string_input

    try:
        for key in ("spec", "partition", "name", "identity_id", "stat", "weight"):
            if kwargs.get(key) is not None:
                validate_string_input(
                    kwargs[key],
                    key,
                    max_length=2000,
                    allow_empty=key == "partition",
                )
        if "value" in kwargs:
            validate_numeric_range(kwargs["value"], "value", 0, MAX_ENUMERATION_VALUE)
        if "order" in kwargs:
            validate_order(kwargs["order"])
        return True, None
    except Exception as e:
        logger.debug(f"{tool_name}: rejected arguments: {e}")
        return False, str(e)


def _failure(tool_name: str, error: Exception, **data) -> dict:
    converted = convert_exception(error, f"{tool_name} failed")
    logger.warning(f"{tool_name} failed: {converted}")
    return create_error_response(converted, **data)


@mcp.tool()
def enumerate_partitions(
    spec: str,
    value: int,
    stat: str = "norm",
    params: dict[str, int] | None = None,
    weight_tag: str = "",
) -> dict:
    """List the members of a partition set with a given statistic value.

    Args:
        spec: Preset name (U, D, RR1, PMkm, ...) or inline JSON constraint spec
        value: Statistic value (0-60)
        stat: Statistic tag: norm, parts, o, e, o-conj, e-conj
        params: Preset parameters, e.g. {"M": 2, "k": 1, "m": 2}
        weight_tag: Optional weight tag to evaluate on every partition

    Returns:
        Dictionary with the partitions (and weights when asked for)
    """
    valid, error = validate_mcp_request(
        "enumerate_partitions",
        spec=spec,
        stat=stat,
        value=value,
    )
    if not valid:
        return create_error_response(error or "invalid arguments", partitions=[])
    try:
        constraint = resolve_spec(spec, params)
        statistic_id = StatisticId.parse(stat)
        partitions = enumerate_by_statistic(constraint, statistic_id, value)
        records = []
        w = parse_weight(weight_tag) if weight_tag else None
        for p in partitions:
            record: dict = {"parts": list(p.parts)}
            if w is not None:
                record["weight"] = weight(w, p)
            records.append(record)
        return {
            "success": True,
            "stat": statistic_id.value,
            "value": value,
            "count": len(records),
            "partitions": records,
        }
    except Exception as e:
        return _failure("enumerate_partitions", e, partitions=[])


@mcp.tool()
def partition_statistics(partition: str) -> dict:
    """Statistics, standard weights and Ferrers diagram of one partition.

    Args:
        partition: Comma-separated parts in weakly decreasing order, e.g. "4,4,2,1,1"
    """
    valid, error = validate_mcp_request("partition_statistics", partition=partition)
    if not valid:
        return create_error_response(error or "invalid arguments")
    try:
        from .utils.validation_utils import parse_int_list

        p = make_partition(parse_int_list(partition, "partition"))
        weights = {tag: weight(parse_weight(tag), p) for tag in STANDARD_WEIGHTS}
        return {
            "success": True,
            "partition": list(p.parts),
            "statistics": all_statistics(p),
            "weights": weights,
            "ferrers": ferrers(p),
        }
    except Exception as e:
        return _failure("partition_statistics", e)


@mcp.tool()
def expand_series(
    name: str = "",
    order: int = 20,
    params: dict[str, int] | None = None,
    spec: str = "",
    stat: str = "norm",
    weight_tag: str = "unit",
) -> dict:
    """Expand a named product/sum form, or a weighted partition set, to an order.

    Args:
        name: Form name such as euler_inverse, rr1_sum, finite_rhs
        order: Truncation order
        params: Form or preset parameters
        spec: Expand this partition set by row summation when name is empty
        stat: Statistic for set expansion
        weight_tag: Weight for set expansion
    """
    valid, error = validate_mcp_request("expand_series", order=order)
    if not valid:
        return create_error_response(error or "invalid arguments")
    try:
        if name:
            series = expand_form(name, params, order)
        elif spec:
            series = tally(resolve_spec(spec, params), stat, weight_tag, order)
        else:
            return create_error_response("Give a form name or a spec")
        return {"success": True, "series": series.model_dump()}
    except Exception as e:
        return _failure("expand_series", e)


@mcp.tool()
def verify_identity(
    identity_id: str,
    order: int = 20,
    params: dict[str, int] | None = None,
    oracle: bool = False,
) -> dict:
    """Verify a registered identity coefficient by coefficient.

    Args:
        identity_id: Registry id, or a parameterized family with params
        order: Truncation order
        params: Parameters for finite_weighted, corollary_sum or weight_change
        oracle: Also check the oracle build against both sides
    """
    valid, error = validate_mcp_request(
        "verify_identity",
        identity_id=identity_id,
        order=order,
    )
    if not valid:
        return create_error_response(error or "invalid arguments")
    try:
        ident = instantiate(identity_id, params) if params else get_identity(identity_id)
        reports = [verify(ident, order)]
        if oracle:
            reports.extend(verify_oracle(ident, order))
        return {
            "success": True,
            "verified": all(report.verified for report in reports),
            "reports": [report.to_record(include_timing=True) for report in reports],
        }
    except Exception as e:
        return _failure("verify_identity", e)


@mcp.tool()
def list_identities() -> dict:
    """List the identity registry with plain-language statements."""
    try:
        summaries = [ident.summary() for ident in registry()]
        return {
            "identities": summaries,
            "total_count": len(summaries),
            "message": f"Found {len(summaries)} registered identities",
        }
    except Exception as e:
        return _failure("list_identities", e, identities=[], total_count=0)


@mcp.tool()
def list_presets() -> dict:
    """List named partition sets and series forms."""
    presets = get_preset_summary()
    forms = list_forms()
    return {
        "presets": presets,
        "forms": forms,
        "total_count": len(presets) + len(forms),
        "message": f"Found {len(presets)} partition sets and {len(forms)} series forms",
    }


@mcp.resource("file://identities")
def identities_resource() -> str:
    """JSON catalogue of every registered identity."""
    return json.dumps([ident.summary() for ident in registry()], indent=2)


def main():
    """Main entry point for the MCP server."""
    from .config import get_config_summary, get_log_level, validate_config_on_startup
    from .utils.logging_utils import configure_logging

    try:
        validate_config_on_startup()
        configure_logging(get_log_level())
        logger.info("Starting qpartitions MCP server")
        logger.info(get_config_summary())
    except Exception as e:
        print(f"Configuration Error: {e}", file=sys.stderr)
        sys.exit(1)

    mcp.run("stdio")


if __name__ == "__main__":
    main()
