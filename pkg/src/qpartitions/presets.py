"""
Named Partition Sets

Provides the constraint sets the identities are stated over. A preset name
is accepted anywhere a ConstraintSpec is accepted; parameterized presets
take their integers as keyword arguments (``get_preset("PMkm", M=2, k=1, m=2)``).

Available presets:
- U: all partitions
- D: partitions into distinct parts
- D_l, D_e, D_o: distinct parts, exactly l / an even / an odd number of them
- RR1, RR2: gaps of at least 2 (RR2 also excludes the part 1)
- PMkm, PleMkm: exactly / at most M parts, smallest part >= k, gaps >= m
- K: gaps and smallest part both at most 2
- C1hat, C2hat: parts congruent to +-1 / +-2 mod 5
- odd_parts: every part odd
"""

import json
import logging
from typing import Any

from .errors import ConstraintValidationError, ParameterValidationError, UnknownPresetError
from .partitions import ConstraintSpec, spec_from_dict

logger = logging.getLogger(__name__)

# Field values that are strings name a preset parameter.
PRESET_DEFINITIONS: dict[str, dict[str, Any]] = {
    "U": {
        "name": "Unrestricted",
        "description": "All partitions",
        "params": [],
        "fields": {},
    },
    "D": {
        "name": "Distinct parts",
        "description": "Partitions whose consecutive parts differ by at least 1",
        "params": [],
        "fields": {"min_gap": 1},
    },
    "D_l": {
        "name": "Exactly l distinct parts",
        "description": "Partitions into exactly l distinct parts",
        "params": ["l"],
        "fields": {"min_gap": 1, "exact_parts": "l"},
    },
    "D_e": {
        "name": "Even number of distinct parts",
        "description": "Distinct parts, even part count (contains the empty partition)",
        "params": [],
        "fields": {"min_gap": 1, "parts_parity": "even"},
    },
    "D_o": {
        "name": "Odd number of distinct parts",
        "description": "Distinct parts, odd part count",
        "params": [],
        "fields": {"min_gap": 1, "parts_parity": "odd"},
    },
    "RR1": {
        "name": "First Rogers-Ramanujan set",
        "description": "Gaps between consecutive parts at least 2",
        "params": [],
        "fields": {"min_gap": 2},
    },
    "RR2": {
        "name": "Second Rogers-Ramanujan set",
        "description": "Gaps at least 2 and every part greater than 1",
        "params": [],
        "fields": {"min_gap": 2, "min_smallest": 2},
    },
    "PMkm": {
        "name": "P_M(k,m)",
        "description": "Exactly M parts, smallest part >= k, gaps >= m",
        "params": ["M", "k", "m"],
        "fields": {"exact_parts": "M", "min_smallest": "k", "min_gap": "m"},
    },
    "PleMkm": {
        "name": "P_{<=M}(k,m)",
        "description": "At most M parts, smallest part >= k, gaps >= m",
        "params": ["M", "k", "m"],
        "fields": {"max_parts": "M", "min_smallest": "k", "min_gap": "m"},
    },
    "K": {
        "name": "Small gaps",
        "description": "Gaps between parts and the smallest part both at most 2",
        "params": [],
        "fields": {"max_gap": 2, "max_smallest": 2},
    },
    "C1hat": {
        "name": "Parts +-1 mod 5",
        "description": "Every part congruent to 1 or 4 mod 5",
        "params": [],
        "fields": {"residues": {"modulus": 5, "allowed": [1, 4]}},
    },
    "C2hat": {
        "name": "Parts +-2 mod 5",
        "description": "Every part congruent to 2 or 3 mod 5",
        "params": [],
        "fields": {"residues": {"modulus": 5, "allowed": [2, 3]}},
    },
    "odd_parts": {
        "name": "Odd parts",
        "description": "Every part odd",
        "params": [],
        "fields": {"residues": {"modulus": 2, "allowed": [1]}},
    },
}


def list_preset_names() -> list[str]:
    """Get list of available preset names."""
    return list(PRESET_DEFINITIONS.keys())


def get_preset_summary() -> dict[str, str]:
    """Get summary of all presets with their descriptions."""
    summary = {}
    for name, definition in PRESET_DEFINITIONS.items():
        params = definition["params"]
        label = f"{name}({','.join(params)})" if params else name
        summary[label] = definition["description"]
    return summary


def _canonical_name(preset_name: str) -> str:
    if preset_name in PRESET_DEFINITIONS:
        return preset_name
    folded = {name.casefold(): name for name in PRESET_DEFINITIONS}
    if preset_name.casefold() in folded:
        return folded[preset_name.casefold()]
    raise UnknownPresetError(
        f"Unknown preset: {preset_name}",
        name=preset_name,
        available=list_preset_names(),
    )


def get_preset(preset_name: str, **params: int) -> ConstraintSpec:
    """Build the ConstraintSpec of a named set.

    Args:
        preset_name: Name of the preset (case-insensitive)
        **params: Integer parameters of parameterized presets

    Returns:
        The constraint spec

    Raises:
        UnknownPresetError: If the preset does not exist
        ParameterValidationError: If a parameter is missing or out of range
    """
    name = _canonical_name(preset_name)
    definition = PRESET_DEFINITIONS[name]

    missing = [param for param in definition["params"] if param not in params]
    if missing:
        raise ParameterValidationError(
            f"Preset {name} needs parameter(s) {', '.join(missing)}",
            parameter=missing[0],
        )
    unused = sorted(set(params) - set(definition["params"]))
    if unused:
        logger.debug(f"Ignoring parameters {unused} for preset {name}")

    fields: dict[str, Any] = {}
    for field, value in definition["fields"].items():
        if isinstance(value, str) and value in definition["params"]:
            value = params[value]
            if not isinstance(value, int) or value < 0:
                raise ParameterValidationError(
                    f"Preset {name} parameter must be a non-negative integer, got {value!r}",
                    parameter=field,
                    value=value,
                )
            if field == "min_smallest":
                # Parts are positive, so a smallest-part bound of 0 is the same as 1.
                value = max(value, 1)
        fields[field] = value

    return spec_from_dict(fields)


def resolve_spec(text: str, params: dict[str, int] | None = None) -> ConstraintSpec:
    """Resolve a preset name or an inline JSON object into a ConstraintSpec.

    Raises:
        UnknownPresetError: On an unknown preset name
        ConstraintValidationError: On malformed inline JSON
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise ConstraintValidationError(f"Constraint spec is not valid JSON: {e}") from e
        return spec_from_dict(data)
    return get_preset(stripped, **(params or {}))
