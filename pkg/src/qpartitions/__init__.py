"""
qpartitions

Exact integer-partition enumeration, truncated q-series arithmetic and
coefficient-exact verification of weighted partition identities.

This package provides:
- Partitions, constraint sets and enumeration by norm or other statistics
- Partition statistics (odd/even-indexed sums, crank, Durfee square) and weights
- Truncated univariate and four-variable series with exact integer coefficients
- A registry of identities, each checked against independent builds
"""

# Package metadata
from __future__ import annotations

from importlib.metadata import PackageNotFoundError
from importlib.metadata import version as _pkg_version
from pathlib import Path as _Path


def _detect_version() -> str:
    """Return the installed package version, or fall back to pyproject.

    - When installed, resolves via importlib.metadata.
    - In a source checkout without installation, reads pyproject.toml.
    - Falls back to "0.0.0" if neither is available.
    """
    pkg_name = "qpartitions"
    try:
        return _pkg_version(pkg_name)
    except PackageNotFoundError:
        try:
            import tomllib

            root = _Path(__file__).resolve().parents[2]
            pyproject = root / "pyproject.toml"
            if pyproject.exists():
                data = tomllib.loads(pyproject.read_text(encoding="utf-8"))
                return data.get("project", {}).get("version", "0.0.0")
        except Exception:
            pass
        return "0.0.0"


__version__ = _detect_version()
__author__ = "Ramsi Kalia"
__email__ = "ramsi.kalia@gmail.com"
__description__ = "Exact partition enumeration and q-series identity verification"

# Package exports
from .identities import get_identity, registry
from .partitions import ConstraintSpec, Partition, enumerate_by_norm, make_partition
from .presets import get_preset
from .series import Series
from .tally import tally
from .verification import verify, verify_all


# Lazy forwarder: avoid importing argparse plumbing on package import
def main(argv: list[str] | None = None) -> int:
    from .cli import main as _cli_main

    return _cli_main(argv)


__all__ = [
    "ConstraintSpec",
    "Partition",
    "Series",
    "__author__",
    "__description__",
    "__email__",
    "__version__",
    "enumerate_by_norm",
    "get_identity",
    "get_preset",
    "main",
    "make_partition",
    "registry",
    "tally",
    "verify",
    "verify_all",
]
