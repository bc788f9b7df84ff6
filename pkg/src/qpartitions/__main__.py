#!/usr/bin/env python3
"""
Entry point for running qpartitions as a module.

This allows the package to be run with:
- python -m qpartitions verify all --order 40
"""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
