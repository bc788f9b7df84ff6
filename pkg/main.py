#!/usr/bin/env python3
"""
Dev convenience runner.

Allows: python main.py verify all --order 40
This simply forwards to qpartitions.cli.main().
Not included in package distributions.
"""

from src.qpartitions.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
