#!/usr/bin/env python3
"""Run every verification suite and print the full report."""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from qbgraph.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main(["verify", "--suite", "all", *sys.argv[1:]]))
