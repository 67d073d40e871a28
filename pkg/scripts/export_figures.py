#!/usr/bin/env python3
"""Export the three reference pictures as DOT files into out/.

Produces the rank-2 full graph, the rank-3 parabolic graph for J = {1, 3},
and the regular rank-2 level-zero slice with its n = 0 layer in red.
"""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from qbgraph.cli import main  # noqa: E402

OUT = pathlib.Path(__file__).resolve().parent.parent / "out"

JOBS = [
    ("qb_a2.dot", ["qbg", "--type", "A", "--rank", "2", "--format", "dot"]),
    (
        "pqbg_a3_13.dot",
        ["qbg", "--type", "A", "--rank", "3", "--parabolic", "1,3",
         "--format", "dot"],
    ),
    (
        "poset_a2_regular.dot",
        ["poset", "--type", "A", "--rank", "2", "--lambda", "2,1",
         "--window", "1", "--format", "dot"],
    ),
    (
        "ladder_a2_1.dot",
        ["lift", "--type", "A", "--rank", "2", "--parabolic", "1",
         "--mu=-2,-4", "--start", "", "--walk", "0,1;1,1;0,1",
         "--format", "dot"],
    ),
]


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    for name, argv in JOBS:
        path = OUT / name
        code = main(argv + ["--out", str(path)])
        if code != 0:
            sys.exit(code)
        print(f"wrote {path}")
