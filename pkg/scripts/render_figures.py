#!/usr/bin/env python3
"""Render the standard rank-2 pictures into a directory of SVG files."""

import argparse
import os
import sys

from affine_buildings import embeddings, render
from affine_buildings.roots import build_root_system

SYSTEMS = (("a2", "A", 2), ("b2", "B", 2), ("g2", "G2", None))
OVERLAYS = ("a1-perp-in-a2", "a1-tilted-in-a2", "a1-diag-in-a1xa1",
            "a2-long-in-g2")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figures")
    parser.add_argument("--size", type=int, default=420)
    args = parser.parse_args(argv)
    os.makedirs(args.out, exist_ok=True)

    for name, tag, rank in SYSTEMS:
        path = os.path.join(args.out, name + ".svg")
        render.render_to_file(
            path, render.render_rank2(build_root_system(tag, rank),
                                      size=args.size))
        print(path)
    for name in OVERLAYS:
        pair = embeddings.STOCK_PAIRS[name]()
        path = os.path.join(args.out, name + ".svg")
        render.render_to_file(path, render.render_pair(pair,
                                                       size=args.size))
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
