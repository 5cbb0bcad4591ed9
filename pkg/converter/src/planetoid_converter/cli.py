"""Command-line entry: convert --input DIR --name {cora|citeseer|pubmed} --output DIR."""

from __future__ import annotations

import argparse
import sys

from .convert import DATASETS, ConversionError, convert


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="planetoid-convert",
        description="Convert a Planetoid citation-network distribution into "
                    "the neutral dataset directory format")
    parser.add_argument("--input", required=True, help="directory holding the ind.* files")
    parser.add_argument("--name", required=True, choices=DATASETS)
    parser.add_argument("--output", required=True, help="destination dataset directory")
    args = parser.parse_args(argv)
    try:
        report = convert(args.input, args.name, args.output)
    except ConversionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    for line in report.lines():
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
