#!/usr/bin/env python
"""solarmodel_tables.py: recompute all the printed tables."""

if __name__ == "__main__":
    import argparse
    import sys

    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )
    args = parser.parse_args()

    from solarmodel.cli import EXIT_OK, main

    codes = [
        main(["tables", "--id", str(table_id), "--format", args.format])
        for table_id in range(1, 7)
    ]
    sys.exit(max(codes, default=EXIT_OK))
