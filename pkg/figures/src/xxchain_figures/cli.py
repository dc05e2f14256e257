"""Batch renderer: one command per figure id plus an 'all' mode."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .recipes import FIGURE_IDS
from .render import SchemaError, render, render_all


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xxchain-figures",
        description="Render publication-style figures from xxchain sweep CSVs.",
    )
    parser.add_argument("figure_id", choices=FIGURE_IDS + ("all",))
    parser.add_argument("--data-dir", default=".", help="directory holding the sweep CSVs")
    parser.add_argument("--out-dir", default=".", help="directory for image output")
    parser.add_argument("--formats", default="png,svg",
                        help="comma-separated subset of png,svg")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    formats = tuple(fmt for fmt in args.formats.split(",") if fmt)
    if not formats or any(fmt not in ("png", "svg") for fmt in formats):
        print(f"error: unsupported formats {args.formats!r}", file=sys.stderr)
        return 2
    try:
        if args.figure_id == "all":
            written = render_all(Path(args.data_dir), Path(args.out_dir), formats)
        else:
            written = render(args.figure_id, Path(args.data_dir), Path(args.out_dir), formats)
    except (FileNotFoundError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
