"""Command line: ``plot <snapshot.csv> --levels N --min A --max B -o out.png``."""

from __future__ import annotations

import argparse
import sys

from .contours import FormatError, PlotSpec, RangeError, render_contours


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render iso-contours from a flow snapshot CSV.",
    )
    parser.add_argument("snapshot", help="snapshot CSV (header x,y,rho,u,v,p)")
    parser.add_argument("--levels", type=int, default=30,
                        help="number of evenly spaced contour levels")
    parser.add_argument("--min", dest="vmin", type=float, default=0.15,
                        help="lowest contour level")
    parser.add_argument("--max", dest="vmax", type=float, default=1.7,
                        help="highest contour level")
    parser.add_argument("--variable", default="rho",
                        choices=["rho", "u", "v", "p"],
                        help="which field to contour")
    parser.add_argument("--title", default=None)
    parser.add_argument("-o", "--output", default="contours.png",
                        help="output image path (PNG)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec = PlotSpec(
            snapshot=args.snapshot,
            output=args.output,
            variable=args.variable,
            levels=args.levels,
            vmin=args.vmin,
            vmax=args.vmax,
            title=args.title,
        )
        result = render_contours(spec)
    except (FormatError, RangeError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(f"wrote {result.output} ({len(result.levels)} levels)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
