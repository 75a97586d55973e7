"""Figure rendering CLI.

    figures render --recipe fig7 --input-dir D --out out.png
    figures list-recipes
"""

from __future__ import annotations

import argparse
import sys

from .recipes import RECIPES
from .render import EmptyTableError, MissingColumnError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="figures")
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser("render", help="render one figure from CSV inputs")
    p_render.add_argument("--recipe", required=True, choices=sorted(RECIPES))
    p_render.add_argument("--input-dir", required=True)
    p_render.add_argument("--out", required=True)
    p_render.add_argument("--cmap", default=None, help="colormap for density maps")
    p_render.add_argument("--log-amplitude", action="store_true",
                          help="log scale on amplitude sweep panels")

    sub.add_parser("list-recipes", help="print recipes and their inputs")

    args = parser.parse_args(argv)

    if args.command == "list-recipes":
        for name in sorted(RECIPES, key=lambda k: int(k[3:])):
            recipe = RECIPES[name]
            print(f"{name}: {recipe.description}")
            for file_name in recipe.required_files():
                print(f"    {file_name}: {', '.join(recipe.inputs[file_name])}")
        return 0

    options = {}
    if args.cmap:
        options["cmap"] = args.cmap
    if args.log_amplitude:
        options["log_amplitude"] = True
    try:
        out = render(args.recipe, args.input_dir, args.out, options)
    except (MissingColumnError, EmptyTableError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
