#!/usr/bin/env python3
"""Regenerate data/zeros.txt: ordinates of the first zeta zeros via mpmath.zetazero."""

import argparse
import sys

import mpmath


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=2000, help="number of zeros")
    parser.add_argument("--digits", type=int, default=20, help="significant digits per ordinate")
    parser.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
    args = parser.parse_args()

    mpmath.mp.dps = args.digits + 10
    lines = [
        f"# Ordinates of the first {args.count} nontrivial zeros of zeta (rho = 1/2 + i gamma), "
        f"{args.digits} significant digits.",
        "# Generated by tools/gen_zeros.py (mpmath.zetazero).",
    ]
    for n in range(1, args.count + 1):
        lines.append(mpmath.nstr(mpmath.zetazero(n).imag, args.digits, strip_zeros=False))
    text = "\n".join(lines) + "\n"

    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="ascii") as f:
            f.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
