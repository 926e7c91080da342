#!/usr/bin/env python3
"""Classify every bundled display across a range of evaluation acuities.

The same hardware grades differently depending on who is looking at it,
which is why the acuity label is part of every class.
"""

import argparse
import warnings

from fovkit import AcuityRangeWarning, bundled_spec_names, classify, load_bundled_spec

DEFAULT_ACUITIES = ("20/10", "20/20", "20/30", "20/40", "20/80", "20/200")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--acuity", action="append", help="evaluation acuity (repeatable)")
    args = parser.parse_args()
    acuities = tuple(args.acuity) if args.acuity else DEFAULT_ACUITIES

    names = [n for n in bundled_spec_names() if n != "uniform_30cpd_80deg"]
    width = max(len(n) for n in names)
    print(f"{'display':<{width}}  " + "  ".join(f"{a:>7}" for a in acuities))
    for name in names:
        spec = load_bundled_spec(name)
        cells = []
        for acuity in acuities:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", AcuityRangeWarning)
                result = classify(spec, acuity)
            cells.append(f"{result.resolution_class}{result.gaze_class}")
        print(f"{name:<{width}}  " + "  ".join(f"{c:>7}" for c in cells))


if __name__ == "__main__":
    main()
