#!/usr/bin/env python3
"""Write the standard comparison curves as CSV files.

Produces four tables under the output directory:
  acuity_falloff.csv        constant-fovea falloff for 20/10..20/40
  tracking_error_family.csv 20/20 falloff inflated by 1..10 deg of error
  model_comparison.csv      constant-fovea vs slope model across acuities
  display_overlays.csv      bundled display profiles with the 20/20 falloff
"""

import argparse
from pathlib import Path

from fovkit import build_rdf, emit_curves, load_bundled_spec, make_adf

ACUITIES = ("20/10", "20/20", "20/30", "20/40")


def write(path: Path, table) -> None:
    path.write_text(table.to_csv(), encoding="utf-8", newline="")
    print(f"wrote {path} ({len(table.rows)} rows, {len(table.columns)} columns)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out", type=Path)
    parser.add_argument("--step", default=0.1, type=float)
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    falloffs = [(a.replace("/", "_"), make_adf("constant-fovea", a)) for a in ACUITIES]
    write(args.out_dir / "acuity_falloff.csv", emit_curves(falloffs, 0.0, 80.0, args.step))

    base = make_adf("constant-fovea", "20/20")
    family = [("err0", base)] + [
        (f"err{k}", base.with_foveation_error(float(k))) for k in range(1, 11)
    ]
    write(args.out_dir / "tracking_error_family.csv", emit_curves(family, 0.0, 80.0, args.step))

    comparison = []
    for acuity in ACUITIES:
        tag = acuity.replace("/", "_")
        comparison.append((f"constant_fovea_{tag}", make_adf("constant-fovea", acuity)))
        comparison.append((f"slope_{tag}", make_adf("slope", acuity)))
    write(args.out_dir / "model_comparison.csv", emit_curves(comparison, 0.0, 80.0, args.step))

    overlays = [("adf_20_20", base)]
    for name in ("vive", "vive_pro", "hololens", "varjo_vr1", "kim"):
        overlays.append((f"rdf_{name}", build_rdf(load_bundled_spec(name))))
    write(args.out_dir / "display_overlays.csv", emit_curves(overlays, 0.0, 50.0, args.step))


if __name__ == "__main__":
    main()
