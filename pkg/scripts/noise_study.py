#!/usr/bin/env python3
"""Shot-sampled depolarizing-noise study for the two-charger circuit:
ideal vs estimated stored energy and efficiency across the first window.

Usage: python scripts/noise_study.py [out_dir] [depol_p] [shots]
"""
import csv
import sys
from pathlib import Path

from icobattery.cli import main

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("results")
depol_p = sys.argv[2] if len(sys.argv) > 2 else "0.05"
shots = sys.argv[3] if len(sys.argv) > 3 else "20000"
out_dir.mkdir(parents=True, exist_ok=True)

out_csv = out_dir / "noise_study.csv"
rc = main(["noise-study", "--n", "2", "--t-min", "0.5", "--t-max", "12",
           "--points", "24", "--shots", shots, "--depol-p", depol_p,
           "--seed", "0", "--out", str(out_csv)])
if rc:
    sys.exit(rc)

with open(out_csv, newline="") as fh:
    rows = list(csv.DictReader(fh))
n_over = sum(row["overestimates_E"] == "true" for row in rows)
print(f"wrote {out_csv} (+ raw counts in {out_csv.stem}_shots.csv)")
print(f"p = {depol_p}, {shots} shots: E overestimated at {n_over}/{len(rows)} points")
