#!/usr/bin/env python3
"""Reproduce the efficiency-burst results: a full two-engine sweep over
N = 2..5 plus the burst report with the t* growth verdict.

Usage: python scripts/reproduce_bursts.py [out_dir]
"""
import json
import sys
from pathlib import Path

from icobattery.cli import main

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("results")
out_dir.mkdir(parents=True, exist_ok=True)

sweep_csv = out_dir / "sweep.csv"
bursts_json = out_dir / "bursts.json"

rc = main(["sweep", "--n", "2,3,4,5", "--points", "400", "--engine", "both",
           "--out", str(sweep_csv)])
rc |= main(["bursts", "--n", "2,3,4,5", "--points", "400",
            "--engine", "analytic", "--out", str(bursts_json)])
if rc:
    sys.exit(rc)

report = json.loads(bursts_json.read_text())
print(f"wrote {sweep_csv} and {bursts_json}")
for n, data in report["per_n"].items():
    print(f"N={n}: t* = {data['t_star']:.2f}, "
          f"{len(data['intervals'])} burst interval(s), "
          f"total duration {data['total_burst_duration']:.2f}")
print(f"t* monotonicity: {report['monotonicity_verdict']}")
