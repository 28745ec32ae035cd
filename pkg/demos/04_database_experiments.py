#!/usr/bin/env python3
"""Database experiments at a small radius.

Enumerates every triangle over the r2=6 half-disc lattice, stores the
records, finds the max-distance witness, and runs the head-to-head shift
comparison.  The reference runs are the same calls at r2 = 20 (triangles)
and r2 = 4, 5, 7 (pentagons).
"""

import tempfile
from pathlib import Path

from formred import (LatticeConfig, compare_stats, gauss_estimate,
                     generate_records, julia_vs_com_report, lattice_points,
                     max_distance, read_db, stats_json_dict, write_db)

cfg = LatticeConfig(r2=6, kgon=3)
points = lattice_points(cfg.r2)
print(f"lattice points with y >= 1, 1 < |z| <= {cfg.r2}: {len(points)}")
print(f"Gauss-circle estimate for the full annulus: "
      f"{gauss_estimate(1, cfg.r2):.1f} (half of it sits above y = 0)")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "triangles.jsonl"
    n = write_db(generate_records(cfg), path)
    print(f"\nwrote {n} triangle records to JSONL")
    rec = read_db(path)[12345]
    print(f"record 12345: roots {rec.roots}, com {rec.com}, "
          f"hyp ({rec.hyp[0]:.4f}, {rec.hyp[1]:.4f})")

best = max_distance(cfg)
print(f"\nmax center distance (euclidean, positive-re scope): {best.roots}")
print(f"  com {best.com}  hyp ({best.hyp[0]:.4f}, {best.hyp[1]:.4f})")

stats = compare_stats(cfg)
print("\nhead-to-head shift comparison:")
for key, val in stats_json_dict(cfg, stats).items():
    print(f"  {key}: {val}")

rep = julia_vs_com_report(LatticeConfig(r2=3, kgon=3))
print(f"\ntrue-Julia vs center-of-mass shifts at r2=3: "
      f"{rep['differ']}/{rep['total']} differ ({rep['fraction']:.2%})")
