#!/usr/bin/env python3
"""Survey sparse-set and cover cardinalities against their bounds.

For each space kind and dyadic scale, builds a maximal sparse subset and a
ball cover and tabulates count vs. the certified bounds.  Everything here is
deterministic; the table is written as CSV when --out is given.
"""

import argparse
from pathlib import Path

from limsupdim import (
    Cantor,
    Circle,
    Interval,
    cover_ball,
    max_sparse_subset,
    sparse_bounds,
    verify_cover,
)
from limsupdim.manifests import write_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-scale", type=int, default=8, help="finest 2^-k")
    parser.add_argument("--lam", type=float, default=1 / 3)
    parser.add_argument("--out", type=Path, default=None)
    args = parser.parse_args()

    rows = []
    for space in (Interval(), Circle(), Cantor(args.lam)):
        x0 = space.point(()) if isinstance(space, Cantor) else 0.5
        for k in range(1, args.max_scale + 1):
            r = 2.0**-k
            pts = max_sparse_subset(space, x0, space.diameter, r)
            lo, hi = sparse_bounds(space, space.diameter, r)
            rep = cover_ball(space, x0, space.diameter, r)
            sound = verify_cover(space, rep)
            rows.append([space.kind, k, len(pts), lo, hi,
                         rep.count, rep.bound, sound])
    header = ["space", "k", "sparse_count", "sparse_lower", "sparse_upper",
              "cover_count", "cover_bound", "cover_sound"]
    print(f"{'space':10s} {'k':>2s} {'#A':>6s} {'lower':>9s} {'upper':>10s} "
          f"{'cover':>6s} {'bound':>10s} sound")
    for row in rows:
        print(f"{row[0]:10s} {row[1]:2d} {row[2]:6d} {row[3]:9.3f} "
              f"{row[4]:10.1f} {row[5]:6d} {row[6]:10.1f} {row[7]}")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        write_csv(args.out, header, rows)
        print(f"written to {args.out}")


if __name__ == "__main__":
    main()
