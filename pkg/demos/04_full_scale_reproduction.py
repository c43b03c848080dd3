#!/usr/bin/env python3
"""Full-scale reproduction of the bundled reference tables (long run).

Re-runs the original experiment: census every table row up to the 10^8-th
prime, 2038074743, and compare with both the exact density and the ratio
recorded in the source tables.  Expect a few hours on a desktop; each row is
checkpointed, so the script can be interrupted and re-run at will.

    python demos/04_full_scale_reproduction.py [checkpoint_dir]

For a quicker taste, lower X below (e.g. 10**8 finishes in minutes).
"""

import pathlib
import sys

from orddiv import CensusConfig, RationalBase, run_census
from orddiv.cli import decimal_string
from orddiv.tables import FULL_SCALE_X, TABLE_NEGATIVE, TABLE_POSITIVE

X = FULL_SCALE_X
checkpoint_dir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "full_scale_checkpoints")
checkpoint_dir.mkdir(exist_ok=True)

print(f"census of all 16 table rows up to x = {X}")
print(f"checkpoints in {checkpoint_dir}/ (safe to interrupt and restart)")
print(f"{'g':>4} {'d':>3} {'ratio':>12} {'recorded':>12} {'delta':>12} {'|ratio-delta|':>14}")
for row in TABLE_POSITIVE + TABLE_NEGATIVE:
    config = CensusConfig(
        g=RationalBase(row.g, 1),
        d=row.d,
        x_limit=X,
        segment_size=5 * 10**7,
        worker_count=2,
        checkpoint_path=checkpoint_dir / f"g{row.g}_d{row.d}.jsonl",
    )
    result = run_census(config)
    ratio = result.ratio
    print(
        f"{row.g:>4} {row.d:>3} {decimal_string(ratio):>12} {row.experimental:>12} "
        f"{decimal_string(row.delta):>12} {decimal_string(abs(ratio - row.delta)):>14}"
    )
