"""Count every 3D candidate on n vertices and report the best and worst.

The default n=7 takes a few seconds.  ``--n 10`` repeats the full sweep of
roughly three quarters of a million candidates and needs days on one core;
use ``--jobs`` and ``--out`` so an interrupted run can resume from the
generated level files.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from dataclasses import asdict, dataclass

from lamanbounds.analysis import satisfies_3d_count
from lamanbounds.henneberg import generate_levels
from lamanbounds.realizations import CountConfig, count_many


@dataclass
class SweepConfig:
    n: int = 7
    jobs: int = 1
    seed: int = 0
    out: str | None = None
    limit: int | None = None  # count only the first LIMIT candidates


def sweep(cfg: SweepConfig) -> dict:
    level = None
    for k, lv in generate_levels(cfg.n, 3, jobs=cfg.jobs, out_dir=cfg.out):
        print(f"n={k}: {len(lv)} candidates", file=sys.stderr)
        level = lv
    codes = sorted(level.codes())
    if cfg.limit:
        codes = codes[: cfg.limit]
    rigid = [gc for gc in codes if satisfies_3d_count(gc.graph())]
    results = count_many([gc.graph() for gc in rigid], 3, CountConfig(seed=cfg.seed), jobs=cfg.jobs)
    values = [(r.value, gc) for r, gc in zip(results, rigid) if isinstance(r.value, int)]
    hist = Counter(v for v, _ in values)
    best = max(values)
    worst = min(values)
    return {
        "n": cfg.n,
        "candidates": len(codes),
        "count_condition": len(rigid),
        "flexible": sum(1 for r in results if r.flexible),
        "max": best[0], "max_code": str(best[1]),
        "min": worst[0], "min_code": str(worst[1]),
        "histogram": dict(sorted(hist.items())),
        "config": asdict(cfg),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(SweepConfig()).items():
        ap.add_argument(f"--{name}", type=int if name != "out" else str, default=default)
    cfg = SweepConfig(**vars(ap.parse_args()))
    print(json.dumps(sweep(cfg)))


if __name__ == "__main__":
    main()
