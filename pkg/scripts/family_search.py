"""Search T(n) or S(n) among all Laman graphs on n vertices and rank members by count.

Desk scale is n <= 10.  Larger n (for example T(12) or S(15)) goes through the
same code with ``--allow-large`` but generation alone then takes hours.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from lamanbounds.families import SEARCH_MAX_N, search_family
from lamanbounds.realizations import CountConfig


@dataclass
class SearchConfig:
    family: str = "S"
    n: int = 8
    count: bool = True
    seed: int = 0
    top: int = 5
    allow_large: bool = False


def run(cfg: SearchConfig) -> dict:
    limit = 10**6 if cfg.allow_large else SEARCH_MAX_N
    members = search_family(cfg.n, cfg.family, count=cfg.count, config=CountConfig(seed=cfg.seed), max_n=limit)
    return {
        "family": cfg.family,
        "n": cfg.n,
        "members": len(members),
        "top": [{"code": str(r.code), "count": r.count if isinstance(r.count, int) else str(r.count)}
                for r in members[: cfg.top]],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=("T", "S"), default="S")
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--no-count", dest="count", action="store_false")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--top", type=int, default=5)
    ap.add_argument("--allow-large", action="store_true")
    cfg = SearchConfig(**vars(ap.parse_args()))
    out = run(cfg)
    print(json.dumps(out))
    print(f"{cfg.family}({cfg.n}): {out['members']} members", file=sys.stderr)


if __name__ == "__main__":
    main()
