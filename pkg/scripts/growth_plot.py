"""Growth-rate table and plot for every tabulated base graph and construction."""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from lamanbounds import data
from lamanbounds.bounds import BoundSpec, growth_table, plot_rates, to_csv
from lamanbounds.graph import GraphCode

# (construction, dim, base table, shared subgraph size, shared subgraph count)
SOURCES = [
    ("caterpillar", 2, data.MAX_2D, 2, 1),
    ("fan", 2, data.FAMILY_T, 3, 2),
    ("genfan", 2, data.FAN_31, 4, 4),
    ("genfan3d", 3, data.MAX_3D, 3, 1),  # glued along a triangle
    ("genfan3d", 3, data.GENFAN_3D, 5, 4),
]


@dataclass
class PlotConfig:
    out_dir: str = "results"


def specs():
    for construction, dim, table, w, lw in SOURCES:
        for n, (code, count) in sorted(table.items()):
            if n > w:
                yield BoundSpec(dim, n, count, w, lw, n, construction=construction,
                                base_code=GraphCode(n, code))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default=PlotConfig.out_dir)
    cfg = PlotConfig(**vars(ap.parse_args()))
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for spec in specs():
        rows += growth_table([spec], [spec.base_size])
    (out / "rates.csv").write_text(to_csv(rows))
    plot_rates(rows, str(out / "rates.png"))
    print(f"{len(rows)} rows -> {out / 'rates.csv'}, {out / 'rates.png'}")


if __name__ == "__main__":
    main()
