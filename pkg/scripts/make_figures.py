#!/usr/bin/env python3
from __future__ import annotations

import argparse
import shutil
from pathlib import Path

from posauction.figures import PRESET_NAMES, figure_grid, figure_preset, write_ratio_csv

REPO_ROOT = Path(__file__).resolve().parents[1]
TEMPLATE_PATH = REPO_ROOT / "docs" / "assets" / "ratios.gp"
DEFAULT_OUT = REPO_ROOT / "figures"


def write_preset(name: str, out_dir: Path, decimals: int) -> Path:
    preset = figure_preset(name)
    target = out_dir / f"ratios-{preset.name}.csv"
    with target.open("w", encoding="utf-8", newline="") as handle:
        count = write_ratio_csv(figure_grid(preset.n_max, preset.r_values), handle, decimals=decimals)
    print(f"Wrote {count} rows to {target}")
    return target


def main() -> int:
    parser = argparse.ArgumentParser(description="Regenerate the effective winning ratio tables.")
    parser.add_argument("--out", type=Path, default=DEFAULT_OUT, help="Output directory.")
    parser.add_argument("--decimals", type=int, default=6, help="Digits in the decimal columns.")
    parser.add_argument("--preset", choices=PRESET_NAMES, action="append", help="Only these presets.")
    args = parser.parse_args()

    out_dir: Path = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in args.preset or PRESET_NAMES:
        write_preset(name, out_dir, args.decimals)
    if TEMPLATE_PATH.exists():
        shutil.copy2(TEMPLATE_PATH, out_dir / TEMPLATE_PATH.name)
        print(f"Copied {TEMPLATE_PATH.name}")
    else:
        print(f"Template missing: {TEMPLATE_PATH}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
