"""Average power against execution time for every measured operation.

    python scripts/power_scatter.py --out out/
"""

import argparse
import json
from pathlib import Path

from pqep.dataset import builtin_reference_dataset
from pqep.plot import emit_plot, render_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("out"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    platform, records = builtin_reference_dataset()
    doc = emit_plot(records, mode="power_scatter", freq=platform.freq)
    (args.out / "power_scatter.json").write_text(json.dumps(doc, indent=2) + "\n")
    try:
        render_svg(doc, args.out / "power_scatter.svg")
    except ImportError:
        pass

    points = [(p[1], lbl, s["name"]) for s in doc["series"] for p, lbl in zip(s["points"], s["labels"])]
    lo, hi = min(points), max(points)
    print(f"{len(points)} operations; power ranges {lo[0]:.2f} mW ({lo[1]} {lo[2]}) to {hi[0]:.2f} mW ({hi[1]} {hi[2]})")


if __name__ == "__main__":
    main()
