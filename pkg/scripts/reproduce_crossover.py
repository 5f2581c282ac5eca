"""Round5 vs SIKE and Round5 vs ECDH cross-overs from the bundled measurements.

Writes the energy-line plot data (and an SVG if matplotlib is available) to
the output directory and prints the cross-over table.

    python scripts/reproduce_crossover.py --out out/
"""

import argparse
import json
from pathlib import Path

from pqep.baskets import EPHEMERAL_TOTAL, affine_energy
from pqep.crossover import crossover_point
from pqep.dataset import builtin_reference_dataset
from pqep.plot import emit_plot, render_svg

PAIRS = [
    ("R5ND_1KEM_5d", "SIKEp434", 0.77e-3),
    ("R5ND_3KEM_5d", "SIKEp610", 1.10e-3),
    ("R5ND_5KEM_5d", "SIKEp751", 1.44e-3),
    ("R5ND_1KEM_5d", "ECDH-secp256r1", 1.9e-6),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("out"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    _, records = builtin_reference_dataset()
    by_name = {r.name: r for r in records}

    print(f"{'lattice':<14} {'other':<16} {'e* [J/bit]':>12} {'published':>10} {'dev':>7}")
    for a, b, published in PAIRS:
        res = crossover_point(affine_energy(by_name[a], EPHEMERAL_TOTAL), affine_energy(by_name[b], EPHEMERAL_TOTAL))
        dev = res.e_star / published - 1
        print(f"{a:<14} {b:<16} {res.e_star:>12.4g} {published:>10.3g} {dev:>+7.2%}")

    names = [n for a, b, _ in PAIRS[:3] for n in (a, b)]
    doc = emit_plot(
        [by_name[n] for n in names],
        EPHEMERAL_TOTAL,
        mode="lines",
        e_range=(0.5e-3, 1.8e-3),
        samples=53,
        pairs=[(a, b) for a, b, _ in PAIRS[:3]],
    )
    (args.out / "crossover.json").write_text(json.dumps(doc, indent=2) + "\n")
    try:
        render_svg(doc, args.out / "crossover.svg")
    except ImportError:
        print("matplotlib not installed; skipped SVG")
    print(f"wrote {args.out / 'crossover.json'}")


if __name__ == "__main__":
    main()
