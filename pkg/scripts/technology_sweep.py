"""Energy-optimal key establishment per security level for each radio technology.

Ranks the KEMs at each NIST level (plus the classical ECDH rows) with the
ephemeral key-exchange basket at every preset link energy, and prints the
frontier over transfer cost for each level.

    python scripts/technology_sweep.py
"""

from pqep.baskets import EPHEMERAL_TOTAL
from pqep.crossover import frontier, rank_at, technology_presets
from pqep.dataset import Kind, SecurityLevel, builtin_reference_dataset


def main():
    _, records = builtin_reference_dataset()
    kems = [r for r in records if r.kind is Kind.KEM]
    links = technology_presets()

    print(f"{'level':<6}" + "".join(f"{link.name:>32}" for link in links))
    for level in SecurityLevel:
        group = [r for r in kems if r.pq_level is level]
        if not group:
            continue
        cells = []
        for link in links:
            name, energy = rank_at(group, EPHEMERAL_TOTAL, link.e_xfer)[0]
            cells.append(f"{name} {energy * 1e3:.3f} mJ")
        print(f"{str(level):<6}" + "".join(f"{c:>32}" for c in cells))

    print()
    for level in SecurityLevel:
        group = [r for r in kems if r.pq_level is level]
        if not group:
            continue
        segs = frontier(group, EPHEMERAL_TOTAL)
        path = " | ".join(f"[{s.e_lo:.3g}, {s.e_hi:.3g}) {s.algorithm}" for s in segs)
        print(f"{str(level):<6} {path}")


if __name__ == "__main__":
    main()
