"""Plot-data documents for energy lines and the power-vs-time scatter.

The document is plain JSON-serializable data::

    {"axes": {"x": {label, unit, scale}, "y": {...}},
     "series": [{"name", "points": [[x, y], ...]}, ...],
     "marks": [{"label", "x", "y", "between": [a, b]}, ...]}

:func:`render_svg` draws it with matplotlib when that is installed.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .baskets import EnergyBasket, affine_energy
from .crossover import CrossoverKind, crossover_point, frontier
from .dataset import AlgorithmRecord

__all__ = ["emit_plot", "render_svg"]


def _lines_doc(records, basket, e_range, samples, pairs):
    lo, hi = e_range
    if not (0 <= lo < hi) or samples < 2:
        raise ValueError(f"empty e_range {e_range!r}")
    lines = {r.name: affine_energy(r, basket) for r in records}
    xs = [lo + (hi - lo) * i / (samples - 1) for i in range(samples)]
    series = [
        {"name": name, "points": [[x, ln(x)] for x in xs]} for name, ln in lines.items()
    ]
    if pairs is None:
        segs = frontier(records, basket, hi)
        pairs = [(segs[i].algorithm, segs[i + 1].algorithm) for i in range(len(segs) - 1)]
    marks = []
    for a, b in pairs:
        res = crossover_point(lines[a], lines[b])
        if res.kind is CrossoverKind.AT and lo <= res.e_star <= hi:
            marks.append(
                {"label": f"{a} / {b}", "x": res.e_star, "y": lines[a](res.e_star), "between": [a, b]}
            )
    return {
        "title": f"Total energy vs transmission cost ({basket.label})",
        "axes": {
            "x": {"label": "Transmission cost", "unit": "J/bit", "scale": "linear"},
            "y": {"label": "Total energy", "unit": "J", "scale": "linear"},
        },
        "series": series,
        "marks": marks,
    }


def _scatter_doc(records, freq):
    by_op: dict[str, dict] = {}
    for r in records:
        for op_name, m in zip(r.op_names, r.ops):
            s = by_op.setdefault(op_name, {"name": op_name, "points": [], "labels": []})
            s["points"].append([m.cycles / freq, m.avg_power * 1e3])
            s["labels"].append(r.name + (" *" if r.extrapolated else ""))
    order = ["keygen", "sign", "encaps", "verify", "decaps"]
    return {
        "title": "Average power vs execution time",
        "axes": {
            "x": {"label": "Time", "unit": "s", "scale": "log"},
            "y": {"label": "Average power", "unit": "mW", "scale": "linear"},
        },
        "series": [by_op[k] for k in order if k in by_op],
        "marks": [],
    }


def emit_plot(
    records: Sequence[AlgorithmRecord],
    basket: Optional[EnergyBasket] = None,
    mode: str = "lines",
    e_range: tuple[float, float] = (0.0, 2e-3),
    samples: int = 101,
    pairs: Optional[Iterable[tuple[str, str]]] = None,
    freq: float = 96e6,
) -> dict:
    """Build a plot-data document.

    In ``lines`` mode each record contributes one sampled E(e) series and
    cross-overs are marked: between the given ``pairs`` of names, or by
    default at the frontier breakpoints inside ``e_range``. In
    ``power_scatter`` mode each operation is a (seconds, mW) point.
    """
    if not records:
        raise ValueError("emit_plot needs at least one record")
    if mode == "lines":
        if basket is None:
            raise ValueError("lines mode needs a basket")
        return _lines_doc(records, basket, e_range, samples, None if pairs is None else list(pairs))
    if mode == "power_scatter":
        return _scatter_doc(records, freq)
    raise ValueError(f"unknown plot mode {mode!r}")


def render_svg(doc: dict, path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    # fixed hash salt keeps SVG ids stable between runs
    matplotlib.rcParams["svg.hashsalt"] = "pqep"
    fig, ax = plt.subplots(figsize=(8, 5))
    scatter = doc["axes"]["x"]["scale"] == "log"
    for s in doc["series"]:
        xs = [p[0] for p in s["points"]]
        ys = [p[1] for p in s["points"]]
        if scatter:
            ax.scatter(xs, ys, label=s["name"], s=14)
        else:
            ax.plot(xs, ys, label=s["name"])
    for m in doc["marks"]:
        ax.plot([m["x"]], [m["y"]], "ko")
        ax.annotate(f"{m['x']:.3g} J/bit", (m["x"], m["y"]), textcoords="offset points", xytext=(6, 6))
    for key, setter in (("x", ax.set_xlabel), ("y", ax.set_ylabel)):
        a = doc["axes"][key]
        setter(f"{a['label']} [{a['unit']}]")
    ax.set_xscale(doc["axes"]["x"]["scale"])
    ax.set_yscale(doc["axes"]["y"]["scale"])
    ax.set_title(doc.get("title", ""))
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
