"""SVG report figures: activation curves and Schulze rank boxplots.

Figures are written with matplotlib's SVG backend with a fixed hash salt
and no date stamp, so identical data gives byte-identical files.
"""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from commaware.centrality import MEASURE_NAMES, MEASURES  # noqa: E402
from commaware.errors import ParameterError  # noqa: E402

STYLE = {
    "svg.hashsalt": "commaware",
    "svg.fonttype": "path",
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
}

COLORS = dict(zip(MEASURES, plt.get_cmap("tab10").colors))


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def _threshold_title(kind: str, value) -> str:
    return f"theta = {value}" if kind == "fixed" else f"theta ~ U[0,1] (seed {value})"


def emit_curves(rows, out_dir) -> list[Path]:
    """One activation-vs-fraction chart per (network, threshold).

    Each measure is one line; random-threshold sweeps add a +/- 1 std band.
    """
    if not rows:
        raise ParameterError("no sweep rows to plot")
    groups = defaultdict(lambda: defaultdict(list))
    for r in rows:
        groups[(r.network, r.threshold_kind, str(r.theta_or_seed))][r.measure].append(r)
    written = []
    with plt.rc_context(STYLE):
        for (network, kind, value), series in sorted(groups.items()):
            fig, ax = plt.subplots(figsize=(4.5, 3.2))
            for measure in sorted(series, key=lambda m: MEASURES.index(m) if m in MEASURES else len(MEASURES)):
                pts = sorted(series[measure], key=lambda r: r.fraction)
                x = np.array([r.fraction for r in pts])
                y = np.array([r.mean_activation for r in pts])
                color = COLORS.get(measure, "black")
                if kind == "random":
                    s = np.array([r.std_activation for r in pts])
                    band = ax.fill_between(x, np.clip(y - s, 0, 1), np.clip(y + s, 0, 1), color=color,
                                           alpha=0.2, linewidth=0)
                    band.set_gid(f"band-{measure}")
                (line,) = ax.plot(x, y, color=color, lw=1.2, label=MEASURE_NAMES.get(measure, measure))
                line.set_gid(f"series-{measure}")
            ax.set_xlim(0, 0.5)
            ax.set_ylim(0, 1)
            ax.set_xlabel("fraction of initially active nodes")
            ax.set_ylabel("activation size")
            ax.set_title(f"{network}, {_threshold_title(kind, value)}")
            ax.legend(fontsize=6, frameon=False, loc="lower right")
            fig.tight_layout()
            tag = f"fixed-{value}" if kind == "fixed" else f"random-{value}"
            written.append(_save(fig, Path(out_dir) / f"curves_{network}_{tag}.svg"))
    return written


def rank_box_stats(ranks) -> dict:
    """Quartiles (linear interpolation), min/max whiskers and mean of a rank sample."""
    a = np.asarray(ranks, dtype=np.float64)
    q1, med, q3 = np.percentile(a, [25, 50, 75])
    return {"whislo": float(a.min()), "q1": float(q1), "med": float(med), "q3": float(q3),
            "whishi": float(a.max()), "mean": float(a.mean()), "fliers": []}


def emit_rank_boxes(elections, out_dir) -> list[Path]:
    """One boxplot figure per threshold of each measure's per-network Schulze rank.

    ``elections`` maps a threshold tag to ``{network: SchulzeResult}``.
    """
    written = []
    with plt.rc_context(STYLE):
        for tag, per_network in sorted(elections.items()):
            if not per_network:
                continue
            candidates = next(iter(per_network.values())).candidates
            stats = []
            for c in candidates:
                s = rank_box_stats([res.ranks[c] for res in per_network.values()])
                s["label"] = c
                stats.append(s)
            fig, ax = plt.subplots(figsize=(4.5, 3.0))
            art = ax.bxp(stats, showmeans=True, showfliers=False, patch_artist=True,
                         meanprops={"marker": "o", "markerfacecolor": "white", "markeredgecolor": "black",
                                    "markersize": 4})
            for c, box in zip(candidates, art["boxes"]):
                box.set_facecolor(COLORS.get(c, "lightgray"))
                box.set_alpha(0.6)
                box.set_gid(f"box-{c}")
            ax.set_ylim(len(candidates) + 0.5, 0.5)
            ax.set_ylabel("Schulze rank")
            ax.set_title(f"{tag} ({len(per_network)} network{'s' if len(per_network) != 1 else ''})")
            fig.tight_layout()
            written.append(_save(fig, Path(out_dir) / f"ranks_{tag}.svg"))
    return written
