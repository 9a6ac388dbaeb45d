"""
Region Plot - static SVG rendering of a region map with its boundary curves
"""

import logging

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from internal.extremals.python.extremal_models import MAP_FAMILIES, RegionMap  # noqa: E402

logger = logging.getLogger(__name__)

FAMILY_COLORS = {"E1": "#8dd3c7", "E2": "#ffffb3", "E3": "#bebada", "E4": "#fb8072"}
EMPTY_COLOR = "#ffffff"


def setup_matplotlib() -> None:
    # text stays text and ids are salted with a constant, so the SVG depends only on the data
    plt.rcParams["svg.fonttype"] = "none"
    plt.rcParams["svg.hashsalt"] = "isologcon"
    plt.rcParams["axes.unicode_minus"] = False


def render_region_map(region: RegionMap, path: str) -> str:
    setup_matplotlib()
    labels = [family.value for family in MAP_FAMILIES]
    codes = np.zeros(region.winner.shape)
    for index, label in enumerate(labels, start=1):
        codes[region.winner == label] = index
    cmap = ListedColormap([EMPTY_COLOR] + [FAMILY_COLORS[label] for label in labels])

    fig, ax = plt.subplots(figsize=(6, 6))
    ax.pcolormesh(region.p_values, region.lam_values, codes.T, cmap=cmap, vmin=0, vmax=len(labels), shading="nearest")
    if region.lambda0_curve:
        p, lam = zip(*region.lambda0_curve)
        ax.plot(p, lam, color="black", linewidth=1.2, label="λ₀(p)")
    if region.p0_curve:
        lam, p = zip(*region.p0_curve)
        ax.plot(p, lam, color="black", linestyle="--", linewidth=1.2, label="p₀(λ)")
    if region.e1_e2_curve:
        p, lam = zip(*region.e1_e2_curve)
        ax.plot(p, lam, color="dimgray", linestyle=":", linewidth=1.2, label="E1/E2")
    for label in labels:
        ax.fill_between([], [], color=FAMILY_COLORS[label], label=label)

    ax.set_xlim(0.0, 0.5)
    ax.set_ylim(0.0, 1.0)
    ax.set_xlabel("p")
    ax.set_ylabel("λ")
    title = f"{region.measure}" + (" (origin-free)" if region.origin_free else "")
    ax.set_title(title)
    ax.legend(loc="upper left", fontsize="small")
    fig.savefig(path, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)
    logger.info(f"Wrote {path}")
    return path
