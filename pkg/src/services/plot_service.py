import matplotlib
matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from src.models.cluster import ConsensusGraph, Layout2D
from src.models.learn import AccuracyPoint, ConfusionMatrix
from src.models.temporal import TemporalScore, Trend

# SVG reproducible: ids estables y sin fecha
plt.rcParams["svg.hashsalt"] = "elegia"
SVG_METADATA = {"Date": None}
MARKERS = "osD^v<>ph*"


class PlotService:
    def _save(self, figure, path):
        figure.tight_layout()
        figure.savefig(path, format="svg", metadata=SVG_METADATA)
        plt.close(figure)
        return path

    def plot_accuracy_curves(self, points: list[AccuracyPoint], path, title: str = ""):
        figure, axis = plt.subplots(figsize=(6, 4))
        for model in sorted({p.model for p in points}):
            curve = [p for p in points if p.model == model]
            axis.plot([p.threshold for p in curve], [p.accuracy for p in curve], marker="o", label=model)
        axis.set_xlabel("Longitud minima (versos)")
        axis.set_ylabel("Exactitud")
        axis.set_ylim(0, 1)
        axis.set_title(title)
        axis.legend()
        return self._save(figure, path)

    def plot_confusion(self, confusion: ConfusionMatrix, path, title: str = ""):
        size = len(confusion.classes)
        figure, axis = plt.subplots(figsize=(1 + 0.8 * size, 1 + 0.7 * size))
        image = axis.imshow(confusion.percentages, cmap="Blues", vmin=0, vmax=100)
        axis.set_xticks(range(size), confusion.classes, rotation=45, ha="right")
        axis.set_yticks(range(size), confusion.classes)
        for i in range(size):
            for j in range(size):
                value = confusion.percentages[i, j]
                axis.text(j, i, f"{value:.0f}", ha="center", va="center",
                          color="white" if value > 50 else "black", fontsize=8)
        axis.set_xlabel("Prediccion")
        axis.set_ylabel("Obra real")
        axis.set_title(title)
        figure.colorbar(image, ax=axis)
        return self._save(figure, path)

    def _scatter(self, axis, coordinates: np.ndarray, groups: list[str]):
        for n, group in enumerate(sorted(set(groups))):
            members = [i for i, g in enumerate(groups) if g == group]
            axis.scatter(coordinates[members, 0], coordinates[members, 1],
                         marker=MARKERS[n % len(MARKERS)], label=group, s=24, zorder=2)
        axis.legend(fontsize=7)
        axis.set_xticks([])
        axis.set_yticks([])

    def plot_graph(self, graph: ConsensusGraph, layout: Layout2D, groups: list[str], path, title: str = ""):
        figure, axis = plt.subplots(figsize=(8, 6))
        coordinates = layout.coordinates
        for i, j, weight in graph.edges:
            axis.plot(coordinates[[i, j], 0], coordinates[[i, j], 1], color="grey",
                      linewidth=0.3 + 2.5 * weight, alpha=0.6, zorder=1)
        self._scatter(axis, coordinates, groups)
        axis.set_title(title)
        return self._save(figure, path)

    def plot_scatter(self, layout: Layout2D, groups: list[str], path, title: str = ""):
        figure, axis = plt.subplots(figsize=(8, 6))
        self._scatter(axis, layout.coordinates, groups)
        axis.set_title(title)
        return self._save(figure, path)

    def plot_temporal(self, scores: list[TemporalScore], trends: dict[str, Trend], path, title: str = ""):
        figure, axes = plt.subplots(1, 2, figsize=(10, 4))
        for axis, kind in zip(axes, ("svm_score", "centroid_score")):
            x = [s.poem.number for s in scores]
            axis.scatter(x, [getattr(s, kind) for s in scores], color="black", s=16, zorder=2)
            trend = trends.get(kind)
            if trend is not None:
                axis.plot(trend.x, trend.fitted, color="tab:blue")
                axis.fill_between(trend.x, trend.lower, trend.upper, color="tab:blue", alpha=0.2)
            axis.axhline(0, color="grey", linewidth=0.5)
            axis.set_xlabel("Carta")
            axis.set_ylabel("temprano  <->  tardio")
            axis.set_title(kind)
        figure.suptitle(title)
        return self._save(figure, path)
