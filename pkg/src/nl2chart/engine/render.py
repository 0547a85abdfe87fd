"""Optional raster rendering of chart specs via matplotlib.

The engine is fully functional without a plotting backend; callers that
need files get a PNG that is byte-identical for identical specs.
"""

from __future__ import annotations

from pathlib import Path

from .chartspec import ChartSpec
from .table import Role

_GROUP_COLORS = (
    "#2563eb",
    "#059669",
    "#d97706",
    "#dc2626",
    "#7c3aed",
    "#0d9488",
    "#f59e0b",
    "#6366f1",
)


class RenderUnavailable(Exception):
    """No plotting backend is importable in this environment."""


def _matplotlib():
    try:
        import matplotlib

        matplotlib.use("Agg", force=False)
        import matplotlib.pyplot as plt
    except ImportError as exc:  # pragma: no cover - environment-dependent
        raise RenderUnavailable(str(exc)) from exc
    return plt


def _series_by_group(spec: ChartSpec):
    """Split rows into (group value -> x list, y list), preserving order."""
    data = spec.data
    x_idx = data.column_index(Role.X)
    y_idx = data.column_index(Role.Y)
    g_idx = data.column_index(Role.GROUP)
    series: dict[object, tuple[list, list]] = {}
    for row in data.rows:
        key = row[g_idx] if g_idx is not None else None
        xs, ys = series.setdefault(key, ([], []))
        xs.append(row[x_idx])
        ys.append(row[y_idx] if y_idx is not None else None)
    return series


def build_figure(spec: ChartSpec):
    """Build the matplotlib Figure/Axes pair for a spec (not yet saved)."""
    plt = _matplotlib()
    fig, ax = plt.subplots(1, 1, figsize=(10, 4))
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)

    series = _series_by_group(spec)
    categorical = spec.x.kind == "categorical"
    mark = spec.mark.value

    if categorical:
        labels: list = []
        for xs, _ in series.values():
            for x in xs:
                if x not in labels:
                    labels.append(x)
        positions = {label: i for i, label in enumerate(labels)}
    else:
        labels = []
        positions = {}

    def x_points(xs):
        return [positions[x] for x in xs] if categorical else xs

    if mark == "pie":
        xs, ys = next(iter(series.values()), ([], []))
        values = [v for v in ys if isinstance(v, (int, float)) and v > 0]
        names = [str(x) for x, v in zip(xs, ys) if isinstance(v, (int, float)) and v > 0]
        if values:
            ax.pie(values, labels=names)
    elif mark in ("bar", "stacked bar"):
        bottoms = [0.0] * len(labels)
        for color, (group, (xs, ys)) in zip(
            _GROUP_COLORS * 8, sorted(series.items(), key=lambda kv: str(kv[0]))
        ):
            numeric = [v if isinstance(v, (int, float)) else 0 for v in ys]
            starts = [bottoms[positions[x]] for x in xs] if categorical else 0
            ax.bar(
                x_points(xs),
                numeric,
                bottom=starts if mark == "stacked bar" else None,
                color=color,
                label=None if group is None else str(group),
            )
            if mark == "stacked bar" and categorical:
                for x, v in zip(xs, numeric):
                    bottoms[positions[x]] += v
    elif mark in ("line", "grouped line"):
        for color, (group, (xs, ys)) in zip(
            _GROUP_COLORS * 8, sorted(series.items(), key=lambda kv: str(kv[0]))
        ):
            ax.plot(
                x_points(xs),
                ys,
                color=color,
                marker="o",
                label=None if group is None else str(group),
            )
    else:  # scatter, grouped scatter
        for color, (group, (xs, ys)) in zip(
            _GROUP_COLORS * 8, sorted(series.items(), key=lambda kv: str(kv[0]))
        ):
            ax.scatter(
                x_points(xs),
                ys,
                color=color,
                label=None if group is None else str(group),
            )

    if categorical and mark != "pie":
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels([str(x) for x in labels], rotation=45)

    if mark != "pie":
        ax.set_xlabel(spec.x_label)
        ax.set_ylabel(spec.y_label)
    if spec.group is not None and len(series) > 0:
        ax.legend(title=spec.group.field)
    ax.set_title(spec.title)
    fig.tight_layout()
    return fig, ax


def render_chart(spec: ChartSpec, path: str | Path) -> Path:
    """Write a PNG for the spec; deterministic for identical specs."""
    plt = _matplotlib()
    fig, _ = build_figure(spec)
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(target, format="png", dpi=100, metadata={"Software": None})
    plt.close(fig)
    return target
