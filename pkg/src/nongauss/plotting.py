"""Figure rendering for sweep and mutual-dependence tables.

Draws directly onto matplotlib Figure objects (no pyplot, no global state)
and writes the result to a file next to the delimited output.
"""

from __future__ import annotations

from matplotlib.figure import Figure

__all__ = ["render_sweep", "render_mutual"]

_PANELS = (
    ("delta_hs", r"$\delta_{HS}$"),
    ("delta_re", r"$\delta_{RE}$"),
    ("delta_f", r"$\delta_{F}$"),
)

_AXIS_LABEL = {"x": r"$x$", "nbar": r"$\bar{n}$", "m": r"$M$"}


def _series_split(rows, key):
    """Group rows by a column, preserving first-appearance order."""
    groups: dict = {}
    for row in rows:
        groups.setdefault(row[key], []).append(row)
    return groups


def render_sweep(rows, param: str, path: str) -> None:
    """Three-panel figure (one per measure) from sweep records.

    For x/nbar sweeps the curves are labelled by the number of added
    photons; for m sweeps by the thermal occupancy.
    """
    if param == "m":
        x_key, series_key, series_label = "m", "param", r"$\bar{n}$"
    else:
        x_key, series_key, series_label = "param", "m", r"$M$"

    fig = Figure(figsize=(12.0, 3.6))
    axes = fig.subplots(1, 3)
    groups = _series_split(rows, series_key)
    for ax, (column, label) in zip(axes, _PANELS):
        for series_value, series_rows in groups.items():
            xs = [r[x_key] for r in series_rows]
            ys = [r[column] for r in series_rows]
            if all(y is None for y in ys):
                continue
            ax.plot(xs, ys, marker=".", markersize=3,
                    label=f"{series_label} = {series_value:g}")
        ax.set_xlabel(_AXIS_LABEL[param])
        ax.set_ylabel(label)
        ax.grid(True, alpha=0.3)
    axes[0].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)


def render_mutual(rows, pair_labels: dict[str, tuple[str, str]], path: str) -> None:
    """One panel per measure pair, one parametric curve per photon number."""
    by_pair = _series_split(rows, "pair")
    fig = Figure(figsize=(4.0 * max(len(by_pair), 1), 3.6))
    axes = fig.subplots(1, max(len(by_pair), 1), squeeze=False)[0]
    names = {"hs": r"$\delta_{HS}$", "re": r"$\delta_{RE}$", "fid": r"$\delta_{F}$"}
    for ax, (pair, pair_rows) in zip(axes, by_pair.items()):
        key_a, key_b = pair_labels[pair]
        for m, m_rows in _series_split(pair_rows, "m").items():
            ax.plot([r["value_a"] for r in m_rows], [r["value_b"] for r in m_rows],
                    marker=".", markersize=3, label=f"$M$ = {m:g}")
        ax.set_xlabel(names[key_a])
        ax.set_ylabel(names[key_b])
        ax.grid(True, alpha=0.3)
    axes[0].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
