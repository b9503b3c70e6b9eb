"""Figure rendering for sweep reports.

Renders alongside the CSV so a sweep leaves both a machine-readable table
and something a human can glance at.  Import of matplotlib happens inside
the render call: CSV-only runs never pay for it, and the Agg backend keeps
everything headless.
"""

from __future__ import annotations

from typing import Sequence


def render_sweep_plot(rows: Sequence[dict], out_path: str, title: str = "") -> str:
    """Two-panel sweep figure: degeneracy readout on top, delta_e below.

    rows are CSV-row dicts (param_value, D_raw, D_rounded, delta_e).  The
    x axis switches to log scale when the sweep spans two decades or more.
    Returns out_path.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if not rows:
        raise ValueError("nothing to plot")
    xs = [float(r["param_value"]) for r in rows]
    d_raw = [float(r["D_raw"]) for r in rows]
    d_rounded = [int(r["D_rounded"]) for r in rows]
    delta_e = [float(r["delta_e"]) for r in rows]
    param = str(rows[0]["param_name"])
    log_x = min(xs) > 0 and max(xs) / min(xs) >= 100.0

    fig, (ax_d, ax_e) = plt.subplots(
        2, 1, figsize=(6.4, 6.0), sharex=True, height_ratios=[2, 1]
    )
    ax_d.plot(xs, d_raw, "o-", color="tab:blue", label="D_raw")
    ax_d.step(xs, d_rounded, where="mid", color="tab:orange", label="rounded")
    ax_d.set_ylabel("degeneracy readout")
    ax_d.legend(loc="best")
    ax_d.grid(True, alpha=0.3)

    positive = [(x, e) for x, e in zip(xs, delta_e) if e > 0]
    if positive:
        ax_e.semilogy(*zip(*positive), "s-", color="tab:green")
    ax_e.set_ylabel("delta_e")
    ax_e.set_xlabel(param)
    ax_e.grid(True, alpha=0.3)
    if log_x:
        ax_e.set_xscale("log")
    if title:
        ax_d.set_title(title)
    fig.tight_layout()
    fig.savefig(out_path, dpi=130)
    plt.close(fig)
    return out_path
