"""Pass/fail chart of verification reports."""

from __future__ import annotations

from pathlib import Path

PASS_COLOR = "#3a7d44"
FAIL_COLOR = "#b23a48"


def report_figure(reports: list, path, title: str = "verification checks"):
    """One horizontal bar per suite: passing checks in green, failing checks in red, log scale."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [r.suite for r in reports]
    failed = [len(r.failures) for r in reports]
    passed = [max(r.total() - f, 0) for r, f in zip(reports, failed)]

    fig, ax = plt.subplots(figsize=(7, 0.45 * len(reports) + 1.4))
    rows = range(len(reports))
    ax.barh(rows, passed, color=PASS_COLOR, label="pass")
    ax.barh(rows, failed, left=passed, color=FAIL_COLOR, label="fail")
    ax.set_yticks(list(rows))
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xscale("symlog", linthresh=1)
    ax.set_xlabel("checks")
    ax.set_title(title)
    for i, (p, f) in enumerate(zip(passed, failed)):
        ax.text(p + f, i, "  %d%s" % (p, " / %d failed" % f if f else ""), va="center", fontsize=8)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.legend(loc="lower right", frameon=False, fontsize=8)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
