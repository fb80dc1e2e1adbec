"""Figure rendering for the report paths (bench timings, count checks).

Matplotlib is imported lazily with the Agg backend so the CLI stays fast
and headless-safe when no figure is requested.
"""


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_bench_plot(rows, path):
    """Total proving time per prover across sizes, log scale."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    by_prover = {}
    for r in rows:
        by_prover.setdefault(r["prover"], []).append((r["size"], r["total"]))
    for prover, points in sorted(by_prover.items()):
        points.sort()
        ax.plot([p[0] for p in points], [max(p[1], 1e-9) for p in points],
                marker="o", label=prover)
    ax.set_xlabel("size")
    ax.set_ylabel("total time (s)")
    ax.set_yscale("log")
    ax.set_title("prover time on exhaustive suites")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_counts_plot(rows, path):
    """Per-family count curves with mismatching points marked."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    by_family = {}
    for r in rows:
        by_family.setdefault(r["family"], []).append(r)
    for family, frows in sorted(by_family.items()):
        frows.sort(key=lambda r: r["n"])
        xs = [r["n"] for r in frows]
        ys = [max(r["actual"], 1) for r in frows]
        line, = ax.plot(xs, ys, marker=".", label=family)
        bad = [(r["n"], max(r["actual"], 1)) for r in frows if r["match"] is False]
        if bad:
            ax.plot([b[0] for b in bad], [b[1] for b in bad], "x",
                    color=line.get_color(), markersize=10)
    ax.set_xlabel("size")
    ax.set_ylabel("count")
    ax.set_yscale("log")
    ax.set_title("family counts (x marks a mismatch)")
    ax.legend(fontsize=7)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
