"""Plot the sweep CSVs written by ``fig1_sweep.py``, with MC points at small m.

Needs matplotlib (``pip install .[plot]``).
"""

import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from fgcap.ensembles import estimate_mean_capacity  # noqa: E402
from fgcap.exact_capacity import Arbitrary, Fixed, asymptotic_limit  # noqa: E402


def load(path: Path):
    with path.open() as fh:
        rows = list(csv.DictReader(fh))
    return [int(r["m"]) for r in rows], [float(r["per_dim"]) for r in rows]


def main(results: Path, samples: int, mc_m_max: int) -> None:
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    for ax, ens in zip(axes, ("fixed", "arbitrary")):
        for d, color in zip((0, 4, 8), ("C0", "C1", "C2")):
            ms, ys = load(results / f"sweep_{ens}_d{d}.csv")
            ax.plot(ms, ys, color=color, label=f"n - m = {d}")
            pts = [m for m in ms if m <= mc_m_max]
            mc = []
            for m in pts:
                spec = Fixed(m, m + d, m + d // 2) if ens == "fixed" else Arbitrary(m, m + d)
                mc.append(estimate_mean_capacity(spec, samples, seed=m).mean / m)
            ax.plot(pts, mc, "o", color=color, ms=4)
        ax.axhline(asymptotic_limit().to_float(), color="k", ls="-.", lw=1)
        ax.set_xscale("log", base=2)
        ax.set_xlabel("m")
        ax.set_title(ens)
    axes[0].set_ylabel("E[C] / m")
    axes[0].legend()
    fig.tight_layout()
    out = results / "fig1.png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--results", type=Path, default=Path("results"))
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--mc-m-max", type=int, default=6)
    a = ap.parse_args()
    main(a.results, a.samples, a.mc_m_max)
