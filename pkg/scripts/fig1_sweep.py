"""Per-dimension average capacity along m for n - m in {0, 4, 8}.

Writes one CSV per ensemble and difference, plus the limit value, into
``--out`` (default ``results/``).
"""

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from fgcap.cli import DEFAULT_M_GRID, RunConfig, run
from fgcap.exact_capacity import asymptotic_limit


@dataclass(frozen=True)
class SweepConfig:
    diffs: tuple[int, ...] = (0, 4, 8)
    ensembles: tuple[str, ...] = ("fixed", "arbitrary")
    m_grid: tuple[int, ...] = field(default=DEFAULT_M_GRID)
    out: Path = Path("results")


def main(cfg: SweepConfig) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    for ens in cfg.ensembles:
        for d in cfg.diffs:
            rc = RunConfig(command="sweep", ensemble=ens, diff=d, m_grid=cfg.m_grid, output_format="csv")
            _, text = run(rc)
            path = cfg.out / f"sweep_{ens}_d{d}.csv"
            path.write_text(text)
            print(f"wrote {path}")
    (cfg.out / "limit.txt").write_text(f"{asymptotic_limit().to_float()!r}\n")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=SweepConfig.out)
    ap.add_argument("--m-max", type=int, default=None)
    args = ap.parse_args()
    grid = tuple(m for m in DEFAULT_M_GRID if args.m_max is None or m <= args.m_max)
    main(SweepConfig(m_grid=grid, out=args.out))
