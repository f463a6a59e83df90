"""Table of closed form, quadrature and Monte Carlo estimates side by side."""

import argparse
import time
from dataclasses import dataclass

from fgcap.ensembles import estimate_mean_capacity
from fgcap.exact_capacity import Arbitrary, Fixed, mean_capacity
from fgcap.kernel_oracle import quad_mean_capacity

SPECS = (Fixed(1, 1, 1), Fixed(2, 3, 2), Fixed(3, 5, 4), Arbitrary(1, 1), Arbitrary(2, 4), Arbitrary(3, 5))


@dataclass(frozen=True)
class TableConfig:
    samples: int = 100_000
    seed: int = 42
    workers: int = 1


def main(cfg: TableConfig) -> None:
    print(f"{'spec':<24}{'exact':>16}{'quad - exact':>14}{'mc':>12}{'stderr':>10}{'z':>7}{'sec':>7}")
    for spec in SPECS:
        exact = mean_capacity(spec).float_value
        quad = quad_mean_capacity(spec).value
        t0 = time.perf_counter()
        est = estimate_mean_capacity(spec, cfg.samples, cfg.seed, workers=cfg.workers)
        dt = time.perf_counter() - t0
        z = (est.mean - exact) / est.stderr
        print(f"{str(spec):<24}{exact:>16.12f}{quad - exact:>14.2e}{est.mean:>12.6f}{est.stderr:>10.2e}{z:>7.2f}{dt:>7.1f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=TableConfig.samples)
    ap.add_argument("--seed", type=int, default=TableConfig.seed)
    ap.add_argument("--workers", type=int, default=TableConfig.workers)
    a = ap.parse_args()
    main(TableConfig(a.samples, a.seed, a.workers))
