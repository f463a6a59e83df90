"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 domain error, 3 numerical failure
(including a failed identity check).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, NumericalError
from .exact_capacity import Arbitrary, Fixed, asymptotic_limit, mean_capacity, mean_capacity_fixed_special
from .ensembles import estimate_mean_capacity
from .identity_suite import fuzz_identities
from .kernel_oracle import quad_mean_capacity

DEFAULT_M_GRID = tuple(range(1, 17)) + (24, 32, 48, 64, 96, 128, 192, 256)
COMMANDS = ("exact", "mc", "quad", "sweep", "verify")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    ensemble: str | None = None
    m: int | None = None
    n: int | None = None
    p: int | None = None
    special: int | None = None
    samples: int = 10_000
    seed: int = 0
    streams: int = 8
    workers: int = 1
    quad_levels: int = 12
    diff: int = 0
    m_max: int | None = None
    m_grid: tuple[int, ...] = field(default=DEFAULT_M_GRID)
    draws: int = 100
    output_format: str = "json"
    output_path: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.output_format not in ("json", "csv"):
            raise UsageError(f"--format must be json or csv, got {self.output_format!r}")
        needs_ensemble = self.command in ("exact", "mc", "quad", "sweep")
        if needs_ensemble and self.ensemble not in ("fixed", "arbitrary"):
            raise UsageError(f"{self.command} needs --ensemble fixed|arbitrary")
        if self.command in ("exact", "mc", "quad"):
            if self.special is not None:
                if self.command != "exact" or self.ensemble != "fixed":
                    raise UsageError("--special is only valid with exact --ensemble fixed")
                if self.m is None:
                    raise UsageError("--special needs --m")
                return
            if self.m is None or self.n is None:
                raise UsageError(f"{self.command} needs --m and --n")
            if self.ensemble == "fixed" and self.p is None:
                raise UsageError("the fixed ensemble needs --p")
            if self.ensemble == "arbitrary" and self.p is not None:
                raise UsageError("--p is meaningless for the arbitrary ensemble")
        if self.command == "mc" and self.samples < 2:
            raise UsageError(f"--samples must be >= 2, got {self.samples}")
        if self.command == "mc" and not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        if self.command == "quad" and not 1 <= self.quad_levels <= 20:
            raise UsageError(f"--levels must lie in 1..20, got {self.quad_levels}")
        if self.command == "sweep" and self.diff < 0:
            raise UsageError(f"--diff must be >= 0, got {self.diff}")
        if self.command == "verify" and self.draws < 1:
            raise UsageError(f"--draws must be >= 1, got {self.draws}")

    def spec(self):
        if self.ensemble == "fixed":
            return Fixed(self.m, self.n, self.p)
        return Arbitrary(self.m, self.n)

    def grid(self) -> tuple[int, ...]:
        if self.m_max is None:
            return self.m_grid
        return tuple(m for m in self.m_grid if m <= self.m_max)


# ------------------------------------------------------------------ emitters

def _num(x: float) -> float:
    if not math.isfinite(x):
        raise NumericalError(f"refusing to emit non-finite value {x!r}")
    return x


def _fmt(x: float) -> str:
    return repr(float(_num(x)))


def _emit(rows: list[dict], fmt: str, single: bool) -> str:
    if fmt == "json":
        payload = rows[0] if single else rows
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _fmt(v) if isinstance(v, float) else ("" if v is None else v) for k, v in row.items()})
    return buf.getvalue()


def _spec_fields(spec) -> dict:
    return {
        "ensemble": "fixed" if isinstance(spec, Fixed) else "arbitrary",
        "m": spec.m,
        "n": spec.n,
        "p": spec.p if isinstance(spec, Fixed) else None,
    }


def _rat(q: Fraction) -> str:
    return str(q)


# ------------------------------------------------------------------ commands

def _cmd_exact(cfg: RunConfig):
    if cfg.special is not None:
        res = mean_capacity_fixed_special(cfg.special, cfg.m)
    else:
        res = mean_capacity(cfg.spec())
    row = _spec_fields(res.spec)
    row.update(
        float=_num(res.float_value),
        q0=_rat(res.exact.q0),
        q_gamma=_rat(res.exact.q_gamma),
        q_pi2=_rat(res.exact.q_pi2),
    )
    return [row], True, 0


def _cmd_mc(cfg: RunConfig):
    spec = cfg.spec()
    est = estimate_mean_capacity(spec, cfg.samples, cfg.seed, n_streams=cfg.streams, workers=cfg.workers)
    row = _spec_fields(spec)
    row.update(
        mean=_num(est.mean),
        stderr=_num(est.stderr),
        n_samples=est.n_samples,
        seed=est.seed,
        n_streams=est.n_streams,
    )
    return [row], True, 0


def _cmd_quad(cfg: RunConfig):
    spec = cfg.spec()
    q = quad_mean_capacity(spec, levels=cfg.quad_levels)
    row = _spec_fields(spec)
    row.update(value=_num(q.value), est_error=_num(q.est_error), n_nodes=q.n_nodes, level=q.level)
    return [row], True, 0


def _cmd_sweep(cfg: RunConfig):
    limit = asymptotic_limit()
    rows = []
    for m in cfg.grid():
        n = m + cfg.diff
        spec = Fixed(m, n, m + cfg.diff // 2) if cfg.ensemble == "fixed" else Arbitrary(m, n)
        res = mean_capacity(spec)
        per_dim = res.exact / m
        rows.append(
            {
                "m": m,
                "n": n,
                "p": spec.p if isinstance(spec, Fixed) else None,
                "exact": _num(res.float_value),
                "per_dim": _num(per_dim.to_float()),
                "limit_gap": _num((per_dim - limit).to_float()),
            }
        )
    if not rows:
        raise UsageError("the m-grid is empty")
    return rows, False, 0


def _cmd_verify(cfg: RunConfig):
    report = fuzz_identities(cfg.draws, cfg.seed)
    rows = report.to_records()
    for r in rows:
        r["worst_params"] = json.dumps(r["worst_params"], sort_keys=True)
    return rows, False, 0 if report.passed else 3


_DISPATCH = {
    "exact": _cmd_exact,
    "mc": _cmd_mc,
    "quad": _cmd_quad,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute ``cfg`` and return ``(exit status, report text)``."""
    cfg.validate()
    rows, single, status = _DISPATCH[cfg.command](cfg)
    return status, _emit(rows, cfg.output_format, single)


# ---------------------------------------------------------------------- argv

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fgcap", description="Average entanglement capacity of fermionic Gaussian states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", dest="output_format", choices=("json", "csv"), default="json")
        p.add_argument("--output", dest="output_path", default=None, help="file to write (default stdout)")

    def ensemble(p, with_dims=True):
        p.add_argument("--ensemble", choices=("fixed", "arbitrary"), required=True)
        if with_dims:
            p.add_argument("--m", type=int, required=False)
            p.add_argument("--n", type=int)
            p.add_argument("--p", type=int)

    p = sub.add_parser("exact", help="closed-form value")
    ensemble(p)
    p.add_argument("--special", type=int, choices=(0, 1, 2), help="use the simplified a = b form")
    common(p)

    p = sub.add_parser("mc", help="Monte Carlo estimate")
    ensemble(p)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--streams", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)
    common(p)

    p = sub.add_parser("quad", help="kernel quadrature")
    ensemble(p)
    p.add_argument("--levels", dest="quad_levels", type=int, default=12)
    common(p)

    p = sub.add_parser("sweep", help="E[C]/m along m at fixed n - m")
    ensemble(p, with_dims=False)
    p.add_argument("--diff", type=int, default=0, help="n - m")
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--m-grid", type=_int_list, default=DEFAULT_M_GRID)
    common(p)
    p.set_defaults(output_format="csv")  # tabular by nature

    p = sub.add_parser("verify", help="fuzz the identity registry")
    p.add_argument("--draws", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    common(p)
    return parser


def config_from_args(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    kwargs = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    return RunConfig(**kwargs)


def main(argv=None) -> int:
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
        status, text = run(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status
