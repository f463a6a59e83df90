"""Monte Carlo sampling of the two random-matrix ensembles.

Fixed particle number draws a Haar unitary ``U`` of size ``N = m + n`` and
takes the spectrum of ``B B^dagger`` with ``B = U[:m, :p]``.  Arbitrary
particle number conjugates the pure-state covariance ``J0`` by a Haar
orthogonal matrix and reads the singular values of the ``2m x 2m`` corner.

Work is split across a fixed number of independent RNG streams, so an
estimate depends on the seed and the sample count but not on how many
threads ran it.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError
from .exact_capacity import Arbitrary, Fixed

COLLAR = 1e-9


@dataclass(frozen=True)
class RngStream:
    """Stream ``stream`` of the seed sequence rooted at ``seed``."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.stream < 0:
            raise DomainError(f"stream index must be >= 0, got {self.stream}")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray
    kind: str  # "fixed" on [-1, 1], "arbitrary" on [0, 1]


@dataclass(frozen=True)
class CapacityEstimate:
    mean: float
    stderr: float
    n_samples: int
    seed: int
    n_streams: int = 8


@dataclass
class RunningStats:
    """Streaming mean and variance (Welford), mergeable with Chan's rule."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def push(self, x: float) -> None:
        self.count += 1
        delta = x - self.mean
        self.mean += delta / self.count
        self.m2 += delta * (x - self.mean)

    def merge(self, other: "RunningStats") -> "RunningStats":
        if other.count == 0:
            return self
        if self.count == 0:
            self.count, self.mean, self.m2 = other.count, other.mean, other.m2
            return self
        n = self.count + other.count
        delta = other.mean - self.mean
        self.mean += delta * other.count / n
        self.m2 += other.m2 + delta * delta * self.count * other.count / n
        self.count = n
        return self

    def push_batch(self, xs) -> None:
        xs = np.asarray(xs, dtype=float)
        if xs.size == 0:
            return
        mu = float(xs.mean())
        batch = RunningStats(int(xs.size), mu, float(((xs - mu) ** 2).sum()))
        self.merge(batch)

    @property
    def variance(self) -> float:
        return self.m2 / (self.count - 1) if self.count > 1 else math.nan


# ------------------------------------------------------------- Haar matrices

def sample_haar_unitary(N: int, rng, size: int | None = None) -> np.ndarray:
    """Haar unitary ``N x N`` (or a stack of ``size`` of them).

    Gaussian QR with the phases of ``diag(R)`` moved into ``Q``; without
    that correction the result is not Haar distributed.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    shape = (N, N) if size is None else (size, N, N)
    z = (gen.standard_normal(shape) + 1j * gen.standard_normal(shape)) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def sample_haar_orthogonal(N: int, rng, size: int | None = None) -> np.ndarray:
    """Haar orthogonal ``N x N`` (or a stack), sign-corrected Gaussian QR."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    shape = (N, N) if size is None else (size, N, N)
    q, r = np.linalg.qr(gen.standard_normal(shape))
    d = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    d[d == 0] = 1.0
    return q * d[..., None, :]


# ------------------------------------------------------------ eigenvalues

def _round_robin(m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Disjoint pair sets covering every (p, q) once per sweep."""
    n = m + (m % 2)
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        pairs = [(players[i], players[n - 1 - i]) for i in range(n // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < m and q < m]
        if pairs:
            rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _jacobi_sweeps(a: np.ndarray, tol: float, max_sweeps: int) -> np.ndarray:
    m = a.shape[-1]
    rounds = _round_robin(m)
    scale = np.linalg.norm(a, axis=(-2, -1))
    off_mask = ~np.eye(m, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = np.sqrt(np.sum(np.abs(a[..., off_mask]) ** 2, axis=-1))
        if np.all(off <= tol * np.maximum(scale, np.finfo(float).tiny)):
            return np.sort(np.real(np.diagonal(a, axis1=-2, axis2=-1)), axis=-1)
        if sweep == max_sweeps:
            break
        for P, Q in rounds:
            apq = a[..., P, Q]
            r = np.abs(apq)
            active = r > 0
            r_safe = np.where(active, r, 1.0)
            phase = np.where(active, apq / r_safe, 1.0)
            app = np.real(a[..., P, P])
            aqq = np.real(a[..., Q, Q])
            with np.errstate(over="ignore", divide="ignore"):
                # huge tau overflows to inf and gives t = 0, which is the right answer
                tau = (aqq - app) / (2 * r_safe)
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1 + tau * tau))
            t = np.where(active, t, 0.0)
            c = 1 / np.sqrt(1 + t * t)
            s = t * c
            conj_phase = np.conj(phase)
            # columns: A <- A V
            cp = a[..., :, P]
            cq = a[..., :, Q]
            new_p = cp * c[..., None, :] - cq * (s * conj_phase)[..., None, :]
            new_q = cp * s[..., None, :] + cq * (c * conj_phase)[..., None, :]
            a[..., :, P] = new_p
            a[..., :, Q] = new_q
            # rows: A <- V^H A
            rp = a[..., P, :]
            rq = a[..., Q, :]
            new_p = rp * c[..., :, None] - rq * (s * phase)[..., :, None]
            new_q = rp * s[..., :, None] + rq * (c * phase)[..., :, None]
            a[..., P, :] = new_p
            a[..., Q, :] = new_q
    worst = float(np.max(off / np.maximum(scale, np.finfo(float).tiny)))
    raise NumericalError(
        f"Jacobi eigenvalue iteration did not converge in {max_sweeps} sweeps "
        f"(worst relative off-diagonal norm {worst:.3g}, size {m})"
    )


def hermitian_eigenvalues(
    M, method: str = "jacobi", tol: float = 1e-12, max_sweeps: int = 50
) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix or a stack of them.

    ``method="jacobi"`` runs cyclic Jacobi rotations in round-robin order, all
    disjoint pairs of a round at once; ``"lapack"`` defers to numpy.
    """
    a = np.array(M, dtype=complex if np.iscomplexobj(M) else float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DomainError(f"expected square matrices, got shape {a.shape}")
    if a.shape[-1] > 512:
        raise DomainError(f"matrix size {a.shape[-1]} exceeds the supported 512")
    herm_err = np.max(np.abs(a - np.conj(np.swapaxes(a, -1, -2))), initial=0.0)
    if herm_err > 1e-10 * max(1.0, float(np.max(np.abs(a), initial=0.0))):
        raise DomainError(f"matrix is not Hermitian (max asymmetry {herm_err:.3g})")
    if method == "lapack":
        return np.linalg.eigvalsh(a)
    if method != "jacobi":
        raise DomainError(f"unknown eigenvalue method {method!r}")
    a = (a + np.conj(np.swapaxes(a, -1, -2))) / 2
    if a.shape[-1] == 1:
        return np.real(a[..., 0, :])
    return _jacobi_sweeps(a, tol, max_sweeps)


# ------------------------------------------------------------------- spectra

def _clamp(values: np.ndarray, lo: float, hi: float, what: str) -> np.ndarray:
    if np.any(values < lo - COLLAR) or np.any(values > hi + COLLAR):
        raise NumericalError(
            f"{what} outside [{lo}, {hi}] beyond rounding: range "
            f"[{values.min():.17g}, {values.max():.17g}]"
        )
    return np.clip(values, lo, hi)


def sample_fixed_spectra(spec: Fixed, gen: np.random.Generator, size: int, method="jacobi") -> np.ndarray:
    """``size`` sorted fixed-number spectra, shape ``(size, m)``."""
    u = sample_haar_unitary(spec.N, gen, size)
    block = u[:, : spec.m, : spec.p]
    gram = block @ np.conj(np.swapaxes(block, -1, -2))
    y = hermitian_eigenvalues(gram, method=method)
    return np.sort(_clamp(2 * y - 1, -1.0, 1.0, "fixed-number spectrum"), axis=-1)


def symplectic_unit(N: int) -> np.ndarray:
    return np.kron(np.eye(N), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def sample_arbitrary_spectra(
    spec: Arbitrary, gen: np.random.Generator, size: int, method="jacobi"
) -> np.ndarray:
    """``size`` sorted arbitrary-number spectra, shape ``(size, m)``."""
    m = spec.m
    o = sample_haar_orthogonal(2 * spec.N, gen, size)
    j = np.swapaxes(o, -1, -2) @ symplectic_unit(spec.N) @ o
    asym = np.max(np.abs(j + np.swapaxes(j, -1, -2)))
    if asym > 1e-12:
        raise NumericalError(f"conjugated covariance lost antisymmetry ({asym:.3g})")
    ja = j[:, : 2 * m, : 2 * m]
    ev = hermitian_eigenvalues(np.swapaxes(ja, -1, -2) @ ja, method=method)
    pair_gap = np.max(np.abs(ev[:, 0::2] - ev[:, 1::2]))
    if pair_gap > 1e-8:
        raise NumericalError(f"eigenvalues of J_A^T J_A are not paired (gap {pair_gap:.3g})")
    sq = _clamp((ev[:, 0::2] + ev[:, 1::2]) / 2, 0.0, 1.0, "squared singular values")
    return np.sort(np.sqrt(sq), axis=-1)


def sample_fixed_spectrum(spec: Fixed, rng: RngStream) -> Spectrum:
    return Spectrum(sample_fixed_spectra(spec, rng.generator(), 1)[0], "fixed")


def sample_arbitrary_spectrum(spec: Arbitrary, rng: RngStream) -> Spectrum:
    return Spectrum(sample_arbitrary_spectra(spec, rng.generator(), 1)[0], "arbitrary")


def sample_spectra(spec, gen, size, method="jacobi") -> np.ndarray:
    if isinstance(spec, Fixed):
        return sample_fixed_spectra(spec, gen, size, method)
    if isinstance(spec, Arbitrary):
        return sample_arbitrary_spectra(spec, gen, size, method)
    raise DomainError(f"unknown ensemble spec {spec!r}")


# ------------------------------------------------------------------ capacity

def u(x):
    """Single-mode capacity ``(1-x^2)/4 * ln^2((1+x)/(1-x))``, zero at +-1."""
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(np.abs(x) > 1 + COLLAR):
        raise DomainError("capacity argument outside [-1, 1] beyond the 1e-9 collar")
    x = np.clip(x, -1.0, 1.0)
    out = np.zeros_like(x)
    inner = np.abs(x) < 1
    xi = x[inner]
    out[inner] = (1 - xi * xi) / 4 * (np.log1p(xi) - np.log1p(-xi)) ** 2
    return out[()]


def capacity_of_spectrum(s) -> float:
    values = s.values if isinstance(s, Spectrum) else s
    return float(np.sum(u(values)))


def _run_stream(spec, seed, stream, count, batch, method):
    stats = RunningStats()
    gen = RngStream(seed, stream).generator()
    done = 0
    try:
        while done < count:
            k = min(batch, count - done)
            spectra = sample_spectra(spec, gen, k, method)
            stats.push_batch(np.sum(u(spectra), axis=-1))
            done += k
    except NumericalError as exc:
        raise NumericalError(f"stream {stream} failed after {done} of {count} samples: {exc}") from exc
    return stats


def estimate_mean_capacity(
    spec,
    n_samples: int,
    seed: int,
    *,
    n_streams: int = 8,
    workers: int = 1,
    batch: int = 4096,
    method: str = "jacobi",
) -> CapacityEstimate:
    """Monte Carlo mean capacity with its standard error.

    Sample ``i`` belongs to stream ``i mod n_streams``.  Streams are merged in
    index order, so ``workers`` does not affect the result.
    """
    if n_samples < 2:
        raise DomainError(f"n_samples must be >= 2, got {n_samples}")
    if n_streams < 1 or workers < 1 or batch < 1:
        raise DomainError("n_streams, workers and batch must all be >= 1")
    RngStream(seed)
    counts = [len(range(s, n_samples, n_streams)) for s in range(n_streams)]
    jobs = [(spec, seed, s, c, batch, method) for s, c in enumerate(counts) if c > 0]
    if workers == 1:
        parts = [_run_stream(*job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _run_stream(*job), jobs))
    total = RunningStats()
    for part in parts:
        total.merge(part)
    stderr = math.sqrt(total.variance / total.count)
    return CapacityEstimate(total.mean, stderr, total.count, seed, n_streams)
