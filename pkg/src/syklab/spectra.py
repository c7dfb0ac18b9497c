"""Eigenvalues, empirical spectral measures, moment estimators and distances."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .ensemble import derive_seeds, ordered_map
from .errors import InvalidArgument, NumericError
from .limits import LimitDensity
from .model import DENSE_DIM_CAP, Distribution, Hamiltonian, build_hamiltonian, sample_couplings

DEFAULT_BINS = 101


@dataclass(frozen=True)
class HistogramView:
    edges: np.ndarray
    counts: np.ndarray
    densities: np.ndarray

    @property
    def width(self) -> float:
        return float(self.edges[1] - self.edges[0])


@dataclass(frozen=True, eq=False)
class EmpiricalMeasure:
    """Uniform probability measure on a sorted eigenvalue multiset."""

    eigenvalues: np.ndarray = field(repr=False)
    n: int | None = None
    q: int | None = None
    seed: int | None = None

    def __post_init__(self):
        lam = np.sort(np.asarray(self.eigenvalues, dtype=float))
        lam.flags.writeable = False
        object.__setattr__(self, "eigenvalues", lam)

    def __len__(self):
        return len(self.eigenvalues)

    def moment(self, k: int) -> float:
        return empirical_moment(self, k)

    def cdf(self, x):
        """Right-continuous empirical CDF."""
        return np.searchsorted(self.eigenvalues, np.asarray(x, dtype=float), side="right") / len(self)

    def histogram(self, bins: int = DEFAULT_BINS, range: tuple[float, float] | None = None) -> HistogramView:
        return histogram([self], bins, range)

    @classmethod
    def pooled(cls, measures) -> "EmpiricalMeasure":
        measures = list(measures)
        first = measures[0]
        return cls(np.concatenate([m.eigenvalues for m in measures]), first.n, first.q, None)


def histogram(measures, bins: int = DEFAULT_BINS, range=None) -> HistogramView:
    """Histogram of pooled eigenvalues, binned uniformly over their [min, max]."""
    values = np.concatenate([np.asarray(m.eigenvalues) for m in measures])
    if range is None:
        lo, hi = float(values.min()), float(values.max())
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
        range = (lo, hi)
    counts, edges = np.histogram(values, bins=bins, range=range)
    dens = counts / (counts.sum() * np.diff(edges))
    return HistogramView(edges, counts, dens)


# -- dense spectra -------------------------------------------------------------

def _parity_split(dim: int):
    basis = np.arange(dim)
    odd = (np.bitwise_count(basis) & 1).astype(bool)
    return basis[~odd], basis[odd]


def full_spectrum(H: Hamiltonian, cap: int = DENSE_DIM_CAP, check_residuals: bool = False,
                  seed: int | None = None, rng_seed: int = 0) -> EmpiricalMeasure:
    """All eigenvalues of H by dense diagonalization.

    Terms of even q preserve the parity of the basis-state bit count, so H is
    block diagonal in the even/odd sectors; odd-q terms flip it, so
    H = [[0, B], [B^H, 0]] and the spectrum is +-singular values of B.
    ``check_residuals`` recomputes eigenvectors and spot-checks ten random
    pairs for ||Hv - lambda v|| <= 1e-10 ||H||.
    """
    M = H.dense_matrix(cap)
    even, odd = _parity_split(H.dim)
    if H.q % 2 == 0:
        blocks = [M[np.ix_(even, even)], M[np.ix_(odd, odd)]]
        if np.any(M[np.ix_(even, odd)]):
            raise NumericError("even-q Hamiltonian mixes parity sectors")
        lam = np.concatenate([np.linalg.eigvalsh(b) for b in blocks])
    else:
        B = M[np.ix_(even, odd)]
        s = np.linalg.svd(B, compute_uv=False)
        lam = np.concatenate([s, -s])
    if not np.all(np.isfinite(lam)):
        raise NumericError("eigensolver returned non-finite values")
    if check_residuals:
        _check_residuals(M, rng_seed)
    return EmpiricalMeasure(lam, H.n, H.q, seed)


def _check_residuals(M: np.ndarray, rng_seed: int, count: int = 10, rel_tol: float = 1e-10):
    lam, vecs = np.linalg.eigh(M)
    scale = max(abs(lam[0]), abs(lam[-1]), 1e-300)
    rng = np.random.default_rng(rng_seed)
    picks = rng.choice(len(lam), size=min(count, len(lam)), replace=False)
    for j in picks:
        r = np.linalg.norm(M @ vecs[:, j] - lam[j] * vecs[:, j])
        if r > rel_tol * scale:
            raise NumericError(f"eigenpair {j} residual {r:.3e} exceeds {rel_tol:g}*||H||",
                               estimate=float(lam[j]), residual=float(r))


# -- Lanczos -----------------------------------------------------------------

@dataclass(frozen=True)
class LanczosResult:
    value: float
    residual: float
    iterations: int


def lanczos_extreme(matvec, dim: int, which: str = "max", tol: float = 1e-9,
                    max_iter: int = 400, seed: int = 0) -> LanczosResult:
    """Extreme eigenvalue of a Hermitian operator by Lanczos with full reorthogonalization.

    Stops when the Ritz value moves by less than ``tol * max(1, |theta|)`` and
    its residual ``beta_m |s_m|`` is below ``tol * max(1, |theta|)``.
    """
    if which not in ("max", "min"):
        raise InvalidArgument(f"which must be 'max' or 'min', got {which!r}")
    max_iter = min(max_iter, dim)
    rng = np.random.default_rng(seed)
    V = np.empty((max_iter + 1, dim), dtype=complex)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    V[0] = v / np.linalg.norm(v)
    alpha, beta = [], []
    prev = None
    theta = resid = math.nan
    for j in range(max_iter):
        w = matvec(V[j])
        a = float(np.vdot(V[j], w).real)
        alpha.append(a)
        w = w - a * V[j]
        if j:
            w -= beta[-1] * V[j - 1]
        for _ in range(2):
            w -= V[: j + 1].T @ (V[: j + 1].conj() @ w)
        b = float(np.linalg.norm(w))
        evals, evecs = eigh_tridiagonal(np.array(alpha), np.array(beta), eigvals_only=False)
        pick = -1 if which == "max" else 0
        theta = float(evals[pick])
        resid = abs(b * evecs[-1, pick])
        scale = max(1.0, abs(theta))
        if b <= 1e-14 * scale or (prev is not None and abs(theta - prev) < tol * scale and resid < tol * scale):
            return LanczosResult(theta, resid, j + 1)
        prev = theta
        beta.append(b)
        V[j + 1] = w / b
    if max_iter == dim:
        return LanczosResult(theta, resid, max_iter)
    raise NumericError(f"Lanczos did not converge in {max_iter} iterations "
                       f"(estimate {theta:.12g}, residual {resid:.3e})", estimate=theta, residual=resid)


def extreme_eigenvalue(H: Hamiltonian, which: str = "max", tol: float = 1e-9,
                       max_iter: int = 400, seed: int = 0) -> float:
    return lanczos_extreme(H.apply, H.dim, which, tol, max_iter, seed).value


# -- moments -----------------------------------------------------------------

def empirical_moment(m: EmpiricalMeasure, k: int) -> float:
    """(1/L) sum_i lambda_i**k."""
    if k < 1:
        raise InvalidArgument(f"k must be >= 1, got {k}")
    return float(np.mean(m.eigenvalues ** k))


def _sample_moments(args):
    n, q, dist, seed, ks = args
    H = build_hamiltonian(sample_couplings(n, q, dist, seed))
    m = full_spectrum(H, seed=seed)
    return [empirical_moment(m, k) for k in ks]


def sample_moment_table(n: int, q: int, ks, samples: int, seed: int, dist="gaussian",
                        workers: int = 1) -> np.ndarray:
    """(samples, len(ks)) array of per-sample (1/L) Tr H^k."""
    ks = list(ks)
    jobs = [(n, q, Distribution(dist), s, ks) for s in derive_seeds(seed, samples)]
    return np.array(ordered_map(_sample_moments, jobs, workers))


def jackknife_variance(values) -> tuple[float, float]:
    """Unbiased sample variance and its jackknife standard error."""
    x = np.asarray(values, dtype=float)
    N = len(x)
    if N < 3:
        raise InvalidArgument("jackknife variance needs at least 3 samples")
    var = float(x.var(ddof=1))
    # leave-one-out variances in closed form
    s1, s2 = x.sum(), (x ** 2).sum()
    loo_mean = (s1 - x) / (N - 1)
    loo_var = ((s2 - x ** 2) - (N - 1) * loo_mean ** 2) / (N - 2)
    err = math.sqrt((N - 1) / N * float(np.sum((loo_var - loo_var.mean()) ** 2)))
    return var, err


@dataclass(frozen=True)
class VarianceRow:
    n: int
    binom: int
    samples: int
    mean: float
    variance: float
    variance_err: float

    @property
    def ratio(self) -> float:
        return self.variance * self.binom

    @property
    def ratio_err(self) -> float:
        return self.variance_err * self.binom


def moment_variance_scan(n_list, q: int, k: int, samples: int, seed: int,
                         dist="gaussian", workers: int = 1) -> list[VarianceRow]:
    """Sample variance of (1/L) Tr H^k across an n sweep, with jackknife errors."""
    if q < 2 or q % 2:
        raise InvalidArgument(f"variance scan needs even q >= 2, got {q}")
    rows = []
    for i, n in enumerate(n_list):
        vals = sample_moment_table(n, q, [k], samples, seed + i, dist, workers)[:, 0]
        var, err = jackknife_variance(vals)
        rows.append(VarianceRow(n, math.comb(n, q), samples, float(vals.mean()), var, err))
    return rows


# -- distances ---------------------------------------------------------------

def ks_distance(m: EmpiricalMeasure, d: LimitDensity) -> float:
    """sup_x |F_emp(x) - F(x)|, evaluated on both sides of every jump."""
    lam = m.eigenvalues
    N = len(lam)
    F = d.cdf(lam)
    if not np.all(np.isfinite(F)):
        raise NumericError(f"CDF of {d.name} returned non-finite values")
    i = np.arange(1, N + 1)
    return float(max(np.max(i / N - F), np.max(F - (i - 1) / N), 0.0))


@dataclass(frozen=True)
class IntersectionStats:
    n: int
    q: int
    trials: int
    counts: np.ndarray
    mean: float
    mean_stderr: float
    tv_poisson: float
    exact_pmf: np.ndarray
    exact_tv_poisson: float

    @property
    def pmf(self) -> np.ndarray:
        return self.counts / self.trials


def hypergeometric_pmf(n: int, q: int) -> np.ndarray:
    """Law of |R & R'| for independent uniform q-subsets of an n-set."""
    total = math.comb(n, q)
    return np.array([math.comb(q, j) * math.comb(n - q, q - j) / total for j in range(q + 1)])


def poisson_tv(pmf: np.ndarray, lam: float) -> float:
    """Total variation distance between a law on {0..len-1} and Poisson(lam)."""
    j = np.arange(len(pmf))
    pois = np.exp(-lam + j * math.log(lam) - np.array([math.lgamma(v + 1) for v in j])) if lam > 0 else (j == 0).astype(float)
    tail = max(0.0, 1.0 - pois.sum())
    return float(0.5 * (np.abs(pmf - pois).sum() + tail))


def intersection_statistics(n: int, q: int, trials: int, seed: int) -> IntersectionStats:
    if not 1 <= q <= n:
        raise InvalidArgument(f"need 1 <= q <= n, got q={q}, n={n}")
    rng = np.random.default_rng(seed)
    sizes = np.empty(trials, dtype=np.int64)
    chunk = max(1, 2_000_000 // n)
    for start in range(0, trials, chunk):
        m = min(chunk, trials - start)
        a = np.argsort(rng.random((m, n)), axis=1)[:, :q]
        b = np.argsort(rng.random((m, n)), axis=1)[:, :q]
        ma = np.zeros((m, n), dtype=bool)
        mb = np.zeros((m, n), dtype=bool)
        np.put_along_axis(ma, a, True, axis=1)
        np.put_along_axis(mb, b, True, axis=1)
        sizes[start:start + m] = np.count_nonzero(ma & mb, axis=1)
    counts = np.bincount(sizes, minlength=q + 1)
    lam = q * q / n
    exact = hypergeometric_pmf(n, q)
    return IntersectionStats(
        n, q, trials, counts, float(sizes.mean()), float(sizes.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0,
        poisson_tv(counts / trials, lam), exact, poisson_tv(exact, lam),
    )
