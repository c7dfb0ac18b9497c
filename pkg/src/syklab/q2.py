"""Exact q = 2 spectra from the antisymmetric coupling matrix.

With B the real antisymmetric matrix of couplings and +-i mu_j its
eigenvalues, the q = 2 Hamiltonian has eigenvalues
C(n,2)**-0.5 * sum_j (+-mu_j) over all 2**(n/2) sign patterns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .ensemble import derive_seeds, ordered_map, stderr
from .errors import InvalidArgument, NumericError, ResourceLimit
from .limits import LimitDensity
from .model import _as_distribution, antisymmetric_from_values
from .spectra import EmpiricalMeasure, ks_distance

LAMBDA_MAX_CONSTANT = 4 * math.sqrt(2) / (3 * math.pi)
SEMICIRCLE_ABS_MEAN = 8 / (3 * math.pi)
Q2_SPECTRUM_CAP = 24


def check_antisymmetric(B: np.ndarray) -> np.ndarray:
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise InvalidArgument(f"expected a square matrix, got shape {B.shape}")
    if B.shape[0] % 2:
        raise InvalidArgument(f"matrix order must be even, got {B.shape[0]}")
    if not np.array_equal(B, -B.T):
        raise InvalidArgument("matrix is not exactly antisymmetric")
    return B


def random_antisymmetric(n: int, seed: int, dist="gaussian") -> np.ndarray:
    """Antisymmetric matrix of i.i.d. pair couplings.

    Draws the same stream as ``sample_couplings(n, 2, dist, seed)``, so for
    n >= 4 it equals ``antisymmetric_from_couplings`` of that tensor; n = 2
    (a single coupling J_12) is allowed here as well.
    """
    if n <= 0 or n % 2:
        raise InvalidArgument(f"n must be a positive even integer, got {n}")
    rng = np.random.default_rng(seed)
    return antisymmetric_from_values(n, _as_distribution(dist).sample(rng, math.comb(n, 2)))


def mu_spectrum(B: np.ndarray) -> np.ndarray:
    """mu_1 >= ... >= mu_{n/2} >= 0 with spectrum(B) = {+-i mu_j}."""
    B = check_antisymmetric(B)
    n = B.shape[0]
    ev = np.linalg.eigvalsh(1j * B)
    if not np.all(np.isfinite(ev)):
        raise NumericError("eigensolver returned non-finite values")
    # ascending: the top n/2 are the mu_j, the bottom n/2 their negatives
    top = ev[n // 2:][::-1]
    bottom = -ev[: n // 2]
    scale = max(float(np.abs(ev).max()), 1e-300)
    if np.max(np.abs(top - bottom)) > 1e-10 * scale:
        raise NumericError("eigenvalues of iB are not paired as +-mu")
    return np.clip(top, 0.0, None)


def q2_lambda_max(B: np.ndarray) -> float:
    n = np.asarray(B).shape[0]
    return float(mu_spectrum(B).sum() / math.sqrt(math.comb(n, 2)))


def q2_full_spectrum(B: np.ndarray, n_cap: int = Q2_SPECTRUM_CAP) -> EmpiricalMeasure:
    B = check_antisymmetric(B)
    n = B.shape[0]
    if n > n_cap:
        raise ResourceLimit(f"n={n} exceeds sign-pattern enumeration cap {n_cap}")
    mu = mu_spectrum(B)
    signs = np.array(list(product((1.0, -1.0), repeat=n // 2)))
    return EmpiricalMeasure(signs @ mu / math.sqrt(math.comb(n, 2)), n, 2)


@dataclass(frozen=True)
class SemicircleCheck:
    n: int
    samples: int
    ks: float
    second_moment: float
    second_moment_stderr: float
    abs_mean: float


def _scaled_mu(args):
    n, seed, dist = args
    return mu_spectrum(random_antisymmetric(n, seed, dist)) / math.sqrt(n - 1)


def antisymmetric_semicircle_check(n: int, samples: int, seed: int = 0, dist="gaussian",
                                   workers: int = 1) -> SemicircleCheck:
    """Pool +-mu_j / sqrt(n-1) over samples and compare with the semicircle."""
    mus = ordered_map(_scaled_mu, [(n, s, dist) for s in derive_seeds(seed, samples)], workers)
    pooled = EmpiricalMeasure(np.concatenate([np.concatenate([m, -m]) for m in mus]), n, 2)
    second = [2.0 * float(np.sum(m ** 2)) / n for m in mus]
    return SemicircleCheck(
        n, samples, ks_distance(pooled, LimitDensity.semicircle()),
        float(np.mean(second)), stderr(second), float(np.mean(np.abs(pooled.eigenvalues))),
    )


@dataclass(frozen=True)
class LambdaMaxStats:
    n: int
    samples: int
    values: tuple[float, ...]
    mean: float
    stderr: float
    reference: float = LAMBDA_MAX_CONSTANT

    @property
    def deviation(self) -> float:
        return self.mean - self.reference


def _scaled_lambda_max(args):
    n, seed, dist = args
    return q2_lambda_max(random_antisymmetric(n, seed, dist)) / math.sqrt(n)


def q2_lambda_max_stats(n: int, samples: int, seed: int, dist="gaussian", workers: int = 1) -> LambdaMaxStats:
    """Ensemble statistics of lambda_max / sqrt(n) at q = 2."""
    vals = ordered_map(_scaled_lambda_max, [(n, s, dist) for s in derive_seeds(seed, samples)], workers)
    return LambdaMaxStats(n, samples, tuple(vals), float(np.mean(vals)), stderr(vals))
