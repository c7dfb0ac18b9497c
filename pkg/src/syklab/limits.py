"""Limit moments and limit densities of the normalized SYK spectrum.

The even-k limit moments are polynomials in ``y`` over pair partitions,
``sum_pi y**crossings(pi)``.  With ``y = exp(-2a)`` they are the moments of
the q-Hermite density ``f(x | y)``; with ``y = -exp(-2a)`` they are the odd-q
limits.  ``y = 1`` recovers the Gaussian ((k-1)!!) and ``y = 0`` the semicircle
(Catalan numbers).
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass
from decimal import Decimal, localcontext
from enum import Enum
from fractions import Fraction
from functools import cached_property

import numpy as np
from scipy import integrate, special
from scipy.interpolate import PchipInterpolator

from .errors import InvalidArgument, NumericError
from .partitions import crossing_histogram

TRUNCATION_EPS = 1e-16
MAX_PRODUCT_TERMS = 100_000
GAUSSIAN_DISPATCH_A = 1e-4
CDF_GRID = 10_001
MASS_TOL = 1e-6

# optional on-disk store for q-Hermite CDF tables; None disables it
_cache_dir: str | None = None


def set_cache_dir(path: str | None):
    """Directory for cached CDF tables (created on demand); ``None`` disables caching."""
    global _cache_dir
    _cache_dir = os.fspath(path) if path is not None else None


def _cdf_cache_path(y: float) -> str | None:
    if _cache_dir is None:
        return None
    return os.path.join(_cache_dir, f"qhermite_cdf_{float(y).hex()}_{CDF_GRID}.npy")


class Regime(Enum):
    """Coupling-density regimes beyond any finite ``a = q**2/n``."""

    INFINITE = "inf"


A_INFINITY = Regime.INFINITE


def _crossing_weight(a, parity: str) -> float:
    if parity not in ("even", "odd"):
        raise InvalidArgument(f"parity must be 'even' or 'odd', got {parity!r}")
    if a is A_INFINITY or (isinstance(a, float) and math.isinf(a) and a > 0):
        return 0.0
    if a < 0:
        raise InvalidArgument(f"a must be non-negative, got {a}")
    y = math.exp(-2.0 * a)
    return y if parity == "even" else -y


def limit_moment(k: int, a, parity: str = "even") -> float:
    """m_k^a = sum over pair partitions of (+-exp(-2a))**crossings; 0 for odd k."""
    if k < 1:
        raise InvalidArgument(f"k must be >= 1, got {k}")
    y = _crossing_weight(a, parity)
    if k % 2:
        return 0.0
    # 0.0 ** 0 == 1.0: only non-crossing partitions survive when y == 0
    return float(sum(count * y ** kappa for kappa, count in crossing_histogram(k).items()))


# -- densities ---------------------------------------------------------------

def _qhermite_terms(y: float) -> int:
    if y == 0.0:
        return 1
    K = math.ceil(math.log(TRUNCATION_EPS) / math.log(abs(y)))
    return max(1, min(K, MAX_PRODUCT_TERMS))


def _qhermite_tail_log(x2: np.ndarray, y: float) -> np.ndarray:
    """log of prod_{k>=1} (1-y^{2k+2})/(1-y^{2k+1}) * (1 - x^2 (1-y) y^k / (1+y^k)^2)."""
    K = _qhermite_terms(y)
    out = np.zeros_like(x2)
    chunk = 2048
    for start in range(1, K, chunk):
        k = np.arange(start, min(K, start + chunk), dtype=float)
        yk = y ** k
        const = np.sum(np.log1p(-y ** (2 * k + 2)) - np.log1p(-y ** (2 * k + 1)))
        coef = (1.0 - y) * yk / (1.0 + yk) ** 2
        out += const + np.sum(np.log1p(-np.multiply.outer(x2, coef)), axis=-1)
    return out


@dataclass(frozen=True)
class LimitDensity:
    """One of the Gaussian, semicircle or q-Hermite ``f(x|y)`` laws."""

    family: str
    y: float | None = None

    def __post_init__(self):
        if self.family not in ("gaussian", "semicircle", "qhermite"):
            raise InvalidArgument(f"unknown density family {self.family!r}")
        if self.family == "qhermite":
            if self.y is None or not -1.0 < self.y < 1.0 or self.y == 0.0:
                raise InvalidArgument(f"qhermite needs y in (-1, 1) excluding 0, got {self.y}")
            object.__setattr__(self, "y", float(self.y))
        elif self.y is not None:
            raise InvalidArgument(f"{self.family} takes no y parameter")

    @classmethod
    def gaussian(cls) -> "LimitDensity":
        return cls("gaussian")

    @classmethod
    def semicircle(cls) -> "LimitDensity":
        return cls("semicircle")

    @classmethod
    def qhermite(cls, y: float) -> "LimitDensity":
        return cls("qhermite", y)

    @property
    def name(self) -> str:
        if self.family == "qhermite":
            return f"qhermite(y={self.y:.6g})"
        return self.family

    @property
    def a(self) -> float | None:
        """The a with y = +-exp(-2a), for q-Hermite densities."""
        if self.family != "qhermite":
            return None
        return -0.5 * math.log(abs(self.y))

    @property
    def crossing_weight(self) -> float:
        """Weight per crossing in the pair-partition moment sum (1, 0 or y)."""
        return {"gaussian": 1.0, "semicircle": 0.0}.get(self.family, self.y)

    def exact_moment(self, k: int) -> float:
        """k-th moment from the crossing-number histogram (no quadrature)."""
        if k < 0:
            raise InvalidArgument(f"k must be >= 0, got {k}")
        if k == 0:
            return 1.0
        if k % 2:
            return 0.0
        w = self.crossing_weight
        return float(sum(count * w ** kappa for kappa, count in crossing_histogram(k).items()))

    @property
    def half_width(self) -> float:
        if self.family == "gaussian":
            return math.inf
        if self.family == "semicircle":
            return 2.0
        return 2.0 / math.sqrt(1.0 - self.y)

    @property
    def support(self) -> tuple[float, float]:
        return (-self.half_width, self.half_width)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        if self.family == "gaussian":
            return np.exp(-0.5 * x ** 2) / math.sqrt(2.0 * math.pi)
        s = self.half_width
        inside = np.abs(x) < s
        xi = np.where(inside, x, 0.0)
        edge = np.sqrt(np.clip(1.0 - (xi / s) ** 2, 0.0, None))
        if self.family == "semicircle":
            return np.where(inside, edge / math.pi, 0.0)
        # the k = 0 factor (1+y)(1 - x^2(1-y)/4) cancels the edge singularity of
        # the prefactor, leaving sqrt(1 - x^2/s^2)
        y = self.y
        val = math.sqrt(1.0 - y) * (1.0 + y) / math.pi * edge * np.exp(_qhermite_tail_log(xi ** 2, y))
        return np.where(inside, val, 0.0)

    def _theta_integrand(self, theta):
        """Density in the variable x = s sin(theta); smooth on [-pi/2, pi/2]."""
        s = self.half_width
        return self.pdf(s * np.sin(theta)) * s * np.cos(theta)

    @cached_property
    def _cdf_table(self):
        theta = np.linspace(-math.pi / 2, math.pi / 2, CDF_GRID)
        path = _cdf_cache_path(self.y)
        if path is not None and os.path.exists(path):
            F = np.load(path)
        else:
            vals = self._theta_integrand(theta)
            F = integrate.cumulative_simpson(vals, x=theta, initial=0.0)
            F = np.maximum.accumulate(np.clip(F, 0.0, None))
            if path is not None:
                os.makedirs(_cache_dir, exist_ok=True)
                tmp = f"{path}.{os.getpid()}.tmp.npy"
                np.save(tmp, F)
                os.replace(tmp, path)
        total = F[-1]
        if abs(total - 1.0) > MASS_TOL:
            warnings.warn(f"{self.name} has mass {total:.9f}; CDF left unnormalized")
        # near-atomic laws have CDF plateaus whose slope ratios overflow; the
        # resulting zero derivatives are the correct flat interpolant
        with np.errstate(over="ignore", divide="ignore"):
            return PchipInterpolator(theta, F, extrapolate=False)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        if self.family == "gaussian":
            return special.ndtr(x)
        s = self.half_width
        if self.family == "semicircle":
            u = np.clip(x / s, -1.0, 1.0)
            return 0.5 + (u * np.sqrt(1.0 - u ** 2) + np.arcsin(u)) / math.pi
        theta = np.arcsin(np.clip(x / s, -1.0, 1.0))
        return np.clip(self._cdf_table(theta), 0.0, 1.0)

    def mass(self) -> float:
        return density_moment(self, 0)

    def check_mass(self, tol: float = MASS_TOL) -> float:
        m = self.mass()
        if abs(m - 1.0) > tol:
            raise NumericError(f"{self.name} integrates to {m!r}, off by more than {tol}")
        return m


def density_eval(d: LimitDensity, x):
    return d.pdf(x)


def density_moment(d: LimitDensity, k: int) -> float:
    """Integral of x**k against the density, by adaptive quadrature."""
    if k < 0 or k > 12:
        raise InvalidArgument(f"moment order must be in [0, 12], got {k}")
    if d.family == "gaussian":
        val, err = integrate.quad(lambda x: x ** k * d.pdf(x), -np.inf, np.inf,
                                  epsabs=1e-11, epsrel=1e-13, limit=200)
    else:
        s = d.half_width
        val, err = integrate.quad(lambda t: (s * math.sin(t)) ** k * float(d._theta_integrand(t)),
                                  -math.pi / 2, math.pi / 2, epsabs=1e-11, epsrel=1e-13, limit=200)
    if not np.isfinite(val) or err > 1e-8:
        raise NumericError(f"quadrature for moment {k} of {d.name} unreliable (error {err:.2e})",
                           estimate=val, residual=err)
    return float(val)


def select_limit(n: int, q: int, parity: str | None = None) -> LimitDensity:
    """The finite-n reference density for an (n, q) SYK ensemble.

    Uses a = m**2/n with m = min(q, n - q) (the q <-> n - q duality), and the
    q-Hermite law at y = exp(-2a) (even) or -exp(-2a) (odd).  Tiny even a
    dispatches to the Gaussian; y below the truncation threshold returns the
    semicircle.
    """
    if n <= 0 or n % 2 or not 1 <= q < n:
        raise InvalidArgument(f"invalid (n, q) = ({n}, {q})")
    parity = parity or ("even" if q % 2 == 0 else "odd")
    if parity not in ("even", "odd"):
        raise InvalidArgument(f"parity must be 'even' or 'odd', got {parity!r}")
    m = min(q, n - q)
    a = m * m / n
    if parity == "even" and a < GAUSSIAN_DISPATCH_A:
        return LimitDensity.gaussian()
    y = math.exp(-2.0 * a)
    if y < TRUNCATION_EPS:
        return LimitDensity.semicircle()
    return LimitDensity.qhermite(y if parity == "even" else -y)


def limit_for(a, parity: str = "even") -> LimitDensity:
    """Density whose moments are ``limit_moment(k, a, parity)``."""
    y = _crossing_weight(a, parity)
    if y == 0.0:
        return LimitDensity.semicircle()
    if y == 1.0:
        return LimitDensity.gaussian()
    return LimitDensity.qhermite(y)


# -- alternating hypergeometric sums -----------------------------------------

def f_alternating(p: int, q: int, m: int) -> Fraction:
    """sum_k (-1)^k C(p,k) C(m-p,q-k) / C(m,q), exactly.

    This is E[(-1)^|A & B|] for a fixed p-subset A and a uniform q-subset B of
    an m-set.
    """
    if not (0 <= p <= m and 0 <= q <= m):
        raise InvalidArgument(f"need 0 <= p, q <= m, got p={p}, q={q}, m={m}")
    total = 0
    for k in range(max(0, q - (m - p)), min(p, q) + 1):
        term = math.comb(p, k) * math.comb(m - p, q - k)
        total += -term if k % 2 else term
    return Fraction(total, math.comb(m, q))


def f_bound_exponent(p: int, q: int, m: int) -> Fraction:
    if m == 0:
        return Fraction(0)
    return Fraction(min(p, m - p) * min(q, m - q), 2 * m)


@dataclass(frozen=True)
class BoundReport:
    m_max: int
    checked: int
    violations: list
    max_ratio: float
    argmax: tuple[int, int, int]
    equality_cases: int

    @property
    def passed(self) -> bool:
        return not self.violations


def f_bound_check(m_max: int) -> BoundReport:
    """Check |F(p,q,m)| <= exp(-min(p,m-p) min(q,m-q) / (2m)) for all p, q <= m <= m_max.

    F is exact; the exponential is evaluated to 60 significant digits and the
    comparison is done between exact rationals.
    """
    if m_max < 0 or m_max > 60:
        raise InvalidArgument(f"m_max must be in [0, 60], got {m_max}")
    violations = []
    checked = equal = 0
    best, best_at = -1.0, (0, 0, 0)
    with localcontext() as ctx:
        ctx.prec = 60
        for m in range(m_max + 1):
            for p in range(m + 1):
                for q in range(m + 1):
                    F = abs(f_alternating(p, q, m))
                    t = f_bound_exponent(p, q, m)
                    bound = Fraction(1) if t == 0 else Fraction((-(Decimal(t.numerator) / Decimal(t.denominator))).exp())
                    checked += 1
                    if F > bound:
                        violations.append((p, q, m))
                    elif F == bound:
                        equal += 1
                    ratio = float(F / bound)
                    if ratio > best:
                        best, best_at = ratio, (p, q, m)
    return BoundReport(m_max, checked, violations, best, best_at, equal)


def f_symmetry_violations(m_max: int) -> list[tuple[int, int, int]]:
    """Triples where F(p,q,m) = F(q,p,m) = (-1)^q F(m-p,q,m) = (-1)^p F(p,m-q,m) fails."""
    bad = []
    for m in range(m_max + 1):
        for p in range(m + 1):
            for q in range(m + 1):
                F = f_alternating(p, q, m)
                if not (F == f_alternating(q, p, m)
                        == (-1) ** q * f_alternating(m - p, q, m)
                        == (-1) ** p * f_alternating(p, m - q, m)):
                    bad.append((p, q, m))
    return bad
