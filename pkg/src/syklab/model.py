"""Random couplings and the SYK Hamiltonian as a list of Pauli terms.

For even q the Hamiltonian is ``i**(q/2) / sqrt(C(n,q)) * sum_R J_R Psi_R``;
for odd q the prefactor is ``i**((q-1)/2)``.  Each ``i**(q//2) Psi_R`` is a
Hermitian Pauli string times a sign, so every stored coefficient is real and
every stored string has phase exponent 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterator

import numpy as np

from .errors import InvalidArgument, InvariantViolation, ResourceLimit
from .pauli import MajoranaIndexSet, PauliString, majorana, majorana_product, pauli_mul

DENSE_DIM_CAP = 4096
MATRIX_FREE_MODE_CAP = 32
COUPLING_BUDGET = 50_000_000
# bytes of cached diagonals a Hamiltonian may hold for fast apply()
APPLY_CACHE_BUDGET = 1 << 30

_I_POW = np.array([1, 1j, -1, -1j])


class Distribution(str, Enum):
    """Coupling laws, each with mean 0 and variance 1."""

    GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"
    UNIFORM = "uniform"

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self is Distribution.GAUSSIAN:
            return rng.standard_normal(size)
        if self is Distribution.RADEMACHER:
            return 2.0 * rng.integers(0, 2, size) - 1.0
        return rng.uniform(-math.sqrt(3.0), math.sqrt(3.0), size)


def _as_distribution(dist) -> Distribution:
    try:
        return Distribution(dist)
    except ValueError:
        raise InvalidArgument(f"unknown distribution {dist!r}; choose from "
                              f"{[d.value for d in Distribution]}") from None


# -- colexicographic ordering of q-subsets -----------------------------------

def colex_rank(R) -> int:
    """Rank of a 1-based sorted index tuple among all subsets of its size."""
    return sum(math.comb(i - 1, j + 1) for j, i in enumerate(R))


def colex_unrank(rank: int, q: int) -> tuple[int, ...]:
    out = []
    for j in range(q, 0, -1):
        c = j - 1
        while math.comb(c + 1, j) <= rank:
            c += 1
        rank -= math.comb(c, j)
        out.append(c + 1)
    return tuple(reversed(out))


def colex_subsets(n: int, q: int) -> Iterator[tuple[int, ...]]:
    """All q-subsets of {1..n} in colex order (rank 0, 1, 2, ...)."""
    if q == 0:
        yield ()
        return
    c = list(range(1, q + 1))
    while True:
        yield tuple(c)
        j = 0
        while j < q - 1 and c[j] + 1 == c[j + 1]:
            j += 1
        if j == q - 1 and c[j] == n:
            return
        c[j] += 1
        c[:j] = range(1, j + 1)


# -- couplings ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CouplingTensor:
    """J_R for every q-subset R of {1..n}, stored by colex rank."""

    n: int
    q: int
    dist: Distribution
    seed: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_nq(self.n, self.q)
        values = np.asarray(self.values, dtype=float)
        if values.shape != (math.comb(self.n, self.q),):
            raise InvalidArgument(f"expected {math.comb(self.n, self.q)} coupling values, got {values.shape}")
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dist", _as_distribution(self.dist))

    def __getitem__(self, R) -> float:
        return float(self.values[colex_rank(tuple(R))])

    def __eq__(self, other):
        if not isinstance(other, CouplingTensor):
            return NotImplemented
        return ((self.n, self.q, self.dist, self.seed) == (other.n, other.q, other.dist, other.seed)
                and np.array_equal(self.values, other.values))

    def to_record(self) -> dict:
        return {"n": self.n, "q": self.q, "dist": self.dist.value, "seed": self.seed,
                "values": self.values.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def from_record(cls, rec: dict) -> "CouplingTensor":
        try:
            return cls(int(rec["n"]), int(rec["q"]), rec["dist"], int(rec["seed"]),
                       np.asarray(rec["values"], dtype=float))
        except KeyError as exc:
            raise InvalidArgument(f"coupling record missing field {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "CouplingTensor":
        return cls.from_record(json.loads(text))


def _check_nq(n: int, q: int):
    if n <= 0 or n % 2:
        raise InvalidArgument(f"n must be a positive even integer, got {n}")
    if not 1 <= q < n:
        raise InvalidArgument(f"q must satisfy 1 <= q < n, got q={q}, n={n}")


def sample_couplings(n: int, q: int, dist="gaussian", seed: int = 0,
                     budget: int = COUPLING_BUDGET) -> CouplingTensor:
    _check_nq(n, q)
    dist = _as_distribution(dist)
    count = math.comb(n, q)
    if count > budget:
        raise ResourceLimit(f"C({n},{q}) = {count} couplings exceeds coupling budget {budget}")
    rng = np.random.default_rng(seed)
    return CouplingTensor(n, q, dist, seed, dist.sample(rng, count))


def antisymmetric_from_couplings(J: CouplingTensor) -> np.ndarray:
    """The n x n antisymmetric matrix B with B[i-1, j-1] = J_{ij} for i < j (q = 2)."""
    if J.q != 2:
        raise InvalidArgument(f"antisymmetric matrix needs q=2 couplings, got q={J.q}")
    return antisymmetric_from_values(J.n, J.values)


def antisymmetric_from_values(n: int, values) -> np.ndarray:
    """Antisymmetric B from pair couplings listed in colex order of (i, j), i < j."""
    values = np.asarray(values, dtype=float)
    if values.shape != (math.comb(n, 2),):
        raise InvalidArgument(f"expected {math.comb(n, 2)} pair couplings, got shape {values.shape}")
    # row-major strict lower triangle (j > i) enumerates pairs in colex order
    hi, lo = np.tril_indices(n, -1)
    B = np.zeros((n, n))
    B[lo, hi] = values
    B[hi, lo] = -values
    return B


# -- Hamiltonian -------------------------------------------------------------

@lru_cache(maxsize=32)
def _term_structure(n: int, q: int):
    """Masks and absorbed signs of i**(q//2) Psi_R, R in colex order."""
    count = math.comb(n, q)
    xs = np.empty(count, dtype=np.int64)
    zs = np.empty(count, dtype=np.int64)
    signs = np.empty(count, dtype=float)
    modes = [majorana(i, n) for i in range(1, n + 1)]
    prefactor = q // 2
    for rank, R in enumerate(colex_subsets(n, q)):
        s = PauliString.identity(n // 2)
        for i in R:
            s = pauli_mul(s, modes[i - 1])
        phase = (s.phase_exp + prefactor) % 4
        if phase % 2:
            raise InvariantViolation(f"term {R} has non-real phase i**{phase}")
        xs[rank], zs[rank] = s.x_mask, s.z_mask
        signs[rank] = 1.0 if phase == 0 else -1.0
    for arr in (xs, zs, signs):
        arr.flags.writeable = False
    return xs, zs, signs


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Real combination of Hermitian (phase 0) Pauli strings on n/2 sites."""

    n: int
    q: int
    coeffs: np.ndarray = field(repr=False)
    x_masks: np.ndarray = field(repr=False)
    z_masks: np.ndarray = field(repr=False)

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=float)
        xs = np.array(self.x_masks, dtype=np.int64)
        zs = np.array(self.z_masks, dtype=np.int64)
        if not coeffs.shape == xs.shape == zs.shape or coeffs.ndim != 1:
            raise InvalidArgument("coefficient and mask arrays must be 1-d and equally long")
        limit = 1 << self.sites
        if np.any((xs < 0) | (xs >= limit) | (zs < 0) | (zs >= limit)):
            raise InvalidArgument(f"masks exceed {self.sites} sites")
        if len(set(zip(xs.tolist(), zs.tolist()))) != len(xs):
            raise InvalidArgument("duplicate Pauli strings among terms")
        for name, arr in (("coeffs", coeffs), ("x_masks", xs), ("z_masks", zs)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def parity(self) -> str:
        return "even" if self.q % 2 == 0 else "odd"

    @property
    def sites(self) -> int:
        return self.n // 2

    @property
    def dim(self) -> int:
        return 1 << self.sites

    def __len__(self):
        return len(self.coeffs)

    @property
    def terms(self) -> list[tuple[float, PauliString]]:
        return [(float(c), PauliString(self.sites, int(x), int(z), 0))
                for c, x, z in zip(self.coeffs, self.x_masks, self.z_masks)]

    @property
    def frobenius_scale(self) -> float:
        """sqrt(Tr(H^2) / dim); the term strings are orthonormal under the normalized trace."""
        return float(np.sqrt(np.sum(self.coeffs ** 2)))

    @property
    def norm_bound(self) -> float:
        """Triangle-inequality bound on the operator norm."""
        return float(np.sum(np.abs(self.coeffs)))

    @cached_property
    def _apply_groups(self):
        if self.n > MATRIX_FREE_MODE_CAP:
            raise ResourceLimit(f"n={self.n} exceeds matrix-free cap of {MATRIX_FREE_MODE_CAP} modes")
        groups = {}
        for t, x in enumerate(self.x_masks.tolist()):
            groups.setdefault(x, []).append(t)
        order = sorted(groups)
        cacheable = len(order) * self.dim * 16 <= APPLY_CACHE_BUDGET
        basis = np.arange(self.dim, dtype=np.int64)
        out = []
        for x in order:
            idx = np.asarray(groups[x])
            diag = self._group_diagonal(idx, basis) if cacheable else idx
            out.append((x, (basis ^ x).astype(np.int32), cacheable, diag))
        return out

    def _group_diagonal(self, idx: np.ndarray, basis: np.ndarray) -> np.ndarray:
        """sum over terms t with a shared x-mask of c_t i**|x&z_t| (-1)**|z_t & b|."""
        diag = np.zeros(self.dim, dtype=complex)
        for t in idx.tolist():
            z = int(self.z_masks[t])
            x = int(self.x_masks[t])
            amp = self.coeffs[t] * _I_POW[bin(x & z).count("1") % 4]
            signs = 1.0 - 2.0 * (np.bitwise_count(basis & z) & 1)
            diag += amp * signs
        return diag

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Matrix-free H @ v (v may be a vector or a (dim, m) block)."""
        v = np.asarray(v)
        if v.shape[0] != self.dim:
            raise InvalidArgument(f"vector length {v.shape[0]} does not match dimension {self.dim}")
        w = np.zeros(v.shape, dtype=complex)
        basis = None
        for x, perm, cached, diag in self._apply_groups:
            if not cached:
                if basis is None:
                    basis = np.arange(self.dim, dtype=np.int64)
                diag = self._group_diagonal(diag, basis)
            u = diag * v if v.ndim == 1 else diag[:, None] * v
            # (P_x u)[b ^ x] = u[b]
            w += u[perm]
        return w

    def dense_matrix(self, cap: int = DENSE_DIM_CAP) -> np.ndarray:
        """Exact dense matrix, scattered term by term."""
        if self.dim > cap:
            raise ResourceLimit(f"dimension {self.dim} exceeds dense cap {cap}")
        basis = np.arange(self.dim, dtype=np.int64)
        M = np.zeros((self.dim, self.dim), dtype=complex)
        for c, x, z in zip(self.coeffs, self.x_masks.tolist(), self.z_masks.tolist()):
            signs = 1.0 - 2.0 * (np.bitwise_count(basis & z) & 1)
            M[basis ^ x, basis] += c * _I_POW[bin(x & z).count("1") % 4] * signs
        return M


def build_hamiltonian(J: CouplingTensor) -> Hamiltonian:
    xs, zs, signs = _term_structure(J.n, J.q)
    coeffs = J.values * signs / math.sqrt(math.comb(J.n, J.q))
    return Hamiltonian(J.n, J.q, coeffs, xs, zs)


def apply(H: Hamiltonian, v: np.ndarray) -> np.ndarray:
    return H.apply(v)


def dense_matrix(H: Hamiltonian, cap: int = DENSE_DIM_CAP) -> np.ndarray:
    return H.dense_matrix(cap)


def dual_hamiltonian(H: Hamiltonian) -> Hamiltonian:
    """i**(n/2 - q) psi_1 ... psi_n H, an (n - q)-body Hamiltonian with H~^2 = H^2."""
    if H.q % 2:
        raise InvalidArgument(f"duality is only supported for even q, got q={H.q}")
    gamma = majorana_product(MajoranaIndexSet(H.n, tuple(range(1, H.n + 1))))
    shift = H.n // 2 - H.q
    coeffs = np.empty(len(H))
    xs = np.empty(len(H), dtype=np.int64)
    zs = np.empty(len(H), dtype=np.int64)
    for t, (c, s) in enumerate(H.terms):
        d = pauli_mul(gamma, s)
        phase = (d.phase_exp + shift) % 4
        if phase % 2:
            raise InvariantViolation(f"dual term of {s} has non-real phase i**{phase}")
        coeffs[t] = c if phase == 0 else -c
        xs[t], zs[t] = d.x_mask, d.z_mask
    return Hamiltonian(H.n, H.n - H.q, coeffs, xs, zs)


def log_partition_function(spectrum, beta: float) -> float:
    lam = np.asarray(spectrum, dtype=float)
    e = -beta * lam
    top = e.max()
    return float(top + np.log(np.sum(np.exp(e - top))))


def partition_function(spectrum, beta: float) -> float:
    """Z(beta) = sum_j exp(-beta lambda_j), evaluated with a max shift."""
    e = -beta * np.asarray(spectrum, dtype=float)
    top = e.max()
    return float(np.exp(top) * np.sum(np.exp(e - top)))
