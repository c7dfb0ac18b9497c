"""Majorana fermions as signed Pauli strings.

A Pauli string on ``sites`` qubits is stored as two bit masks and a phase
exponent::

    P = i**phase_exp * sigma(x_0, z_0) (x) ... (x) sigma(x_{s-1}, z_{s-1})

with sigma(0, 0) = I, sigma(1, 0) = X, sigma(0, 1) = Z and sigma(1, 1) = Y.
Site ``k`` is bit ``k`` of a computational basis index (little endian), so on
basis states

    P |b> = i**(phase_exp + |x & z|) * (-1)**|z & b| |b ^ x>.

Because the both-bits site is Y itself (not XZ = -iY), a string is Hermitian
exactly when ``phase_exp`` is even.

Majorana modes use the Jordan-Wigner layout on n/2 sites (1-based modes)::

    psi_{2k+1} = Z_0 ... Z_{k-1} X_k
    psi_{2k+2} = Z_0 ... Z_{k-1} Y_k
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgument, ResourceLimit

DENSE_SITE_CAP = 12

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_SIGMA = {(0, 0): _I2, (1, 0): _X, (0, 1): _Z, (1, 1): _Y}
_I_POW = (1, 1j, -1, -1j)


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliString:
    sites: int
    x_mask: int = 0
    z_mask: int = 0
    phase_exp: int = 0

    def __post_init__(self):
        if self.sites < 0:
            raise InvalidArgument(f"sites must be non-negative, got {self.sites}")
        limit = 1 << self.sites
        for name in ("x_mask", "z_mask"):
            mask = getattr(self, name)
            if mask < 0 or mask >= limit:
                raise InvalidArgument(f"{name}={mask:#x} has bits outside {self.sites} sites")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def identity(cls, sites: int) -> "PauliString":
        return cls(sites)

    @classmethod
    def from_label(cls, label: str, phase_exp: int = 0) -> "PauliString":
        """Build from a label like ``"XIZY"``; character ``k`` acts on site ``k``."""
        x = z = 0
        for k, ch in enumerate(label.upper()):
            if ch not in "IXYZ":
                raise InvalidArgument(f"bad Pauli label character {ch!r}")
            if ch in "XY":
                x |= 1 << k
            if ch in "ZY":
                z |= 1 << k
        return cls(len(label), x, z, phase_exp)

    @property
    def dim(self) -> int:
        return 1 << self.sites

    @property
    def y_count(self) -> int:
        return _popcount(self.x_mask & self.z_mask)

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    @property
    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    @property
    def phase(self) -> complex:
        return _I_POW[self.phase_exp]

    def label(self) -> str:
        chars = []
        for k in range(self.sites):
            bits = ((self.x_mask >> k) & 1, (self.z_mask >> k) & 1)
            chars.append({(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[bits])
        return "".join(chars)

    def with_phase(self, phase_exp: int) -> "PauliString":
        return PauliString(self.sites, self.x_mask, self.z_mask, phase_exp)

    def commutes_with(self, other: "PauliString") -> bool:
        _check_sites(self, other)
        overlap = _popcount(self.x_mask & other.z_mask) + _popcount(self.z_mask & other.x_mask)
        return overlap % 2 == 0

    def __mul__(self, other: "PauliString") -> "PauliString":
        return pauli_mul(self, other)

    def __repr__(self):
        sign = ("+", "+i", "-", "-i")[self.phase_exp]
        return f"PauliString({sign}{self.label() or '1'})"


@dataclass(frozen=True)
class MajoranaIndexSet:
    """A set of 1-based Majorana mode indices, kept sorted."""

    n: int
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        _check_modes(self.n)
        idx = tuple(int(i) for i in self.indices)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise InvalidArgument(f"indices must be strictly increasing, got {idx}")
        if idx and (idx[0] < 1 or idx[-1] > self.n):
            raise InvalidArgument(f"indices {idx} outside [1, {self.n}]")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def of(cls, n: int, indices: Iterable[int]) -> "MajoranaIndexSet":
        """Like the constructor, but sorts first (duplicates still rejected)."""
        return cls(n, tuple(sorted(indices)))

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def symmetric_difference(self, other: "MajoranaIndexSet") -> "MajoranaIndexSet":
        return MajoranaIndexSet(self.n, tuple(sorted(set(self.indices) ^ set(other.indices))))


def _check_modes(n: int):
    if n <= 0 or n % 2:
        raise InvalidArgument(f"mode count n must be a positive even integer, got {n}")


def _check_sites(a: PauliString, b: PauliString):
    if a.sites != b.sites:
        raise InvalidArgument(f"site count mismatch: {a.sites} vs {b.sites}")


def majorana(i: int, n: int) -> PauliString:
    """The i-th Majorana mode (1-based) among n, as a Hermitian Pauli string."""
    _check_modes(n)
    if not 1 <= i <= n:
        raise InvalidArgument(f"mode index {i} outside [1, {n}]")
    site = (i - 1) // 2
    z = (1 << site) - 1
    x = 1 << site
    if i % 2 == 0:
        z |= x
    return PauliString(n // 2, x, z, 0)


def pauli_mul(a: PauliString, b: PauliString) -> PauliString:
    """Exact product ``a @ b``.

    Writing each string as i**(p + w) X^x Z^z (w = number of Y sites), moving
    Z^{z_a} past X^{x_b} costs (-1)**|z_a & x_b|, and the result is
    re-expressed in the Y-canonical form by removing its own Y count.
    """
    _check_sites(a, b)
    x = a.x_mask ^ b.x_mask
    z = a.z_mask ^ b.z_mask
    phase = (
        a.phase_exp + b.phase_exp + a.y_count + b.y_count
        - _popcount(x & z) + 2 * _popcount(a.z_mask & b.x_mask)
    )
    return PauliString(a.sites, x, z, phase)


def pauli_product(strings: Sequence[PauliString], sites: int | None = None) -> PauliString:
    if not strings:
        if sites is None:
            raise InvalidArgument("empty product needs an explicit site count")
        return PauliString.identity(sites)
    return reduce(pauli_mul, strings)


def majorana_product(R: MajoranaIndexSet) -> PauliString:
    """Psi_R: left-to-right product of the modes in R; identity for empty R."""
    out = PauliString.identity(R.n // 2)
    for i in R.indices:
        out = pauli_mul(out, majorana(i, R.n))
    return out


def normalized_trace(P: PauliString) -> complex:
    """Tr(P) / 2**sites."""
    if P.is_identity:
        return P.phase
    return 0j


def dense_matrix_of(P: PauliString, cap: int = DENSE_SITE_CAP) -> np.ndarray:
    """Materialize through Kronecker products (independent of the bit rules above)."""
    if P.sites > cap:
        raise ResourceLimit(f"dense materialization of {P.sites} sites exceeds cap of {cap} sites")
    m = np.ones((1, 1), dtype=complex)
    for k in range(P.sites):
        bits = ((P.x_mask >> k) & 1, (P.z_mask >> k) & 1)
        m = np.kron(_SIGMA[bits], m)
    return P.phase * m


def basis_action(P: PauliString, basis: np.ndarray):
    """Target indices and amplitudes of P acting on computational basis states.

    Returns ``(targets, amps)`` with ``P|b> = amps * |targets>`` elementwise.
    """
    basis = np.asarray(basis, dtype=np.int64)
    signs = 1 - 2 * (np.bitwise_count(basis & P.z_mask) & 1).astype(np.int8)
    amps = _I_POW[(P.phase_exp + P.y_count) % 4] * signs
    return basis ^ P.x_mask, amps


@dataclass(frozen=True)
class TraceSignResult:
    matches: bool
    lhs: complex
    rhs: int


def trace_sign_check(pairing, R: Sequence[MajoranaIndexSet], q: int, odd: bool = False) -> TraceSignResult:
    """Compare the normalized trace of a paired word with its crossing sign.

    The word is Psi_{R[pi(1)]} ... Psi_{R[pi(k)]} where block ``j`` of
    ``pairing`` (blocks ordered by smallest element) carries ``R[j]``.  For
    even q the trace times i**(qk/2) must equal (-1)**sum|R_r & R_s| over
    crossing blocks; with ``odd=True`` the prefactor is i**((q-1)k/2) and
    each crossing contributes |R_r & R_s| + 1.
    """
    if odd != (q % 2 == 1):
        raise InvalidArgument(f"q={q} does not match odd={odd}; pass odd=True for odd q")
    if len(R) != len(pairing.blocks):
        raise InvalidArgument(f"need {len(pairing.blocks)} index sets, got {len(R)}")
    if any(len(r) != q for r in R):
        raise InvalidArgument(f"every index set must have size q={q}")
    ns = {r.n for r in R}
    if len(ns) != 1:
        raise InvalidArgument("index sets disagree on the mode count n")

    psi = [majorana_product(r) for r in R]
    word = pauli_product([psi[j] for j in pairing.labels()])
    prefactor = _I_POW[((q // 2) * pairing.k) % 4]
    lhs = prefactor * normalized_trace(word)

    exponent = 0
    for r, s in pairing.crossings():
        exponent += len(set(R[r].indices) & set(R[s].indices)) + (1 if odd else 0)
    rhs = -1 if exponent % 2 else 1
    return TraceSignResult(bool(lhs == rhs), lhs, rhs)
