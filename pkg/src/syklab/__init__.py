"""Numerical laboratory for the spectrum of the SYK model.

Majorana operators are represented as Pauli strings (Jordan-Wigner), random
Hamiltonians are built from i.i.d. couplings, and their spectra are compared
with the Gaussian, q-Hermite and semicircle limit laws.
"""

from .errors import InvalidArgument, InvariantViolation, NumericError, ParseError, ResourceLimit, SYKError
from .limits import (
    A_INFINITY, LimitDensity, density_eval, density_moment, f_alternating, f_bound_check,
    limit_for, limit_moment, select_limit,
)
from .model import (
    CouplingTensor, Distribution, Hamiltonian, build_hamiltonian, dual_hamiltonian,
    partition_function, sample_couplings,
)
from .partitions import PairPartition, crossing_number, enumerate_pair_partitions
from .pauli import MajoranaIndexSet, PauliString, majorana, majorana_product, trace_sign_check
from .q2 import mu_spectrum, q2_full_spectrum, q2_lambda_max
from .spectra import EmpiricalMeasure, extreme_eigenvalue, full_spectrum, ks_distance

__version__ = "0.1.0"
