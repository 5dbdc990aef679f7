"""
Benchmark states: the five-term three-qubit canonical form, the two worked
example states, and Haar-random pure states.

Random states are reproducible per ``(seed, index)``: sample ``i`` is drawn
from its own PCG64 stream keyed by ``SeedSequence(seed, spawn_key=(i,))``,
so any partition of the index range yields the same states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import PureState

RNG_ALGORITHM = "numpy PCG64, SeedSequence(seed, spawn_key=(index,)) per sample"
CANONICAL_INDICES = (0b000, 0b100, 0b101, 0b110, 0b111)
MIN_QUBITS, MAX_QUBITS = 2, 4


@dataclass(frozen=True)
class ThreeQubitCanonical:
    """Coefficients of ``λ0|000> + λ1 e^{iφ}|100> + λ2|101> + λ3|110> + λ4|111>``."""

    lambdas: tuple[float, float, float, float, float]
    phi: float = 0.0

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lambdas)
        if len(lam) != 5:
            raise DomainError("canonical form needs exactly five coefficients")
        if any(x < 0 or not math.isfinite(x) for x in lam):
            raise DomainError(f"coefficients must be finite and nonnegative, got {lam}")
        norm2 = math.fsum(x * x for x in lam)
        if abs(norm2 - 1.0) > 1e-12:
            raise DomainError(f"squared coefficients sum to {norm2!r}, expected 1")
        if not 0.0 <= self.phi <= math.pi:
            raise DomainError(f"phase {self.phi!r} outside [0, pi]")
        object.__setattr__(self, "lambdas", lam)


def build_canonical(c: ThreeQubitCanonical) -> PureState:
    amps = np.zeros(8, dtype=complex)
    l0, l1, l2, l3, l4 = c.lambdas
    for idx, val in zip(CANONICAL_INDICES, (l0, l1 * np.exp(1j * c.phi), l2, l3, l4)):
        amps[idx] = val
    return PureState(amps, (2, 2, 2))


EXAMPLE1_MONOGAMY = ThreeQubitCanonical(
    (math.sqrt(2) / 3, 0.0, math.sqrt(2) / 3, math.sqrt(5) / 3, 0.0), phi=0.0
)
EXAMPLE1_POLYGAMY = ThreeQubitCanonical(
    (0.5, math.sqrt(2) / 12, math.sqrt(2) / 2, math.sqrt(2) / 3, math.sqrt(2) / 12), phi=0.0
)


def example1_monogamy_state() -> PureState:
    """Zero-residual-tangle state with C(AB1)=2√10/9, C(AB2)=4/9, C(A|B1B2)=2√14/9."""
    return build_canonical(EXAMPLE1_MONOGAMY)


def example1_polygamy_state() -> PureState:
    """State with C_a(AB1)=√34/12, C_a(AB2)=√74/12, C_a(A|B1B2)=√106/12 (φ taken as 0)."""
    return build_canonical(EXAMPLE1_POLYGAMY)


def _check_qubits(n_qubits: int) -> int:
    n = int(n_qubits)
    if not MIN_QUBITS <= n <= MAX_QUBITS:
        raise DomainError(f"Haar sampling supports {MIN_QUBITS}..{MAX_QUBITS} qubits, got {n_qubits}")
    return n


def sample_rng(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(int(index),))))


def _gaussian_amplitudes(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def sample_haar_pure(n_qubits: int, seed: int, index: int = 0) -> PureState:
    """Haar-random pure state: normalized i.i.d. standard complex Gaussian amplitudes."""
    n = _check_qubits(n_qubits)
    return PureState(_gaussian_amplitudes(2**n, sample_rng(seed, index)), (2,) * n)


def haar_amplitudes(n_qubits: int, seed: int, count: int, start: int = 0) -> np.ndarray:
    """Amplitude stack ``(count, 2**n)`` for sample indices ``start .. start+count-1``.

    Row ``j`` equals ``sample_haar_pure(n_qubits, seed, start + j).amplitudes``.
    """
    n = _check_qubits(n_qubits)
    if count < 0:
        raise DomainError("count must be nonnegative")
    dim = 2**n
    out = np.empty((count, dim), dtype=complex)
    for j in range(count):
        out[j] = _gaussian_amplitudes(dim, sample_rng(seed, start + j))
    return out


def random_mixed_two_qubit(seed: int, index: int = 0, n_components: int | None = None) -> np.ndarray:
    """Convex mixture of 2-4 Haar two-qubit pure states with Dirichlet weights."""
    rng = sample_rng(seed, index)
    n_comp = int(n_components) if n_components is not None else int(rng.integers(2, 5))
    weights = rng.dirichlet(np.ones(n_comp))
    rho = np.zeros((4, 4), dtype=complex)
    for p in weights:
        psi = _gaussian_amplitudes(4, rng)
        rho += p * np.outer(psi, psi.conj())
    return rho / np.trace(rho).real
