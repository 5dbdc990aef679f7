"""
Concurrence, two-qubit Wootters concurrence and concurrence of assistance.

The Wootters numbers ``λ1 ≥ λ2 ≥ λ3 ≥ λ4`` are the eigenvalues of
``sqrt(sqrt(ρ) ρ̃ sqrt(ρ))``.  Squaring and re-rooting them loses half the
digits on rank-deficient inputs (every marginal of a pure three-qubit state
has rank two), so they are computed instead as the singular values of

    τ = Wᵀ (σy⊗σy) W,   ρ = W W†,

read off the Hermitian matrix ``[[0, τ], [τ†, 0]]`` whose spectrum is ``±σ_i``.
``W`` comes either from an eigendecomposition of ``ρ`` with its numerical
null space dropped, or exactly from a Schmidt matrix when ``ρ`` is a
marginal of a known pure state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError, NumericalError
from .linalg import (
    SIGMA_YY,
    DensityMatrix,
    PureState,
    hermitian_eigenvalues,
    hermitian_eigh,
    partial_trace,
    schmidt_matrix,
)

# Eigenvalues of ρ below this are treated as exact zeros when factoring.
RANK_TOL = 1e-14
PSD_CLAMP = -1e-10
PURITY_THRESHOLD = 1.0 - 1e-12
MIRROR_TOL = 1e-9
VALUE_SLACK = 1e-9

CONCURRENCE = "concurrence"
CONCURRENCE_OF_ASSISTANCE = "concurrence_of_assistance"


@dataclass(frozen=True)
class MeasureValue:
    """A measure evaluated across one bipartition, e.g. ``"A|B1B2"`` or ``"AB1"``."""

    value: float
    measure_kind: str = CONCURRENCE
    partition: str = ""
    qubit_cut: bool = False

    def __post_init__(self):
        v = float(self.value)
        upper = 1.0 if self.qubit_cut else math.sqrt(2.0)
        if not (math.isfinite(v) and -VALUE_SLACK <= v <= upper + VALUE_SLACK):
            raise DomainError(f"{self.measure_kind} value {v!r} outside [0, {upper:g}]")
        object.__setattr__(self, "value", min(max(v, 0.0), upper))

    def __float__(self) -> float:
        return self.value


def party_labels(n: int) -> list[str]:
    """``["A", "B1", ..., "B{n-1}"]``."""
    return ["A"] + [f"B{i}" for i in range(1, n)]


def cut_label(cut: Iterable[int], n: int) -> str:
    names = party_labels(n)
    cut = sorted(set(cut))
    rest = [i for i in range(n) if i not in cut]
    return "".join(names[i] for i in cut) + "|" + "".join(names[i] for i in rest)


def concurrence_pure(psi: PureState, cut: Iterable[int] = (0,)) -> MeasureValue:
    """Pure-state concurrence ``sqrt(2 (1 - Tr ρ_cut²))`` across ``cut | rest``."""
    if not isinstance(psi, PureState):
        psi = PureState(psi)
    n = psi.n_subsystems
    cut = tuple(sorted(set(cut)))
    if not cut or len(cut) >= n or min(cut) < 0 or max(cut) >= n:
        raise DomainError(f"cut {cut} must be a nonempty strict subset of {n} subsystems")
    rho = partial_trace(psi, cut).matrix
    purity = float(np.sum(np.abs(rho) ** 2))
    value = math.sqrt(max(0.0, 2.0 * (1.0 - purity)))
    d_cut = int(np.prod([psi.subsystem_dims[i] for i in cut]))
    d_rest = psi.amplitudes.size // d_cut
    return MeasureValue(value, CONCURRENCE, cut_label(cut, n), qubit_cut=min(d_cut, d_rest) == 2)


def pure_concurrence_batch(amplitudes: np.ndarray, dims, cut) -> np.ndarray:
    """Vectorized pure-state concurrence for a stack of state vectors."""
    m = schmidt_matrix(amplitudes, dims, cut)
    rho = m @ np.swapaxes(m.conj(), -1, -2)
    purity = np.sum(np.abs(rho) ** 2, axis=(-2, -1))
    return np.sqrt(np.clip(2.0 * (1.0 - purity), 0.0, None))


def density_factor(rho) -> np.ndarray:
    """Factor ``W`` with ``ρ = W W†`` for a PSD matrix or stack of them.

    Eigenvalues in ``[-1e-10, RANK_TOL)`` are set to zero, so numerical
    null directions carry exactly zero weight.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    w, v = hermitian_eigh(m)
    if np.any(w < PSD_CLAMP):
        raise DomainError(f"matrix is not positive semidefinite (eigenvalue {w.min()!r})")
    w = np.where(w < RANK_TOL, 0.0, w)
    return v * np.sqrt(w)[..., None, :]


def wootters_lambdas_from_factor(w: np.ndarray) -> np.ndarray:
    """Descending Wootters numbers of ``ρ = W W†`` for ``W`` of shape ``(..., 4, r)``.

    The result always has four entries per state (zero-padded when ``r < 4``).
    """
    w = np.asarray(w, dtype=complex)
    if w.shape[-2] != 4:
        raise DomainError(f"factor must have 4 rows for a two-qubit state, got {w.shape}")
    r = w.shape[-1]
    tau = np.swapaxes(w, -1, -2) @ SIGMA_YY @ w
    lead = tau.shape[:-2]
    jw = np.zeros(lead + (2 * r, 2 * r), dtype=complex)
    jw[..., :r, r:] = tau
    jw[..., r:, :r] = np.swapaxes(tau.conj(), -1, -2)
    ev = hermitian_eigenvalues(jw)
    top = ev[..., :r]
    bottom = -ev[..., ::-1][..., :r]
    if np.any(np.abs(top - bottom) > MIRROR_TOL):
        raise NumericalError("singular-value spectrum is not symmetric; eigen residual too large")
    lam = np.clip(0.5 * (top + bottom), 0.0, None)
    if r < 4:
        lam = np.concatenate([lam, np.zeros(lead + (4 - r,))], axis=-1)
    return lam[..., :4]


def wootters_lambdas(rho) -> np.ndarray:
    """Descending Wootters numbers ``λ1..λ4`` of a two-qubit state (or a stack ``(..., 4, 4)``)."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape[-2:] != (4, 4):
        raise DomainError(f"two-qubit state must be 4x4, got {m.shape[-2:]}")
    return wootters_lambdas_from_factor(density_factor(m))


def concurrence_from_lambdas(lam: np.ndarray) -> np.ndarray:
    lam = np.asarray(lam)
    return np.maximum(0.0, lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3])


def coa_from_lambdas(lam: np.ndarray) -> np.ndarray:
    return np.sum(np.asarray(lam), axis=-1)


def _two_qubit(rho) -> DensityMatrix:
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    if rho.dim != 4 or rho.subsystem_dims != (2, 2):
        raise DomainError(
            f"two-qubit measures need a 4x4 state on (2, 2), got dims {rho.subsystem_dims}"
        )
    return rho


def concurrence_two_qubit(rho, partition: str = "AB") -> MeasureValue:
    """Wootters concurrence ``max(0, λ1 - λ2 - λ3 - λ4)``."""
    rho = _two_qubit(rho)
    value = float(concurrence_from_lambdas(wootters_lambdas(rho)))
    return MeasureValue(value, CONCURRENCE, partition, qubit_cut=True)


def coa_two_qubit(rho, partition: str = "AB") -> MeasureValue:
    """Two-qubit concurrence of assistance ``λ1 + λ2 + λ3 + λ4``."""
    rho = _two_qubit(rho)
    value = float(coa_from_lambdas(wootters_lambdas(rho)))
    return MeasureValue(value, CONCURRENCE_OF_ASSISTANCE, partition, qubit_cut=True)


def is_pure(rho: DensityMatrix) -> bool:
    return rho.purity() > PURITY_THRESHOLD


def three_qubit_profile(amplitudes: np.ndarray) -> dict[str, np.ndarray]:
    """All concurrence data for a stack of three-qubit pure states.

    Returns arrays keyed by ``"C_A|B1B2"``, ``"C_AB1"``, ``"C_AB2"``, ``"Ca_AB1"``
    and ``"Ca_AB2"``.  For a pure global state the assisted and plain
    one-to-group values coincide, so ``"C_A|B1B2"`` serves both.
    Marginals are factored exactly through their Schmidt matrices.
    """
    amps = np.asarray(amplitudes, dtype=complex)
    if amps.shape[-1] != 8:
        raise DomainError(f"expected three-qubit amplitudes (length 8), got {amps.shape}")
    dims = (2, 2, 2)
    out = {"C_A|B1B2": pure_concurrence_batch(amps, dims, (0,))}
    for j, name in ((1, "AB1"), (2, "AB2")):
        lam = wootters_lambdas_from_factor(schmidt_matrix(amps, dims, (0, j)))
        out[f"C_{name}"] = concurrence_from_lambdas(lam)
        out[f"Ca_{name}"] = coa_from_lambdas(lam)
    return out
