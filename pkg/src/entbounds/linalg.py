"""
Dense complex linear algebra for small qubit registers.

Subsystems are ordered big-endian: subsystem 0 is the most significant
index, so ``|b0 b1 b2>`` sits at basis index ``4*b0 + 2*b1 + b2``.

The Hermitian eigensolver is a cyclic complex Jacobi method that works on
stacks of matrices at once, which keeps the randomized audits fast.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, NumericalError, SizingError

MAX_DIM = 2**12
HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 60

# Density-matrix invariants
STATE_HERMITIAN_TOL = 1e-12
STATE_TRACE_TOL = 1e-12
STATE_PSD_FLOOR = -1e-10
NORM_TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a finite 2-D complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DomainError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    return a


def _check_dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DomainError(f"invalid subsystem dimensions {dims}")
    if int(np.prod(dims)) > MAX_DIM:
        raise SizingError(f"total dimension {int(np.prod(dims))} exceeds {MAX_DIM}")
    return dims


def _check_keep(keep: Iterable[int], n: int) -> tuple[int, ...]:
    keep = tuple(sorted(set(int(i) for i in keep)))
    if not keep:
        raise DomainError("keep set must be nonempty")
    if keep[0] < 0 or keep[-1] >= n:
        raise DomainError(f"subsystem indices {keep} out of range for {n} subsystems")
    return keep


@dataclass(frozen=True)
class PureState:
    """Normalized state vector over an ordered list of subsystems."""

    amplitudes: np.ndarray
    subsystem_dims: tuple[int, ...] = field(default=())

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        dims = self.subsystem_dims or (2,) * _n_qubits(amps.size)
        dims = _check_dims(dims)
        if amps.size != int(np.prod(dims)):
            raise DomainError(f"{amps.size} amplitudes do not match dimensions {dims}")
        if not np.all(np.isfinite(amps)):
            raise DomainError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise DomainError(f"state is not normalized (squared norm {norm2!r})")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "subsystem_dims", dims)

    @property
    def n_subsystems(self) -> int:
        return len(self.subsystem_dims)

    def projector(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.subsystem_dims)


def _n_qubits(size: int) -> int:
    n = int(size).bit_length() - 1
    if size < 2 or 2**n != size:
        raise DomainError(f"length {size} is not a power of two; pass subsystem_dims")
    return n


@dataclass(frozen=True)
class DensityMatrix:
    """Unit-trace positive semidefinite Hermitian matrix with subsystem structure.

    Pass ``validate=False`` only for matrices already known to be states;
    the PSD check costs one eigendecomposition.
    """

    matrix: np.ndarray
    subsystem_dims: tuple[int, ...] = field(default=())
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise DomainError(f"density matrix must be square, got {m.shape}")
        dims = self.subsystem_dims or (2,) * _n_qubits(m.shape[0])
        dims = _check_dims(dims)
        if m.shape[0] != int(np.prod(dims)):
            raise DomainError(f"matrix size {m.shape[0]} does not match dimensions {dims}")
        if self.validate:
            if np.max(np.abs(m - m.conj().T)) > STATE_HERMITIAN_TOL:
                raise DomainError("density matrix is not Hermitian")
            tr = np.trace(m).real
            if abs(tr - 1.0) > STATE_TRACE_TOL:
                raise DomainError(f"density matrix trace is {tr!r}, expected 1")
            lo = hermitian_eigenvalues(m)[-1]
            if lo < STATE_PSD_FLOOR:
                raise DomainError(f"density matrix has negative eigenvalue {lo!r}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "subsystem_dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_subsystems(self) -> int:
        return len(self.subsystem_dims)

    def purity(self) -> float:
        m = self.matrix
        return float(np.sum(np.abs(m) ** 2))


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b``; the first factor is the most significant index."""
    a = as_matrix(a)
    b = as_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if max(rows, cols) > MAX_DIM:
        raise SizingError(f"tensor product of shape {(rows, cols)} exceeds {MAX_DIM}")
    return np.kron(a, b)


def schmidt_matrix(amplitudes, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Reshape state vectors into ``(d_keep, d_rest)`` matrices.

    Works on a single vector or a stack ``(..., prod(dims))``.  If ``M`` is
    the result then the marginal on ``keep`` is ``M @ M^†``, so ``M`` is an
    exact factor of the reduced state.
    """
    dims = _check_dims(dims)
    keep = _check_keep(keep, len(dims))
    amps = np.asarray(amplitudes, dtype=complex)
    lead = amps.shape[:-1]
    nb = len(lead)
    t = amps.reshape(lead + dims)
    rest = [i for i in range(len(dims)) if i not in keep]
    order = list(range(nb)) + [nb + i for i in keep] + [nb + i for i in rest]
    d_keep = int(np.prod([dims[i] for i in keep]))
    d_rest = int(np.prod([dims[i] for i in rest])) if rest else 1
    return t.transpose(order).reshape(lead + (d_keep, d_rest))


def partial_trace(state: DensityMatrix | PureState, keep: Iterable[int]) -> DensityMatrix:
    """Marginal of ``state`` on the subsystems listed in ``keep``.

    Parameters
    ----------
    state : DensityMatrix or PureState
        Global state.  Pure states are reduced through their Schmidt matrix.
    keep : iterable of int
        Subsystem indices to keep; order is irrelevant, the output keeps the
        original subsystem order.

    Returns
    -------
    DensityMatrix
        The reduced state on ``keep``.
    """
    dims = state.subsystem_dims
    keep = _check_keep(keep, len(dims))
    kept_dims = tuple(dims[i] for i in keep)
    if isinstance(state, PureState):
        m = schmidt_matrix(state.amplitudes, dims, keep)
        rho = m @ m.conj().T
    else:
        n = len(dims)
        t = state.matrix.reshape(dims + dims)
        letters = "abcdefghijklmnopqrstuvwxyz"
        row = [letters[i] for i in range(n)]
        col = [letters[n + i] if i in keep else letters[i] for i in range(n)]
        out = [row[i] for i in keep] + [col[i] for i in keep]
        rho = np.einsum(f"{''.join(row + col)}->{''.join(out)}", t)
        d = int(np.prod(kept_dims))
        rho = rho.reshape(d, d)
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho, kept_dims, validate=False)


def _jacobi(a: np.ndarray, want_vectors: bool, tol: float, max_sweeps: int):
    """Cyclic complex Jacobi on a stack ``(B, n, n)`` of Hermitian matrices."""
    a = a.copy()
    bsz, n, _ = a.shape
    v = np.repeat(np.eye(n, dtype=complex)[None], bsz, axis=0) if want_vectors else None
    if n == 1:
        return a[:, :, 0].real.copy(), v
    scale = np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2)))
    offmask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(a[:, offmask]) ** 2, axis=1))
        active = np.nonzero(off > tol * scale)[0]
        if active.size == 0:
            break
        sub = a[active]
        subv = v[active] if want_vectors else None
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = sub[:, p, q].copy()
                mag = np.abs(apq)
                live = mag > 0.0
                if not live.any():
                    continue
                safe = np.where(live, mag, 1.0)
                phase = np.where(live, apq / safe, 1.0)
                app = sub[:, p, p].real.copy()
                aqq = sub[:, q, q].real.copy()
                theta = (aqq - app) / (2.0 * safe)
                t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(live, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                jpp = c
                jpq = s
                jqp = -s * phase.conj()
                jqq = c * phase.conj()
                colp = sub[:, :, p].copy()
                colq = sub[:, :, q].copy()
                sub[:, :, p] = colp * jpp[:, None] + colq * jqp[:, None]
                sub[:, :, q] = colp * jpq[:, None] + colq * jqq[:, None]
                rowp = sub[:, p, :].copy()
                rowq = sub[:, q, :].copy()
                sub[:, p, :] = jpp[:, None] * rowp + jqp.conj()[:, None] * rowq
                sub[:, q, :] = jpq[:, None] * rowp + jqq.conj()[:, None] * rowq
                sub[:, p, q] = 0.0
                sub[:, q, p] = 0.0
                sub[:, p, p] = app - t * mag
                sub[:, q, q] = aqq + t * mag
                if want_vectors:
                    vp = subv[:, :, p].copy()
                    vq = subv[:, :, q].copy()
                    subv[:, :, p] = vp * jpp[:, None] + vq * jqp[:, None]
                    subv[:, :, q] = vp * jpq[:, None] + vq * jqq[:, None]
        a[active] = sub
        if want_vectors:
            v[active] = subv
    else:
        off = np.sqrt(np.sum(np.abs(a[:, offmask]) ** 2, axis=1))
        if np.any(off > tol * scale):
            raise NumericalError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.real(np.diagonal(a, axis1=1, axis2=2)).copy()
    return w, v


def _prepare_hermitian(m, tol: float) -> tuple[np.ndarray, tuple[int, ...]]:
    a = np.asarray(m, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DomainError(f"expected square matrices, got shape {a.shape}")
    if a.shape[-1] > MAX_DIM:
        raise SizingError(f"matrix dimension {a.shape[-1]} exceeds {MAX_DIM}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    if a.size and np.max(np.abs(a - np.swapaxes(a.conj(), -1, -2))) > tol:
        raise DomainError("matrix is not Hermitian within tolerance")
    lead = a.shape[:-2]
    n = a.shape[-1]
    a = 0.5 * (a + np.swapaxes(a.conj(), -1, -2))
    return a.reshape((-1, n, n)), lead


def hermitian_eigh(m, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigenvalues (descending) and eigenvectors (as columns) of Hermitian matrices.

    Accepts a single matrix or a stack ``(..., n, n)``.
    """
    a, lead = _prepare_hermitian(m, HERMITIAN_TOL)
    n = a.shape[-1]
    w, v = _jacobi(a, True, tol, max_sweeps)
    order = np.argsort(-w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w.reshape(lead + (n,)), v.reshape(lead + (n, n))


def hermitian_eigenvalues(m, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix (or stack), sorted descending."""
    a, lead = _prepare_hermitian(m, HERMITIAN_TOL)
    n = a.shape[-1]
    w, _ = _jacobi(a, False, tol, max_sweeps)
    w = -np.sort(-w, axis=1)
    return w.reshape(lead + (n,))


def spin_flip(rho) -> np.ndarray:
    """Wootters spin flip ``(σy⊗σy) ρ* (σy⊗σy)`` of a two-qubit state (or stack)."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape[-2:] != (4, 4):
        raise DomainError(f"spin flip needs a 4x4 two-qubit matrix, got {m.shape[-2:]}")
    return SIGMA_YY @ m.conj() @ SIGMA_YY


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary from the QR decomposition of a complex Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph
